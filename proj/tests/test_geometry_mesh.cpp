#include <doctest.h>

#include "cmsflow/geom/io.h"
#include "cmsflow/geom/mesh.h"
#include "cmsflow/geom/primitives.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <random>

using namespace cms;
using namespace cms::geom;

namespace {
constexpr double kPi = std::numbers::pi;

double worst_h_error(const DiscreteSurface& s, double expected) {
  const MeshForms f = mesh_forms(s, build_topology(s));
  double worst = 0.0;
  for (double h : f.mean_curvature)
    worst = std::max(worst, std::abs(h - expected) / std::abs(expected));
  return worst;
}
}  // namespace

TEST_CASE("icosphere vertex mean curvature") {
  // all vertices within 1% of -2/R (measured headroom is ~1e-5 at this depth)
  CHECK(worst_h_error(icosphere(1.0, 4), -2.0) < 0.01);
  CHECK(worst_h_error(icosphere(0.5, 3), -4.0) < 0.01);
}

TEST_CASE("regular polygon curvature") {
  CHECK(worst_h_error(polygon_curve(2.0, 256), -0.5) < 1e-3);
  CHECK(worst_h_error(polygon_curve(1.0, 64), -1.0) < 2e-3);
}

TEST_CASE("cube angle defects sum to 4 pi exactly") {
  const DiscreteSurface cube = cube_mesh(1.0);
  CHECK(euler_characteristic(cube) == 2);
  CHECK(gauss_bonnet_residual(cube) < 1e-12);
}

TEST_CASE("euler characteristic") {
  CHECK(euler_characteristic(icosphere(1.0, 2)) == 2);
  CHECK(euler_characteristic(torus_mesh(2.0, 0.5, 32, 16)) == 0);

  // two disjoint spheres: chi is additive
  DiscreteSurface two = icosphere(1.0, 1);
  const int offset = static_cast<int>(two.vertices.size());
  const DiscreteSurface other = icosphere(0.5, 1);
  for (const auto& v : other.vertices) two.vertices.push_back(v + Eigen::Vector3d(5, 0, 0));
  for (const auto& f : other.faces)
    two.faces.push_back({f[0] + offset, f[1] + offset, f[2] + offset});
  CHECK(euler_characteristic(two) == 4);

  // closed curve
  CHECK(euler_characteristic(polygon_curve(1.0, 8)) == 0);
}

TEST_CASE("discrete Gauss-Bonnet is exact on arbitrary closed meshes") {
  CHECK(gauss_bonnet_residual(icosphere(1.0, 4)) < 1e-8);
  CHECK(gauss_bonnet_residual(torus_mesh(2.0, 0.5, 48, 24)) < 1e-8);

  // position-independent: random perturbation keeps the defect sum at 2 pi chi
  DiscreteSurface s = icosphere(1.0, 3);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-0.05, 0.05);
  for (auto& v : s.vertices) v += Eigen::Vector3d(d(rng), d(rng), d(rng));
  CHECK(gauss_bonnet_residual(s) < 1e-8);

  // closed planar curve: total turning angle is 2 pi
  CHECK(gauss_bonnet_residual(polygon_curve(1.5, 37)) < 1e-12);
}

TEST_CASE("mesh refinement converges at order >= 1") {
  double prev_area_err = 0.0, prev_vol_err = 0.0, prev_h_err = 0.0;
  for (int sub : {2, 3, 4}) {
    const DiscreteSurface s = icosphere(1.0, sub);
    const MeshForms f = mesh_forms(s, build_topology(s));
    const double area_err = std::abs(f.total_measure - 4.0 * kPi);
    const double vol_err = std::abs(f.enclosed - 4.0 * kPi / 3.0);
    const double h_err = worst_h_error(s, -2.0);
    if (sub > 2) {
      CHECK(prev_area_err / area_err > 2.0);
      CHECK(prev_vol_err / vol_err > 2.0);
      CHECK(prev_h_err / h_err > 2.0);
    }
    prev_area_err = area_err;
    prev_vol_err = vol_err;
    prev_h_err = h_err;
  }
  // frozen refinement values at subdivision 4
  const MeshForms f4 = mesh_forms(icosphere(1.0, 4), build_topology(icosphere(1.0, 4)));
  CHECK(std::abs(f4.total_measure - 4.0 * kPi) / (4.0 * kPi) < 1.5e-3);
  CHECK(std::abs(f4.enclosed - 4.0 * kPi / 3.0) / (4.0 * kPi / 3.0) < 3e-3);
}

TEST_CASE("circle length and enclosed area") {
  const DiscreteSurface c = polygon_curve(3.0, 512);
  const MeshForms f = mesh_forms(c, build_topology(c));
  CHECK(f.total_measure == doctest::Approx(6.0 * kPi).epsilon(1e-4));
  CHECK(f.enclosed == doctest::Approx(9.0 * kPi).epsilon(1e-4));
}

TEST_CASE("invalid meshes are rejected") {
  SUBCASE("boundary edge") {
    DiscreteSurface s = icosphere(1.0, 1);
    s.faces.pop_back();
    CHECK_THROWS_AS(build_topology(s), MeshTopologyError);
  }
  SUBCASE("flipped face winding") {
    DiscreteSurface s = icosphere(1.0, 1);
    std::swap(s.faces[0][0], s.faces[0][1]);
    CHECK_THROWS_AS(build_topology(s), MeshTopologyError);
  }
  SUBCASE("face index out of range") {
    DiscreteSurface s = cube_mesh(1.0);
    s.faces[0][2] = 99;
    CHECK_THROWS_AS(build_topology(s), MeshTopologyError);
  }
  SUBCASE("zero-area face") {
    // tetrahedron with one vertex on an edge of the base
    DiscreteSurface s;
    s.kind = DiscreteSurface::Kind::TriMesh;
    s.vertices = {{0, 0, 0}, {1, 0, 0}, {0.5, 0, 0}, {0.5, 1, 0}};
    s.faces = {{0, 2, 1}, {0, 1, 3}, {1, 2, 3}, {2, 0, 3}};
    const MeshTopology topo = build_topology(s);
    CHECK_THROWS_AS(mesh_forms(s, topo), MeshQualityError);
  }
  SUBCASE("inward orientation") {
    DiscreteSurface s = cube_mesh(1.0);
    for (auto& f : s.faces) std::swap(f[1], f[2]);
    CHECK_THROWS_AS(enclosed_measure(s), MeshTopologyError);
  }
  SUBCASE("too-small curve") {
    DiscreteSurface s;
    s.kind = DiscreteSurface::Kind::Curve;
    s.vertices = {{0, 0, 0}, {1, 0, 0}};
    CHECK_THROWS_AS(build_topology(s), MeshTopologyError);
  }
  SUBCASE("clockwise curve") {
    DiscreteSurface s = polygon_curve(1.0, 16);
    std::reverse(s.vertices.begin(), s.vertices.end());
    CHECK_THROWS_AS(enclosed_measure(s), MeshTopologyError);
  }
}

TEST_CASE("obj round trip preserves doubles") {
  const std::string path = (std::filesystem::temp_directory_path() / "cms_roundtrip.obj").string();
  DiscreteSurface s = icosphere(1.0, 1);
  s.vertices[3] += Eigen::Vector3d(1e-17, -0.123456789012345678, kPi);
  write_obj(path, s);
  const DiscreteSurface back = read_obj(path);
  REQUIRE(back.vertices.size() == s.vertices.size());
  REQUIRE(back.faces.size() == s.faces.size());
  for (size_t i = 0; i < s.vertices.size(); ++i) CHECK((back.vertices[i] - s.vertices[i]).norm() == 0.0);
  for (size_t i = 0; i < s.faces.size(); ++i) CHECK(back.faces[i] == s.faces[i]);
  std::remove(path.c_str());
}

TEST_CASE("curve csv round trip") {
  const std::string path = (std::filesystem::temp_directory_path() / "cms_curve.csv").string();
  const DiscreteSurface c = polygon_curve(2.0, 17);
  write_curve_csv(path, c);
  const DiscreteSurface back = read_curve_csv(path);
  REQUIRE(back.vertices.size() == c.vertices.size());
  for (size_t i = 0; i < c.vertices.size(); ++i) CHECK((back.vertices[i] - c.vertices[i]).norm() == 0.0);
  CHECK(back.kind == DiscreteSurface::Kind::Curve);
  std::remove(path.c_str());
}
