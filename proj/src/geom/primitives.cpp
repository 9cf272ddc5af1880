#include "cmsflow/geom/primitives.h"

#include <cmath>
#include <map>
#include <numbers>

namespace cms::geom {

namespace {

constexpr double kPi = std::numbers::pi;

DiscreteSurface icosahedron() {
  const double p = (1.0 + std::sqrt(5.0)) / 2.0;
  DiscreteSurface s;
  s.kind = DiscreteSurface::Kind::TriMesh;
  s.vertices = {
      {-1, p, 0}, {1, p, 0}, {-1, -p, 0}, {1, -p, 0}, {0, -1, p}, {0, 1, p},
      {0, -1, -p}, {0, 1, -p}, {p, 0, -1}, {p, 0, 1}, {-p, 0, -1}, {-p, 0, 1},
  };
  for (auto& v : s.vertices) v.normalize();
  s.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
             {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
             {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
             {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  return s;
}

DiscreteSurface subdivide_project(DiscreteSurface s, int subdivisions) {
  for (int level = 0; level < subdivisions; ++level) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const int idx = static_cast<int>(s.vertices.size());
      s.vertices.push_back(((s.vertices[a] + s.vertices[b]) * 0.5).normalized());
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> faces;
    faces.reserve(s.faces.size() * 4);
    for (const auto& [a, b, c] : s.faces) {
      const int ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
      faces.push_back({a, ab, ca});
      faces.push_back({b, bc, ab});
      faces.push_back({c, ca, bc});
      faces.push_back({ab, bc, ca});
    }
    s.faces = std::move(faces);
  }
  return s;
}

}  // namespace

DiscreteSurface icosphere(double radius, int subdivisions) {
  DiscreteSurface s = subdivide_project(icosahedron(), subdivisions);
  for (auto& v : s.vertices) v *= radius;
  return s;
}

DiscreteSurface ellipsoid_mesh(double a, double b, double c, int subdivisions) {
  DiscreteSurface s = subdivide_project(icosahedron(), subdivisions);
  for (auto& v : s.vertices) {
    v.x() *= a;
    v.y() *= b;
    v.z() *= c;
  }
  return s;
}

DiscreteSurface radial_graph_sphere(
    int subdivisions, const std::function<double(const Eigen::Vector3d&)>& radial_scale) {
  DiscreteSurface s = subdivide_project(icosahedron(), subdivisions);
  for (auto& v : s.vertices) {
    const double r = radial_scale(v);
    if (!(r > 0.0)) throw MeshQualityError("radial graph scale must stay positive");
    v *= r;
  }
  return s;
}

DiscreteSurface cube_mesh(double half_extent) {
  const double h = half_extent;
  DiscreteSurface s;
  s.kind = DiscreteSurface::Kind::TriMesh;
  s.vertices = {{-h, -h, -h}, {h, -h, -h}, {h, h, -h}, {-h, h, -h},
                {-h, -h, h},  {h, -h, h},  {h, h, h},  {-h, h, h}};
  s.faces = {{0, 2, 1}, {0, 3, 2},   // bottom (z = -h), outward = -z
             {4, 5, 6}, {4, 6, 7},   // top
             {0, 1, 5}, {0, 5, 4},   // y = -h
             {2, 3, 7}, {2, 7, 6},   // y = +h
             {1, 2, 6}, {1, 6, 5},   // x = +h
             {3, 0, 4}, {3, 4, 7}};  // x = -h
  return s;
}

DiscreteSurface torus_mesh(double major, double minor, int segments_major, int segments_minor) {
  DiscreteSurface s;
  s.kind = DiscreteSurface::Kind::TriMesh;
  const int nu = segments_major, nv = segments_minor;
  s.vertices.reserve(nu * nv);
  for (int i = 0; i < nu; ++i) {
    const double phi = 2.0 * kPi * i / nu;
    for (int j = 0; j < nv; ++j) {
      const double theta = 2.0 * kPi * j / nv;
      const double ring = major + minor * std::cos(theta);
      s.vertices.emplace_back(ring * std::cos(phi), ring * std::sin(phi),
                              minor * std::sin(theta));
    }
  }
  auto id = [&](int i, int j) { return (i % nu) * nv + (j % nv); };
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j) {
      // winding chosen so normals point out of the tube
      s.faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      s.faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return s;
}

DiscreteSurface polygon_curve(double radius, int segments) {
  DiscreteSurface s;
  s.kind = DiscreteSurface::Kind::Curve;
  s.vertices.reserve(segments);
  for (int i = 0; i < segments; ++i) {
    const double a = 2.0 * kPi * i / segments;
    s.vertices.emplace_back(radius * std::cos(a), radius * std::sin(a), 0.0);
  }
  return s;
}

}  // namespace cms::geom
