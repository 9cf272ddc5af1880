#include <doctest.h>

#include "cmsflow/fam/analytic.h"
#include "cmsflow/geom/forms.h"
#include "cmsflow/geom/quadrature.h"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>

using namespace cms;
using namespace cms::geom;
using cms::fam::FamilySpec;
using cms::fam::make_family;
using cms::fam::make_sphere;
using cms::fam::TimeFn;

namespace {
constexpr double kPi = std::numbers::pi;

SurfVec sv(double a) {
  SurfVec s(1);
  s << a;
  return s;
}
SurfVec sv(double a, double b) {
  SurfVec s(2);
  s << a, b;
  return s;
}
SurfVec sv(double a, double b, double c) {
  SurfVec s(3);
  s << a, b, c;
  return s;
}
}  // namespace

TEST_CASE("unit sphere equator forms") {
  auto family = make_sphere(2, TimeFn::constant(1.0));
  const auto f = fundamental_forms_param(*family, sv(kPi / 2.0, 0.3), 0.0);

  CHECK(f.metric(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.metric(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(f.metric(0, 1)) < 1e-14);
  // B_ij = -S_ij on the unit sphere, H = -2
  CHECK((f.curvature + f.metric).norm() < 1e-12);
  CHECK(f.mean_curvature == doctest::Approx(-2.0).epsilon(1e-12));
  // outward normal
  const Vec pos = family->position(sv(kPi / 2.0, 0.3), 0.0);
  CHECK(f.normal.dot(pos) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("flat patch has zero curvature") {
  Chart chart;
  chart.dim = 2;
  chart.periodic = {false, false, false};
  chart.lo = {-1.0, -1.0, 0.0};
  chart.hi = {1.0, 1.0, 0.0};
  CallableFamily plane(chart, [](const SurfVec& s, double) {
    Vec p(3);
    p << s[0], s[1], 0.0;
    return p;
  });
  const auto f = fundamental_forms_param(plane, sv(0.2, -0.4), 0.0);
  CHECK(f.curvature.norm() < 1e-9);
  CHECK(std::abs(f.mean_curvature) < 1e-9);
  CHECK((f.metric - SurfMat::Identity(2, 2)).norm() < 1e-9);
}

TEST_CASE("ellipsoid pole curvatures match local quadric fit") {
  FamilySpec spec;
  spec.kind = FamilySpec::Kind::Ellipsoid;
  spec.axes = {2.0, 1.0, 1.0};
  auto family = make_family(spec);

  // Brute-force oracle: sample the surface near the pole (0,0,1) and fit the
  // graph z = q(x, y); principal curvatures are the Hessian eigenvalues.
  std::vector<Eigen::Vector3d> pts;
  for (int i = 1; i <= 8; ++i)
    for (int j = 0; j < 16; ++j) {
      const double theta = 0.02 * i;
      const double phi = 2.0 * kPi * j / 16.0;
      const Vec p = family->position(sv(theta, phi), 0.0);
      pts.emplace_back(p[0], p[1], p[2]);
    }
  // Quartic basis so the quadratic coefficients are clean of truncation bias.
  Eigen::MatrixXd A(pts.size(), 15);
  Eigen::VectorXd rhs(pts.size());
  for (size_t r = 0; r < pts.size(); ++r) {
    const double x = pts[r][0], y = pts[r][1];
    A.row(r) << 1.0, x, y, x * x, x * y, y * y, x * x * x, x * x * y, x * y * y, y * y * y,
        x * x * x * x, x * x * x * y, x * x * y * y, x * y * y * y, y * y * y * y;
    rhs[r] = pts[r][2];
  }
  const Eigen::VectorXd q = A.colPivHouseholderQr().solve(rhs);
  Eigen::Matrix2d hess;
  hess << 2.0 * q[3], q[4], q[4], 2.0 * q[5];
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(hess);
  const double fit_k1 = es.eigenvalues()[0];
  const double fit_k2 = es.eigenvalues()[1];

  // Principal curvatures from the shape operator near the pole.
  const auto f = fundamental_forms_param(*family, sv(1e-3, 0.0), 0.0);
  const SurfMat shape = f.mixed_curvature();
  Eigen::Matrix2d shape2;
  shape2 << shape(0, 0), shape(0, 1), shape(1, 0), shape(1, 1);
  Eigen::EigenSolver<Eigen::Matrix2d> ss(shape2);
  double k1 = ss.eigenvalues()[0].real();
  double k2 = ss.eigenvalues()[1].real();
  if (k1 > k2) std::swap(k1, k2);

  // closed form: -c/a^2 = -0.25 and -c/b^2 = -1 for (a,b,c) = (2,1,1)
  CHECK(fit_k1 == doctest::Approx(-1.0).epsilon(1e-4));
  CHECK(fit_k2 == doctest::Approx(-0.25).epsilon(1e-4));
  CHECK(k1 == doctest::Approx(fit_k1).epsilon(1e-4));
  CHECK(k2 == doctest::Approx(fit_k2).epsilon(1e-4));
}

TEST_CASE("ambient decomposition") {
  auto family = make_sphere(2, TimeFn::constant(1.0));
  const SurfVec at = sv(kPi / 2.0, 0.0);
  const auto f = fundamental_forms_param(*family, at, 0.0);

  SUBCASE("normal maps to (1, 0)") {
    const auto parts = decompose_ambient_vector(f, f.normal);
    CHECK(parts.normal_part == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(parts.tangential.norm() < 1e-13);
  }
  SUBCASE("first tangent basis vector maps to (0, e_1)") {
    const auto parts = decompose_ambient_vector(f, f.tangent[0]);
    CHECK(std::abs(parts.normal_part) < 1e-13);
    CHECK(parts.tangential[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(parts.tangential[1]) < 1e-13);
  }
  SUBCASE("random vectors reconstruct") {
    std::mt19937_64 rng(0);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
      const SurfVec s = sv(0.3 + 2.0 * std::abs(dist(rng)), 2.0 * kPi * std::abs(dist(rng)));
      const auto forms = fundamental_forms_param(*family, s, 0.0);
      Vec a(3);
      a << dist(rng), dist(rng), dist(rng);
      const Vec back = reconstruct_ambient(forms, decompose_ambient_vector(forms, a));
      CHECK((back - a).norm() < 1e-12);
    }
  }
}

TEST_CASE("pointwise identities on sampled charts") {
  FamilySpec perturbed;
  perturbed.kind = FamilySpec::Kind::PerturbedSphere;
  perturbed.amplitude = TimeFn::constant(0.15);
  perturbed.mode = 3;
  auto bumpy = make_family(perturbed);

  FamilySpec torus;
  torus.kind = FamilySpec::Kind::Torus;
  torus.torus_major = 2.0;
  torus.torus_minor = TimeFn::constant(0.6);
  auto donut = make_family(torus);

  for (const auto& family : {bumpy, donut}) {
    for (const SurfVec& s : chart_samples(family->chart(), {{9, 17, 1}, 1e-2})) {
      const auto f = fundamental_forms_param(*family, s, 0.1);
      // metric inverse
      CHECK((f.metric_inv * f.metric - SurfMat::Identity(2, 2)).norm() < 1e-10);
      // normal orthonormality
      CHECK(std::abs(f.normal.norm() - 1.0) < 1e-10);
      for (int i = 0; i < 2; ++i) CHECK(std::abs(f.normal.dot(f.tangent[i])) < 1e-10);
      // mixed shift identity X_a^i X^a_j = delta^i_j
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          const double val = f.dual_tangent[i].dot(f.tangent[j]);
          CHECK(std::abs(val - (i == j ? 1.0 : 0.0)) < 1e-10);
        }
      // curvature tensor symmetric
      CHECK(std::abs(f.curvature(0, 1) - f.curvature(1, 0)) < 1e-12);
    }
  }
}

TEST_CASE("Weingarten consistency at second order in the FD step") {
  FamilySpec spec;
  spec.kind = FamilySpec::Kind::PerturbedSphere;
  spec.amplitude = TimeFn::constant(0.2);
  spec.mode = 2;
  auto family = make_family(spec);
  const SurfVec s = sv(1.1, 0.7);
  const auto f = fundamental_forms_param(*family, s, 0.0);
  const SurfMat bmix = f.mixed_curvature();

  auto normal_at = [&](const SurfVec& p) {
    return fundamental_forms_param(*family, p, 0.0).normal;
  };
  auto weingarten_err = [&](double h) {
    double worst = 0.0;
    for (int i = 0; i < 2; ++i) {
      SurfVec sp = s, sm = s;
      sp[i] += h;
      sm[i] -= h;
      const Vec dn = (normal_at(sp) - normal_at(sm)) / (2.0 * h);
      // d_i N = -B_i^j S_j with B_i^j = B_ik S^{kj} = (S^{-1} B)(j, i)
      Vec expect = Vec::Zero(3);
      for (int j = 0; j < 2; ++j) expect -= bmix(j, i) * f.tangent[j];
      worst = std::max(worst, (dn - expect).norm());
    }
    return worst;
  };

  const double e1 = weingarten_err(2e-3);
  const double e2 = weingarten_err(1e-3);
  CHECK(e1 < 1e-4);
  CHECK(e1 / e2 > 3.0);  // second-order convergence
  CHECK(e1 / e2 < 5.0);
}

TEST_CASE("sphere quadrature: area and volume") {
  auto family = make_sphere(2, TimeFn::constant(1.0));
  QuadratureSpec q;
  q.count = {64, 64, 48};
  CHECK(surface_area(*family, 0.0, q) == doctest::Approx(4.0 * kPi).epsilon(1e-6 / (4 * kPi)));
  CHECK(enclosed_volume(*family, 0.0, q) ==
        doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-6 / (4 * kPi / 3)));
}

TEST_CASE("circle length and enclosed area") {
  auto family = make_sphere(1, TimeFn::constant(3.0));
  QuadratureSpec q;
  q.count = {64, 64, 48};
  CHECK(surface_area(*family, 0.0, q) == doctest::Approx(6.0 * kPi).epsilon(1e-12));
  CHECK(enclosed_volume(*family, 0.0, q) == doctest::Approx(9.0 * kPi).epsilon(1e-12));
}

TEST_CASE("volume integral by radial quadrature") {
  // linear expanding sphere, F = 1 and F = x^2
  auto family = make_sphere(2, TimeFn::linear(1.0, 0.3));
  const double t = 0.5;
  const double R = 1.15;
  QuadratureSpec q;
  q.count = {48, 96, 48};
  q.radial = 24;
  const double vol = volume_integral(*family, t, [](const Vec&) { return 1.0; }, q);
  CHECK(vol == doctest::Approx(4.0 * kPi / 3.0 * R * R * R).epsilon(1e-10));
  const double xx = volume_integral(*family, t, [](const Vec& x) { return x[0] * x[0]; }, q);
  CHECK(xx == doctest::Approx(4.0 * kPi / 15.0 * std::pow(R, 5)).epsilon(1e-10));
}

TEST_CASE("degenerate embedding raises") {
  Chart chart;
  chart.dim = 1;
  chart.periodic = {true, false, false};
  chart.lo = {0.0, 0.0, 0.0};
  chart.hi = {2.0 * kPi, 0.0, 0.0};
  CallableFamily collapsed(chart, [](const SurfVec&, double) {
    Vec p(2);
    p << 1.0, 2.0;  // constant map
    return p;
  });
  CHECK_THROWS_AS(fundamental_forms_param(collapsed, sv(0.5), 0.0), SingularEmbeddingError);
}

TEST_CASE("three-sphere chart round values") {
  auto family = make_sphere(3, TimeFn::constant(1.0));
  const auto f = fundamental_forms_param(*family, sv(1.2, 1.4, 0.6), 0.0);
  CHECK(f.mean_curvature == doctest::Approx(-3.0).epsilon(1e-11));
  CHECK((f.curvature + f.metric).norm() < 1e-11);
  const Vec pos = family->position(sv(1.2, 1.4, 0.6), 0.0);
  CHECK(f.normal.dot(pos) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exact derivatives agree with centered finite differences") {
  FamilySpec spec;
  spec.kind = FamilySpec::Kind::PerturbedSphere;
  spec.amplitude = TimeFn::linear(0.1, 0.05);
  spec.mode = 3;
  auto family = make_family(spec);
  const SurfVec s = sv(1.0, 2.0);
  const double t = 0.3, h = 1e-4;

  for (int i = 0; i < 2; ++i) {
    SurfVec sp = s, sm = s;
    sp[i] += h;
    sm[i] -= h;
    const Vec fd = (family->position(sp, t) - family->position(sm, t)) / (2.0 * h);
    CHECK((family->d1(s, t, i) - fd).norm() < 1e-7);
  }
  const Vec fd_t = (family->position(s, t + h) - family->position(s, t - h)) / (2.0 * h);
  CHECK((family->dt(s, t) - fd_t).norm() < 1e-7);
}
