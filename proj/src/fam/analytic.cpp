#include "cmsflow/fam/analytic.h"

#include <cmath>
#include <numbers>

namespace cms::fam {

namespace {

constexpr double kPi = std::numbers::pi;

Vec axis(int d, int a, double scale = 1.0) {
  Vec v = Vec::Zero(d);
  v[a] = scale;
  return v;
}

geom::Chart sphere_chart(int n) {
  geom::Chart c;
  c.dim = n;
  switch (n) {
    case 1:
      c.periodic = {true, false, false};
      c.lo = {0.0, 0.0, 0.0};
      c.hi = {2.0 * kPi, 0.0, 0.0};
      break;
    case 2:
      c.periodic = {false, true, false};
      c.lo = {0.0, 0.0, 0.0};
      c.hi = {kPi, 2.0 * kPi, 0.0};
      break;
    case 3:
      c.periodic = {false, false, true};
      c.lo = {0.0, 0.0, 0.0};
      c.hi = {kPi, kPi, 2.0 * kPi};
      break;
    default:
      throw ScheduleError("sphere families support n in {1,2,3}");
  }
  return c;
}

// Per-component separable factors of the unit-sphere direction field.
// Component a of u(s) is the product of factors[a][k] over chart axes k.
std::vector<std::array<TrigPoly, 3>> unit_sphere_factors(int n) {
  const TrigPoly one = TrigPoly::constant(1.0);
  const TrigPoly c1 = TrigPoly::harmonic_cos(1);
  const TrigPoly s1 = TrigPoly::harmonic_sin(1);
  std::vector<std::array<TrigPoly, 3>> f;
  if (n == 1) {
    f.push_back({c1, one, one});
    f.push_back({s1, one, one});
  } else if (n == 2) {
    f.push_back({s1, c1, one});   // sin(theta) cos(phi)
    f.push_back({s1, s1, one});   // sin(theta) sin(phi)
    f.push_back({c1, one, one});  // cos(theta)
  } else {
    f.push_back({c1, one, one});  // cos(psi)
    f.push_back({s1, c1, one});   // sin(psi) cos(theta)
    f.push_back({s1, s1, c1});    // sin(psi) sin(theta) cos(phi)
    f.push_back({s1, s1, s1});    // sin(psi) sin(theta) sin(phi)
  }
  return f;
}

std::vector<TrigTerm> scaled_sphere_terms(int n, const TimeFn& schedule,
                                          const std::array<double, 3>& axes) {
  const int d = n + 1;
  const auto factors = unit_sphere_factors(n);
  std::vector<TrigTerm> terms;
  for (int a = 0; a < d; ++a) {
    const double scale = (n == 2) ? axes[a] : 1.0;
    terms.push_back({axis(d, a, scale), schedule, factors[a]});
  }
  return terms;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ScheduleError(what);
}

void validate_positive_schedule(const TimeFn& fn, double t0, double t1, const std::string& what) {
  for (int k = 0; k <= 64; ++k) {
    const double t = t0 + (t1 - t0) * k / 64.0;
    require(fn(t) > 0.0, what + " must stay positive on the time window");
  }
}

}  // namespace

TrigProductFamily::TrigProductFamily(geom::Chart chart, std::vector<TrigTerm> terms,
                                     double orientation)
    : ParamFamily(chart, orientation, 1e-5), terms_(std::move(terms)) {}

Vec TrigProductFamily::deriv(const SurfVec& s, double t, const std::array<int, 3>& alpha,
                             int torder) const {
  const int n = dim();
  Vec out = Vec::Zero(ambient_dim());
  for (const TrigTerm& term : terms_) {
    double v = term.schedule.eval(t, torder);
    if (v == 0.0) continue;
    for (int k = 0; k < n; ++k) v *= term.factor[k].eval(s[k], alpha[k]);
    out += v * term.direction;
  }
  return out;
}

Vec TrigProductFamily::position(const SurfVec& s, double t) const {
  return deriv(s, t, {0, 0, 0}, 0);
}

Vec TrigProductFamily::d1(const SurfVec& s, double t, int i) const {
  std::array<int, 3> a{0, 0, 0};
  a[i] = 1;
  return deriv(s, t, a, 0);
}

Vec TrigProductFamily::d2(const SurfVec& s, double t, int i, int j) const {
  std::array<int, 3> a{0, 0, 0};
  ++a[i];
  ++a[j];
  return deriv(s, t, a, 0);
}

Vec TrigProductFamily::d3(const SurfVec& s, double t, int i, int j, int k) const {
  std::array<int, 3> a{0, 0, 0};
  ++a[i];
  ++a[j];
  ++a[k];
  return deriv(s, t, a, 0);
}

Vec TrigProductFamily::dt(const SurfVec& s, double t) const { return deriv(s, t, {0, 0, 0}, 1); }

Vec TrigProductFamily::dtd1(const SurfVec& s, double t, int i) const {
  std::array<int, 3> a{0, 0, 0};
  a[i] = 1;
  return deriv(s, t, a, 1);
}

Vec TrigProductFamily::dtd2(const SurfVec& s, double t, int i, int j) const {
  std::array<int, 3> a{0, 0, 0};
  ++a[i];
  ++a[j];
  return deriv(s, t, a, 1);
}

FamilyPtr make_sphere(int n, TimeFn radius) {
  return std::make_shared<TrigProductFamily>(sphere_chart(n),
                                             scaled_sphere_terms(n, radius, {1.0, 1.0, 1.0}));
}

std::pair<TrigPoly, TrigPoly> mode_polynomial(int mode) {
  const TrigPoly c1 = TrigPoly::harmonic_cos(1);
  const TrigPoly s1 = TrigPoly::harmonic_sin(1);
  switch (mode) {
    case 0:
      // axisymmetric: u_z^2 - 1/3
      return {c1 * c1 + TrigPoly::constant(-1.0 / 3.0), TrigPoly::constant(1.0)};
    case 2:
      // u_x^2 - u_y^2 = sin^2(theta) cos(2 phi)
      return {s1 * s1, TrigPoly::harmonic_cos(2)};
    case 3:
      // (u_x^2 - u_y^2) u_z = sin^2(theta) cos(theta) cos(2 phi)
      return {s1 * s1 * c1, TrigPoly::harmonic_cos(2)};
    default:
      throw ScheduleError("unknown perturbation mode " + std::to_string(mode));
  }
}

FamilyPtr make_rotating_sphere(double R, double omega) {
  require(R > 0.0, "rotating sphere radius must be positive");
  const auto u = unit_sphere_factors(2);
  const TimeFn cw = TimeFn::cosine(R, omega);
  const TimeFn sw = TimeFn::sine(R, omega);
  std::vector<TrigTerm> terms;
  // x = R (u_x cos(wt) - u_y sin(wt)), y = R (u_x sin(wt) + u_y cos(wt)), z = R u_z
  terms.push_back({axis(3, 0), cw, u[0]});
  terms.push_back({axis(3, 0), sw.scaled(-1.0), u[1]});
  terms.push_back({axis(3, 1), sw, u[0]});
  terms.push_back({axis(3, 1), cw, u[1]});
  terms.push_back({axis(3, 2), TimeFn::constant(R), u[2]});
  return std::make_shared<TrigProductFamily>(sphere_chart(2), std::move(terms));
}

FamilyPtr make_family(const FamilySpec& spec) {
  using Kind = FamilySpec::Kind;
  require(spec.t_max >= spec.t_min, "empty time window");

  switch (spec.kind) {
    case Kind::Sphere: {
      validate_positive_schedule(spec.radius, spec.t_min, spec.t_max, "sphere radius");
      return make_sphere(spec.dim, spec.radius);
    }

    case Kind::Ellipsoid: {
      require(spec.dim == 2, "ellipsoid family is n = 2");
      for (double a : spec.axes) require(a > 0.0, "ellipsoid axes must be positive");
      validate_positive_schedule(spec.radius, spec.t_min, spec.t_max, "ellipsoid scale");
      return std::make_shared<TrigProductFamily>(
          sphere_chart(2), scaled_sphere_terms(2, spec.radius, spec.axes));
    }

    case Kind::Torus: {
      require(spec.dim == 2, "torus family is n = 2");
      require(spec.torus_major > 0.0, "torus major radius must be positive");
      for (int k = 0; k <= 64; ++k) {
        const double t = spec.t_min + (spec.t_max - spec.t_min) * k / 64.0;
        const double minor = spec.torus_minor(t);
        require(minor > 0.0 && minor < spec.torus_major,
                "torus minor radius must stay in (0, major)");
      }
      geom::Chart chart;
      chart.dim = 2;
      chart.periodic = {true, true, false};
      chart.lo = {0.0, 0.0, 0.0};
      chart.hi = {2.0 * kPi, 2.0 * kPi, 0.0};
      const TrigPoly one = TrigPoly::constant(1.0);
      const TrigPoly c1 = TrigPoly::harmonic_cos(1);
      const TrigPoly s1 = TrigPoly::harmonic_sin(1);
      const TimeFn major = TimeFn::constant(spec.torus_major);
      std::vector<TrigTerm> terms;
      // chart (theta, phi): theta winds the tube, phi the axis of revolution
      terms.push_back({axis(3, 0), major, {one, c1, one}});
      terms.push_back({axis(3, 0), spec.torus_minor, {c1, c1, one}});
      terms.push_back({axis(3, 1), major, {one, s1, one}});
      terms.push_back({axis(3, 1), spec.torus_minor, {c1, s1, one}});
      terms.push_back({axis(3, 2), spec.torus_minor, {s1, one, one}});
      // (theta, phi) ordering makes the raw cross product point inward
      return std::make_shared<TrigProductFamily>(chart, std::move(terms), -1.0);
    }

    case Kind::PerturbedSphere: {
      require(spec.dim == 2, "perturbed sphere family is n = 2");
      require(spec.base_radius > 0.0, "base radius must be positive");
      const auto [ptheta, pphi] = mode_polynomial(spec.mode);
      double amax = 0.0;
      for (int k = 0; k <= 64; ++k) {
        const double t = spec.t_min + (spec.t_max - spec.t_min) * k / 64.0;
        amax = std::max(amax, std::abs(spec.amplitude(t)));
      }
      double pmax = 0.0;
      for (int i = 0; i <= 32; ++i)
        for (int j = 0; j <= 64; ++j)
          pmax = std::max(pmax, std::abs(ptheta(kPi * i / 32.0) * pphi(2.0 * kPi * j / 64.0)));
      require(amax * pmax < 0.8, "perturbation amplitude breaks embedding regularity");

      const auto u = unit_sphere_factors(2);
      std::vector<TrigTerm> terms =
          scaled_sphere_terms(2, TimeFn::constant(spec.base_radius), {1.0, 1.0, 1.0});
      const TimeFn amp = spec.amplitude.scaled(spec.base_radius);
      for (int a = 0; a < 3; ++a) {
        terms.push_back({axis(3, a), amp, {ptheta * u[a][0], pphi * u[a][1], TrigPoly::constant(1.0)}});
      }
      return std::make_shared<TrigProductFamily>(sphere_chart(2), std::move(terms));
    }

    case Kind::TranslatingSurface: {
      require(spec.base_radius > 0.0, "base radius must be positive");
      std::vector<TrigTerm> terms =
          scaled_sphere_terms(spec.dim, TimeFn::constant(spec.base_radius), spec.axes);
      Vec u = Vec::Zero(spec.dim + 1);
      for (int a = 0; a < spec.dim + 1 && a < 3; ++a) u[a] = spec.translation_velocity[a];
      const TrigPoly one = TrigPoly::constant(1.0);
      terms.push_back({u, TimeFn::linear(0.0, 1.0), {one, one, one}});
      return std::make_shared<TrigProductFamily>(sphere_chart(spec.dim), std::move(terms));
    }
  }
  throw ScheduleError("unknown family kind");
}

CmcSphere cmc_sphere_oracle(double R, int n) {
  if (!(R > 0.0)) throw ScheduleError("sphere radius must be positive");
  return {-static_cast<double>(n) / R, -1.0 / R};
}

}  // namespace cms::fam
