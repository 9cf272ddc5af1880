#include "cmsflow/fam/schedule.h"

#include <cmath>
#include <numbers>

namespace cms::fam {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
}

TimeFn TimeFn::constant(double c) {
  TimeFn f;
  if (c != 0.0) f.atoms_.push_back({c, 0, 0.0, 0.0, 0.0});
  return f;
}

TimeFn TimeFn::linear(double c0, double c1) {
  TimeFn f = constant(c0);
  if (c1 != 0.0) f.atoms_.push_back({c1, 1, 0.0, 0.0, 0.0});
  return f;
}

TimeFn TimeFn::poly(std::initializer_list<double> coeffs) {
  TimeFn f;
  int p = 0;
  for (double c : coeffs) {
    if (c != 0.0) f.atoms_.push_back({c, p, 0.0, 0.0, 0.0});
    ++p;
  }
  return f;
}

TimeFn TimeFn::exp_decay(double amp, double rate) {
  TimeFn f;
  if (amp != 0.0) f.atoms_.push_back({amp, 0, -rate, 0.0, 0.0});
  return f;
}

TimeFn TimeFn::cosine(double amp, double omega, double phase) {
  TimeFn f;
  if (amp != 0.0) f.atoms_.push_back({amp, 0, 0.0, omega, phase});
  return f;
}

TimeFn TimeFn::sine(double amp, double omega) {
  // sin(wt) = cos(wt - pi/2)
  return cosine(amp, omega, -kHalfPi);
}

double TimeFn::eval(double t, int order) const {
  if (order == 0) {
    double out = 0.0;
    for (const Atom& a : atoms_) {
      double v = a.amp;
      if (a.power > 0) v *= std::pow(t, a.power);
      if (a.rate != 0.0) v *= std::exp(a.rate * t);
      if (a.omega != 0.0 || a.phase != 0.0) v *= std::cos(a.omega * t + a.phase);
      out += v;
    }
    return out;
  }
  return derivative().eval(t, order - 1);
}

TimeFn TimeFn::derivative() const {
  TimeFn out;
  for (const Atom& a : atoms_) {
    if (a.power > 0) out.atoms_.push_back({a.amp * a.power, a.power - 1, a.rate, a.omega, a.phase});
    if (a.rate != 0.0) out.atoms_.push_back({a.amp * a.rate, a.power, a.rate, a.omega, a.phase});
    if (a.omega != 0.0) {
      // d/dt cos(wt + p) = w cos(wt + p + pi/2)
      out.atoms_.push_back({a.amp * a.omega, a.power, a.rate, a.omega, a.phase + kHalfPi});
    }
  }
  return out;
}

TimeFn TimeFn::scaled(double f) const {
  TimeFn out = *this;
  for (Atom& a : out.atoms_) a.amp *= f;
  return out;
}

TimeFn& TimeFn::operator+=(const TimeFn& o) {
  atoms_.insert(atoms_.end(), o.atoms_.begin(), o.atoms_.end());
  return *this;
}

bool TimeFn::is_constant() const {
  for (const Atom& a : atoms_) {
    if (a.amp == 0.0) continue;
    if (a.power != 0 || a.rate != 0.0 || a.omega != 0.0) return false;
  }
  return true;
}

}  // namespace cms::fam
