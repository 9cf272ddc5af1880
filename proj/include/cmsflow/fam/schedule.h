#pragma once

#include <initializer_list>
#include <vector>

namespace cms::fam {

// Time schedule closed under differentiation: a sum of atoms
//   amp * t^p * exp(rate * t) * cos(omega * t + phase).
// Covers the polynomial, exponential-relaxation, and oscillatory schedules
// used by the analytic families, with exact derivatives of any order.
class TimeFn {
 public:
  TimeFn() = default;

  static TimeFn zero() { return TimeFn(); }
  static TimeFn constant(double c);
  static TimeFn linear(double c0, double c1);          // c0 + c1 t
  static TimeFn poly(std::initializer_list<double>);   // sum c_k t^k
  static TimeFn exp_decay(double amp, double rate);    // amp e^{-rate t}
  static TimeFn cosine(double amp, double omega, double phase = 0.0);
  static TimeFn sine(double amp, double omega);

  double eval(double t, int order = 0) const;
  double operator()(double t) const { return eval(t, 0); }

  TimeFn derivative() const;
  TimeFn scaled(double f) const;
  TimeFn& operator+=(const TimeFn& o);
  friend TimeFn operator+(TimeFn a, const TimeFn& b) { return a += b; }

  bool is_constant() const;

 private:
  struct Atom {
    double amp = 0.0;
    int power = 0;
    double rate = 0.0;
    double omega = 0.0;
    double phase = 0.0;
  };
  std::vector<Atom> atoms_;
};

}  // namespace cms::fam
