#pragma once

#include <vector>

namespace cms::fam {

// One-variable trigonometric polynomial
//   f(x) = c0 + sum_k ( a_k cos(kx) + b_k sin(kx) ),
// closed under products and exact under differentiation to any order. The
// analytic family embeddings are built from per-coordinate factors of this
// form, which is what makes all their chart derivatives exact.
class TrigPoly {
 public:
  TrigPoly() = default;

  static TrigPoly constant(double c);
  static TrigPoly harmonic_cos(int k, double amp = 1.0);
  static TrigPoly harmonic_sin(int k, double amp = 1.0);

  double eval(double x, int order = 0) const;
  double operator()(double x) const { return eval(x, 0); }

  TrigPoly& operator+=(const TrigPoly& o);
  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);
  TrigPoly scaled(double f) const;

  bool is_constant_one() const;

 private:
  void add_cos(int k, double v);
  void add_sin(int k, double v);

  double c0_ = 0.0;
  std::vector<double> cos_;  // coefficient of cos(kx) at index k-1
  std::vector<double> sin_;  // coefficient of sin(kx) at index k-1
};

}  // namespace cms::fam
