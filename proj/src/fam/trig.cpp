#include "cmsflow/fam/trig.h"

#include <cmath>
#include <cstdlib>

namespace cms::fam {

TrigPoly TrigPoly::constant(double c) {
  TrigPoly p;
  p.c0_ = c;
  return p;
}

TrigPoly TrigPoly::harmonic_cos(int k, double amp) {
  TrigPoly p;
  p.add_cos(k, amp);
  return p;
}

TrigPoly TrigPoly::harmonic_sin(int k, double amp) {
  TrigPoly p;
  p.add_sin(k, amp);
  return p;
}

void TrigPoly::add_cos(int k, double v) {
  if (v == 0.0) return;
  k = std::abs(k);  // cos is even
  if (k == 0) {
    c0_ += v;
    return;
  }
  if (static_cast<int>(cos_.size()) < k) cos_.resize(k, 0.0);
  cos_[k - 1] += v;
}

void TrigPoly::add_sin(int k, double v) {
  if (v == 0.0 || k == 0) return;
  if (k < 0) {  // sin is odd
    k = -k;
    v = -v;
  }
  if (static_cast<int>(sin_.size()) < k) sin_.resize(k, 0.0);
  sin_[k - 1] += v;
}

double TrigPoly::eval(double x, int order) const {
  double out = (order == 0) ? c0_ : 0.0;
  const int kc = static_cast<int>(cos_.size());
  const int ks = static_cast<int>(sin_.size());
  const int kmax = kc > ks ? kc : ks;
  for (int k = 1; k <= kmax; ++k) {
    double a = (k <= kc) ? cos_[k - 1] : 0.0;
    double b = (k <= ks) ? sin_[k - 1] : 0.0;
    if (a == 0.0 && b == 0.0) continue;
    // d/dx [a cos(kx) + b sin(kx)] = (kb) cos(kx) + (-ka) sin(kx)
    for (int r = 0; r < order; ++r) {
      const double an = k * b;
      const double bn = -k * a;
      a = an;
      b = bn;
    }
    out += a * std::cos(k * x) + b * std::sin(k * x);
  }
  return out;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
  c0_ += o.c0_;
  for (size_t k = 0; k < o.cos_.size(); ++k) add_cos(static_cast<int>(k + 1), o.cos_[k]);
  for (size_t k = 0; k < o.sin_.size(); ++k) add_sin(static_cast<int>(k + 1), o.sin_[k]);
  return *this;
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
  TrigPoly out;
  out.c0_ = a.c0_ * b.c0_;
  // constant x harmonic
  for (size_t k = 0; k < b.cos_.size(); ++k) out.add_cos(static_cast<int>(k + 1), a.c0_ * b.cos_[k]);
  for (size_t k = 0; k < b.sin_.size(); ++k) out.add_sin(static_cast<int>(k + 1), a.c0_ * b.sin_[k]);
  for (size_t k = 0; k < a.cos_.size(); ++k) out.add_cos(static_cast<int>(k + 1), b.c0_ * a.cos_[k]);
  for (size_t k = 0; k < a.sin_.size(); ++k) out.add_sin(static_cast<int>(k + 1), b.c0_ * a.sin_[k]);
  // product-to-sum for harmonic x harmonic
  for (size_t i = 0; i < a.cos_.size(); ++i) {
    if (a.cos_[i] == 0.0) continue;
    const int k = static_cast<int>(i + 1);
    for (size_t j = 0; j < b.cos_.size(); ++j) {
      const int m = static_cast<int>(j + 1);
      const double v = 0.5 * a.cos_[i] * b.cos_[j];
      out.add_cos(k - m, v);
      out.add_cos(k + m, v);
    }
    for (size_t j = 0; j < b.sin_.size(); ++j) {
      const int m = static_cast<int>(j + 1);
      const double v = 0.5 * a.cos_[i] * b.sin_[j];
      out.add_sin(k + m, v);
      out.add_sin(m - k, v);
    }
  }
  for (size_t i = 0; i < a.sin_.size(); ++i) {
    if (a.sin_[i] == 0.0) continue;
    const int k = static_cast<int>(i + 1);
    for (size_t j = 0; j < b.cos_.size(); ++j) {
      const int m = static_cast<int>(j + 1);
      const double v = 0.5 * a.sin_[i] * b.cos_[j];
      out.add_sin(k + m, v);
      out.add_sin(k - m, v);
    }
    for (size_t j = 0; j < b.sin_.size(); ++j) {
      const int m = static_cast<int>(j + 1);
      const double v = 0.5 * a.sin_[i] * b.sin_[j];
      out.add_cos(k - m, v);
      out.add_cos(k + m, -v);
    }
  }
  return out;
}

TrigPoly TrigPoly::scaled(double f) const {
  TrigPoly out = *this;
  out.c0_ *= f;
  for (double& v : out.cos_) v *= f;
  for (double& v : out.sin_) v *= f;
  return out;
}

bool TrigPoly::is_constant_one() const {
  if (c0_ != 1.0) return false;
  for (double v : cos_)
    if (v != 0.0) return false;
  for (double v : sin_)
    if (v != 0.0) return false;
  return true;
}

}  // namespace cms::fam
