#pragma once

#include "cmsflow/geom/core.h"

#include <array>
#include <functional>
#include <memory>

namespace cms::geom {

// Coordinate chart of a parametric family. Periodic axes wrap with period
// hi - lo; non-periodic axes are open intervals sampled away from the ends
// (coordinate singularities such as sphere poles sit on the excluded ends).
struct Chart {
  int dim = 2;
  std::array<bool, 3> periodic{false, false, false};
  std::array<double, 3> lo{0.0, 0.0, 0.0};
  std::array<double, 3> hi{1.0, 1.0, 1.0};
};

// Time-dependent embedding R(s, t) of a closed n-manifold in R^{n+1}.
//
// Subclasses either provide exact partial derivatives (analytic families) or
// inherit the centered finite-difference fallbacks below, which are accurate
// to O(h^2) in fd_step per differentiation level. Mixed and third derivatives
// through the fallback path lose accuracy accordingly; identity verification
// uses exact-derivative families.
class ParamFamily {
 public:
  virtual ~ParamFamily() = default;

  int dim() const { return chart_.dim; }
  int ambient_dim() const { return chart_.dim + 1; }
  const Chart& chart() const { return chart_; }

  // Sign applied to the generalized cross product of the tangent basis so the
  // unit normal points outward.
  double orientation() const { return orientation_; }

  double fd_step() const { return fd_step_; }
  void set_fd_step(double h) { fd_step_ = h; }

  virtual Vec position(const SurfVec& s, double t) const = 0;

  virtual Vec d1(const SurfVec& s, double t, int i) const;
  virtual Vec d2(const SurfVec& s, double t, int i, int j) const;
  virtual Vec d3(const SurfVec& s, double t, int i, int j, int k) const;
  virtual Vec dt(const SurfVec& s, double t) const;
  virtual Vec dtd1(const SurfVec& s, double t, int i) const;
  virtual Vec dtd2(const SurfVec& s, double t, int i, int j) const;

  virtual bool exact_derivatives() const { return false; }

 protected:
  ParamFamily(Chart chart, double orientation, double fd_step)
      : chart_(chart), orientation_(orientation), fd_step_(fd_step) {}

 private:
  Chart chart_;
  double orientation_ = 1.0;
  double fd_step_ = 1e-5;
};

// Embedding given by an arbitrary callable; all derivatives by finite
// differences. This is the substrate for user-supplied or reparametrized
// charts where no closed form is available.
class CallableFamily final : public ParamFamily {
 public:
  using Fn = std::function<Vec(const SurfVec&, double)>;

  CallableFamily(Chart chart, Fn fn, double fd_step = 1e-4, double orientation = 1.0)
      : ParamFamily(chart, orientation, fd_step), fn_(std::move(fn)) {}

  Vec position(const SurfVec& s, double t) const override { return fn_(s, t); }

 private:
  Fn fn_;
};

}  // namespace cms::geom
