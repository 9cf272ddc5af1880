#pragma once

#include "cmsflow/fam/schedule.h"
#include "cmsflow/fam/trig.h"
#include "cmsflow/geom/forms.h"
#include "cmsflow/geom/param_family.h"

#include <array>
#include <memory>
#include <string>
#include <vector>

namespace cms::fam {

// One additive term of an embedding: direction * schedule(t) * prod_k factor_k(s_k).
struct TrigTerm {
  Vec direction;
  TimeFn schedule;
  std::array<TrigPoly, 3> factor;
};

// Embedding R(s,t) = sum of separable trig-product terms. Every chart and
// time derivative is exact, which is what qualifies these families as
// verification oracles.
class TrigProductFamily final : public geom::ParamFamily {
 public:
  TrigProductFamily(geom::Chart chart, std::vector<TrigTerm> terms, double orientation = 1.0);

  Vec position(const SurfVec& s, double t) const override;
  Vec d1(const SurfVec& s, double t, int i) const override;
  Vec d2(const SurfVec& s, double t, int i, int j) const override;
  Vec d3(const SurfVec& s, double t, int i, int j, int k) const override;
  Vec dt(const SurfVec& s, double t) const override;
  Vec dtd1(const SurfVec& s, double t, int i) const override;
  Vec dtd2(const SurfVec& s, double t, int i, int j) const override;
  bool exact_derivatives() const override { return true; }

 private:
  Vec deriv(const SurfVec& s, double t, const std::array<int, 3>& alpha, int torder) const;
  std::vector<TrigTerm> terms_;
};

struct FamilySpec {
  enum class Kind { Sphere, Ellipsoid, Torus, PerturbedSphere, TranslatingSurface };

  Kind kind = Kind::Sphere;
  int dim = 2;  // spheres support n = 1, 2, 3; other kinds are n = 2

  TimeFn radius = TimeFn::constant(1.0);  // sphere radius / ellipsoid uniform scale
  std::array<double, 3> axes{1.0, 1.0, 1.0};

  double torus_major = 2.0;
  TimeFn torus_minor = TimeFn::constant(0.5);

  double base_radius = 1.0;           // perturbed-sphere / translating base
  TimeFn amplitude = TimeFn::zero();  // perturbed-sphere mode amplitude
  int mode = 3;                       // perturbation mode id (see mode_polynomial)
  std::array<double, 3> translation_velocity{0.0, 0.0, 0.0};

  // Window over which the schedule must keep the embedding regular.
  double t_min = 0.0;
  double t_max = 1.0;
};

using FamilyPtr = std::shared_ptr<const geom::ParamFamily>;

// Build the family and validate regularity of the schedule over
// [t_min, t_max]; throws ScheduleError for irregular specs.
FamilyPtr make_family(const FamilySpec& spec);

// Sphere of radius R(t) in any supported dimension (chart listed in header
// notes: angle for n=1, (theta,phi) for n=2, (psi,theta,phi) for n=3).
FamilyPtr make_sphere(int n, TimeFn radius);

// Rigid rotation of a radius-R sphere about the z axis with angular rate
// omega; tangential Killing velocity field, C = 0.
FamilyPtr make_rotating_sphere(double R, double omega);

// Separable perturbation profile p(theta, phi) for the given mode id,
// restricted to |p| <= 1. Returned as the (theta, phi) factor pair.
std::pair<TrigPoly, TrigPoly> mode_polynomial(int mode);

struct CmcSphere {
  double mean_curvature;        // -n / R
  double curvature_metric_ratio;  // B_ij / S_ij = -1 / R
};

CmcSphere cmc_sphere_oracle(double R, int n);

}  // namespace cms::fam
