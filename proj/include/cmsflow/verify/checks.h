#pragma once

#include "cmsflow/geom/fields.h"
#include "cmsflow/geom/param_family.h"
#include "cmsflow/geom/quadrature.h"

#include <functional>
#include <string>

namespace cms::verify {

// Residual record of one identity on one family: max residual at step h and
// h/2, plus the two-level Richardson order estimate. A check passes when the
// fine-step residual is at machine floor (closed-form / static cases) or the
// measured order reaches the nominal scheme order.
struct IdentityReport {
  std::string identity;
  std::string family;
  double h = 0.0;
  double max_residual = 0.0;       // at h
  double max_residual_fine = 0.0;  // at h/2
  double order = 0.0;              // log2(max_residual / max_residual_fine)

  bool passed(double residual_floor = 1e-10, double min_order = 1.7) const {
    return max_residual_fine < residual_floor || order >= min_order;
  }
};

struct CheckOptions {
  double t = 0.25;   // evaluation time
  double h = 1e-3;   // time FD step (order estimate also runs h/2)
  geom::GridSpec grid{{17, 33, 9}, 1e-2};
  geom::QuadratureSpec quadrature{{48, 96, 16}, 16};
  bool fourth_order_time = false;  // five-point time stencil instead of centered
  // Bending coefficient of the metric transport law; -2 is the identity,
  // anything else is a deliberate corruption used by the mutation self-test.
  double metric_bending_coefficient = -2.0;
};

using geom::AmbientField;
using geom::ChartField;

using Family = geom::ParamFamily;

// d_t S_ij = nabla_i V_j + nabla_j V_i - 2 C B_ij
IdentityReport check_metric_evolution(const Family& f, const std::string& name,
                                      const CheckOptions& opts = {});

// d_t sqrt|S| = sqrt|S| (nabla_i V^i - C B_i^i)
IdentityReport check_area_evolution(const Family& f, const std::string& name,
                                    const CheckOptions& opts = {});

// invariant time derivative of the metric vanishes
IdentityReport check_metrilinic(const Family& f, const std::string& name,
                                const CheckOptions& opts = {});

// invariant time derivative of the normal is -(nabla^i C) S_i
IdentityReport check_normal_transport(const Family& f, const std::string& name,
                                      const CheckOptions& opts = {});

// invariant time derivative of B_ij is nabla_i nabla_j C + C B_ik B^k_j
// (in the d_i N = -B_i^j S_j convention used throughout)
IdentityReport check_curvature_transport(const Family& f, const std::string& name,
                                         const CheckOptions& opts = {});

// Three pointwise relations tying the normal, the basis, and the velocity
// gradient to nabla_i C. The velocity-gradient relation carries the
// curvature-velocity coupling term B_ik V^k, which is required for families
// with tangential motion (a translating circle is a counterexample to the
// uncoupled form).
IdentityReport check_thomas(const Family& f, const std::string& name,
                            const CheckOptions& opts = {});

// d/dt int F dS = int (Fdot - C B_i^i F) dS on closed surfaces
IdentityReport check_surface_integral_theorem(const Family& f, const std::string& name,
                                              const AmbientField& F,
                                              const CheckOptions& opts = {});

// d/dt int_Omega F dOmega = int_Omega dF/dt dOmega + int_S C F dS
IdentityReport check_volume_integral_theorem(const Family& f, const std::string& name,
                                             const AmbientField& F,
                                             const CheckOptions& opts = {});

// kinetic energy rate against the curvature-coupled integrand; the density
// evolves by the continuity law (chart mass density is conserved pointwise)
IdentityReport check_kinetic_energy_variation(const Family& f, const std::string& name,
                                              const ChartField& rho0,
                                              const CheckOptions& opts = {});

// d/dt (int P dOmega + int sigma dS) via the transport theorems
IdentityReport check_potential_energy_variation(const Family& f, const std::string& name,
                                                const AmbientField& P, const ChartField& sigma,
                                                const CheckOptions& opts = {});

// Time-connection symbols Gdot^i_j = nabla_j V^i - C B^i_j at a point.
SurfMat time_connection(const Family& f, const SurfVec& s, double t);

// The same object read off from a finite difference of the tangent basis:
// Gdot^i_j = X_a^i d_t X^a_j. Used to cross-check the formula.
SurfMat time_connection_fd(const Family& f, const SurfVec& s, double t, double h);

}  // namespace cms::verify
