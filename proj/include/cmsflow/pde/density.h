#pragma once

#include "cmsflow/geom/fields.h"
#include "cmsflow/geom/mesh.h"
#include "cmsflow/geom/param_family.h"
#include "cmsflow/geom/quadrature.h"

#include <span>
#include <vector>

namespace cms::pde {

// Scalar field sampled per vertex with the matching area weights.
struct SurfaceField {
  std::vector<double> values;
  std::vector<double> weights;
};

double total_mass(const SurfaceField& field);

SurfaceField uniform_field(const geom::MeshForms& forms, double value);

// Lagrangian mass-lumped transport: each vertex carries mass
// m_v = rho_v * a_v unchanged; the new density is m_v / a_v'. Exactly
// conservative by construction. Throws FieldDomainError on negative input.
SurfaceField advect_density_lagrangian(const SurfaceField& rho,
                                       const geom::MeshForms& after);

// Convenience form of the transport operation: moves a copy of the surface
// by dt along the given normal speeds and re-lumps the density.
struct AdvectionResult {
  geom::DiscreteSurface surface;
  geom::MeshForms forms;
  SurfaceField density;
};

AdvectionResult advect_density(const geom::DiscreteSurface& surface,
                               const geom::MeshTopology& topo, const geom::MeshForms& forms,
                               const SurfaceField& rho, std::span<const double> normal_speed,
                               double dt);

// Chart-sampled explicit Euler of the full local continuity law
//   d_t rho = V^k d_k rho - (1/sqrt|S|) d_i (sqrt|S| rho V^i) + rho C B_i^i
// on a uniform tensor grid (periodic axes wrap; non-periodic axes use
// one-sided stencils at the first/last interior rows). Cross-validates the
// mass-lumped scheme; conserves total mass to quadrature order.
class ChartDensity {
 public:
  ChartDensity(std::shared_ptr<const geom::ParamFamily> family, const geom::GridSpec& grid,
               double t0, const geom::ChartField& rho0);

  void advance(double dt);  // one explicit Euler step; throws on negative density

  double time() const { return time_; }
  const std::vector<SurfVec>& samples() const { return samples_; }
  const std::vector<double>& values() const { return values_; }

  // quadrature of rho dS on the sample grid
  double total_mass() const;

  double max_abs_error(const geom::ChartField& reference) const;

 private:
  int index(const std::array<int, 3>& id) const;
  std::shared_ptr<const geom::ParamFamily> family_;
  std::array<int, 3> count_{1, 1, 1};
  std::array<double, 3> spacing_{0.0, 0.0, 0.0};
  std::array<bool, 3> periodic_{false, false, false};
  std::vector<SurfVec> samples_;
  std::vector<double> values_;
  std::vector<double> quad_weight_;  // chart measure per node
  double time_ = 0.0;
};

// Pointwise residuals of the momentum balance on a family at time t.
// tangential_i = rho (inv V_i + V^j nab_j V_i - C d_i C - C V^j B_ij) + d_i sigma
// bracket      = rho (inv C + 2 V^i d_i C + V^i V^j B_ij) - d_t sigma - P + sigma B_i^i
// The bracket must vanish (and in general be constant along the flow lines)
// when the normal balance holds; at equilibrium both are zero.
struct MomentumResiduals {
  std::vector<SurfVec> tangential;
  std::vector<double> normal_bracket;
  std::vector<SurfVec> samples;
  double max_tangential = 0.0;
  double max_bracket = 0.0;
};

struct MomentumFields {
  geom::ChartField density;  // rho
  geom::ChartField sigma;
  geom::AmbientField pressure;
};

// h is the time stencil for the invariant derivatives; h <= 0 raises
// StencilError (a second time level is required).
MomentumResiduals momentum_residuals(const geom::ParamFamily& family,
                                     const MomentumFields& fields, double t, double h,
                                     const geom::GridSpec& grid = {});

}  // namespace cms::pde
