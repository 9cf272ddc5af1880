#pragma once

#include "cmsflow/geom/mesh.h"

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace cms::flow {

enum class FlowLaw { Mcf, VolumePreservingMcf, YoungLaplaceRelaxation };

FlowLaw parse_flow_law(const std::string& name);  // mcf | vpmcf | yl

struct FlowConfig {
  FlowLaw law = FlowLaw::VolumePreservingMcf;
  double sigma = 1.0;  // surface tension, energy per area
  double mu = 1.0;     // mobility, speed per unit curvature force

  // step controller: dt = safety * min(min_edge^2 / (mu sigma), min_edge / max|C|)
  double safety = 0.2;
  double fixed_dt = 0.0;  // > 0 overrides the controller (trajectory studies)
  double max_dt = std::numeric_limits<double>::infinity();

  // stop criteria
  double tau_h = 1e-3;  // relative std of H declaring equilibrium
  long max_steps = 100000;
  double max_time = std::numeric_limits<double>::infinity();

  bool tangential_smoothing = false;
  double smoothing_weight = 0.2;  // fraction of the step bound, <= 0.25 effective

  // For the volume-preserving laws, a uniform normal offset restores the
  // enclosed volume exactly after each explicit step (the multiplier already
  // makes the quadrature flux vanish; this removes the O(dt^2) remainder).
  bool conserve_volume_exactly = true;

  double dt_floor = 1e-12;
  double min_edge_floor = 1e-9;
};

struct StepRecord {
  long step = 0;
  double time = 0.0;
  double area = 0.0;    // curve: length
  double volume = 0.0;  // curve: enclosed area
  int chi = 0;
  double h_mean = 0.0;
  double h_relstd = 0.0;
  double energy = 0.0;      // sigma * area
  double sphericity = 0.0;  // area of the volume-equivalent sphere / area
  double max_c = 0.0;
  double max_displacement = 0.0;
  double gb_residual = 0.0;
  double mass_total = std::numeric_limits<double>::quiet_NaN();  // set by density-coupled runs
};

struct FlowDiagnostics {
  std::vector<StepRecord> records;
};

struct EquilibriumCertificate {
  bool issued = false;
  double h_mean = 0.0;
  double h_relstd = 0.0;
  double pressure = 0.0;  // sigma * h_mean, the multiplier at equilibrium
  double yl_max = 0.0;    // max |pressure - sigma H_v|
  double yl_rms = 0.0;
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  double radius = 0.0;                // best-fit (area-weighted mean distance)
  double max_radial_deviation = 0.0;  // relative
  long steps = 0;
  double time = 0.0;
  std::string note;
};

struct MeshVelocity {
  std::vector<double> normal_speed;            // C per vertex
  std::vector<Eigen::Vector3d> tangential;     // ambient tangential part per vertex
  double multiplier = 0.0;                     // P_t (0 for plain mcf)
};

// mcf: C = mu sigma H. Volume-preserving laws: C = mu (sigma H - P_t) with
// P_t the area-weighted mean of sigma H, so the discrete flux sum(C_v a_v)
// vanishes and sigma*Area descends exactly (weighted Cauchy-Schwarz).
MeshVelocity velocity_law(const geom::MeshForms& forms, const FlowConfig& config);

struct StepResult {
  double dt = 0.0;
  double max_displacement = 0.0;
};

// One explicit step from the given start-of-step forms; moves vertices in
// place. target_volume < 0 disables the volume restoration.
StepResult step(geom::DiscreteSurface& surface, const geom::MeshTopology& topo,
                const geom::MeshForms& forms, const FlowConfig& config, double target_volume,
                double remaining_time);

struct RunResult {
  geom::DiscreteSurface surface;
  FlowDiagnostics diagnostics;
  EquilibriumCertificate certificate;
  bool converged = false;
  long steps = 0;
  double time = 0.0;
};

using SnapshotSink = std::function<void(long step, const geom::DiscreteSurface&)>;

// Iterates step() until rel-std(H) < tau_h (volume-preserving laws) or the
// budget is exhausted. Throws MeshQualityError / StepCollapseError on
// degeneration; the Euler characteristic is re-derived every step.
RunResult run_to_equilibrium(geom::DiscreteSurface surface, const FlowConfig& config,
                             const SnapshotSink& snapshot = nullptr, long snapshot_every = 0);

StepRecord make_record(const geom::DiscreteSurface& surface, const geom::MeshTopology& topo,
                       const geom::MeshForms& forms, const FlowConfig& config, long step,
                       double time);

struct EnergyBreakdown {
  double kinetic = 0.0;
  double potential = 0.0;
  double lagrangian = 0.0;  // kinetic - potential
};

EnergyBreakdown lagrangian_energy(const geom::MeshForms& forms, std::span<const double> density,
                                  const MeshVelocity& velocity, const FlowConfig& config);

struct ResidualSummary {
  std::vector<double> field;  // P - sigma H_v
  double max_abs = 0.0;
  double rms = 0.0;
};

ResidualSummary young_laplace_residual(std::span<const double> mean_curvature, double pressure,
                                       double sigma);

}  // namespace cms::flow
