#include "cmsflow/flow/flow.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cms::flow {

using geom::DiscreteSurface;
using geom::MeshForms;
using geom::MeshTopology;

namespace {

constexpr double kPi = std::numbers::pi;

double equivalent_round_area(const DiscreteSurface& surface, double enclosed) {
  if (surface.kind == DiscreteSurface::Kind::Curve) {
    return 2.0 * std::sqrt(kPi * enclosed);  // perimeter of the equal-area disk
  }
  return std::cbrt(36.0 * kPi * enclosed * enclosed);  // area of the equal-volume ball
}

struct HStats {
  double mean = 0.0;
  double relstd = 0.0;
};

HStats h_statistics(const MeshForms& forms) {
  double wsum = 0.0, mean = 0.0;
  const size_t nv = forms.mean_curvature.size();
  for (size_t v = 0; v < nv; ++v) {
    wsum += forms.vertex_area[v];
    mean += forms.vertex_area[v] * forms.mean_curvature[v];
  }
  mean /= wsum;
  double var = 0.0;
  for (size_t v = 0; v < nv; ++v) {
    const double d = forms.mean_curvature[v] - mean;
    var += forms.vertex_area[v] * d * d;
  }
  HStats out;
  out.mean = mean;
  out.relstd = std::sqrt(var / wsum) / std::abs(mean);
  return out;
}

}  // namespace

FlowLaw parse_flow_law(const std::string& name) {
  if (name == "mcf") return FlowLaw::Mcf;
  if (name == "vpmcf") return FlowLaw::VolumePreservingMcf;
  if (name == "yl") return FlowLaw::YoungLaplaceRelaxation;
  throw std::invalid_argument("unknown flow law: " + name);
}

MeshVelocity velocity_law(const MeshForms& forms, const FlowConfig& config) {
  const size_t nv = forms.mean_curvature.size();
  MeshVelocity vel;
  vel.normal_speed.resize(nv);
  vel.tangential.assign(nv, Eigen::Vector3d::Zero());

  double p_t = 0.0;
  if (config.law != FlowLaw::Mcf) {
    double wsum = 0.0, hsum = 0.0;
    for (size_t v = 0; v < nv; ++v) {
      wsum += forms.vertex_area[v];
      hsum += forms.vertex_area[v] * forms.mean_curvature[v];
    }
    p_t = config.sigma * hsum / wsum;
  }
  vel.multiplier = p_t;
  for (size_t v = 0; v < nv; ++v)
    vel.normal_speed[v] = config.mu * (config.sigma * forms.mean_curvature[v] - p_t);
  return vel;
}

StepResult step(DiscreteSurface& surface, const MeshTopology& topo, const MeshForms& forms,
                const FlowConfig& config, double target_volume, double remaining_time) {
  if (forms.min_edge < config.min_edge_floor)
    throw MeshQualityError("edge length collapsed below floor");

  const MeshVelocity vel = velocity_law(forms, config);
  double max_c = 0.0;
  for (double c : vel.normal_speed) max_c = std::max(max_c, std::abs(c));

  double dt;
  if (config.fixed_dt > 0.0) {
    dt = config.fixed_dt;
  } else {
    const double parabolic = forms.min_edge * forms.min_edge / (config.mu * config.sigma);
    const double advective =
        max_c > 0.0 ? forms.min_edge / max_c : std::numeric_limits<double>::infinity();
    dt = config.safety * std::min(parabolic, advective);
  }
  dt = std::min({dt, config.max_dt, remaining_time});
  if (!(dt > config.dt_floor)) throw StepCollapseError("time step collapsed: dt = " + std::to_string(dt));

  const size_t nv = surface.vertices.size();
  StepResult result;
  result.dt = dt;
  for (size_t v = 0; v < nv; ++v) {
    const Eigen::Vector3d dx = dt * vel.normal_speed[v] * forms.normal[v];
    surface.vertices[v] += dx;
    result.max_displacement = std::max(result.max_displacement, dx.norm());
  }

  if (config.tangential_smoothing) {
    // uniform-Laplacian offset projected to the tangent plane; the weight is
    // tied to the step fraction so the shape error stays O(dt^2)
    const double coef = std::min(0.25, config.smoothing_weight * config.safety);
    std::vector<Eigen::Vector3d> offset(nv);
    for (size_t v = 0; v < nv; ++v) {
      const auto& ring = topo.vertex_neighbors[v];
      Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
      for (int w : ring) centroid += surface.vertices[w];
      centroid /= static_cast<double>(ring.size());
      const Eigen::Vector3d d = centroid - surface.vertices[v];
      offset[v] = coef * (d - forms.normal[v].dot(d) * forms.normal[v]);
    }
    for (size_t v = 0; v < nv; ++v) {
      surface.vertices[v] += offset[v];
      result.max_displacement = std::max(result.max_displacement, offset[v].norm());
    }
  }

  if (target_volume > 0.0) {
    // one Newton iteration of a uniform normal offset; the remaining error
    // is quadratic in the (already O(dt^2)) volume defect
    const MeshForms after = mesh_forms(surface, topo);
    double wsum = 0.0;
    for (const auto& g : after.grad_enclosed) wsum += g.norm();
    const double delta = (target_volume - after.enclosed) / wsum;
    for (size_t v = 0; v < nv; ++v) surface.vertices[v] += delta * after.normal[v];
    result.max_displacement = std::max(result.max_displacement, std::abs(delta));
  }
  return result;
}

StepRecord make_record(const DiscreteSurface& surface, const MeshTopology& topo,
                       const MeshForms& forms, const FlowConfig& config, long step, double time) {
  StepRecord rec;
  rec.step = step;
  rec.time = time;
  rec.area = forms.total_measure;
  rec.volume = forms.enclosed;
  rec.chi = topo.euler_characteristic;
  const HStats hs = h_statistics(forms);
  rec.h_mean = hs.mean;
  rec.h_relstd = hs.relstd;
  rec.energy = config.sigma * forms.total_measure;
  rec.sphericity = equivalent_round_area(surface, forms.enclosed) / forms.total_measure;
  const MeshVelocity vel = velocity_law(forms, config);
  for (double c : vel.normal_speed) rec.max_c = std::max(rec.max_c, std::abs(c));
  rec.gb_residual = gauss_bonnet_residual_from_forms(surface, topo, forms);
  return rec;
}

RunResult run_to_equilibrium(DiscreteSurface surface, const FlowConfig& config,
                             const SnapshotSink& snapshot, long snapshot_every) {
  const MeshTopology topo = geom::build_topology(surface);
  RunResult result;

  MeshForms forms = mesh_forms(surface, topo);
  const double target_volume =
      (config.law != FlowLaw::Mcf && config.conserve_volume_exactly) ? forms.enclosed : -1.0;

  long step_index = 0;
  double time = 0.0;
  const bool equilibrium_law = config.law != FlowLaw::Mcf;

  while (true) {
    const StepRecord rec = make_record(surface, topo, forms, config, step_index, time);
    result.diagnostics.records.push_back(rec);
    if (snapshot && snapshot_every > 0 && step_index % snapshot_every == 0)
      snapshot(step_index, surface);

    if (equilibrium_law && rec.h_relstd < config.tau_h) {
      result.converged = true;
      break;
    }
    if (step_index >= config.max_steps) break;
    const double remaining = config.max_time - time;
    if (remaining <= config.dt_floor) break;

    const StepResult sr = step(surface, topo, forms, config, target_volume, remaining);
    time += sr.dt;
    ++step_index;
    forms = mesh_forms(surface, topo);

    result.diagnostics.records.back().max_displacement = sr.max_displacement;
  }

  result.surface = std::move(surface);
  result.steps = step_index;
  result.time = time;

  if (result.converged) {
    const StepRecord& last = result.diagnostics.records.back();
    EquilibriumCertificate& cert = result.certificate;
    cert.h_mean = last.h_mean;
    cert.h_relstd = last.h_relstd;
    cert.pressure = config.sigma * last.h_mean;
    const ResidualSummary yl =
        young_laplace_residual(forms.mean_curvature, cert.pressure, config.sigma);
    cert.yl_max = yl.max_abs;
    cert.yl_rms = yl.rms;
    cert.steps = step_index;
    cert.time = time;

    if (topo.euler_characteristic == 2 || topo.kind == DiscreteSurface::Kind::Curve) {
      double wsum = 0.0;
      Eigen::Vector3d c = Eigen::Vector3d::Zero();
      for (size_t v = 0; v < result.surface.vertices.size(); ++v) {
        wsum += forms.vertex_area[v];
        c += forms.vertex_area[v] * result.surface.vertices[v];
      }
      c /= wsum;
      double radius = 0.0;
      for (size_t v = 0; v < result.surface.vertices.size(); ++v)
        radius += forms.vertex_area[v] * (result.surface.vertices[v] - c).norm();
      radius /= wsum;
      double dev = 0.0;
      for (const auto& x : result.surface.vertices)
        dev = std::max(dev, std::abs((x - c).norm() - radius));
      cert.center = c;
      cert.radius = radius;
      cert.max_radial_deviation = dev / radius;
      cert.issued = true;
      cert.note = "constant mean curvature within tolerance; round equilibrium";
    } else {
      cert.issued = false;
      cert.note = "equilibrium reached but input is not simply connected (chi = " +
                  std::to_string(topo.euler_characteristic) + "); no round certificate";
    }
  }
  return result;
}

EnergyBreakdown lagrangian_energy(const MeshForms& forms, std::span<const double> density,
                                  const MeshVelocity& velocity, const FlowConfig& config) {
  EnergyBreakdown out;
  const size_t nv = forms.vertex_area.size();
  for (size_t v = 0; v < nv; ++v) {
    const double speed2 = velocity.normal_speed[v] * velocity.normal_speed[v] +
                          velocity.tangential[v].squaredNorm();
    out.kinetic += 0.5 * density[v] * speed2 * forms.vertex_area[v];
  }
  out.potential = velocity.multiplier * forms.enclosed + config.sigma * forms.total_measure;
  out.lagrangian = out.kinetic - out.potential;
  return out;
}

ResidualSummary young_laplace_residual(std::span<const double> mean_curvature, double pressure,
                                       double sigma) {
  ResidualSummary out;
  out.field.reserve(mean_curvature.size());
  double sq = 0.0;
  for (double h : mean_curvature) {
    const double r = pressure - sigma * h;
    out.field.push_back(r);
    out.max_abs = std::max(out.max_abs, std::abs(r));
    sq += r * r;
  }
  out.rms = mean_curvature.empty() ? 0.0 : std::sqrt(sq / mean_curvature.size());
  return out;
}

}  // namespace cms::flow
