#include "cmsflow/pde/density.h"

#include "cmsflow/geom/forms.h"
#include "cmsflow/geom/kinematics.h"

#include <cmath>

namespace cms::pde {

using geom::ChartField;
using geom::DiscreteSurface;
using geom::MeshForms;
using geom::MeshTopology;

double total_mass(const SurfaceField& field) {
  double m = 0.0;
  for (size_t v = 0; v < field.values.size(); ++v) m += field.values[v] * field.weights[v];
  return m;
}

SurfaceField uniform_field(const MeshForms& forms, double value) {
  SurfaceField f;
  f.values.assign(forms.vertex_area.size(), value);
  f.weights = forms.vertex_area;
  return f;
}

SurfaceField advect_density_lagrangian(const SurfaceField& rho, const MeshForms& after) {
  SurfaceField out;
  const size_t nv = rho.values.size();
  out.values.resize(nv);
  out.weights = after.vertex_area;
  for (size_t v = 0; v < nv; ++v) {
    if (rho.values[v] < 0.0) throw FieldDomainError("negative density at vertex " + std::to_string(v));
    const double mass = rho.values[v] * rho.weights[v];
    out.values[v] = mass / after.vertex_area[v];
  }
  return out;
}

AdvectionResult advect_density(const DiscreteSurface& surface, const MeshTopology& topo,
                               const MeshForms& forms, const SurfaceField& rho,
                               std::span<const double> normal_speed, double dt) {
  AdvectionResult out;
  out.surface = surface;
  for (size_t v = 0; v < surface.vertices.size(); ++v)
    out.surface.vertices[v] += dt * normal_speed[v] * forms.normal[v];
  out.forms = mesh_forms(out.surface, topo);
  out.density = advect_density_lagrangian(rho, out.forms);
  return out;
}

ChartDensity::ChartDensity(std::shared_ptr<const geom::ParamFamily> family,
                           const geom::GridSpec& grid, double t0, const ChartField& rho0)
    : family_(std::move(family)), time_(t0) {
  const geom::Chart& chart = family_->chart();
  const int n = chart.dim;

  std::array<std::vector<double>, 3> axis_nodes;
  std::array<std::vector<double>, 3> axis_weights;
  for (int axis = 0; axis < n; ++axis) {
    const int m = grid.count[axis];
    count_[axis] = m;
    periodic_[axis] = chart.periodic[axis];
    axis_nodes[axis].resize(m);
    axis_weights[axis].assign(m, 0.0);
    if (chart.periodic[axis]) {
      spacing_[axis] = (chart.hi[axis] - chart.lo[axis]) / m;
      for (int k = 0; k < m; ++k) {
        axis_nodes[axis][k] = chart.lo[axis] + spacing_[axis] * k;
        axis_weights[axis][k] = spacing_[axis];
      }
    } else {
      const double a = chart.lo[axis] + grid.margin;
      const double b = chart.hi[axis] - grid.margin;
      spacing_[axis] = (b - a) / (m - 1);
      for (int k = 0; k < m; ++k) {
        axis_nodes[axis][k] = a + spacing_[axis] * k;
        axis_weights[axis][k] = spacing_[axis] * ((k == 0 || k == m - 1) ? 0.5 : 1.0);
      }
    }
  }

  std::array<int, 3> id{0, 0, 0};
  const int total = count_[0] * (n > 1 ? count_[1] : 1) * (n > 2 ? count_[2] : 1);
  samples_.reserve(total);
  values_.reserve(total);
  quad_weight_.reserve(total);
  for (id[0] = 0; id[0] < count_[0]; ++id[0])
    for (id[1] = 0; id[1] < (n > 1 ? count_[1] : 1); ++id[1])
      for (id[2] = 0; id[2] < (n > 2 ? count_[2] : 1); ++id[2]) {
        SurfVec s = SurfVec::Zero(n);
        double w = 1.0;
        for (int axis = 0; axis < n; ++axis) {
          s[axis] = axis_nodes[axis][id[axis]];
          w *= axis_weights[axis][id[axis]];
        }
        samples_.push_back(s);
        values_.push_back(rho0.value(s, t0));
        quad_weight_.push_back(w);
      }
}

int ChartDensity::index(const std::array<int, 3>& id) const {
  const int n = family_->dim();
  int idx = id[0];
  if (n > 1) idx = idx * count_[1] + id[1];
  if (n > 2) idx = idx * count_[2] + id[2];
  return idx;
}

void ChartDensity::advance(double dt) {
  const int n = family_->dim();
  const int total = static_cast<int>(samples_.size());

  // nodal kinematics at the current time
  std::vector<double> sqrt_det(total), cbh(total);
  std::vector<SurfVec> v_up(total);
  for (int i = 0; i < total; ++i) {
    const auto forms = geom::fundamental_forms_param(*family_, samples_[i], time_);
    const auto vel = geom::decompose_ambient_vector(forms, family_->dt(samples_[i], time_));
    sqrt_det[i] = forms.sqrt_det;
    cbh[i] = vel.normal_part * forms.mean_curvature;
    v_up[i] = vel.tangential;
  }
  // tangential mass flux components F_k = sqrt|S| rho V^k
  std::vector<std::array<double, 3>> flux(total);
  for (int i = 0; i < total; ++i)
    for (int k = 0; k < n; ++k) flux[i][k] = sqrt_det[i] * values_[i] * v_up[i][k];

  auto axis_derivative = [&](const std::array<int, 3>& id, int axis, auto&& getter) {
    const double dx = spacing_[axis];
    auto at = [&](int shift) {
      std::array<int, 3> nid = id;
      nid[axis] += shift;
      if (periodic_[axis]) {
        nid[axis] = (nid[axis] + count_[axis]) % count_[axis];
      }
      return getter(index(nid));
    };
    if (!periodic_[axis] && id[axis] == 0)
      return (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * dx);
    if (!periodic_[axis] && id[axis] == count_[axis] - 1)
      return (3.0 * at(0) - 4.0 * at(-1) + at(-2)) / (2.0 * dx);
    return (at(1) - at(-1)) / (2.0 * dx);
  };

  std::vector<double> next(total);
  std::array<int, 3> id{0, 0, 0};
  for (id[0] = 0; id[0] < count_[0]; ++id[0])
    for (id[1] = 0; id[1] < (n > 1 ? count_[1] : 1); ++id[1])
      for (id[2] = 0; id[2] < (n > 2 ? count_[2] : 1); ++id[2]) {
        const int i = index(id);
        double rate = values_[i] * cbh[i];
        for (int k = 0; k < n; ++k) {
          rate += v_up[i][k] * axis_derivative(id, k, [&](int j) { return values_[j]; });
          rate -= axis_derivative(id, k, [&](int j) { return flux[j][k]; }) / sqrt_det[i];
        }
        next[i] = values_[i] + dt * rate;
        if (next[i] < 0.0)
          throw FieldDomainError("density went negative; reduce the transport step");
      }
  values_ = std::move(next);
  time_ += dt;
}

double ChartDensity::total_mass() const {
  double m = 0.0;
  for (size_t i = 0; i < samples_.size(); ++i) {
    const auto forms = geom::fundamental_forms_param(*family_, samples_[i], time_);
    m += quad_weight_[i] * forms.sqrt_det * values_[i];
  }
  return m;
}

double ChartDensity::max_abs_error(const ChartField& reference) const {
  double worst = 0.0;
  for (size_t i = 0; i < samples_.size(); ++i)
    worst = std::max(worst, std::abs(values_[i] - reference.value(samples_[i], time_)));
  return worst;
}

MomentumResiduals momentum_residuals(const geom::ParamFamily& family,
                                     const MomentumFields& fields, double t, double h,
                                     const geom::GridSpec& grid) {
  if (!(h > 0.0)) throw StencilError("momentum residuals need a positive time stencil");
  const int n = family.dim();

  MomentumResiduals out;
  for (const SurfVec& s : geom::chart_samples(family.chart(), grid)) {
    const geom::ChartState st = geom::make_chart_state(family, s, t, 1);
    const Vec x = family.position(s, t);
    const double rho = fields.density.value(s, t);
    const double sig = fields.sigma.value(s, t);
    const SurfVec dsig = fields.sigma.grad(s, t);

    auto v_lower_at = [&](double tau) {
      const auto forms = geom::fundamental_forms_param(family, s, tau);
      const Vec vel = family.dt(s, tau);
      SurfVec low = SurfVec::Zero(n);
      for (int i = 0; i < n; ++i) low[i] = forms.tangent[i].dot(vel);
      return low;
    };
    auto c_at = [&](double tau) {
      const auto forms = geom::fundamental_forms_param(family, s, tau);
      return forms.normal.dot(family.dt(s, tau));
    };
    const SurfVec v_low_dot = (v_lower_at(t + h) - v_lower_at(t - h)) / (2.0 * h);
    const double c_dot = (c_at(t + h) - c_at(t - h)) / (2.0 * h);

    SurfVec tangential = SurfVec::Zero(n);
    for (int i = 0; i < n; ++i) {
      double inv_v = v_low_dot[i];
      for (int k = 0; k < n; ++k) inv_v -= st.v_up[k] * st.cov_v_low(k, i);
      for (int m = 0; m < n; ++m) inv_v -= st.time_conn(m, i) * st.v_low[m];

      double conv = 0.0, vb = 0.0;
      for (int j = 0; j < n; ++j) {
        conv += st.v_up[j] * st.cov_v_low(j, i);
        vb += st.v_up[j] * st.F.curvature(i, j);
      }
      tangential[i] =
          rho * (inv_v + conv - st.C * st.grad_c[i] - st.C * vb) + dsig[i];
    }

    double inv_c = c_dot;
    for (int k = 0; k < n; ++k) inv_c -= st.v_up[k] * st.grad_c[k];
    double vgc = 0.0, vvb = 0.0;
    for (int i = 0; i < n; ++i) {
      vgc += st.v_up[i] * st.grad_c[i];
      for (int j = 0; j < n; ++j) vvb += st.v_up[i] * st.v_up[j] * st.F.curvature(i, j);
    }
    const double bracket = rho * (inv_c + 2.0 * vgc + vvb) - fields.sigma.dt(s, t) -
                           fields.pressure.value(x, t) + sig * st.F.mean_curvature;

    out.samples.push_back(s);
    out.tangential.push_back(tangential);
    out.normal_bracket.push_back(bracket);
    out.max_tangential = std::max(out.max_tangential, tangential.norm());
    out.max_bracket = std::max(out.max_bracket, std::abs(bracket));
  }
  return out;
}

}  // namespace cms::pde
