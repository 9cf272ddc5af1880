#include "cmsflow/verify/checks.h"

#include "cmsflow/geom/kinematics.h"
#include "cmsflow/geom/parallel.h"

#include <cmath>
#include <limits>

namespace cms::verify {

namespace {

using geom::FundamentalForms;
using geom::fundamental_forms_param;
using geom::surface_integral;
using geom::volume_integral;

template <typename T, typename Fn>
T fd_time(const Fn& f, double t, double h, bool fourth) {
  if (fourth) {
    return (-f(t + 2.0 * h) + 8.0 * f(t + h) - 8.0 * f(t - h) + f(t - 2.0 * h)) / (12.0 * h);
  }
  return (f(t + h) - f(t - h)) / (2.0 * h);
}

IdentityReport two_level(const std::string& identity, const std::string& family,
                         const CheckOptions& opts, const std::function<double(double)>& residual) {
  IdentityReport rep;
  rep.identity = identity;
  rep.family = family;
  rep.h = opts.h;
  rep.max_residual = residual(opts.h);
  rep.max_residual_fine = residual(opts.h / 2.0);
  if (rep.max_residual_fine > 0.0 && rep.max_residual > 0.0) {
    rep.order = std::log2(rep.max_residual / rep.max_residual_fine);
  } else {
    rep.order = std::numeric_limits<double>::infinity();
  }
  return rep;
}

double max_over_grid(const Family& f, const CheckOptions& opts,
                     const std::function<double(const SurfVec&, double)>& pointwise, double h) {
  const std::vector<SurfVec> samples = geom::chart_samples(f.chart(), opts.grid);
  std::vector<double> residuals(samples.size());
  geom::parallel_for(static_cast<int>(samples.size()),
                     [&](int i) { residuals[i] = pointwise(samples[i], h); });
  double worst = 0.0;
  for (double r : residuals) worst = std::max(worst, r);
  return worst;
}

}  // namespace

IdentityReport check_metric_evolution(const Family& f, const std::string& name,
                                      const CheckOptions& opts) {
  auto pointwise = [&](const SurfVec& s, double h) {
    const geom::ChartState st = geom::make_chart_state(f, s, opts.t, 1);
    const int n = f.dim();
    const SurfMat dt_metric = fd_time<SurfMat>(
        [&](double tau) { return SurfMat(fundamental_forms_param(f, s, tau).metric); }, opts.t, h,
        opts.fourth_order_time);
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double rhs = st.cov_v_low(i, j) + st.cov_v_low(j, i) +
                           opts.metric_bending_coefficient * st.C * st.F.curvature(i, j);
        worst = std::max(worst, std::abs(dt_metric(i, j) - rhs));
      }
    return worst;
  };
  return two_level("metric_evolution", name, opts,
                   [&](double h) { return max_over_grid(f, opts, pointwise, h); });
}

IdentityReport check_area_evolution(const Family& f, const std::string& name,
                                    const CheckOptions& opts) {
  auto pointwise = [&](const SurfVec& s, double h) {
    const geom::ChartState st = geom::make_chart_state(f, s, opts.t, 1);
    const double dt_density = fd_time<double>(
        [&](double tau) { return fundamental_forms_param(f, s, tau).sqrt_det; }, opts.t, h,
        opts.fourth_order_time);
    const double rhs = st.F.sqrt_det * (st.div_v - st.C * st.F.mean_curvature);
    return std::abs(dt_density - rhs);
  };
  return two_level("area_evolution", name, opts,
                   [&](double h) { return max_over_grid(f, opts, pointwise, h); });
}

IdentityReport check_metrilinic(const Family& f, const std::string& name,
                                const CheckOptions& opts) {
  auto pointwise = [&](const SurfVec& s, double h) {
    const geom::ChartState st = geom::make_chart_state(f, s, opts.t, 1);
    const int n = f.dim();
    const SurfMat dt_metric = fd_time<SurfMat>(
        [&](double tau) { return SurfMat(fundamental_forms_param(f, s, tau).metric); }, opts.t, h,
        opts.fourth_order_time);
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        // nabla_k S_ij vanishes identically; assembled anyway so the check
        // exercises the full definition of the invariant derivative.
        double convect = 0.0;
        for (int k = 0; k < n; ++k) {
          double cov = st.d_metric[k](i, j);
          for (int m = 0; m < n; ++m)
            cov -= st.F.christoffel[m](k, i) * st.F.metric(m, j) +
                   st.F.christoffel[m](k, j) * st.F.metric(i, m);
          convect += st.v_up[k] * cov;
        }
        double conn = 0.0;
        for (int k = 0; k < n; ++k)
          conn += st.time_conn(k, i) * st.F.metric(k, j) + st.time_conn(k, j) * st.F.metric(i, k);
        worst = std::max(worst, std::abs(dt_metric(i, j) - convect - conn));
      }
    return worst;
  };
  return two_level("metrilinic", name, opts,
                   [&](double h) { return max_over_grid(f, opts, pointwise, h); });
}

IdentityReport check_normal_transport(const Family& f, const std::string& name,
                                      const CheckOptions& opts) {
  auto pointwise = [&](const SurfVec& s, double h) {
    const geom::ChartState st = geom::make_chart_state(f, s, opts.t, 1);
    const int n = f.dim();
    const Vec dt_normal =
        fd_time<Vec>([&](double tau) { return Vec(fundamental_forms_param(f, s, tau).normal); },
                     opts.t, h, opts.fourth_order_time);
    Vec lhs = dt_normal;
    for (int k = 0; k < n; ++k) lhs -= st.v_up[k] * st.d_normal[k];
    Vec rhs = Vec::Zero(f.ambient_dim());
    for (int i = 0; i < n; ++i) {
      double grad_up = 0.0;
      for (int j = 0; j < n; ++j) grad_up += st.F.metric_inv(i, j) * st.grad_c[j];
      rhs -= grad_up * st.F.tangent[i];
    }
    return (lhs - rhs).norm();
  };
  return two_level("normal_transport", name, opts,
                   [&](double h) { return max_over_grid(f, opts, pointwise, h); });
}

IdentityReport check_curvature_transport(const Family& f, const std::string& name,
                                         const CheckOptions& opts) {
  auto pointwise = [&](const SurfVec& s, double h) {
    const geom::ChartState st = geom::make_chart_state(f, s, opts.t, 2);
    const int n = f.dim();
    const SurfMat dt_curv = fd_time<SurfMat>(
        [&](double tau) { return SurfMat(fundamental_forms_param(f, s, tau).curvature); }, opts.t,
        h, opts.fourth_order_time);
    const SurfMat b_sq = st.F.curvature * st.F.metric_inv * st.F.curvature;
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double lhs = dt_curv(i, j);
        for (int k = 0; k < n; ++k) lhs -= st.v_up[k] * st.cov_curv[k](i, j);
        for (int k = 0; k < n; ++k)
          lhs -= st.time_conn(k, i) * st.F.curvature(k, j) +
                 st.time_conn(k, j) * st.F.curvature(i, k);
        // In the convention d_i N = -B_i^j S_j (so B_ij = -S_ij/R on spheres),
        // the normal-speed Hessian enters with a plus sign: a translating
        // circle has stationary B but nonzero hess C, and only
        // hess C + C B^2 = 0 balances it.
        const double rhs = st.hess_c(i, j) + st.C * b_sq(i, j);
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    return worst;
  };
  return two_level("curvature_transport", name, opts,
                   [&](double h) { return max_over_grid(f, opts, pointwise, h); });
}

IdentityReport check_thomas(const Family& f, const std::string& name, const CheckOptions& opts) {
  auto pointwise = [&](const SurfVec& s, double h) {
    const geom::ChartState st = geom::make_chart_state(f, s, opts.t, 1);
    const int n = f.dim();
    double worst = 0.0;

    // (a) normal transport, as in check_normal_transport
    {
      const Vec dt_normal =
          fd_time<Vec>([&](double tau) { return Vec(fundamental_forms_param(f, s, tau).normal); },
                       opts.t, h, opts.fourth_order_time);
      Vec lhs = dt_normal;
      for (int k = 0; k < n; ++k) lhs -= st.v_up[k] * st.d_normal[k];
      for (int i = 0; i < n; ++i) {
        double grad_up = 0.0;
        for (int j = 0; j < n; ++j) grad_up += st.F.metric_inv(i, j) * st.grad_c[j];
        lhs += grad_up * st.F.tangent[i];
      }
      worst = std::max(worst, lhs.norm());
    }

    // (b) normal projection of the velocity gradient, with the
    //     curvature-velocity coupling term
    for (int i = 0; i < n; ++i) {
      double coupling = 0.0;
      for (int k = 0; k < n; ++k) coupling += st.F.curvature(i, k) * st.v_up[k];
      const double lhs = st.F.normal.dot(f.dtd1(s, opts.t, i));
      worst = std::max(worst, std::abs(lhs - st.grad_c[i] - coupling));
    }

    // (c) normal projection of the invariant derivative of the basis
    for (int i = 0; i < n; ++i) {
      const Vec dt_basis = fd_time<Vec>(
          [&](double tau) { return Vec(fundamental_forms_param(f, s, tau).tangent[i]); }, opts.t,
          h, opts.fourth_order_time);
      Vec inv = dt_basis;
      for (int k = 0; k < n; ++k) {
        Vec cov = st.d2r[k][i];
        for (int m = 0; m < n; ++m) cov -= st.F.christoffel[m](k, i) * st.F.tangent[m];
        inv -= st.v_up[k] * cov;
      }
      for (int m = 0; m < n; ++m) inv -= st.time_conn(m, i) * st.F.tangent[m];
      worst = std::max(worst, std::abs(st.F.normal.dot(inv) - st.grad_c[i]));
    }
    return worst;
  };
  return two_level("thomas", name, opts,
                   [&](double h) { return max_over_grid(f, opts, pointwise, h); });
}

IdentityReport check_surface_integral_theorem(const Family& f, const std::string& name,
                                              const AmbientField& F, const CheckOptions& opts) {
  auto residual = [&](double h) {
    auto integral = [&](double tau) {
      return surface_integral(
          f, tau,
          [&](const SurfVec& s, const FundamentalForms&) {
            return F.value(f.position(s, tau), tau);
          },
          opts.quadrature);
    };
    const double lhs = fd_time<double>(integral, opts.t, h, opts.fourth_order_time);
    const double rhs = surface_integral(
        f, opts.t,
        [&](const SurfVec& s, const FundamentalForms& forms) {
          const Vec x = f.position(s, opts.t);
          const Vec vel = f.dt(s, opts.t);
          const auto parts = geom::decompose_ambient_vector(forms, vel);
          const Vec grad = F.grad(x, opts.t);
          // material derivative, then subtract tangential convection
          double fdot = F.dt(x, opts.t) + grad.dot(vel);
          for (int k = 0; k < f.dim(); ++k)
            fdot -= parts.tangential[k] * grad.dot(forms.tangent[k]);
          return fdot - parts.normal_part * forms.mean_curvature * F.value(x, opts.t);
        },
        opts.quadrature);
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(integral(opts.t)));
  };
  return two_level("surface_integral", name, opts, residual);
}

IdentityReport check_volume_integral_theorem(const Family& f, const std::string& name,
                                             const AmbientField& F, const CheckOptions& opts) {
  auto residual = [&](double h) {
    auto integral = [&](double tau) {
      return volume_integral(
          f, tau, [&](const Vec& x) { return F.value(x, tau); }, opts.quadrature);
    };
    const double lhs = fd_time<double>(integral, opts.t, h, opts.fourth_order_time);
    const double bulk = volume_integral(
        f, opts.t, [&](const Vec& x) { return F.dt(x, opts.t); }, opts.quadrature);
    const double flux = surface_integral(
        f, opts.t,
        [&](const SurfVec& s, const FundamentalForms& forms) {
          const Vec x = f.position(s, opts.t);
          const double c = forms.normal.dot(f.dt(s, opts.t));
          return c * F.value(x, opts.t);
        },
        opts.quadrature);
    return std::abs(lhs - (bulk + flux)) / std::max(1.0, std::abs(integral(opts.t)));
  };
  return two_level("volume_integral", name, opts, residual);
}

IdentityReport check_kinetic_energy_variation(const Family& f, const std::string& name,
                                              const ChartField& rho0, const CheckOptions& opts) {
  const double t0 = opts.t;
  // conserved chart mass density: rho(s, t) sqrt|S|(s, t) is constant in time
  auto rho_hat = [&](const SurfVec& s) {
    return rho0.value(s, t0) * fundamental_forms_param(f, s, t0).sqrt_det;
  };
  auto residual = [&](double h) {
    auto kinetic = [&](double tau) {
      return surface_integral(
          f, tau,
          [&](const SurfVec& s, const FundamentalForms& forms) {
            const double rho = rho_hat(s) / forms.sqrt_det;
            return 0.5 * rho * f.dt(s, tau).squaredNorm();
          },
          opts.quadrature);
    };
    const double lhs = fd_time<double>(kinetic, opts.t, h, opts.fourth_order_time);

    const double rhs = surface_integral(
        f, opts.t,
        [&](const SurfVec& s, const FundamentalForms& forms) {
          const geom::ChartState st = geom::make_chart_state(f, s, opts.t, 1);
          const int n = f.dim();
          const double rho = rho_hat(s) / forms.sqrt_det;

          auto velocity_parts = [&](double tau) {
            const FundamentalForms ft = fundamental_forms_param(f, s, tau);
            return geom::decompose_ambient_vector(ft, f.dt(s, tau));
          };
          const double c_dot = fd_time<double>(
              [&](double tau) { return velocity_parts(tau).normal_part; }, opts.t, h,
              opts.fourth_order_time);
          const SurfVec v_dot = fd_time<SurfVec>(
              [&](double tau) { return SurfVec(velocity_parts(tau).tangential); }, opts.t, h,
              opts.fourth_order_time);

          double inv_c = c_dot;
          for (int k = 0; k < n; ++k) inv_c -= st.v_up[k] * st.grad_c[k];

          double vgc = 0.0, vvb = 0.0;
          for (int i = 0; i < n; ++i) {
            vgc += st.v_up[i] * st.grad_c[i];
            for (int j = 0; j < n; ++j) vvb += st.v_up[i] * st.v_up[j] * st.F.curvature(i, j);
          }
          double total = st.C * (inv_c + 2.0 * vgc + vvb);

          for (int j = 0; j < n; ++j) {
            double inv_vj = v_dot[j];
            for (int k = 0; k < n; ++k) inv_vj -= st.v_up[k] * st.cov_v_up(k, j);
            for (int m = 0; m < n; ++m) inv_vj += st.time_conn(j, m) * st.v_up[m];

            double conv = 0.0, grad_up = 0.0, vb = 0.0;
            for (int i = 0; i < n; ++i) {
              conv += st.v_up[i] * st.cov_v_up(i, j);
              grad_up += st.F.metric_inv(j, i) * st.grad_c[i];
              vb += st.v_up[i] * st.b_mixed(j, i);
            }
            total += st.v_low[j] * (inv_vj + conv - st.C * grad_up - st.C * vb);
          }
          return rho * total;
        },
        opts.quadrature);
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(kinetic(opts.t)));
  };
  return two_level("kinetic_energy", name, opts, residual);
}

IdentityReport check_potential_energy_variation(const Family& f, const std::string& name,
                                                const AmbientField& P, const ChartField& sigma,
                                                const CheckOptions& opts) {
  auto residual = [&](double h) {
    auto potential = [&](double tau) {
      const double bulk = volume_integral(
          f, tau, [&](const Vec& x) { return P.value(x, tau); }, opts.quadrature);
      const double skin = surface_integral(
          f, tau,
          [&](const SurfVec& s, const FundamentalForms&) { return sigma.value(s, tau); },
          opts.quadrature);
      return bulk + skin;
    };
    const double lhs = fd_time<double>(potential, opts.t, h, opts.fourth_order_time);

    const double bulk_rate = volume_integral(
        f, opts.t, [&](const Vec& x) { return P.dt(x, opts.t); }, opts.quadrature);
    const double skin_rate = surface_integral(
        f, opts.t,
        [&](const SurfVec& s, const FundamentalForms& forms) {
          const Vec x = f.position(s, opts.t);
          const Vec vel = f.dt(s, opts.t);
          const auto parts = geom::decompose_ambient_vector(forms, vel);
          const SurfVec grad_sigma = sigma.grad(s, opts.t);
          double inv_sigma = sigma.dt(s, opts.t);
          for (int k = 0; k < f.dim(); ++k) inv_sigma -= parts.tangential[k] * grad_sigma[k];
          return inv_sigma +
                 parts.normal_part *
                     (P.value(x, opts.t) - sigma.value(s, opts.t) * forms.mean_curvature);
        },
        opts.quadrature);
    return std::abs(lhs - (bulk_rate + skin_rate)) / std::max(1.0, std::abs(potential(opts.t)));
  };
  return two_level("potential_energy", name, opts, residual);
}

SurfMat time_connection(const Family& f, const SurfVec& s, double t) {
  return geom::make_chart_state(f, s, t, 1).time_conn;
}

SurfMat time_connection_fd(const Family& f, const SurfVec& s, double t, double h) {
  const FundamentalForms forms = fundamental_forms_param(f, s, t);
  const int n = f.dim();
  SurfMat out = SurfMat::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    const Vec dt_basis =
        (fundamental_forms_param(f, s, t + h).tangent[j] -
         fundamental_forms_param(f, s, t - h).tangent[j]) /
        (2.0 * h);
    for (int i = 0; i < n; ++i) out(i, j) = forms.dual_tangent[i].dot(dt_basis);
  }
  return out;
}

}  // namespace cms::verify
