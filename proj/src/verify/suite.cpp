#include "cmsflow/verify/suite.h"

#include "cmsflow/geom/io.h"

#include <fstream>

namespace cms::verify {

using fam::FamilySpec;
using fam::TimeFn;

std::vector<SuiteFamily> standard_families(const std::vector<std::string>& names) {
  std::vector<SuiteFamily> out;
  for (const std::string& name : names) {
    if (name == "sphere") {
      FamilySpec s;
      s.radius = TimeFn::linear(1.0, 0.3);
      out.push_back({name, fam::make_family(s), true});
    } else if (name == "ellipsoid") {
      FamilySpec s;
      s.kind = FamilySpec::Kind::Ellipsoid;
      s.axes = {1.3, 1.0, 0.8};
      s.radius = TimeFn::linear(1.0, 0.2);
      out.push_back({name, fam::make_family(s), true});
    } else if (name == "translate") {
      FamilySpec s;
      s.kind = FamilySpec::Kind::TranslatingSurface;
      s.translation_velocity = {0.2, 0.15, 0.1};
      out.push_back({name, fam::make_family(s), true});
    } else if (name == "perturbed") {
      FamilySpec s;
      s.kind = FamilySpec::Kind::PerturbedSphere;
      s.amplitude = TimeFn::exp_decay(0.12, 0.9);
      s.mode = 3;
      out.push_back({name, fam::make_family(s), true});
    } else if (name == "torus") {
      FamilySpec s;
      s.kind = FamilySpec::Kind::Torus;
      s.torus_major = 2.0;
      s.torus_minor = TimeFn::linear(0.5, 0.1);
      out.push_back({name, fam::make_family(s), false});
    } else if (name == "static") {
      FamilySpec s;
      s.radius = TimeFn::constant(1.0);
      out.push_back({name, fam::make_family(s), true});
    } else {
      throw ScheduleError("unknown verification family: " + name);
    }
  }
  return out;
}

namespace {

// Smooth ambient and chart test fields shared by the integral checks.
AmbientField suite_ambient_field(int ambient_dim) {
  const int last = ambient_dim - 1;
  AmbientField F;
  F.value = [last](const Vec& x, double t) {
    return (1.0 + 0.1 * t) * (1.0 + 0.25 * x[0] * x[0] + 0.1 * x[last]);
  };
  F.dt = [last](const Vec& x, double) { return 0.1 * (1.0 + 0.25 * x[0] * x[0] + 0.1 * x[last]); };
  F.grad = [last](const Vec& x, double t) {
    Vec g = Vec::Zero(x.size());
    g[0] = (1.0 + 0.1 * t) * 0.5 * x[0];
    g[last] += (1.0 + 0.1 * t) * 0.1;
    return g;
  };
  return F;
}

AmbientField suite_pressure_field() {
  AmbientField P;
  P.value = [](const Vec& x, double t) { return 0.8 + 0.1 * t + 0.2 * x[0]; };
  P.dt = [](const Vec&, double) { return 0.1; };
  P.grad = [](const Vec& x, double) {
    Vec g = Vec::Zero(x.size());
    g[0] = 0.2;
    return g;
  };
  return P;
}

ChartField suite_sigma_field() {
  ChartField sigma;
  sigma.value = [](const SurfVec& s, double t) {
    return 1.0 + 0.15 * std::cos(s[0]) * (1.0 + 0.2 * t);
  };
  sigma.dt = [](const SurfVec& s, double) { return 0.15 * std::cos(s[0]) * 0.2; };
  sigma.grad = [](const SurfVec& s, double t) {
    SurfVec g = SurfVec::Zero(s.size());
    g[0] = -0.15 * std::sin(s[0]) * (1.0 + 0.2 * t);
    return g;
  };
  return sigma;
}

ChartField suite_density_field() {
  ChartField rho;
  rho.value = [](const SurfVec& s, double) { return 1.0 + 0.2 * std::cos(s[0]); };
  rho.dt = [](const SurfVec&, double) { return 0.0; };
  rho.grad = [](const SurfVec& s, double) {
    SurfVec g = SurfVec::Zero(s.size());
    g[0] = -0.2 * std::sin(s[0]);
    return g;
  };
  return rho;
}

}  // namespace

SuiteResult run_identity_suite(const std::vector<SuiteFamily>& families,
                               const std::vector<double>& steps, CheckOptions opts) {
  SuiteResult result;
  for (const SuiteFamily& family : families) {
    const auto& geo = *family.geometry;
    const AmbientField F = suite_ambient_field(geo.ambient_dim());
    const AmbientField P = suite_pressure_field();
    const ChartField sigma = suite_sigma_field();
    const ChartField rho0 = suite_density_field();

    for (double h : steps) {
      opts.h = h;
      std::vector<IdentityReport> batch;
      batch.push_back(check_metric_evolution(geo, family.name, opts));
      batch.push_back(check_area_evolution(geo, family.name, opts));
      batch.push_back(check_metrilinic(geo, family.name, opts));
      batch.push_back(check_normal_transport(geo, family.name, opts));
      batch.push_back(check_curvature_transport(geo, family.name, opts));
      batch.push_back(check_thomas(geo, family.name, opts));
      batch.push_back(check_surface_integral_theorem(geo, family.name, F, opts));
      batch.push_back(check_kinetic_energy_variation(geo, family.name, rho0, opts));
      if (family.star_shaped) {
        batch.push_back(check_volume_integral_theorem(geo, family.name, F, opts));
        batch.push_back(check_potential_energy_variation(geo, family.name, P, sigma, opts));
      }
      for (const IdentityReport& rep : batch) {
        if (!rep.passed()) {
          result.all_passed = false;
          result.failures.push_back(rep.identity + "/" + rep.family);
        }
        result.reports.push_back(rep);
      }
    }
  }
  return result;
}

void write_report_csv(const std::string& path, const std::vector<IdentityReport>& reports) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "identity,family,h,max_residual,order_estimate\n";
  for (const IdentityReport& rep : reports) {
    out << rep.identity << ',' << rep.family << ',' << geom::format_g17(rep.h) << ','
        << geom::format_g17(rep.max_residual) << ',' << geom::format_g17(rep.order) << '\n';
  }
}

}  // namespace cms::verify
