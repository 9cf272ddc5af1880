#include <CLI11.hpp>

#include "cmsflow/fam/analytic.h"
#include "cmsflow/flow/flow.h"
#include "cmsflow/geom/io.h"
#include "cmsflow/geom/parallel.h"
#include "cmsflow/geom/primitives.h"
#include "cmsflow/pde/density.h"
#include "cmsflow/verify/suite.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using cms::SurfMat;
using cms::SurfVec;
using cms::Vec;
using cms::geom::DiscreteSurface;
using cms::geom::format_g17;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitTopology = 3;
constexpr int kExitNoConvergence = 4;

struct Options {
  std::string mode;
  std::string out = "cmsflow_out";
  std::string family;
  std::string mesh;
  std::string law = "vpmcf";
  double sigma = 1.0;
  double mu = 1.0;
  double tau_h = 1e-3;
  long max_steps = 100000;
  double max_time = std::numeric_limits<double>::infinity();
  long snapshot_every = 0;
  bool require_sphere = false;
  unsigned long seed = 0;
  std::vector<std::string> families = {"sphere", "ellipsoid", "translate"};
  std::vector<double> steps = {1e-3, 1e-4};
  int subdiv = 4;
  int segments = 256;
  double safety = 0.2;
  double fixed_dt = 0.0;
  bool smooth_tangential = false;
  bool mutate_metric_sign = false;
  std::string demo = "all";
};

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  return out;
}

// family spec strings: sphere[:R], ellipsoid[:a,b,c], bumpy[:amp[,R]],
// torus[:R,r], circle[:R]
DiscreteSurface build_surface(const Options& opt) {
  std::string name = opt.family;
  std::vector<double> p;
  if (const auto colon = name.find(':'); colon != std::string::npos) {
    p = parse_numbers(name.substr(colon + 1));
    name.resize(colon);
  }
  auto arg = [&](size_t i, double fallback) { return i < p.size() ? p[i] : fallback; };

  if (name == "sphere") return cms::geom::icosphere(arg(0, 1.0), opt.subdiv);
  if (name == "ellipsoid")
    return cms::geom::ellipsoid_mesh(arg(0, 1.2), arg(1, 1.0), arg(2, 0.9), opt.subdiv);
  if (name == "bumpy") {
    const double amp = arg(0, 0.15);
    const double radius = arg(1, 1.0);
    return cms::geom::radial_graph_sphere(opt.subdiv, [&](const Eigen::Vector3d& u) {
      return radius * (1.0 + amp * (u.x() * u.x() - u.y() * u.y()) * u.z());
    });
  }
  if (name == "torus")
    return cms::geom::torus_mesh(arg(0, 2.0), arg(1, 0.5), opt.segments,
                                 std::max(3, opt.segments / 2));
  if (name == "circle") return cms::geom::polygon_curve(arg(0, 1.0), opt.segments);
  throw std::invalid_argument("unknown mesh family: " + name);
}

DiscreteSurface load_surface(const Options& opt) {
  if (!opt.mesh.empty()) {
    if (opt.mesh.size() > 4 && opt.mesh.substr(opt.mesh.size() - 4) == ".csv")
      return cms::geom::read_curve_csv(opt.mesh);
    return cms::geom::read_obj(opt.mesh);
  }
  return build_surface(opt);
}

void write_diagnostics_csv(const std::string& path, const cms::flow::FlowDiagnostics& diag,
                           bool with_mass) {
  std::ofstream out(path);
  out << "step,time,area,volume,chi,H_mean,H_relstd,energy,sphericity,max_C";
  if (with_mass) out << ",mass_total";
  out << '\n';
  for (const auto& r : diag.records) {
    out << r.step << ',' << format_g17(r.time) << ',' << format_g17(r.area) << ','
        << format_g17(r.volume) << ',' << r.chi << ',' << format_g17(r.h_mean) << ','
        << format_g17(r.h_relstd) << ',' << format_g17(r.energy) << ','
        << format_g17(r.sphericity) << ',' << format_g17(r.max_c);
    if (with_mass) out << ',' << format_g17(r.mass_total);
    out << '\n';
  }
}

void write_certificate(const std::string& path, const cms::flow::RunResult& run) {
  std::ofstream out(path);
  const auto& c = run.certificate;
  out << "issued " << (c.issued ? "yes" : "no") << '\n';
  out << "steps " << run.steps << '\n';
  out << "time " << format_g17(run.time) << '\n';
  out << "H_mean " << format_g17(c.h_mean) << '\n';
  out << "H_relstd " << format_g17(c.h_relstd) << '\n';
  out << "pressure " << format_g17(c.pressure) << '\n';
  out << "young_laplace_max " << format_g17(c.yl_max) << '\n';
  out << "young_laplace_rms " << format_g17(c.yl_rms) << '\n';
  out << "center " << format_g17(c.center.x()) << ' ' << format_g17(c.center.y()) << ' '
      << format_g17(c.center.z()) << '\n';
  out << "radius " << format_g17(c.radius) << '\n';
  out << "max_radial_deviation " << format_g17(c.max_radial_deviation) << '\n';
  if (!c.note.empty()) out << "note " << c.note << '\n';
}

std::string snapshot_name(long step, bool curve) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "snap_%06ld.%s", step, curve ? "csv" : "obj");
  return buf;
}

int cmd_verify(const Options& opt) {
  if (opt.families.empty() || opt.steps.empty()) {
    std::cerr << "verify: empty family or step list\n";
    return kExitUsage;
  }
  std::vector<cms::verify::SuiteFamily> families;
  try {
    families = cms::verify::standard_families(opt.families);
  } catch (const cms::ScheduleError& e) {
    std::cerr << "verify: " << e.what() << '\n';
    return kExitUsage;
  }

  cms::verify::CheckOptions check_opts;
  if (opt.mutate_metric_sign) check_opts.metric_bending_coefficient = 2.0;

  const auto result = cms::verify::run_identity_suite(families, opt.steps, check_opts);
  fs::create_directories(opt.out);
  cms::verify::write_report_csv((fs::path(opt.out) / "verify_report.csv").string(),
                                result.reports);

  std::ofstream summary(fs::path(opt.out) / "summary.txt");
  for (const auto& rep : result.reports) {
    char line[256];
    std::snprintf(line, sizeof(line), "%-22s %-10s h=%-8g max_residual=%-12.4g order=%-8.3g %s",
                  rep.identity.c_str(), rep.family.c_str(), rep.h, rep.max_residual, rep.order,
                  rep.passed() ? "PASS" : "FAIL");
    summary << line << '\n';
    std::cout << line << '\n';
  }

  // seeded pointwise spot-check of the basic geometric invariants
  std::mt19937_64 rng(opt.seed);
  double worst_invariant = 0.0;
  for (const auto& family : families) {
    const auto& chart = family.geometry->chart();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < 32; ++k) {
      SurfVec s = SurfVec::Zero(chart.dim);
      for (int axis = 0; axis < chart.dim; ++axis) {
        const double margin = chart.periodic[axis] ? 0.0 : 1e-2;
        s[axis] = chart.lo[axis] + margin +
                  (chart.hi[axis] - chart.lo[axis] - 2.0 * margin) * unit(rng);
      }
      const auto f = cms::geom::fundamental_forms_param(*family.geometry, s, 0.2);
      worst_invariant = std::max(
          worst_invariant,
          (f.metric_inv * f.metric - SurfMat::Identity(f.n, f.n)).norm());
      worst_invariant = std::max(worst_invariant, std::abs(f.normal.norm() - 1.0));
      for (int i = 0; i < f.n; ++i)
        worst_invariant = std::max(worst_invariant, std::abs(f.normal.dot(f.tangent[i])));
      const Vec vel = family.geometry->dt(s, 0.2);
      const auto parts = cms::geom::decompose_ambient_vector(f, vel);
      worst_invariant =
          std::max(worst_invariant, (cms::geom::reconstruct_ambient(f, parts) - vel).norm());
    }
  }
  const bool invariants_ok = worst_invariant < 1e-10;
  summary << "pointwise_invariants max=" << format_g17(worst_invariant)
          << (invariants_ok ? " PASS" : " FAIL") << '\n';
  std::cout << "pointwise invariants (seed " << opt.seed << "): max " << worst_invariant
            << (invariants_ok ? " PASS" : " FAIL") << '\n';

  if (!result.all_passed) {
    std::cerr << "identity check failed: " << result.failures.front() << '\n';
    return kExitCheckFailed;
  }
  if (!invariants_ok) {
    std::cerr << "identity check failed: pointwise-invariants\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

int cmd_flow(const Options& opt) {
  DiscreteSurface surface;
  try {
    surface = load_surface(opt);
  } catch (const std::exception& e) {
    std::cerr << "flow: " << e.what() << '\n';
    return kExitUsage;
  }

  cms::geom::MeshTopology topo;
  try {
    topo = cms::geom::build_topology(surface);
  } catch (const std::exception& e) {
    std::cerr << "flow: invalid input surface: " << e.what() << '\n';
    return kExitTopology;
  }
  const bool curve = surface.kind == DiscreteSurface::Kind::Curve;
  if (opt.require_sphere && !curve && topo.euler_characteristic != 2) {
    std::cerr << "flow: input is not simply connected (chi = " << topo.euler_characteristic
              << "); no sphere relaxation possible\n";
    return kExitNoConvergence;
  }

  cms::flow::FlowConfig config;
  try {
    config.law = cms::flow::parse_flow_law(opt.law);
  } catch (const std::exception& e) {
    std::cerr << "flow: " << e.what() << '\n';
    return kExitUsage;
  }
  config.sigma = opt.sigma;
  config.mu = opt.mu;
  config.tau_h = opt.tau_h;
  config.max_steps = opt.max_steps;
  config.max_time = opt.max_time;
  config.safety = opt.safety;
  config.fixed_dt = opt.fixed_dt;
  config.tangential_smoothing = opt.smooth_tangential;

  fs::create_directories(opt.out);
  const auto sink = [&](long step, const DiscreteSurface& s) {
    const std::string path = (fs::path(opt.out) / snapshot_name(step, curve)).string();
    if (curve)
      cms::geom::write_curve_csv(path, s);
    else
      cms::geom::write_obj(path, s);
  };

  cms::flow::RunResult run;
  try {
    run = cms::flow::run_to_equilibrium(std::move(surface), config,
                                        opt.snapshot_every > 0 ? sink : cms::flow::SnapshotSink{},
                                        opt.snapshot_every);
  } catch (const std::exception& e) {
    std::cerr << "flow: aborted: " << e.what() << '\n';
    return kExitTopology;
  }

  write_diagnostics_csv((fs::path(opt.out) / "diagnostics.csv").string(), run.diagnostics, false);
  write_certificate((fs::path(opt.out) / "certificate.txt").string(), run);
  sink(run.steps, run.surface);

  const auto& last = run.diagnostics.records.back();
  std::cout << "steps " << run.steps << "  time " << run.time << "  area " << last.area
            << "  volume " << last.volume << "  chi " << last.chi << "  H_relstd "
            << last.h_relstd << '\n';
  if (run.certificate.issued) {
    std::cout << "equilibrium certificate: H_mean " << run.certificate.h_mean << "  pressure "
              << run.certificate.pressure << "  radius " << run.certificate.radius
              << "  max radial deviation " << run.certificate.max_radial_deviation << '\n';
  } else if (run.converged) {
    std::cout << "converged without certificate: " << run.certificate.note << '\n';
  } else {
    std::cout << "no equilibrium within budget\n";
  }

  if (config.law != cms::flow::FlowLaw::Mcf && !run.converged) return kExitNoConvergence;
  if (opt.require_sphere && !run.certificate.issued) return kExitNoConvergence;
  return kExitOk;
}

int cmd_pde_demo(const Options& opt) {
  fs::create_directories(opt.out);
  bool all_ok = true;
  std::ofstream report(fs::path(opt.out) / "mass_report.txt");

  if (opt.demo == "all" || opt.demo == "expanding") {
    // expanding sphere R = 1 + t integrated to t = 0.5 at dt = 1e-4
    cms::fam::FamilySpec spec;
    spec.radius = cms::fam::TimeFn::linear(1.0, 1.0);
    spec.t_max = 0.6;
    const auto family = cms::fam::make_family(spec);
    cms::pde::ChartDensity rho(family, {{17, 33, 1}, 1e-2}, 0.0,
                               cms::geom::constant_chart_field(1.0));
    const double dt = 1e-4;
    for (int k = 0; k < 5000; ++k) rho.advance(dt);
    cms::geom::ChartField exact;
    exact.value = [](const SurfVec&, double t) { return 1.0 / ((1.0 + t) * (1.0 + t)); };
    const double err = rho.max_abs_error(exact) * (1.5 * 1.5);  // relative to the final density
    const bool ok = err < 5e-3;
    all_ok &= ok;
    report << "expanding_sphere max_rel_err " << format_g17(err) << (ok ? " PASS" : " FAIL")
           << '\n';
    std::cout << "expanding-sphere density: max relative error " << err
              << (ok ? " PASS" : " FAIL") << '\n';
  }

  if (opt.demo == "all" || opt.demo == "static") {
    const DiscreteSurface s = cms::geom::icosphere(1.0, 3);
    const auto topo = cms::geom::build_topology(s);
    const auto forms = cms::geom::mesh_forms(s, topo);
    cms::pde::SurfaceField rho = cms::pde::uniform_field(forms, 2.0);
    const double m0 = cms::pde::total_mass(rho);
    const std::vector<double> zero(s.vertices.size(), 0.0);
    const auto out = cms::pde::advect_density(s, topo, forms, rho, zero, 0.5);
    const double drift = std::abs(cms::pde::total_mass(out.density) - m0) / m0;
    const bool ok = drift == 0.0;
    all_ok &= ok;
    report << "static_surface mass_drift " << format_g17(drift) << (ok ? " PASS" : " FAIL")
           << '\n';
    std::cout << "static-surface density: mass drift " << drift << (ok ? " PASS" : " FAIL")
              << '\n';
  }

  if (opt.demo == "all" || opt.demo == "mcf") {
    DiscreteSurface s = cms::geom::icosphere(1.0, 3);
    const auto topo = cms::geom::build_topology(s);
    auto forms = cms::geom::mesh_forms(s, topo);
    cms::pde::SurfaceField rho = cms::pde::uniform_field(forms, 1.0);
    const double m0 = cms::pde::total_mass(rho);

    cms::flow::FlowConfig config;
    config.law = cms::flow::FlowLaw::Mcf;
    config.fixed_dt = 2e-4;
    cms::flow::FlowDiagnostics diag;
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      auto rec = cms::flow::make_record(s, topo, forms, config, k, k * config.fixed_dt);
      rec.mass_total = cms::pde::total_mass(rho);
      diag.records.push_back(rec);
      (void)cms::flow::step(s, topo, forms, config, -1.0, 1e30);
      forms = cms::geom::mesh_forms(s, topo);
      rho = cms::pde::advect_density_lagrangian(rho, forms);
      worst = std::max(worst, std::abs(cms::pde::total_mass(rho) - m0) / m0);
    }
    write_diagnostics_csv((fs::path(opt.out) / "diagnostics.csv").string(), diag, true);
    const bool ok = worst < 1e-6;
    all_ok &= ok;
    report << "mcf_coupled mass_drift " << format_g17(worst) << (ok ? " PASS" : " FAIL") << '\n';
    std::cout << "mcf-coupled density: worst mass drift " << worst << (ok ? " PASS" : " FAIL")
              << '\n';
  }
  return all_ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"moving-surface geometry: identity verification, curvature flows, and "
               "surface transport"};
  app.set_help_flag("--help", "print usage");  // long-only; --h is the FD step list
  app.set_config("--config");

  Options opt;
  app.add_option("--mode", opt.mode, "verify | flow | pde-demo")->required();
  app.add_option("--out", opt.out, "output directory");
  app.add_option("--family", opt.family,
                 "flow input: sphere[:R] | ellipsoid[:a,b,c] | bumpy[:amp[,R]] | torus[:R,r] | "
                 "circle[:R]");
  app.add_option("--mesh", opt.mesh, "flow input mesh (.obj) or curve (.csv)");
  app.add_option("--law", opt.law, "mcf | vpmcf | yl");
  app.add_option("--sigma", opt.sigma, "surface tension");
  app.add_option("--mu", opt.mu, "mobility");
  app.add_option("--tau-h", opt.tau_h, "equilibrium tolerance on rel-std(H)");
  app.add_option("--max-steps", opt.max_steps, "step budget");
  app.add_option("--max-time", opt.max_time, "time budget");
  app.add_option("--snapshot-every", opt.snapshot_every, "snapshot cadence (0 = off)");
  app.add_flag("--require-sphere", opt.require_sphere,
               "fail unless the input can earn a round certificate");
  app.add_option("--seed", opt.seed, "seed for randomized spot checks");
  app.add_option("--families", opt.families, "verify: family names")->delimiter(',');
  app.add_option("--h", opt.steps, "verify: time FD steps")->delimiter(',');
  app.add_option("--subdiv", opt.subdiv, "mesh subdivision depth");
  app.add_option("--segments", opt.segments, "curve/torus segment count");
  app.add_option("--safety", opt.safety, "step controller safety factor");
  app.add_option("--fixed-dt", opt.fixed_dt, "override the step controller");
  app.add_flag("--smooth-tangential", opt.smooth_tangential, "tangential mesh smoothing");
  app.add_flag("--mutate-metric-sign", opt.mutate_metric_sign,
               "self-test hook: corrupt the metric transport sign");
  app.add_option("--demo", opt.demo, "pde-demo: all | expanding | static | mcf");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (opt.mode == "verify") return cmd_verify(opt);
    if (opt.mode == "flow") return cmd_flow(opt);
    if (opt.mode == "pde-demo") return cmd_pde_demo(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  std::cerr << "unknown mode: " << opt.mode << '\n';
  return kExitUsage;
}
