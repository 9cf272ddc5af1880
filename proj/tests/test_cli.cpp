#include <doctest.h>

#include "cmsflow/geom/io.h"
#include "cmsflow/geom/primitives.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CMSFLOW_BIN) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("verify mode writes a report and exits zero") {
  const fs::path dir = fresh_dir("cms_cli_verify");
  CHECK(run_cli("--mode verify --families sphere,translate --h 1e-3 --out " + dir.string()) == 0);
  const std::string report = slurp(dir / "verify_report.csv");
  CHECK(report.rfind("identity,family,h,max_residual,order_estimate", 0) == 0);
  CHECK(report.find("metric_evolution,sphere") != std::string::npos);
  CHECK(fs::exists(dir / "summary.txt"));
}

TEST_CASE("verify usage errors exit 2") {
  CHECK(run_cli("--mode verify --families nosuch") == 2);
  CHECK(run_cli("--mode bogus") == 2);
  CHECK(run_cli("") == 2);  // --mode is required
}

TEST_CASE("mutated metric sign fails the suite with exit 1") {
  const fs::path dir = fresh_dir("cms_cli_mutate");
  CHECK(run_cli("--mode verify --families sphere --h 1e-3 --mutate-metric-sign --out " +
                dir.string()) == 1);
}

TEST_CASE("flow mode relaxes an ellipsoid and writes artifacts") {
  const fs::path dir = fresh_dir("cms_cli_flow");
  CHECK(run_cli("--mode flow --family ellipsoid:1.2,1.0,0.9 --subdiv 2 --law vpmcf "
                "--snapshot-every 100 --out " +
                dir.string()) == 0);
  const std::string diag = slurp(dir / "diagnostics.csv");
  CHECK(diag.rfind("step,time,area,volume,chi,H_mean,H_relstd,energy,sphericity,max_C", 0) == 0);
  const std::string cert = slurp(dir / "certificate.txt");
  CHECK(cert.find("issued yes") != std::string::npos);
  CHECK(fs::exists(dir / "snap_000000.obj"));
}

TEST_CASE("torus with --require-sphere exits 4") {
  const fs::path dir = fresh_dir("cms_cli_torus");
  CHECK(run_cli("--mode flow --family torus:2.0,0.5 --segments 32 --require-sphere --out " +
                dir.string()) == 4);
}

TEST_CASE("curve flow emits csv snapshots") {
  const fs::path dir = fresh_dir("cms_cli_curve");
  CHECK(run_cli("--mode flow --family circle:2.0 --segments 128 --law mcf --max-time 0.5 "
                "--snapshot-every 1000 --out " +
                dir.string()) == 0);
  CHECK(fs::exists(dir / "snap_000000.csv"));
}

TEST_CASE("identical config and seed give byte-identical diagnostics") {
  const fs::path a = fresh_dir("cms_cli_det_a");
  const fs::path b = fresh_dir("cms_cli_det_b");
  const std::string common =
      "--mode flow --family bumpy:0.15 --subdiv 3 --law vpmcf --seed 7 --out ";
  CHECK(run_cli(common + a.string()) == 0);
  CHECK(run_cli(common + b.string()) == 0);
  const std::string da = slurp(a / "diagnostics.csv");
  CHECK(!da.empty());
  CHECK(da == slurp(b / "diagnostics.csv"));
  CHECK(slurp(a / "certificate.txt") == slurp(b / "certificate.txt"));
}

TEST_CASE("config file drives a run") {
  const fs::path dir = fresh_dir("cms_cli_config");
  const fs::path cfg = dir / "run.cfg";
  {
    std::ofstream out(cfg);
    out << "mode=flow\n"
        << "family=\"sphere:1.0\"\n"
        << "subdiv=2\n"
        << "law=vpmcf\n"
        << "out=\"" << dir.string() << "\"\n";
  }
  CHECK(run_cli("--config " + cfg.string()) == 0);
  CHECK(slurp(dir / "certificate.txt").find("issued yes") != std::string::npos);
}

TEST_CASE("flow accepts a mesh file") {
  const fs::path dir = fresh_dir("cms_cli_mesh");
  const fs::path obj = dir / "in.obj";
  cms::geom::write_obj(obj.string(), cms::geom::icosphere(1.0, 2));
  CHECK(run_cli("--mode flow --mesh " + obj.string() + " --law vpmcf --out " + dir.string()) == 0);
}

TEST_CASE("pde demo passes its conservation checks") {
  const fs::path dir = fresh_dir("cms_cli_pde");
  CHECK(run_cli("--mode pde-demo --demo static --out " + dir.string()) == 0);
  CHECK(slurp(dir / "mass_report.txt").find("PASS") != std::string::npos);
}
