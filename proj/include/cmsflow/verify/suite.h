#pragma once

#include "cmsflow/fam/analytic.h"
#include "cmsflow/verify/checks.h"

#include <string>
#include <vector>

namespace cms::verify {

struct SuiteFamily {
  std::string name;
  fam::FamilyPtr geometry;
  bool star_shaped = true;  // volume integrals only run on star-shaped families
};

// Named verification families: "sphere" (linear radius), "ellipsoid"
// (uniform scale), "translate", "perturbed", "torus", "static".
// Throws ScheduleError for unknown names.
std::vector<SuiteFamily> standard_families(const std::vector<std::string>& names);

struct SuiteResult {
  std::vector<IdentityReport> reports;
  bool all_passed = true;
  std::vector<std::string> failures;  // "identity/family" labels
};

// Runs every identity check on every family for each listed step size.
SuiteResult run_identity_suite(const std::vector<SuiteFamily>& families,
                               const std::vector<double>& steps, CheckOptions opts = {});

// One row per (identity, family, h):
// identity,family,h,max_residual,order_estimate
void write_report_csv(const std::string& path, const std::vector<IdentityReport>& reports);

}  // namespace cms::verify
