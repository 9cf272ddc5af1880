#pragma once

#include "cmsflow/geom/core.h"
#include "cmsflow/geom/forms.h"
#include "cmsflow/geom/param_family.h"

#include <functional>
#include <vector>

namespace cms::geom {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule on [a, b].
Rule1D gauss_legendre(int m, double a, double b);

// Uniform rule for periodic integrands on [a, b); spectrally accurate for
// smooth periodic functions.
Rule1D trapezoid_periodic(int m, double a, double b);

// Sample grid over a chart: periodic axes uniform over the period,
// non-periodic axes uniform over [lo + margin, hi - margin]. Used for
// residual norms; the margin keeps samples off coordinate singularities.
struct GridSpec {
  std::array<int, 3> count{17, 33, 17};
  double margin = 1e-2;
};

std::vector<SurfVec> chart_samples(const Chart& chart, const GridSpec& grid);

// Quadrature sizes for chart integrals. Periodic axes get a trapezoid rule,
// non-periodic axes Gauss-Legendre over the full closed interval (the area
// element vanishes at chart poles, so endpoint singularities are benign).
struct QuadratureSpec {
  std::array<int, 3> count{48, 96, 48};
  int radial = 24;
};

using SurfaceIntegrand = std::function<double(const SurfVec&, const FundamentalForms&)>;

double surface_integral(const ParamFamily& family, double t, const SurfaceIntegrand& f,
                        const QuadratureSpec& q = {});

double surface_area(const ParamFamily& family, double t, const QuadratureSpec& q = {});

// (1 / (n+1)) * integral of R . N dS; positive for outward orientation.
double enclosed_volume(const ParamFamily& family, double t, const QuadratureSpec& q = {});

// Area-weighted centroid of the surface.
Vec area_centroid(const ParamFamily& family, double t, const QuadratureSpec& q = {});

// Integral of an ambient scalar over the enclosed region, by radial
// quadrature from the centroid. Valid for star-shaped surfaces.
double volume_integral(const ParamFamily& family, double t,
                       const std::function<double(const Vec&)>& f,
                       const QuadratureSpec& q = {});

}  // namespace cms::geom
