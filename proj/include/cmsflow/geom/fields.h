#pragma once

#include "cmsflow/geom/core.h"

#include <functional>

namespace cms::geom {

// Ambient scalar field with exact time derivative and spatial gradient.
struct AmbientField {
  std::function<double(const Vec&, double)> value;
  std::function<double(const Vec&, double)> dt;
  std::function<Vec(const Vec&, double)> grad;
};

// Scalar field on a chart with exact time and chart derivatives.
struct ChartField {
  std::function<double(const SurfVec&, double)> value;
  std::function<double(const SurfVec&, double)> dt;
  std::function<SurfVec(const SurfVec&, double)> grad;
};

inline AmbientField constant_ambient_field(double v) {
  AmbientField f;
  f.value = [v](const Vec&, double) { return v; };
  f.dt = [](const Vec&, double) { return 0.0; };
  f.grad = [](const Vec& x, double) { return Vec(Vec::Zero(x.size())); };
  return f;
}

inline ChartField constant_chart_field(double v) {
  ChartField f;
  f.value = [v](const SurfVec&, double) { return v; };
  f.dt = [](const SurfVec&, double) { return 0.0; };
  f.grad = [](const SurfVec& s, double) { return SurfVec(SurfVec::Zero(s.size())); };
  return f;
}

}  // namespace cms::geom
