#include "cmsflow/geom/param_family.h"

namespace cms::geom {

namespace {

SurfVec shifted(const SurfVec& s, int i, double delta) {
  SurfVec out = s;
  out[i] += delta;
  return out;
}

}  // namespace

Vec ParamFamily::d1(const SurfVec& s, double t, int i) const {
  const double h = fd_step();
  return (position(shifted(s, i, h), t) - position(shifted(s, i, -h), t)) / (2.0 * h);
}

Vec ParamFamily::d2(const SurfVec& s, double t, int i, int j) const {
  const double h = fd_step();
  if (i == j) {
    return (position(shifted(s, i, h), t) - 2.0 * position(s, t) +
            position(shifted(s, i, -h), t)) /
           (h * h);
  }
  const Vec pp = position(shifted(shifted(s, i, h), j, h), t);
  const Vec pm = position(shifted(shifted(s, i, h), j, -h), t);
  const Vec mp = position(shifted(shifted(s, i, -h), j, h), t);
  const Vec mm = position(shifted(shifted(s, i, -h), j, -h), t);
  return (pp - pm - mp + mm) / (4.0 * h * h);
}

Vec ParamFamily::d3(const SurfVec& s, double t, int i, int j, int k) const {
  const double h = fd_step();
  return (d2(shifted(s, k, h), t, i, j) - d2(shifted(s, k, -h), t, i, j)) / (2.0 * h);
}

Vec ParamFamily::dt(const SurfVec& s, double t) const {
  const double h = fd_step();
  return (position(s, t + h) - position(s, t - h)) / (2.0 * h);
}

Vec ParamFamily::dtd1(const SurfVec& s, double t, int i) const {
  const double h = fd_step();
  return (d1(s, t + h, i) - d1(s, t - h, i)) / (2.0 * h);
}

Vec ParamFamily::dtd2(const SurfVec& s, double t, int i, int j) const {
  const double h = fd_step();
  return (d2(s, t + h, i, j) - d2(s, t - h, i, j)) / (2.0 * h);
}

}  // namespace cms::geom
