#pragma once

#include "cmsflow/geom/forms.h"
#include "cmsflow/geom/param_family.h"

#include <array>

namespace cms::geom {

// Derived pointwise state used by the identity checks. Everything here is
// assembled from family derivatives at a single (s, t); only the checks
// themselves introduce finite differences in time.
//
// Index layout: cov_v_low(i, j) = nabla_i V_j; cov_v_up(i, j) = nabla_i V^j;
// time_conn(i, j) = Gdot^i_j = nabla_j V^i - C B^i_j; b_mixed(i, j) = B^i_j.
struct ChartState {
  FundamentalForms F;

  Vec vel;       // ambient velocity dR/dt
  double C = 0;  // normal speed
  SurfVec v_up;  // V^i
  SurfVec v_low; // V_i

  std::array<std::array<Vec, 3>, 3> d2r;  // d_i d_j R
  std::array<Vec, 3> d_normal;            // d_i N (from the cross-product construction)
  std::array<std::array<Vec, 3>, 3> dd_normal;  // d_i d_j N

  SurfMat d_v_low;    // d_i V_j
  SurfMat cov_v_low;  // nabla_i V_j
  SurfMat cov_v_up;   // nabla_i V^j
  double div_v = 0;

  SurfVec grad_c;   // d_i C
  SurfMat hess_c;   // nabla_i nabla_j C
  SurfMat b_mixed;  // B^i_j
  SurfMat time_conn;

  std::array<SurfMat, 3> d_curv;    // d_k B_ij
  std::array<SurfMat, 3> cov_curv;  // nabla_k B_ij
  std::array<SurfMat, 3> d_metric;  // d_k S_ij
};

// depth 0: forms + velocity; depth 1: + first derivatives (d_normal, grad_c,
// velocity gradients, time connection); depth 2: + dd_normal, hess_c, d_curv.
ChartState make_chart_state(const ParamFamily& family, const SurfVec& s, double t,
                            int depth);

}  // namespace cms::geom
