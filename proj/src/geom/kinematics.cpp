#include "cmsflow/geom/kinematics.h"

namespace cms::geom {

ChartState make_chart_state(const ParamFamily& family, const SurfVec& s, double t,
                            int depth) {
  const int n = family.dim();
  const int d = family.ambient_dim();

  ChartState st;
  st.F = fundamental_forms_param(family, s, t);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      st.d2r[i][j] = family.d2(s, t, i, j);
      st.d2r[j][i] = st.d2r[i][j];
    }

  st.vel = family.dt(s, t);
  const auto parts = decompose_ambient_vector(st.F, st.vel);
  st.C = parts.normal_part;
  st.v_up = parts.tangential;
  st.v_low = SurfVec::Zero(n);
  for (int i = 0; i < n; ++i) st.v_low[i] = st.F.tangent[i].dot(st.vel);

  if (depth < 1) return st;

  // Derivatives of the raw normal: the cross product is multilinear in the
  // tangent slots, and normalization differentiates by projection.
  const double orient = family.orientation();
  auto cross_with = [&](int slot, const Vec& replacement) {
    std::array<Vec, 3> args = st.F.tangent;
    args[slot] = replacement;
    return Vec(generalized_cross(args, n, d) * orient);
  };
  const Vec raw = generalized_cross(st.F.tangent, n, d) * orient;
  const double r = raw.norm();
  const Vec& N = st.F.normal;

  std::array<Vec, 3> a;  // a[k] = d_k raw
  for (int k = 0; k < n; ++k) {
    Vec acc = Vec::Zero(d);
    for (int m = 0; m < n; ++m) acc += cross_with(m, st.d2r[k][m]);
    a[k] = acc;
  }
  std::array<double, 3> r1;  // d_k |raw|
  for (int k = 0; k < n; ++k) {
    r1[k] = N.dot(a[k]);
    st.d_normal[k] = (a[k] - N * r1[k]) / r;
  }

  st.grad_c = SurfVec::Zero(n);
  std::array<Vec, 3> vel_d1;  // d_i of the ambient velocity
  for (int i = 0; i < n; ++i) vel_d1[i] = family.dtd1(s, t, i);
  for (int i = 0; i < n; ++i) st.grad_c[i] = st.d_normal[i].dot(st.vel) + N.dot(vel_d1[i]);

  st.d_v_low = SurfMat::Zero(n, n);
  st.cov_v_low = SurfMat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      st.d_v_low(i, j) = st.d2r[i][j].dot(st.vel) + st.F.tangent[j].dot(vel_d1[i]);
      double corr = 0.0;
      for (int k = 0; k < n; ++k) corr += st.F.christoffel[k](i, j) * st.v_low[k];
      st.cov_v_low(i, j) = st.d_v_low(i, j) - corr;
    }
  st.cov_v_up = st.cov_v_low * st.F.metric_inv;  // (i,m) S^{mj} -> nabla_i V^j
  st.div_v = st.cov_v_up.trace();

  st.b_mixed = st.F.mixed_curvature();
  st.time_conn = SurfMat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      st.time_conn(i, j) = st.cov_v_up(j, i) - st.C * st.b_mixed(i, j);

  for (int k = 0; k < n; ++k) {
    st.d_metric[k] = SurfMat::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        st.d_metric[k](i, j) =
            st.d2r[k][i].dot(st.F.tangent[j]) + st.F.tangent[i].dot(st.d2r[k][j]);
  }

  if (depth < 2) return st;

  // Second derivatives of the normal and first derivatives of the curvature.
  std::array<std::array<Vec, 3>, 3> dd_raw;
  for (int k = 0; k < n; ++k)
    for (int l = k; l < n; ++l) {
      Vec acc = Vec::Zero(d);
      for (int m = 0; m < n; ++m) acc += cross_with(m, family.d3(s, t, k, l, m));
      for (int m = 0; m < n; ++m)
        for (int p = 0; p < n; ++p) {
          if (m == p) continue;
          std::array<Vec, 3> args = st.F.tangent;
          args[m] = st.d2r[k][m];
          args[p] = st.d2r[l][p];
          acc += generalized_cross(args, n, d) * orient;
        }
      dd_raw[k][l] = acc;
      dd_raw[l][k] = acc;
    }
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      const double r_kl = st.d_normal[l].dot(a[k]) + N.dot(dd_raw[k][l]);
      st.dd_normal[k][l] =
          (dd_raw[k][l] - st.d_normal[l] * r1[k] - N * r_kl) / r - st.d_normal[k] * (r1[l] / r);
    }

  SurfMat ddc = SurfMat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const Vec dtij = family.dtd2(s, t, i, j);
      const double v = st.dd_normal[i][j].dot(st.vel) + st.d_normal[j].dot(vel_d1[i]) +
                       st.d_normal[i].dot(vel_d1[j]) + N.dot(dtij);
      ddc(i, j) = v;
      ddc(j, i) = v;
    }
  st.hess_c = SurfMat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double corr = 0.0;
      for (int k = 0; k < n; ++k) corr += st.F.christoffel[k](i, j) * st.grad_c[k];
      st.hess_c(i, j) = ddc(i, j) - corr;
    }

  for (int k = 0; k < n; ++k) {
    st.d_curv[k] = SurfMat::Zero(n, n);
    st.cov_curv[k] = SurfMat::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        st.d_curv[k](i, j) = st.d_normal[k].dot(st.d2r[i][j]) + N.dot(family.d3(s, t, i, j, k));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double corr = 0.0;
        for (int m = 0; m < n; ++m)
          corr += st.F.christoffel[m](k, i) * st.F.curvature(m, j) +
                  st.F.christoffel[m](k, j) * st.F.curvature(i, m);
        st.cov_curv[k](i, j) = st.d_curv[k](i, j) - corr;
      }
  }
  return st;
}

}  // namespace cms::geom
