#include "cmsflow/geom/forms.h"

#include <cmath>

namespace cms::geom {

namespace {

double det3(double a00, double a01, double a02, double a10, double a11, double a12, double a20,
            double a21, double a22) {
  return a00 * (a11 * a22 - a12 * a21) - a01 * (a10 * a22 - a12 * a20) +
         a02 * (a10 * a21 - a11 * a20);
}

}  // namespace

Vec generalized_cross(const std::array<Vec, 3>& t, int n, int d) {
  Vec out = Vec::Zero(d);
  switch (n) {
    case 1:
      // det[w, t0] = w_x t0_y - w_y t0_x
      out[0] = t[0][1];
      out[1] = -t[0][0];
      break;
    case 2:
      out[0] = t[0][1] * t[1][2] - t[0][2] * t[1][1];
      out[1] = t[0][2] * t[1][0] - t[0][0] * t[1][2];
      out[2] = t[0][0] * t[1][1] - t[0][1] * t[1][0];
      break;
    case 3: {
      // Cofactor expansion of det[e_a, t0, t1, t2] along the first column.
      for (int a = 0; a < 4; ++a) {
        int r[3];
        int p = 0;
        for (int row = 0; row < 4; ++row) {
          if (row != a) r[p++] = row;
        }
        const double minor =
            det3(t[0][r[0]], t[1][r[0]], t[2][r[0]], t[0][r[1]], t[1][r[1]], t[2][r[1]],
                 t[0][r[2]], t[1][r[2]], t[2][r[2]]);
        out[a] = ((a % 2) == 0 ? 1.0 : -1.0) * minor;
      }
      break;
    }
    default:
      throw SingularEmbeddingError("generalized_cross: unsupported dimension");
  }
  return out;
}

FundamentalForms forms_from_derivatives(const std::array<Vec, 3>& first,
                                        const std::array<std::array<Vec, 3>, 3>& second, int n,
                                        int d, double orientation) {
  FundamentalForms f;
  f.n = n;
  f.d = d;
  f.tangent = first;

  f.metric = SurfMat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v = first[i].dot(first[j]);
      f.metric(i, j) = v;
      f.metric(j, i) = v;
    }

  f.det = f.metric.determinant();
  if (!(f.det > kMetricDetFloor)) {
    throw SingularEmbeddingError("degenerate metric: det(S) = " + std::to_string(f.det));
  }
  f.sqrt_det = std::sqrt(f.det);
  f.metric_inv = f.metric.inverse();

  Vec raw = generalized_cross(first, n, d) * orientation;
  f.normal = raw / raw.norm();

  f.curvature = SurfMat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double b = f.normal.dot(second[i][j]);
      f.curvature(i, j) = b;
      f.curvature(j, i) = b;
    }
  f.mean_curvature = (f.metric_inv * f.curvature).trace();

  for (int i = 0; i < n; ++i) {
    Vec dual = Vec::Zero(d);
    for (int j = 0; j < n; ++j) dual += f.metric_inv(i, j) * first[j];
    f.dual_tangent[i] = dual;
  }

  // Gamma^k_ij = S^{kl} (d_i d_j R) . S_l
  for (int k = 0; k < n; ++k) {
    f.christoffel[k] = SurfMat::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const double g = f.dual_tangent[k].dot(second[i][j]);
        f.christoffel[k](i, j) = g;
        f.christoffel[k](j, i) = g;
      }
  }
  return f;
}

FundamentalForms fundamental_forms_param(const ParamFamily& family, const SurfVec& s, double t) {
  const int n = family.dim();
  const int d = family.ambient_dim();
  std::array<Vec, 3> first;
  std::array<std::array<Vec, 3>, 3> second;
  for (int i = 0; i < n; ++i) first[i] = family.d1(s, t, i);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      second[i][j] = family.d2(s, t, i, j);
      second[j][i] = second[i][j];
    }
  return forms_from_derivatives(first, second, n, d, family.orientation());
}

AmbientDecomposition decompose_ambient_vector(const FundamentalForms& forms, const Vec& a) {
  AmbientDecomposition parts;
  parts.normal_part = forms.normal.dot(a);
  parts.tangential = SurfVec::Zero(forms.n);
  for (int i = 0; i < forms.n; ++i) parts.tangential[i] = forms.dual_tangent[i].dot(a);
  return parts;
}

Vec reconstruct_ambient(const FundamentalForms& forms, const AmbientDecomposition& parts) {
  Vec out = parts.normal_part * forms.normal;
  for (int i = 0; i < forms.n; ++i) out += parts.tangential[i] * forms.tangent[i];
  return out;
}

AmbientDecomposition surface_velocity(const ParamFamily& family, const FundamentalForms& forms,
                                      const SurfVec& s, double t) {
  return decompose_ambient_vector(forms, family.dt(s, t));
}

}  // namespace cms::geom
