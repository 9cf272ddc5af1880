#pragma once

#include "cmsflow/geom/core.h"
#include "cmsflow/geom/param_family.h"

#include <array>

namespace cms::geom {

// Pointwise first/second fundamental forms and the ambient-surface shift
// machinery of an embedded hypersurface.
//
// Conventions: B_ij is the normal projection of d_i d_j R with the outward
// unit normal, so a radius-R sphere has B_ij = -S_ij / R and mean curvature
// H = -n / R.
struct FundamentalForms {
  int n = 0;  // surface dimension
  int d = 0;  // ambient dimension, n + 1

  std::array<Vec, 3> tangent;       // S_i = d_i R; components are the shift tensor X^a_i
  std::array<Vec, 3> dual_tangent;  // S^i = S^{ij} S_j; components are X_a^i
  SurfMat metric;                   // S_ij
  SurfMat metric_inv;               // S^ij
  double det = 0.0;                 // |S|
  double sqrt_det = 0.0;            // area element density
  Vec normal;                       // unit outward N
  SurfMat curvature;                // B_ij
  double mean_curvature = 0.0;      // H = S^{ij} B_ij
  std::array<SurfMat, 3> christoffel;  // christoffel[k](i, j) = Gamma^k_ij

  double shift(int alpha, int i) const { return tangent[i][alpha]; }
  double dual_shift(int alpha, int i) const { return dual_tangent[i][alpha]; }

  // B^i_j = S^{ik} B_kj
  SurfMat mixed_curvature() const { return metric_inv * curvature; }
};

// Vector v with v . w = det[w, t_0, ..., t_{n-1}] for every ambient w.
// Its norm equals sqrt(det S) when the t_i are the tangent basis.
Vec generalized_cross(const std::array<Vec, 3>& tangents, int n, int d);

// Assemble forms from raw derivative data (first derivatives S_i and second
// derivatives D[i][j] = d_i d_j R). Throws SingularEmbeddingError when
// det(S_ij) falls below kMetricDetFloor.
FundamentalForms forms_from_derivatives(const std::array<Vec, 3>& first,
                                        const std::array<std::array<Vec, 3>, 3>& second,
                                        int n, int d, double orientation);

FundamentalForms fundamental_forms_param(const ParamFamily& family, const SurfVec& s, double t);

// Unique split of an ambient vector into a normal scalar and tangential
// surface components: A = normal_part * N + tangential^i S_i.
struct AmbientDecomposition {
  double normal_part = 0.0;
  SurfVec tangential;
};

AmbientDecomposition decompose_ambient_vector(const FundamentalForms& forms, const Vec& a);
Vec reconstruct_ambient(const FundamentalForms& forms, const AmbientDecomposition& parts);

// Velocity decomposition (C, V^i) of the embedding's time derivative.
AmbientDecomposition surface_velocity(const ParamFamily& family, const FundamentalForms& forms,
                                      const SurfVec& s, double t);

}  // namespace cms::geom
