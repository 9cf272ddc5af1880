#pragma once

#include "cmsflow/geom/core.h"

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace cms::geom {

// Discrete closed hypersurface: either a triangulated closed orientable
// 2-manifold in 3-space, or a closed planar curve (the vertex order is the
// cycle; z components are zero). Outward orientation: faces wound
// counterclockwise seen from outside, curve traversed counterclockwise.
struct DiscreteSurface {
  enum class Kind { TriMesh, Curve };

  Kind kind = Kind::TriMesh;
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> faces;  // TriMesh only
};

// Connectivity bundle built once; valid while the face list is unchanged.
// Construction validates closedness, orientability, and index sanity.
struct MeshTopology {
  DiscreteSurface::Kind kind;
  int vertex_count = 0;
  int edge_count = 0;
  int face_count = 0;
  int euler_characteristic = 0;                    // V - E + F (0 for curves)
  std::vector<std::vector<int>> vertex_faces;      // TriMesh: incident faces per vertex
  std::vector<std::vector<int>> vertex_neighbors;  // one-ring (curve: the two cycle neighbors)
  std::vector<std::pair<int, int>> edges;          // unique undirected edges
};

MeshTopology build_topology(const DiscreteSurface& surface);

int euler_characteristic(const DiscreteSurface& surface);

// Per-vertex geometric summary. The area/length gradients are exact discrete
// gradients of the total surface measure and of the enclosed measure, which
// makes the curvature flow in the flow module an exact discrete gradient
// flow. Sign convention: H < 0 on a sphere with outward normals.
//
// vertex_area is the mixed Voronoi partition (H = -grad_measure . N / area
// is pointwise accurate with it, including at irregular vertices);
// barycentric_area backs the angle-defect Gaussian curvature so that
// sum(K_v A_v) = sum of defects exactly.
struct MeshForms {
  std::vector<Eigen::Vector3d> normal;            // outward unit vertex normal
  std::vector<double> mean_curvature;             // H
  std::vector<double> gaussian_curvature;         // K = angle defect / barycentric area
  std::vector<double> vertex_area;                // quadrature weight (dual length for curves)
  std::vector<double> barycentric_area;           // TriMesh only
  std::vector<double> angle_defect;               // TriMesh only
  std::vector<Eigen::Vector3d> grad_measure;      // d(total area or length)/d x_v
  std::vector<Eigen::Vector3d> grad_enclosed;     // d(enclosed volume or area)/d x_v
  double total_measure = 0.0;                     // surface area / curve length
  double enclosed = 0.0;                          // enclosed volume / enclosed area
  double min_edge = 0.0;
  double min_face_area = 0.0;                     // TriMesh only
};

MeshForms mesh_forms(const DiscreteSurface& surface, const MeshTopology& topo);

double surface_measure(const DiscreteSurface& surface);
double enclosed_measure(const DiscreteSurface& surface);  // throws on inverted orientation

// | sum of angle defects - 2 pi chi | for meshes; | total turning - 2 pi |
// for closed planar curves.
double gauss_bonnet_residual(const DiscreteSurface& surface);

// Same, reusing topology and forms already in hand (per-step monitoring).
double gauss_bonnet_residual_from_forms(const DiscreteSurface& surface, const MeshTopology& topo,
                                        const MeshForms& forms);

}  // namespace cms::geom
