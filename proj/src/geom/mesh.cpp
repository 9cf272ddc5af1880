#include "cmsflow/geom/mesh.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

namespace cms::geom {

namespace {

constexpr double kPi = std::numbers::pi;

uint64_t edge_key(int a, int b) {
  const uint64_t lo = static_cast<uint32_t>(std::min(a, b));
  const uint64_t hi = static_cast<uint32_t>(std::max(a, b));
  return (hi << 32) | lo;
}

void validate_curve(const DiscreteSurface& s) {
  const int n = static_cast<int>(s.vertices.size());
  if (n < 3) throw MeshTopologyError("closed curve needs at least 3 vertices");
  if (!s.faces.empty()) throw MeshTopologyError("curve with face list");
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    if ((s.vertices[i] - s.vertices[j]).norm() == 0.0)
      throw MeshQualityError("repeated consecutive curve vertices");
  }
}

}  // namespace

MeshTopology build_topology(const DiscreteSurface& surface) {
  MeshTopology topo;
  topo.kind = surface.kind;
  topo.vertex_count = static_cast<int>(surface.vertices.size());

  if (surface.kind == DiscreteSurface::Kind::Curve) {
    validate_curve(surface);
    topo.edge_count = topo.vertex_count;
    topo.face_count = 0;
    topo.euler_characteristic = 0;  // V - E on a cycle
    topo.vertex_neighbors.resize(topo.vertex_count);
    for (int i = 0; i < topo.vertex_count; ++i) {
      topo.vertex_neighbors[i] = {(i + topo.vertex_count - 1) % topo.vertex_count,
                                  (i + 1) % topo.vertex_count};
    }
    return topo;
  }

  if (topo.vertex_count < 4) throw MeshTopologyError("closed mesh needs at least 4 vertices");
  topo.face_count = static_cast<int>(surface.faces.size());
  if (topo.face_count < 4) throw MeshTopologyError("closed mesh needs at least 4 faces");

  topo.vertex_faces.assign(topo.vertex_count, {});

  // count: directed multiplicity per undirected edge; net: winding balance.
  struct EdgeInfo {
    int count = 0;
    int net = 0;
  };
  std::unordered_map<uint64_t, EdgeInfo> edge_map;
  edge_map.reserve(surface.faces.size() * 2);

  for (int f = 0; f < topo.face_count; ++f) {
    const auto& face = surface.faces[f];
    for (int c = 0; c < 3; ++c) {
      const int a = face[c];
      const int b = face[(c + 1) % 3];
      if (a < 0 || b < 0 || a >= topo.vertex_count || b >= topo.vertex_count)
        throw MeshTopologyError("face index out of range");
      if (a == b) throw MeshTopologyError("degenerate face with repeated vertex");
      EdgeInfo& e = edge_map[edge_key(a, b)];
      e.count += 1;
      e.net += (a < b) ? 1 : -1;
    }
    for (int c = 0; c < 3; ++c) topo.vertex_faces[face[c]].push_back(f);
  }

  topo.edges.reserve(edge_map.size());
  for (const auto& [key, info] : edge_map) {
    if (info.count != 2)
      throw MeshTopologyError("mesh is not closed: an edge is shared by " +
                              std::to_string(info.count) + " faces");
    if (info.net != 0)
      throw MeshTopologyError("inconsistent face winding (non-orientable or flipped face)");
    topo.edges.emplace_back(static_cast<int>(key & 0xffffffffu), static_cast<int>(key >> 32));
  }
  std::sort(topo.edges.begin(), topo.edges.end());
  topo.edge_count = static_cast<int>(topo.edges.size());
  topo.euler_characteristic = topo.vertex_count - topo.edge_count + topo.face_count;
  topo.vertex_neighbors.resize(topo.vertex_count);
  for (const auto& [a, b] : topo.edges) {
    topo.vertex_neighbors[a].push_back(b);
    topo.vertex_neighbors[b].push_back(a);
  }
  return topo;
}

int euler_characteristic(const DiscreteSurface& surface) {
  return build_topology(surface).euler_characteristic;
}

namespace {

MeshForms curve_forms(const DiscreteSurface& s) {
  const int n = static_cast<int>(s.vertices.size());
  MeshForms out;
  out.normal.resize(n);
  out.mean_curvature.resize(n);
  out.vertex_area.resize(n);
  out.barycentric_area.assign(n, 0.0);
  out.grad_measure.resize(n);
  out.grad_enclosed.resize(n);
  out.gaussian_curvature.assign(n, 0.0);
  out.angle_defect.assign(n, 0.0);

  double length = 0.0, area2 = 0.0;
  out.min_edge = std::numeric_limits<double>::max();
  for (int i = 0; i < n; ++i) {
    const auto& a = s.vertices[i];
    const auto& b = s.vertices[(i + 1) % n];
    const double el = (b - a).norm();
    length += el;
    out.min_edge = std::min(out.min_edge, el);
    area2 += a.x() * b.y() - b.x() * a.y();
  }
  out.total_measure = length;
  out.enclosed = 0.5 * area2;

  for (int i = 0; i < n; ++i) {
    const auto& prev = s.vertices[(i + n - 1) % n];
    const auto& cur = s.vertices[i];
    const auto& next = s.vertices[(i + 1) % n];

    const Eigen::Vector3d e_prev = cur - prev;
    const Eigen::Vector3d e_next = next - cur;
    out.grad_measure[i] = e_prev.normalized() - e_next.normalized();

    // gradient of the shoelace area: ((next - prev) x z) / 2
    const Eigen::Vector3d d = next - prev;
    out.grad_enclosed[i] = Eigen::Vector3d(d.y(), -d.x(), 0.0) * 0.5;

    const double w = out.grad_enclosed[i].norm();
    out.normal[i] = out.grad_enclosed[i] / w;
    out.vertex_area[i] = 0.5 * (e_prev.norm() + e_next.norm());
    out.mean_curvature[i] = -out.grad_measure[i].dot(out.normal[i]) / w;
  }
  out.min_face_area = 0.0;
  return out;
}

}  // namespace

MeshForms mesh_forms(const DiscreteSurface& surface, const MeshTopology& topo) {
  if (surface.kind == DiscreteSurface::Kind::Curve) return curve_forms(surface);

  const int nv = topo.vertex_count;
  const int nf = topo.face_count;
  const auto& x = surface.vertices;

  std::vector<Eigen::Vector3d> face_normal(nf);  // unit
  std::vector<double> face_area(nf);
  double total_area = 0.0;
  double volume6 = 0.0;
  double min_area = std::numeric_limits<double>::max();
  for (int f = 0; f < nf; ++f) {
    const auto& [i0, i1, i2] = surface.faces[f];
    const Eigen::Vector3d c = (x[i1] - x[i0]).cross(x[i2] - x[i0]);
    const double a2 = c.norm();
    face_area[f] = 0.5 * a2;
    min_area = std::min(min_area, face_area[f]);
    total_area += face_area[f];
    if (a2 == 0.0) throw MeshQualityError("zero-area face " + std::to_string(f));
    face_normal[f] = c / a2;
    volume6 += x[i0].dot(x[i1].cross(x[i2]));
  }
  const double mean_area = total_area / nf;
  if (min_area < kFaceAreaRelFloor * mean_area)
    throw MeshQualityError("face area below degeneracy floor");

  MeshForms out;
  out.total_measure = total_area;
  out.enclosed = volume6 / 6.0;
  out.min_face_area = min_area;
  out.normal.resize(nv);
  out.mean_curvature.resize(nv);
  out.gaussian_curvature.resize(nv);
  out.vertex_area.resize(nv);
  out.barycentric_area.resize(nv);
  out.angle_defect.resize(nv);
  out.grad_measure.assign(nv, Eigen::Vector3d::Zero());
  out.grad_enclosed.assign(nv, Eigen::Vector3d::Zero());

  out.min_edge = std::numeric_limits<double>::max();
  for (const auto& [a, b] : topo.edges)
    out.min_edge = std::min(out.min_edge, (x[a] - x[b]).norm());

  // Exact gradients of total area and enclosed volume, vertex areas, and
  // interior angles, accumulated per vertex from its incident faces.
  for (int v = 0; v < nv; ++v) {
    double bary = 0.0;
    double mixed = 0.0;
    double angle_sum = 0.0;
    Eigen::Vector3d ga = Eigen::Vector3d::Zero();
    Eigen::Vector3d gv = Eigen::Vector3d::Zero();
    for (int f : topo.vertex_faces[v]) {
      const auto& face = surface.faces[f];
      int c = 0;
      while (face[c] != v) ++c;
      const Eigen::Vector3d& p0 = x[face[c]];
      const Eigen::Vector3d& p1 = x[face[(c + 1) % 3]];
      const Eigen::Vector3d& p2 = x[face[(c + 2) % 3]];

      ga += 0.5 * face_normal[f].cross(p2 - p1);
      gv += p1.cross(p2) / 6.0;
      bary += face_area[f] / 3.0;

      const Eigen::Vector3d e1 = p1 - p0;
      const Eigen::Vector3d e2 = p2 - p0;
      const Eigen::Vector3d eo = p2 - p1;
      angle_sum += std::atan2(e1.cross(e2).norm(), e1.dot(e2));

      // mixed Voronoi partition: circumcentric for non-obtuse triangles,
      // half / quarter split when an angle is obtuse
      const double cos_v = e1.dot(e2);
      const double cos_1 = (-e1).dot(eo);
      const double cos_2 = (-e2).dot(-eo);
      if (cos_v < 0.0) {
        mixed += 0.5 * face_area[f];
      } else if (cos_1 < 0.0 || cos_2 < 0.0) {
        mixed += 0.25 * face_area[f];
      } else {
        const double cot_1 = cos_1 / e1.cross(eo).norm();
        const double cot_2 = cos_2 / e2.cross(eo).norm();
        mixed += (e2.squaredNorm() * cot_1 + e1.squaredNorm() * cot_2) / 8.0;
      }
    }
    out.grad_measure[v] = ga;
    out.grad_enclosed[v] = gv;
    out.vertex_area[v] = mixed;
    out.barycentric_area[v] = bary;
    out.angle_defect[v] = 2.0 * kPi - angle_sum;
    out.gaussian_curvature[v] = out.angle_defect[v] / bary;

    const double w = gv.norm();
    if (w == 0.0) throw MeshQualityError("degenerate vertex star at " + std::to_string(v));
    out.normal[v] = gv / w;
    out.mean_curvature[v] = -ga.dot(out.normal[v]) / mixed;
  }
  return out;
}

double surface_measure(const DiscreteSurface& surface) {
  const MeshTopology topo = build_topology(surface);
  return mesh_forms(surface, topo).total_measure;
}

double enclosed_measure(const DiscreteSurface& surface) {
  const MeshTopology topo = build_topology(surface);
  const double v = mesh_forms(surface, topo).enclosed;
  if (v <= 0.0)
    throw MeshTopologyError("non-positive enclosed measure: inward orientation or inverted shape");
  return v;
}

double gauss_bonnet_residual_from_forms(const DiscreteSurface& surface, const MeshTopology& topo,
                                        const MeshForms& forms) {
  if (surface.kind == DiscreteSurface::Kind::Curve) {
    const int n = static_cast<int>(surface.vertices.size());
    double turning = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto& prev = surface.vertices[(i + n - 1) % n];
      const auto& cur = surface.vertices[i];
      const auto& next = surface.vertices[(i + 1) % n];
      const Eigen::Vector3d a = cur - prev;
      const Eigen::Vector3d b = next - cur;
      turning += std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
    }
    return std::abs(turning - 2.0 * kPi);
  }
  double defect_sum = 0.0;
  for (double d : forms.angle_defect) defect_sum += d;
  return std::abs(defect_sum - 2.0 * kPi * topo.euler_characteristic);
}

double gauss_bonnet_residual(const DiscreteSurface& surface) {
  const MeshTopology topo = build_topology(surface);
  return gauss_bonnet_residual_from_forms(surface, topo, mesh_forms(surface, topo));
}

}  // namespace cms::geom
