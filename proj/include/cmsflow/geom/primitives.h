#pragma once

#include "cmsflow/geom/mesh.h"

#include <functional>

namespace cms::geom {

// Subdivided icosahedron projected to the sphere; outward winding.
DiscreteSurface icosphere(double radius, int subdivisions);

// Icosphere scaled onto semi-axes (a, b, c).
DiscreteSurface ellipsoid_mesh(double a, double b, double c, int subdivisions);

// Radial graph r(u) * u over the unit sphere directions u of an icosphere;
// radial_scale must stay positive.
DiscreteSurface radial_graph_sphere(int subdivisions,
                                    const std::function<double(const Eigen::Vector3d&)>& radial_scale);

DiscreteSurface cube_mesh(double half_extent = 1.0);

DiscreteSurface torus_mesh(double major, double minor, int segments_major, int segments_minor);

// Regular m-gon, counterclockwise.
DiscreteSurface polygon_curve(double radius, int segments);

}  // namespace cms::geom
