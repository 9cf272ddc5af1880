#pragma once

#include "cmsflow/geom/mesh.h"

#include <string>

namespace cms::geom {

// Wavefront OBJ, `v x y z` / `f i j k` with 1-based indices.
// Floats are written with 17 significant digits.
void write_obj(const std::string& path, const DiscreteSurface& surface);
DiscreteSurface read_obj(const std::string& path);

// Closed planar curve as `x,y` rows in cycle order, 17 significant digits.
void write_curve_csv(const std::string& path, const DiscreteSurface& curve);
DiscreteSurface read_curve_csv(const std::string& path);

// Shortest fixed formatting used by all text output: %.17g.
std::string format_g17(double v);

}  // namespace cms::geom
