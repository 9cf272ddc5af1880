#include "cmsflow/geom/io.h"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace cms::geom {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_obj(const std::string& path, const DiscreteSurface& surface) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  for (const auto& v : surface.vertices)
    out << "v " << format_g17(v.x()) << ' ' << format_g17(v.y()) << ' ' << format_g17(v.z())
        << '\n';
  for (const auto& f : surface.faces)
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

DiscreteSurface read_obj(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  DiscreteSurface s;
  s.kind = DiscreteSurface::Kind::TriMesh;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      double x, y, z;
      ls >> x >> y >> z;
      s.vertices.emplace_back(x, y, z);
    } else if (tag == "f") {
      std::array<int, 3> face;
      for (int c = 0; c < 3; ++c) {
        std::string tok;
        ls >> tok;
        // strip texture/normal references  (i/j/k)
        const auto slash = tok.find('/');
        if (slash != std::string::npos) tok.resize(slash);
        face[c] = std::stoi(tok) - 1;
      }
      s.faces.push_back(face);
    }
  }
  return s;
}

void write_curve_csv(const std::string& path, const DiscreteSurface& curve) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  for (const auto& v : curve.vertices)
    out << format_g17(v.x()) << ',' << format_g17(v.y()) << '\n';
}

DiscreteSurface read_curve_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  DiscreteSurface s;
  s.kind = DiscreteSurface::Kind::Curve;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("malformed curve row: " + line);
    s.vertices.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)),
                            0.0);
  }
  return s;
}

}  // namespace cms::geom
