#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "cpoly/engine.hpp"
#include "cpoly/oracle.hpp"

namespace cpoly {

struct RenderOptions {
  bool gaps = false;
  bool edge_colors = true;
  int outline_samples = 256;
  int canvas = 720;  // px of the longer side
};

namespace svg_detail {

inline const char* palette(int i) {
  static const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                 "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                 "#bcbd22", "#17becf"};
  return colors[i % 10];
}

struct Mapper {
  double minx, miny, maxx, maxy, scale;
  int width, height;

  double px(Point2 p) const { return (p.x - minx) * scale; }
  double py(Point2 p) const { return (maxy - p.y) * scale; }

  std::string pt(Point2 p) const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f,%.3f", px(p), py(p));
    return buf;
  }
};

inline Mapper make_mapper(const SceneSpec& scene, const RenderOptions& opt) {
  double minx = 1e300, miny = 1e300, maxx = -1e300, maxy = -1e300;
  for (const auto& b : scene.bodies) {
    maxx = std::max(maxx, b.support(0.0));
    maxy = std::max(maxy, b.support(kPi / 2.0));
    minx = std::min(minx, -b.support(kPi));
    miny = std::min(miny, -b.support(3.0 * kPi / 2.0));
  }
  const double pad = 0.06 * std::max(maxx - minx, maxy - miny);
  minx -= pad; miny -= pad; maxx += pad; maxy += pad;
  Mapper m;
  m.minx = minx; m.miny = miny; m.maxx = maxx; m.maxy = maxy;
  const double span = std::max(maxx - minx, maxy - miny);
  m.scale = opt.canvas / span;
  m.width = static_cast<int>((maxx - minx) * m.scale + 0.5);
  m.height = static_cast<int>((maxy - miny) * m.scale + 0.5);
  return m;
}

inline std::string body_path(const PlacedBody& b, int samples, const Mapper& m) {
  std::ostringstream p;
  for (int k = 0; k < samples; ++k) {
    p << (k == 0 ? "M" : " L") << m.pt(b.boundary_at_normal(kTwoPi * k / samples));
  }
  p << " Z";
  return p.str();
}

}  // namespace svg_detail

// Scene outlines plus the filled intersection. When a structure is supplied
// the intersection path comes from its edges and the vertices are drawn by
// kind; otherwise the region is traced with the membership oracle.
inline std::string render_svg(const SceneSpec& scene, const CPolygonStruct* structure,
                              const RenderOptions& opt = {}) {
  using namespace svg_detail;
  const Mapper m = make_mapper(scene, opt);
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << m.width
      << "\" height=\"" << m.height << "\" viewBox=\"0 0 " << m.width << ' ' << m.height
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // The intersection region.
  std::ostringstream hull;
  if (structure) {
    bool first = true;
    for (const auto& e : structure->edges) {
      const int samples = std::max(8, static_cast<int>(e.arc.extent() * 48));
      for (int k = 0; k <= samples; ++k) {
        const double th = normalize_angle(e.arc.start() + e.arc.extent() * k / samples);
        hull << (first ? "M" : " L")
             << m.pt(scene.bodies[e.owner].boundary_at_normal(th));
        first = false;
      }
    }
    hull << " Z";
  } else {
    const TracedBoundary tb = trace_boundary(scene.bodies, scene.tol, 512);
    for (std::size_t k = 0; k < tb.points.size(); ++k)
      hull << (k == 0 ? "M" : " L") << m.pt(tb.points[k]);
    hull << " Z";
  }
  out << "<path d=\"" << hull.str() << "\" fill=\"#9ecae1\" fill-opacity=\"0.85\" stroke=\"none\"/>\n";

  // Generating bodies.
  for (int i = 0; i < scene.n(); ++i)
    out << "<path d=\"" << body_path(scene.bodies[i], opt.outline_samples, m)
        << "\" fill=\"none\" stroke=\"" << (opt.edge_colors ? palette(i) : "#555555")
        << "\" stroke-width=\"1\" stroke-opacity=\"0.6\"/>\n";

  if (structure) {
    if (opt.gaps) {
      for (const auto& fam : structure->gap_families) {
        for (const auto& g : fam) {
          std::ostringstream gp;
          const int samples = std::max(8, static_cast<int>(g.open_arc.extent() * 32));
          for (int k = 0; k <= samples; ++k) {
            const double th =
                normalize_angle(g.open_arc.start() + g.open_arc.extent() * k / samples);
            gp << (k == 0 ? "M" : " L")
               << m.pt(scene.bodies[g.owner].boundary_at_normal(th));
          }
          gp << " Z";
          out << "<path d=\"" << gp.str()
              << "\" fill=\"#999999\" fill-opacity=\"0.25\" stroke=\"none\"/>\n";
          char line[256];
          std::snprintf(line, sizeof line,
                        "<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\" "
                        "stroke=\"#666666\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n",
                        m.px(g.chord_a), m.py(g.chord_a), m.px(g.chord_b), m.py(g.chord_b));
          out << line;
        }
      }
    }
    // Edges over the fill, colored by owner.
    for (const auto& e : structure->edges) {
      std::ostringstream ep;
      const int samples = std::max(8, static_cast<int>(e.arc.extent() * 48));
      for (int k = 0; k <= samples; ++k) {
        const double th = normalize_angle(e.arc.start() + e.arc.extent() * k / samples);
        ep << (k == 0 ? "M" : " L") << m.pt(scene.bodies[e.owner].boundary_at_normal(th));
      }
      out << "<path d=\"" << ep.str() << "\" fill=\"none\" stroke=\""
          << (opt.edge_colors ? palette(e.owner) : "#333333")
          << "\" stroke-width=\"2.5\"/>\n";
    }
    for (const auto& v : structure->vertices) {
      const bool pw = v.kind == VertexRec::Kind::Pairwise;
      char dot[192];
      std::snprintf(dot, sizeof dot,
                    "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"4\" fill=\"%s\" "
                    "stroke=\"black\" stroke-width=\"0.8\"/>\n",
                    m.px(v.point), m.py(v.point), pw ? "#d62728" : "#ff7f0e");
      out << dot;
    }
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace cpoly
