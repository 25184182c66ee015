#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cpoly/engine.hpp"
#include "cpoly/scene.hpp"

namespace cpoly {

struct ConstructionParams {
  double mu = 1.5;          // expansion factor of the cutting homothets
  double delta_frac = 0.05; // inward nudge as a fraction of the domain diameter
  double s = 0.8;           // three-circle size parameter
  double corner_radius = 0.2;
  Vec2 offset{0.3, 0.0};    // zero-vertex translate offset (along a face)
  double min_vertex_angle = 0.03;  // keep cap crossings visible to the oracle
  int max_retries = 20;
};

namespace construct_detail {

inline double domain_diameter(const DomainModel& dom, int samples = 512) {
  double best = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double th = kTwoPi * k / samples;
    best = std::max(best, dom.support(th) + dom.support(th + kPi));
  }
  return best;
}

// Maximal smooth Gauss arcs: the complement of the singular feature arcs.
inline std::vector<NormalArc> smooth_arcs(const DomainModel& dom) {
  const auto& feats = dom.singular_features();
  if (feats.empty()) return {NormalArc::full_circle()};
  std::vector<NormalArc> arcs;
  std::vector<int> order(feats.size());
  for (std::size_t i = 0; i < feats.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return feats[a].normal_arc.start() < feats[b].normal_arc.start();
  });
  for (std::size_t t = 0; t < order.size(); ++t) {
    const auto& cur = feats[order[t]].normal_arc;
    const auto& nxt = feats[order[(t + 1) % order.size()]].normal_arc;
    const double ext = ccw_delta(cur.end(), nxt.start());
    if (ext > 0.0) arcs.emplace_back(cur.end(), ext);
  }
  return arcs;
}

}  // namespace construct_detail

// Sharp upper bound witness: the domain itself plus n-1 expanded homothets,
// each centered at a smooth boundary point and nudged inward so it clips a
// small cap producing exactly two pairwise vertices. The inward nudge backs
// off geometrically until the count is exactly 2(n-1)+m.
inline SceneSpec build_sharp_upper(const DomainSpec& domain_spec, int n,
                                   const ConstructionParams& params = {},
                                   Tolerances tol = {}) {
  if (n < 2) throw std::invalid_argument("build_sharp_upper: need n >= 2");
  const DomainPtr dom = build_domain(domain_spec);
  if (!dom->is_strictly_convex())
    throw std::invalid_argument("build_sharp_upper: domain must be strictly convex");

  const int m = dom->feature_count();
  const int cutters = n - 1;
  const double diam = construct_detail::domain_diameter(*dom);

  // Cut angles spread strictly inside one smooth Gauss arc (the widest one).
  const auto arcs = construct_detail::smooth_arcs(*dom);
  const NormalArc widest = *std::max_element(
      arcs.begin(), arcs.end(),
      [](const NormalArc& a, const NormalArc& b) { return a.extent() < b.extent(); });
  std::vector<double> cut_angles;
  for (int k = 0; k < cutters; ++k) {
    if (widest.is_full())
      cut_angles.push_back(kTwoPi * k / cutters);
    else
      cut_angles.push_back(
          normalize_angle(widest.start() + widest.extent() * (k + 1.0) / (cutters + 1.0)));
  }

  // The nudge controls the cap half-width w ~ sqrt(2*delta/dk), the crossing
  // angle ~ sqrt(2*delta*dk). Sweeping delta downward crosses the window where
  // caps are disjoint but their crossings stay visible to the oracle.
  double delta = params.delta_frac * diam;
  for (int attempt = 0; attempt < params.max_retries; ++attempt, delta *= 0.7) {
    std::vector<HomothetSpec> homothets{{{0.0, 0.0}, 1.0}};
    for (double th : cut_angles) {
      const Point2 p = dom->boundary_at_normal(th);
      const Point2 center = p * (1.0 - params.mu) - delta * unit_vector(th);
      homothets.push_back({center, params.mu});
    }
    try {
      SceneSpec scene = make_scene(domain_spec, homothets, tol);
      const CPolygonStruct s = compute_structure(scene);
      if (s.total_vertices() == 2 * (n - 1) + m && s.pairwise_count == 2 * (n - 1) &&
          s.inherited_count == m && s.min_vertex_angle >= params.min_vertex_angle)
        return scene;
    } catch (const GeometryError&) {
    }
  }
  throw ImproperSceneError("build_sharp_upper: no proper witness found (delta exhausted)");
}

// The three-circle sharpness domain: unit disks centered on an equilateral
// triangle sized so every smooth Gauss arc is antipodal to a corner arc.
// s = 1 is the boundary case (Reuleaux triangle, equal extents); shrinking s
// widens the corners, so the condition holds strictly for s < 1.
inline DomainSpec build_three_circle_domain(double s) {
  if (!(s > 0.5 && s <= 1.0))
    throw std::invalid_argument("build_three_circle_domain: s must lie in (0.5, 1]");
  const double side = 1.0 / s;
  const double circumradius = side / std::sqrt(3.0);
  DomainSpec d;
  d.kind = "ball_polygon";
  for (int k = 0; k < 3; ++k)
    d.disks.push_back({circumradius * unit_vector(kPi / 2.0 + kTwoPi * k / 3.0), 1.0});

  const DomainPtr model = build_domain(d);
  if (model->feature_count() != 3)
    throw std::invalid_argument("build_three_circle_domain: expected 3 corners");

  const auto smooth = construct_detail::smooth_arcs(*model);
  double sigma = 0.0, nu = kTwoPi;
  for (const auto& a : smooth) sigma = std::max(sigma, a.extent());
  for (const auto& f : model->singular_features())
    nu = std::min(nu, f.normal_arc.extent());
  if (sigma > nu + 1e-12)
    throw std::invalid_argument(
        "build_three_circle_domain: antipodal condition failed (s too large)");

  // The defining property, checked directly: the antipode of every smooth arc
  // lies inside some corner arc.
  for (const auto& a : smooth) {
    const NormalArc anti = antipodal_arc(a);
    bool covered = false;
    for (const auto& f : model->singular_features())
      covered = covered || (f.normal_arc.contains(anti.start(), 1e-9) &&
                            f.normal_arc.contains(anti.end(), 1e-9));
    if (!covered)
      throw std::invalid_argument(
          "build_three_circle_domain: antipodal condition failed (arc not covered)");
  }
  return d;
}

// Zero-vertex C-polygons. n = 2: two translates of a rounded square shifted
// along a face direction, so the flat faces overlap collinearly and every
// transition is tangential. n >= 3: a rounded n-gon plus n-1 enlarged copies,
// each pulled back along a corner bisector until its own rounded corner is
// tangent to both faces adjacent to the target corner (closed form; the
// residual is still checked).
inline SceneSpec build_zero_vertex(int n, const ConstructionParams& params = {},
                                   Tolerances tol = {}) {
  if (n < 2) throw std::invalid_argument("build_zero_vertex: need n >= 2");

  if (n == 2) {
    DomainSpec d;
    d.kind = "rounded_polygon";
    d.n = 4;
    d.apothem = 1.0;
    d.corner_radius = params.corner_radius;
    return make_scene(d, {{{0.0, 0.0}, 1.0}, {params.offset, 1.0}}, tol);
  }

  DomainSpec d;
  d.kind = "rounded_polygon";
  d.n = n;
  d.apothem = 1.0;
  d.corner_radius = params.corner_radius;
  const double A = d.apothem, r = d.corner_radius, mu = params.mu;
  const double cosn = std::cos(kPi / n), sinn = std::sin(kPi / n);
  const double inner_radius = (A - r) / cosn;

  const DomainPtr model = build_domain(d);
  std::vector<HomothetSpec> homothets{{{0.0, 0.0}, 1.0}};
  for (int k = 0; k < n - 1; ++k) {
    const double phi = (2.0 * k + 1.0) * kPi / n;  // corner bisector direction
    const double tau = A * (1.0 - mu) / cosn;      // pull-back along the bisector
    const HomothetSpec h{tau * unit_vector(phi), mu};

    // Tangency residual at both adjacent face normals: the enlarged copy must
    // share the supporting line of the face exactly.
    const PlacedBody placed(model, h);
    for (int side = 0; side < 2; ++side) {
      const double face_normal = kTwoPi * ((k + side) % n) / n;
      const double residual = std::fabs(placed.support(face_normal) - model->support(face_normal));
      if (residual > tol.eps_geom)
        throw DegenerateGeometryError("build_zero_vertex: tangency residual " +
                                      std::to_string(residual));
    }
    // The tangency point must land strictly inside the face's flat segment.
    const double along_face = (mu * inner_radius + tau) * sinn;
    const double face_half = inner_radius * sinn;
    if (!(along_face < face_half - tol.eps_geom))
      throw DegenerateGeometryError(
          "build_zero_vertex: enlarged corner does not fit the flat face (reduce mu)");
    homothets.push_back(h);
  }
  return make_scene(d, homothets, tol);
}

}  // namespace cpoly
