#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "cpoly/errors.hpp"
#include "cpoly/placed_body.hpp"
#include "cpoly/scene.hpp"

namespace cpoly {

// The oracle sees bodies only through signed_membership; it never touches the
// engine's normal-angle boundary representation. That independence is the
// point: it verifies the engine rather than reusing it.

struct TracedBoundary {
  Point2 anchor;
  std::vector<Point2> points;      // counterclockwise, one per ray
  std::vector<double> directions;  // matching ray angles
};

struct OracleParams {
  int samples = 8192;
  double tau = 0.02;          // minimal exterior angle reported as singular
  int levels = 3;             // multiresolution refinement rounds
  int window = 4;             // secant half-window, in samples
  double ratio = 0.6;         // per-level turning concentration threshold
  double dedup_radius = 1e-4; // merge radius for repeated detections
};

struct OracleCorner {
  Point2 point;
  double exterior_angle = 0.0;
};

struct OracleReport {
  std::vector<OracleCorner> singular_points;
  int count = 0;
};

namespace oracle_detail {

inline double depth(const std::vector<PlacedBody>& bodies, Point2 q) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& b : bodies) worst = std::max(worst, b.signed_membership(q));
  return worst;
}

// Membership-only interior witness: coarse grid over the support box, then a
// greedy descent against the worst body.
inline Point2 find_interior_anchor(const std::vector<PlacedBody>& bodies, const Tolerances& tol) {
  double xmax = 1e300, ymax = 1e300, xmin = 1e300, ymin = 1e300;
  for (const auto& b : bodies) {
    xmax = std::min(xmax, b.support(0.0));
    ymax = std::min(ymax, b.support(kPi / 2.0));
    xmin = std::min(xmin, b.support(kPi));
    ymin = std::min(ymin, b.support(3.0 * kPi / 2.0));
  }
  const double x0 = -xmin, y0 = -ymin;
  Point2 best{0.5 * (x0 + xmax), 0.5 * (y0 + ymax)};
  double best_depth = depth(bodies, best);
  for (const auto& b : bodies) {
    const Point2 q = b.interior_point();
    const double d = depth(bodies, q);
    if (d < best_depth) { best_depth = d; best = q; }
  }
  for (int gx = 0; gx < 32 && best_depth >= -tol.eps_geom; ++gx)
    for (int gy = 0; gy < 32; ++gy) {
      const Point2 q{x0 + (xmax - x0) * (gx + 0.5) / 32.0, y0 + (ymax - y0) * (gy + 0.5) / 32.0};
      const double d = depth(bodies, q);
      if (d < best_depth) { best_depth = d; best = q; }
    }
  double step = 0.25 * std::max(xmax - x0, ymax - y0);
  for (int it = 0; it < 100 && step > 1e-12; ++it) {
    int w = 0;
    double worst = -1e300;
    for (int i = 0; i < static_cast<int>(bodies.size()); ++i) {
      const double v = bodies[i].signed_membership(best);
      if (v > worst) { worst = v; w = i; }
    }
    const double h = 1e-6;
    const auto& bd = bodies[w];
    Vec2 g{(bd.signed_membership({best.x + h, best.y}) - bd.signed_membership({best.x - h, best.y})) / (2 * h),
           (bd.signed_membership({best.x, best.y + h}) - bd.signed_membership({best.x, best.y - h})) / (2 * h)};
    const double gn = g.norm();
    if (gn < 1e-12) break;
    const Point2 cand = best - (step / gn) * g;
    const double cd = depth(bodies, cand);
    if (cd < best_depth) { best = cand; best_depth = cd; }
    else step *= 0.5;
  }
  if (best_depth >= -tol.eps_geom)
    throw ImproperSceneError("oracle: no interior witness found");
  return best;
}

// Boundary point along one ray, by bisection on max-membership.
inline Point2 shoot_ray(const std::vector<PlacedBody>& bodies, Point2 anchor, double dir,
                        const Tolerances& tol, double* t_hint = nullptr) {
  const Vec2 u = unit_vector(dir);
  double lo = 0.0;
  double hi = (t_hint && *t_hint > 0.0) ? *t_hint * 1.5 : 1.0;
  int guard = 0;
  while (depth(bodies, anchor + hi * u) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 80) throw DegenerateGeometryError("oracle: unbounded ray");
  }
  while (hi - lo > tol.refine_tol) {
    const double mid = 0.5 * (lo + hi);
    if (depth(bodies, anchor + mid * u) < 0.0) lo = mid;
    else hi = mid;
  }
  const double t = 0.5 * (lo + hi);
  if (t_hint) *t_hint = t;
  return anchor + t * u;
}

inline double turn_angle(Vec2 in, Vec2 out) {
  return std::atan2(cross(in, out), dot(in, out));
}

inline std::optional<Point2> line_intersection(Point2 a0, Point2 a1, Point2 b0, Point2 b1) {
  const Vec2 da = a1 - a0, db = b1 - b0;
  const double den = cross(da, db);
  if (std::fabs(den) < 1e-14 * da.norm() * db.norm()) return std::nullopt;
  const double t = cross(b0 - a0, db) / den;
  return a0 + t * da;
}

}  // namespace oracle_detail

inline TracedBoundary trace_boundary(const std::vector<PlacedBody>& bodies, const Tolerances& tol,
                                     int samples,
                                     std::optional<Point2> anchor = std::nullopt) {
  if (samples < 4) throw std::invalid_argument("trace_boundary: need at least 4 samples");
  TracedBoundary tb;
  tb.anchor = anchor ? *anchor : oracle_detail::find_interior_anchor(bodies, tol);
  tb.points.reserve(samples);
  tb.directions.reserve(samples);
  double hint = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double dir = kTwoPi * k / samples;
    tb.directions.push_back(dir);
    tb.points.push_back(oracle_detail::shoot_ray(bodies, tb.anchor, dir, tol, &hint));
  }
  return tb;
}

inline OracleReport detect_singular(const std::vector<PlacedBody>& bodies, const Tolerances& tol,
                                    const TracedBoundary& trace, const OracleParams& params) {
  const int N = static_cast<int>(trace.points.size());
  const int w = params.window;
  OracleReport report;
  if (N < 4 * w + 4) throw std::invalid_argument("detect_singular: trace too coarse");

  auto P = [&](int i) { return trace.points[((i % N) + N) % N]; };

  // Window turning: exterior angle between the incoming and outgoing secants.
  std::vector<double> turning(N);
  for (int i = 0; i < N; ++i)
    turning[i] = oracle_detail::turn_angle(P(i) - P(i - w), P(i + w) - P(i));

  // Candidate clusters of indices whose turning exceeds tau.
  std::vector<int> reps;
  {
    std::vector<char> hot(N, 0);
    for (int i = 0; i < N; ++i) hot[i] = turning[i] > params.tau;
    std::vector<char> seen(N, 0);
    for (int i = 0; i < N; ++i) {
      if (!hot[i] || seen[i]) continue;
      int a = i;
      while (hot[((a - 1) % N + N) % N] && !seen[((a - 1) % N + N) % N] && a > i - N) --a;
      int b = i;
      while (hot[(b + 1) % N] && b < a + N - 1) ++b;
      int best = i;
      for (int k = a; k <= b; ++k) {
        seen[((k % N) + N) % N] = 1;
        if (turning[((k % N) + N) % N] > turning[best]) best = ((k % N) + N) % N;
      }
      reps.push_back(best);
    }
  }

  // Multiresolution refinement: a genuine corner keeps its turning
  // concentrated in one inter-sample interval as the window shrinks; a smooth
  // high-curvature arc spreads and its peak decays with the sample spacing.
  for (int rep : reps) {
    double phi = trace.directions[rep];
    double half_window = 2.0 * w * (kTwoPi / N);
    const int M = 64;
    double prev_peak = -1.0;
    bool is_corner = true;
    Point2 corner{0, 0};
    double corner_angle = 0.0;

    for (int level = 0; level <= params.levels && is_corner; ++level) {
      std::vector<Point2> Q(2 * M + 1);
      double hint = 0.0;
      for (int k = -M; k <= M; ++k)
        Q[k + M] = oracle_detail::shoot_ray(bodies, trace.anchor,
                                            phi + half_window * k / M, tol, &hint);
      int peak_idx = M;
      double peak = -1.0;
      for (int k = 1; k + 1 < static_cast<int>(Q.size()); ++k) {
        const double t = oracle_detail::turn_angle(Q[k] - Q[k - 1], Q[k + 1] - Q[k]);
        if (t > peak) { peak = t; peak_idx = k; }
      }
      if (level > 0 && peak < params.ratio * prev_peak) {
        is_corner = false;
        break;
      }
      prev_peak = peak;

      // Secant-line intersection localizes the corner far below the sample
      // spacing; the secant directions give the exterior angle.
      const int i0 = std::max(0, peak_idx - 6), i1 = std::max(1, peak_idx - 2);
      const int i3 = std::min(2 * M, peak_idx + 6), i2 = std::min(2 * M - 1, peak_idx + 2);
      const auto ip = oracle_detail::line_intersection(Q[i0], Q[i1], Q[i2], Q[i3]);
      corner = ip ? *ip : Q[peak_idx];
      corner_angle = oracle_detail::turn_angle(Q[i1] - Q[i0], Q[i3] - Q[i2]);
      phi = angle_of(corner - trace.anchor);
      half_window /= 8.0;
    }

    if (is_corner && corner_angle > params.tau)
      report.singular_points.push_back({corner, corner_angle});
  }

  // Merge duplicate detections of one corner.
  std::vector<OracleCorner> merged;
  for (const auto& c : report.singular_points) {
    bool dup = false;
    for (auto& m : merged) {
      if (distance(m.point, c.point) <= params.dedup_radius) {
        if (c.exterior_angle > m.exterior_angle) m = c;
        dup = true;
        break;
      }
    }
    if (!dup) merged.push_back(c);
  }
  report.singular_points = std::move(merged);
  report.count = static_cast<int>(report.singular_points.size());
  return report;
}

inline OracleReport oracle_report(const std::vector<PlacedBody>& bodies, const Tolerances& tol,
                                  const OracleParams& params = {}) {
  const TracedBoundary tb = trace_boundary(bodies, tol, params.samples);
  return detect_singular(bodies, tol, tb, params);
}

inline int oracle_vertex_count(const SceneSpec& scene, const OracleParams& params = {}) {
  return oracle_report(scene.bodies, scene.tol, params).count;
}

// Greedy nearest matching between two point sets; true when they pair off
// within `tol_pos`.
inline bool match_point_sets(const std::vector<Point2>& a, const std::vector<Point2>& b,
                             double tol_pos) {
  if (a.size() != b.size()) return false;
  std::vector<char> used(b.size(), 0);
  for (const auto& p : a) {
    int best = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(b.size()); ++i) {
      if (used[i]) continue;
      const double d = distance(p, b[i]);
      if (d < bd) { bd = d; best = i; }
    }
    if (best < 0 || bd > tol_pos) return false;
    used[best] = 1;
  }
  return true;
}

}  // namespace cpoly
