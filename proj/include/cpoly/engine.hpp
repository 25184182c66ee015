#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "cpoly/errors.hpp"
#include "cpoly/scene.hpp"

namespace cpoly {

// ---------------------------------------------------------------------------
// Pairwise boundary intersection
// ---------------------------------------------------------------------------

struct PairCrossing {
  double theta_a = 0.0;  // normal parameter on the first body's boundary
  double theta_b = 0.0;  // normal parameter on the second body's boundary
  Point2 point;
};

struct PairResult {
  enum class Kind { Two, Disjoint, NestedOrContained, Degenerate, MoreThanTwo };
  Kind kind = Kind::Degenerate;
  std::array<PairCrossing, 2> crossings{};  // valid when kind == Two
  int sign_changes = 0;
  std::string note;
};

namespace detail {

struct Cut {
  double theta = 0.0;
  Point2 point;
};

struct CutScan {
  std::vector<Cut> cuts;
  bool tangency = false;
  bool all_positive = false;
  bool all_negative = false;
};

// Roots of f(theta) = membership_b(gamma_a(theta)) over a uniform scan grid,
// each bracket refined by bisection. `grid` caches gamma_a at the grid nodes.
inline CutScan scan_cuts(const PlacedBody& a, const PlacedBody& b, const Tolerances& tol,
                         const std::vector<Point2>* grid = nullptr) {
  const int N = tol.scan_samples;
  std::vector<double> f(N);
  int pos = 0, neg = 0;
  for (int k = 0; k < N; ++k) {
    const Point2 q = grid ? (*grid)[k] : a.boundary_at_normal(kTwoPi * k / N);
    f[k] = b.signed_membership(q);
    if (f[k] > 0.0) ++pos;
    else if (f[k] < 0.0) ++neg;
  }

  CutScan out;
  out.all_positive = (neg == 0);
  out.all_negative = (pos == 0);

  for (int k = 0; k < N; ++k) {
    const double f0 = f[k];
    const double f1 = f[(k + 1) % N];
    if (f0 == 0.0) {
      // Grid node exactly on the other boundary; the graze test below decides
      // whether this is a crossing or a tangency.
      const double th = kTwoPi * k / N;
      out.cuts.push_back({th, a.boundary_at_normal(th)});
      continue;
    }
    if (f0 * f1 < 0.0) {
      double lo = kTwoPi * k / N, hi = kTwoPi * (k + 1) / N;
      double flo = f0;
      // Bisect to refine_tol in the parameter, then keep going until the
      // bracket's image is point-like (flat boundary regions move fast in
      // theta near the axis normals of high-exponent superellipses).
      for (int it = 0; it < 80; ++it) {
        if (hi - lo <= tol.refine_tol &&
            distance(a.boundary_at_normal(lo), a.boundary_at_normal(hi)) <= 0.25 * tol.eps_geom)
          break;
        if (hi - lo <= 1e-15) break;
        const double mid = 0.5 * (lo + hi);
        const double fm = b.signed_membership(a.boundary_at_normal(mid));
        if (fm == 0.0) { lo = mid; hi = mid; break; }
        if ((flo < 0.0) == (fm < 0.0)) { lo = mid; flo = fm; }
        else { hi = mid; }
      }
      const double root = 0.5 * (lo + hi);
      out.cuts.push_back({normalize_angle(root), a.boundary_at_normal(root)});
    }
  }

  // Tangency: |f| dips below eps_geom at a grid-local minimum without a sign
  // change around it. Borderline scenes are rejected rather than guessed at.
  for (int k = 0; k < N; ++k) {
    const double fm1 = f[(k + N - 1) % N], f0 = f[k], f1 = f[(k + 1) % N];
    if (std::fabs(f0) < tol.eps_geom && std::fabs(f0) <= std::fabs(fm1) &&
        std::fabs(f0) <= std::fabs(f1) && fm1 * f1 > 0.0)
      out.tangency = true;
  }
  return out;
}

// gamma_a sampled over the scan grid, reusable against every other body.
inline std::vector<Point2> boundary_grid(const PlacedBody& a, const Tolerances& tol) {
  std::vector<Point2> g(tol.scan_samples);
  for (int k = 0; k < tol.scan_samples; ++k)
    g[k] = a.boundary_at_normal(kTwoPi * k / tol.scan_samples);
  return g;
}

// Newton polish of a crossing estimate onto both boundaries simultaneously;
// drives both membership residuals below `target`.
inline Point2 polish_crossing(const PlacedBody& a, const PlacedBody& b, Point2 p, double target) {
  const double h = 1e-7;
  for (int it = 0; it < 8; ++it) {
    const double fa = a.signed_membership(p);
    const double fb = b.signed_membership(p);
    if (std::fabs(fa) < target && std::fabs(fb) < target) break;
    const Vec2 ga{(a.signed_membership({p.x + h, p.y}) - a.signed_membership({p.x - h, p.y})) /
                      (2 * h),
                  (a.signed_membership({p.x, p.y + h}) - a.signed_membership({p.x, p.y - h})) /
                      (2 * h)};
    const Vec2 gb{(b.signed_membership({p.x + h, p.y}) - b.signed_membership({p.x - h, p.y})) /
                      (2 * h),
                  (b.signed_membership({p.x, p.y + h}) - b.signed_membership({p.x, p.y - h})) /
                      (2 * h)};
    const double det = ga.x * gb.y - ga.y * gb.x;
    if (std::fabs(det) < 1e-14) break;
    const Vec2 d{(-fa * gb.y + fb * ga.y) / det, (-fb * ga.x + fa * gb.x) / det};
    if (d.norm() > 1e-3) break;  // only trust Newton near the crossing
    p += d;
  }
  return p;
}

}  // namespace detail

inline PairResult pairwise_boundary_points(const PlacedBody& a, const PlacedBody& b,
                                           const Tolerances& tol) {
  if (!a.is_strictly_convex() || !b.is_strictly_convex())
    throw ImproperSceneError("pairwise_boundary_points: bodies must be strictly convex");

  const detail::CutScan sa = detail::scan_cuts(a, b, tol);
  const detail::CutScan sb = detail::scan_cuts(b, a, tol);

  PairResult res;
  res.sign_changes = static_cast<int>(sa.cuts.size());

  if (sa.tangency || sb.tangency) {
    res.kind = PairResult::Kind::Degenerate;
    res.note = "tangency";
    return res;
  }
  if (sa.cuts.empty() && sb.cuts.empty()) {
    if (sa.all_positive) {
      // bd(a) entirely outside b: either disjoint or b nested inside a.
      res.kind = (a.signed_membership(b.interior_point()) < 0.0)
                     ? PairResult::Kind::NestedOrContained
                     : PairResult::Kind::Disjoint;
    } else {
      res.kind = PairResult::Kind::NestedOrContained;  // a inside b
    }
    return res;
  }
  if (sa.cuts.size() != sb.cuts.size() || sa.cuts.size() % 2 != 0) {
    res.kind = PairResult::Kind::Degenerate;
    res.note = "inconsistent crossing counts";
    return res;
  }
  if (sa.cuts.size() > 2) {
    res.kind = PairResult::Kind::MoreThanTwo;
    res.note = "boundaries cross more than twice";
    return res;
  }

  // Match the two independently refined point sets.
  const double d00 = distance(sa.cuts[0].point, sb.cuts[0].point) +
                     distance(sa.cuts[1].point, sb.cuts[1].point);
  const double d01 = distance(sa.cuts[0].point, sb.cuts[1].point) +
                     distance(sa.cuts[1].point, sb.cuts[0].point);
  const int m0 = (d00 <= d01) ? 0 : 1;
  const double mismatch = std::min(d00, d01);
  if (mismatch > 1e-6) {
    res.kind = PairResult::Kind::Degenerate;
    res.note = "cross-scan point mismatch";
    return res;
  }
  if (distance(sa.cuts[0].point, sa.cuts[1].point) < tol.eps_geom) {
    res.kind = PairResult::Kind::Degenerate;
    res.note = "double root";
    return res;
  }

  res.kind = PairResult::Kind::Two;
  for (int i = 0; i < 2; ++i) {
    const auto& ca = sa.cuts[i];
    const auto& cb = sb.cuts[(i + m0) % 2];
    const Point2 p =
        detail::polish_crossing(a, b, (ca.point + cb.point) * 0.5, 0.1 * tol.eps_geom);
    res.crossings[i] = {ca.theta, cb.theta, p};
  }
  return res;
}

// ---------------------------------------------------------------------------
// Properness: non-empty interior and a reduced intersection.
// ---------------------------------------------------------------------------

struct ProperReport {
  enum class Status { Proper, EmptyInterior, NotReduced };
  Status status = Status::EmptyInterior;
  int offending_body = -1;  // for NotReduced
  Point2 witness;
  double witness_depth = 0.0;  // max membership over bodies at the witness

  bool proper() const { return status == Status::Proper; }
};

namespace detail {

// All ordered scans for a scene; gamma grids are shared per traced body.
struct PairTable {
  std::vector<std::vector<CutScan>> scan;  // scan[a][b], a != b
};

inline PairTable build_pair_table(const SceneSpec& scene) {
  const int n = scene.n();
  PairTable t;
  t.scan.assign(n, std::vector<CutScan>(n));
  for (int a = 0; a < n; ++a) {
    const auto grid = boundary_grid(scene.bodies[a], scene.tol);
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      t.scan[a][b] = scan_cuts(scene.bodies[a], scene.bodies[b], scene.tol, &grid);
    }
  }
  return t;
}

inline double scene_depth(const SceneSpec& scene, Point2 q) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& b : scene.bodies) worst = std::max(worst, b.signed_membership(q));
  return worst;
}

inline int worst_body(const SceneSpec& scene, Point2 q) {
  int arg = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < scene.n(); ++i) {
    const double v = scene.bodies[i].signed_membership(q);
    if (v > worst) { worst = v; arg = i; }
  }
  return arg;
}

// Axis-aligned box containing the intersection, straight from supports.
struct Box { double xmin, xmax, ymin, ymax; };

inline Box intersection_box(const SceneSpec& scene) {
  double xmax = 1e300, ymax = 1e300, xmin = 1e300, ymin = 1e300;
  for (const auto& b : scene.bodies) {
    xmax = std::min(xmax, b.support(0.0));
    ymax = std::min(ymax, b.support(kPi / 2.0));
    xmin = std::min(xmin, b.support(kPi));
    ymin = std::min(ymin, b.support(3.0 * kPi / 2.0));
  }
  return {-xmin, xmax, -ymin, ymax};
}

// Minimize the max-membership depth by stepping against the worst body's
// gradient. A heuristic with a grid fallback; convexity makes it reliable.
inline std::pair<Point2, double> descend_depth(const SceneSpec& scene, Point2 q, double step) {
  double depth = scene_depth(scene, q);
  for (int it = 0; it < 120 && step > 1e-12; ++it) {
    const int w = worst_body(scene, q);
    const double h = 1e-6;
    const auto& body = scene.bodies[w];
    Vec2 g{(body.signed_membership({q.x + h, q.y}) - body.signed_membership({q.x - h, q.y})) /
               (2 * h),
           (body.signed_membership({q.x, q.y + h}) - body.signed_membership({q.x, q.y - h})) /
               (2 * h)};
    const double gn = g.norm();
    if (gn < 1e-12) break;
    const Point2 cand = q - (step / gn) * g;
    const double cd = scene_depth(scene, cand);
    if (cd < depth) { q = cand; depth = cd; }
    else step *= 0.5;
  }
  return {q, depth};
}

}  // namespace detail

inline ProperReport check_proper(const SceneSpec& scene,
                                 const detail::PairTable* table = nullptr) {
  scene.validate();
  if (!scene.all_strictly_convex())
    throw ImproperSceneError("check_proper: scene must be strictly convex");

  const int n = scene.n();
  detail::PairTable local;
  if (!table) { local = detail::build_pair_table(scene); table = &local; }

  ProperReport report;

  // Pair classification first: nesting and tangencies surface here.
  std::vector<Point2> crossing_points;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto& sij = table->scan[i][j];
      const auto& sji = table->scan[j][i];
      if (sij.tangency || sji.tangency)
        throw DegenerateGeometryError("check_proper: tangent pair (" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
      if (sij.cuts.empty() != sji.cuts.empty())
        throw DegenerateGeometryError("check_proper: inconsistent pair scans");
      if (sij.cuts.empty()) {
        if (sij.all_positive && scene.bodies[i].signed_membership(
                                    scene.bodies[j].interior_point()) >= 0.0) {
          report.status = ProperReport::Status::EmptyInterior;
          return report;
        }
        // One body nested in the other: the outer one is redundant.
        const bool j_inside_i = sij.all_positive;
        report.status = ProperReport::Status::NotReduced;
        report.offending_body = j_inside_i ? i : j;
        return report;
      }
      for (const auto& c : sij.cuts) crossing_points.push_back(c.point);
    }
  }

  // Interior witness: chord midpoints of pairwise crossings, their centroid,
  // then a greedy depth descent with a coarse grid fallback.
  std::vector<Point2> candidates;
  Point2 centroid{0, 0};
  for (std::size_t k = 0; k + 1 < crossing_points.size(); k += 2)
    candidates.push_back((crossing_points[k] + crossing_points[k + 1]) * 0.5);
  for (const auto& p : crossing_points) centroid += p;
  if (!crossing_points.empty())
    candidates.push_back(centroid / static_cast<double>(crossing_points.size()));

  Point2 best{0, 0};
  double best_depth = std::numeric_limits<double>::infinity();
  for (const auto& c : candidates) {
    const double d = detail::scene_depth(scene, c);
    if (d < best_depth) { best_depth = d; best = c; }
  }

  const detail::Box box = detail::intersection_box(scene);
  const double span = std::max(box.xmax - box.xmin, box.ymax - box.ymin);
  if (best_depth >= -scene.tol.eps_geom)
    std::tie(best, best_depth) = detail::descend_depth(scene, best, 0.25 * span);
  if (best_depth >= -scene.tol.eps_geom && span > 0.0) {
    for (int gx = 0; gx < 48; ++gx) {
      for (int gy = 0; gy < 48; ++gy) {
        const Point2 q{box.xmin + (box.xmax - box.xmin) * (gx + 0.5) / 48.0,
                       box.ymin + (box.ymax - box.ymin) * (gy + 0.5) / 48.0};
        const double d = detail::scene_depth(scene, q);
        if (d < best_depth) { best_depth = d; best = q; }
      }
    }
    std::tie(best, best_depth) = detail::descend_depth(scene, best, 0.1 * span);
  }
  if (best_depth >= -scene.tol.eps_geom) {
    report.status = ProperReport::Status::EmptyInterior;
    return report;
  }
  report.witness = best;
  report.witness_depth = best_depth;

  // Reducedness: every body's boundary must pierce the interior of the
  // intersection of the others, or that body is redundant.
  for (int j = 0; j < n; ++j) {
    bool pierces = false;
    for (int k = 0; k < scene.tol.scan_samples && !pierces; ++k) {
      const Point2 q = scene.bodies[j].boundary_at_normal(kTwoPi * k / scene.tol.scan_samples);
      bool inside_all = true;
      for (int i = 0; i < n && inside_all; ++i) {
        if (i == j) continue;
        inside_all = scene.bodies[i].signed_membership(q) < -scene.tol.eps_geom;
      }
      pierces = inside_all;
    }
    if (!pierces) {
      report.status = ProperReport::Status::NotReduced;
      report.offending_body = j;
      return report;
    }
  }

  report.status = ProperReport::Status::Proper;
  return report;
}

// ---------------------------------------------------------------------------
// Boundary structure: vertices, edges, edge families, gap families
// ---------------------------------------------------------------------------

struct VertexRec {
  enum class Kind { Pairwise, Inherited };
  Kind kind = Kind::Pairwise;
  Point2 point;
  int owner_a = -1;           // Pairwise: incoming edge's body
  int owner_b = -1;           // Pairwise: outgoing edge's body
  int owner = -1;             // Inherited: body whose edge carries the feature
  int feature_index = -1;     // Inherited: index into the owner's features
  NormalArc normal_arc{0.0, kPi};  // Gauss image of the vertex w.r.t. H
  int edge_in = -1, edge_out = -1;
};

struct EdgeRec {
  int owner = -1;
  NormalArc arc{0.0, kPi};  // normal interval on the owner's boundary
  Point2 start_point, end_point;
  int start_vertex = -1, end_vertex = -1;
};

struct GapRec {
  int owner = -1;
  NormalArc open_arc{0.0, kPi};
  Point2 chord_a, chord_b;   // the bounding vertices
  Point2 arc_sample;         // a boundary point inside the open arc
  int vertex_from = -1, vertex_to = -1;

  // q lies in conv(cl(gap)): inside the owner and on the arc side of the chord.
  bool contains(Point2 q, const PlacedBody& owner_body, double eps, double slack = 0.0) const {
    if (owner_body.signed_membership(q) > eps) return false;
    const Vec2 chord = chord_b - chord_a;
    const double side = cross(chord, arc_sample - chord_a);
    const double v = cross(chord, q - chord_a);
    const double tol = slack * chord.norm();
    return (side >= 0.0) ? (v >= -tol) : (v <= tol);
  }
};

struct PairCrossingRecord {
  int body_i = -1, body_j = -1;
  Point2 p, q;
};

struct CPolygonStruct {
  SceneSpec scene;
  std::vector<VertexRec> vertices;              // CCW by Gauss position
  std::vector<EdgeRec> edges;                   // CCW by Gauss position
  std::vector<std::vector<int>> edge_families;  // per body, indices into edges
  std::vector<std::vector<GapRec>> gap_families;
  std::vector<PairCrossingRecord> crossings;
  Point2 interior_witness;
  double witness_depth = 0.0;
  bool proper = false;
  int pairwise_count = 0;
  int inherited_count = 0;
  int singleton_discards = 0;
  double min_vertex_angle = kTwoPi;  // min Gauss extent over all vertices

  int total_vertices() const { return pairwise_count + inherited_count; }
};

struct BoundReport {
  int n = 0, m = 0;
  int pairwise_count = 0, inherited_count = 0, total = 0;
  int lower = 0, upper = 0;
  bool translative = false;
  bool holds = false;
};

namespace detail {

struct BodyCut {
  double theta;
  Point2 point;
  int other;
};

}  // namespace detail

inline CPolygonStruct compute_structure(const SceneSpec& scene) {
  scene.validate();
  if (!scene.all_strictly_convex())
    throw ImproperSceneError("compute_structure: scene must be strictly convex");

  const int n = scene.n();
  const Tolerances& tol = scene.tol;
  const detail::PairTable table = detail::build_pair_table(scene);

  const ProperReport proper = check_proper(scene, &table);
  if (!proper.proper())
    throw ImproperSceneError(proper.status == ProperReport::Status::EmptyInterior
                                 ? "compute_structure: empty interior"
                                 : "compute_structure: intersection is not reduced (body " +
                                       std::to_string(proper.offending_body) + ")");

  CPolygonStruct s;
  s.scene = scene;
  s.proper = true;
  s.interior_witness = proper.witness;
  s.witness_depth = proper.witness_depth;

  // Every pair of a proper scene must cross exactly twice (automatic for
  // homothets of a strictly convex domain; an explicit hypothesis for mixed
  // scenes).
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto& sij = table.scan[i][j];
      const auto& sji = table.scan[j][i];
      if (sij.tangency || sji.tangency)
        throw DegenerateGeometryError("compute_structure: tangent pair");
      if (sij.cuts.size() != 2 || sji.cuts.size() != 2) {
        if (sij.cuts.size() > 2 || sji.cuts.size() > 2)
          throw DegenerateGeometryError(
              "compute_structure: pair crosses more than twice (model violation)");
        throw DegenerateGeometryError("compute_structure: inconsistent pair crossing counts");
      }
      const double d00 = distance(sij.cuts[0].point, sji.cuts[0].point) +
                         distance(sij.cuts[1].point, sji.cuts[1].point);
      const double d01 = distance(sij.cuts[0].point, sji.cuts[1].point) +
                         distance(sij.cuts[1].point, sji.cuts[0].point);
      if (std::min(d00, d01) > 1e-6)
        throw DegenerateGeometryError("compute_structure: cross-scan point mismatch");
      s.crossings.push_back({i, j, sij.cuts[0].point, sij.cuts[1].point});
    }
  }

  // Cut lists per body.
  std::vector<std::vector<detail::BodyCut>> cuts(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i == j) continue;
      for (const auto& c : table.scan[j][i].cuts) cuts[j].push_back({c.theta, c.point, i});
    }
    std::sort(cuts[j].begin(), cuts[j].end(),
              [](const detail::BodyCut& a, const detail::BodyCut& b) { return a.theta < b.theta; });
    // Three boundaries through one point (or numerically indistinguishable
    // cuts) break general position; the caller resamples.
    for (std::size_t p = 0; p < cuts[j].size(); ++p)
      for (std::size_t q = p + 1; q < cuts[j].size(); ++q)
        if (cuts[j][p].other != cuts[j][q].other &&
            distance(cuts[j][p].point, cuts[j][q].point) < tol.eps_geom)
          throw DegenerateGeometryError("compute_structure: coincident vertices across pairs");
  }

  // Classify the arcs between consecutive cuts on each body.
  struct ProtoEdge {
    int owner;
    double theta_s, theta_e;
    detail::BodyCut cut_s, cut_e;
  };
  std::vector<ProtoEdge> protos;
  for (int j = 0; j < n; ++j) {
    const int K = static_cast<int>(cuts[j].size());
    if (K < 2)
      throw ImproperSceneError("compute_structure: body " + std::to_string(j) +
                               " has fewer than two boundary cuts");
    for (int t = 0; t < K; ++t) {
      const auto& c0 = cuts[j][t];
      const auto& c1 = cuts[j][(t + 1) % K];
      const double extent = ccw_delta(c0.theta, c1.theta);
      const double theta_mid = normalize_angle(c0.theta + 0.5 * extent);
      const Point2 q = scene.bodies[j].boundary_at_normal(theta_mid);
      bool inside = true;
      for (int i = 0; i < n && inside; ++i) {
        if (i == j) continue;
        inside = scene.bodies[i].signed_membership(q) < tol.eps_geom;
      }
      if (!inside) continue;
      if (extent <= tol.eps_angle) {
        ++s.singleton_discards;  // single-point components are not edges
        continue;
      }
      protos.push_back({j, c0.theta, c1.theta, c0, c1});
    }
  }

  std::sort(protos.begin(), protos.end(),
            [](const ProtoEdge& a, const ProtoEdge& b) { return a.theta_s < b.theta_s; });
  const int E = static_cast<int>(protos.size());
  if (E == 0) throw ImproperSceneError("compute_structure: no edges found");

  for (const auto& p : protos) {
    EdgeRec e;
    e.owner = p.owner;
    e.arc = NormalArc(p.theta_s, ccw_delta(p.theta_s, p.theta_e));
    e.start_point = p.cut_s.point;
    e.end_point = p.cut_e.point;
    s.edges.push_back(e);
  }

  // Walk the Gauss circle: consecutive edges meet at pairwise vertices and
  // must hand over to the body they crossed.
  const double merge_tol = std::max(20.0 * tol.eps_angle, 10.0 * tol.eps_geom);
  for (int k = 0; k < E; ++k) {
    EdgeRec& e = s.edges[k];
    EdgeRec& f = s.edges[(k + 1) % E];
    const ProtoEdge& pe = protos[k];
    const ProtoEdge& pf = protos[(k + 1) % E];
    const double gap = ccw_delta(e.arc.end(), f.arc.start());
    if (E > 1 && gap >= kPi)
      throw DegenerateGeometryError("compute_structure: vertex exterior angle >= pi");
    if (e.owner == f.owner)
      throw DegenerateGeometryError("compute_structure: consecutive edges share an owner");

    const double pt_gap = distance(pe.cut_e.point, pf.cut_s.point);
    const bool clean = (pe.cut_e.other == f.owner && pf.cut_s.other == e.owner &&
                        pt_gap <= merge_tol);
    const bool merged = (!clean && pt_gap <= std::max(merge_tol, 1e-5));
    if (!clean && !merged)
      throw DegenerateGeometryError("compute_structure: edge chain broken");

    VertexRec v;
    v.kind = VertexRec::Kind::Pairwise;
    v.point = detail::polish_crossing(scene.bodies[e.owner], scene.bodies[f.owner],
                                      (pe.cut_e.point + pf.cut_s.point) * 0.5,
                                      0.1 * tol.eps_geom);
    v.owner_a = e.owner;
    v.owner_b = f.owner;
    if (gap <= 0.0)
      throw DegenerateGeometryError("compute_structure: non-positive vertex angle");
    v.normal_arc = NormalArc(e.arc.end(), gap);
    v.edge_in = k;
    v.edge_out = (k + 1) % E;
    s.vertices.push_back(v);
    const int vid = static_cast<int>(s.vertices.size()) - 1;
    e.end_vertex = vid;
    f.start_vertex = vid;
    s.min_vertex_angle = std::min(s.min_vertex_angle, gap);
  }
  s.pairwise_count = static_cast<int>(s.vertices.size());

  // Inherited vertices: a singular feature whose normal-arc anchor sits
  // strictly inside an edge's open arc (endpoint coincidences resolve toward
  // the pairwise classification).
  for (int j = 0; j < n; ++j) {
    const auto& feats = scene.bodies[j].singular_features();
    for (int fi = 0; fi < static_cast<int>(feats.size()); ++fi) {
      const auto& feat = feats[fi];
      bool near_pairwise = false;
      for (int v = 0; v < s.pairwise_count && !near_pairwise; ++v)
        near_pairwise = distance(s.vertices[v].point, feat.point) < 10.0 * tol.eps_geom;
      if (near_pairwise) continue;
      const double anchor = feat.normal_arc.midpoint();
      for (int k = 0; k < E; ++k) {
        if (s.edges[k].owner != j) continue;
        if (s.edges[k].arc.contains_interior(anchor, tol.eps_angle)) {
          VertexRec v;
          v.kind = VertexRec::Kind::Inherited;
          v.point = feat.point;
          v.owner = j;
          v.feature_index = fi;
          v.normal_arc = feat.normal_arc;
          v.edge_in = k;
          v.edge_out = k;
          s.vertices.push_back(v);
          s.min_vertex_angle = std::min(s.min_vertex_angle, feat.normal_arc.extent());
          break;
        }
      }
    }
  }
  s.inherited_count = static_cast<int>(s.vertices.size()) - s.pairwise_count;

  // Canonical CCW order; edges and gaps reference vertices by final index.
  std::vector<int> perm(s.vertices.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) {
    return s.vertices[a].normal_arc.start() < s.vertices[b].normal_arc.start();
  });
  std::vector<int> where(s.vertices.size());
  for (std::size_t i = 0; i < perm.size(); ++i) where[perm[i]] = static_cast<int>(i);
  std::vector<VertexRec> sorted;
  sorted.reserve(s.vertices.size());
  for (int id : perm) sorted.push_back(s.vertices[id]);
  s.vertices = std::move(sorted);
  for (auto& e : s.edges) {
    if (e.start_vertex >= 0) e.start_vertex = where[e.start_vertex];
    if (e.end_vertex >= 0) e.end_vertex = where[e.end_vertex];
  }

  // Edge families; reducedness guarantees each is nonempty.
  s.edge_families.assign(n, {});
  for (int k = 0; k < E; ++k) s.edge_families[s.edges[k].owner].push_back(k);
  for (int j = 0; j < n; ++j)
    if (s.edge_families[j].empty())
      throw ImproperSceneError("compute_structure: empty edge family for body " +
                               std::to_string(j));

  // Gap families: the complement arcs of each body's edge family.
  s.gap_families.assign(n, {});
  for (int j = 0; j < n; ++j) {
    auto fam = s.edge_families[j];
    std::sort(fam.begin(), fam.end(), [&](int a, int b) {
      return s.edges[a].arc.start() < s.edges[b].arc.start();
    });
    const int F = static_cast<int>(fam.size());
    for (int t = 0; t < F; ++t) {
      const EdgeRec& e = s.edges[fam[t]];
      const EdgeRec& f = s.edges[fam[(t + 1) % F]];
      const double ext = ccw_delta(e.arc.end(), f.arc.start());
      GapRec g;
      g.owner = j;
      g.open_arc = NormalArc(e.arc.end(), ext);
      g.chord_a = e.end_point;
      g.chord_b = f.start_point;
      g.arc_sample = scene.bodies[j].boundary_at_normal(g.open_arc.midpoint());
      g.vertex_from = e.end_vertex;
      g.vertex_to = f.start_vertex;
      s.gap_families[j].push_back(g);
    }
  }

  return s;
}

inline BoundReport verify_bounds(const CPolygonStruct& s) {
  BoundReport r;
  r.n = s.scene.n();
  r.m = s.scene.m();
  r.translative = s.scene.translative;
  r.pairwise_count = s.pairwise_count;
  r.inherited_count = s.inherited_count;
  r.total = s.total_vertices();
  r.lower = r.n;
  r.upper = r.translative ? r.n + r.m : 2 * (r.n - 1) + r.m;
  r.holds = (r.lower <= r.total && r.total <= r.upper);
  return r;
}

inline const std::vector<GapRec>& gap_family(const CPolygonStruct& s, int body) {
  return s.gap_families.at(body);
}

// ---------------------------------------------------------------------------
// Structural gap checks
// ---------------------------------------------------------------------------

struct LemmaReport {
  int l6_samples = 0, l7_pairs = 0, c8_checks = 0;
  std::vector<std::string> violations;

  bool clean() const { return violations.empty(); }
};

inline LemmaReport check_gap_lemmas(const CPolygonStruct& s, int samples_per_edge = 16) {
  LemmaReport rep;
  const SceneSpec& scene = s.scene;
  const double eps = scene.tol.eps_geom;
  const int n = scene.n();

  auto gaps_containing = [&](Point2 q, int j, double slack) {
    std::vector<int> hits;
    for (int g = 0; g < static_cast<int>(s.gap_families[j].size()); ++g)
      if (s.gap_families[j][g].contains(q, scene.bodies[j], eps * 10.0, slack))
        hits.push_back(g);
    return hits;
  };

  // Gap cover: boundary samples of H away from bd(H_j) land in exactly one
  // gap of j.
  for (int j = 0; j < n; ++j) {
    for (const auto& e : s.edges) {
      if (e.owner == j) continue;
      for (int t = 0; t < samples_per_edge; ++t) {
        const double th = normalize_angle(e.arc.start() +
                                          e.arc.extent() * (t + 0.5) / samples_per_edge);
        const Point2 q = scene.bodies[e.owner].boundary_at_normal(th);
        if (scene.bodies[j].signed_membership(q) > -10.0 * eps) continue;  // on bd(H_j)
        ++rep.l6_samples;
        const auto hits = gaps_containing(q, j, 0.0);
        if (hits.size() != 1)
          rep.violations.push_back("gap-cover: sample (" + std::to_string(q.x) + "," +
                                   std::to_string(q.y) + ") lies in " +
                                   std::to_string(hits.size()) + " gaps of body " +
                                   std::to_string(j));
      }
    }
  }

  // Shared gap: the two boundary crossings of each pair lie in a single gap
  // of either owner (vertices count through the closed gap region).
  for (const auto& c : s.crossings) {
    for (int side = 0; side < 2; ++side) {
      const int j = (side == 0) ? c.body_j : c.body_i;
      ++rep.l7_pairs;
      const auto h1 = gaps_containing(c.p, j, 1e-7);
      const auto h2 = gaps_containing(c.q, j, 1e-7);
      bool common = false;
      for (int a : h1)
        for (int b : h2) common = common || (a == b);
      if (!common)
        rep.violations.push_back("shared-gap: crossings of pair (" + std::to_string(c.body_i) + "," +
                                 std::to_string(c.body_j) + ") span gaps of body " +
                                 std::to_string(j));
    }
  }

  // Family confinement: all edges of one family fall inside a single gap of
  // any other family.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      int seen_gap = -1;
      bool ok = true;
      for (int k : s.edge_families[i]) {
        const Point2 q =
            scene.bodies[i].boundary_at_normal(s.edges[k].arc.midpoint());
        if (scene.bodies[j].signed_membership(q) > -10.0 * eps) continue;
        const auto hits = gaps_containing(q, j, 0.0);
        if (hits.size() != 1) continue;  // reported by the gap-cover check
        if (seen_gap < 0) seen_gap = hits[0];
        else ok = ok && (seen_gap == hits[0]);
      }
      ++rep.c8_checks;
      if (!ok)
        rep.violations.push_back("family-confinement: family " + std::to_string(i) +
                                 " spans two gaps of family " + std::to_string(j));
    }
  }

  return rep;
}

// ---------------------------------------------------------------------------
// Singleton-edge families
// ---------------------------------------------------------------------------

inline int find_singleton_edge_family(const CPolygonStruct& s) {
  for (int j = 0; j < s.scene.n(); ++j)
    if (s.edge_families[j].size() == 1) return j;
  throw TheoryViolationError(
      "find_singleton_edge_family: no singleton family in a proper scene");
}

// Gap-descent walk: from any multi-edge family, step to the family owning
// the edge that enters one of its gaps; the gaps nest strictly, so the walk
// must terminate at a singleton family.
inline int find_singleton_by_descent(const CPolygonStruct& s) {
  const SceneSpec& scene = s.scene;
  int k = -1;
  for (int j = 0; j < scene.n() && k < 0; ++j)
    if (s.edge_families[j].size() > 1) k = j;
  if (k < 0) return find_singleton_edge_family(s);  // every family is singleton
  GapRec gap = s.gap_families[k][0];
  const int max_steps = static_cast<int>(s.edges.size()) + 2;
  for (int step = 0; step < max_steps; ++step) {
    const VertexRec& v = s.vertices[gap.vertex_from];
    const int e = v.edge_out;
    const int l = s.edges[e].owner;
    if (s.edge_families[l].size() == 1) return l;
    bool found = false;
    for (const auto& g : s.gap_families[l]) {
      if (gap.contains(g.chord_a, scene.bodies[k], scene.tol.eps_geom * 10.0, 1e-7) &&
          gap.contains(g.chord_b, scene.bodies[k], scene.tol.eps_geom * 10.0, 1e-7) &&
          gap.contains(g.arc_sample, scene.bodies[k], scene.tol.eps_geom * 10.0, 1e-7)) {
        k = l;
        gap = g;
        found = true;
        break;
      }
    }
    if (!found)
      throw TheoryViolationError("find_singleton_by_descent: no nested gap found");
  }
  throw TheoryViolationError("find_singleton_by_descent: walk did not terminate");
}

// ---------------------------------------------------------------------------
// Exterior Gauss extent
// ---------------------------------------------------------------------------

// Total Gauss extent of the part of bd(a) strictly outside b. For translates
// of one domain this contains a hemisphere.
inline double exterior_gauss_extent(const PlacedBody& a, const PlacedBody& b,
                                    const Tolerances& tol) {
  const PairResult pr = pairwise_boundary_points(a, b, tol);
  if (pr.kind == PairResult::Kind::Degenerate || pr.kind == PairResult::Kind::MoreThanTwo)
    throw DegenerateGeometryError("exterior_gauss_extent: " +
                                  (pr.note.empty() ? "degenerate pair" : pr.note));
  if (pr.kind != PairResult::Kind::Two)
    throw ImproperSceneError("exterior_gauss_extent: pair intersection is not proper");
  const double t0 = pr.crossings[0].theta_a;
  const double t1 = pr.crossings[1].theta_a;
  const double ext01 = ccw_delta(t0, t1);
  const double mid01 = normalize_angle(t0 + 0.5 * ext01);
  const bool outside01 = b.signed_membership(a.boundary_at_normal(mid01)) > 0.0;
  return outside01 ? ext01 : kTwoPi - ext01;
}

}  // namespace cpoly
