#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "cpoly/domain.hpp"
#include "cpoly/errors.hpp"

namespace cpoly {

// ---------------------------------------------------------------------------
// Disk: the unit disk at the origin. Scaling and translation live in the
// placement, so one model covers every disk.
// ---------------------------------------------------------------------------
class DiskDomain final : public DomainModel {
public:
  double support(double) const override { return 1.0; }
  Point2 boundary_at_normal(double theta) const override { return unit_vector(theta); }
  const std::vector<SingularFeature>& singular_features() const override { return no_features(); }
  Point2 interior_point() const override { return {0.0, 0.0}; }
  double signed_membership(Point2 q) const override { return q.norm() - 1.0; }
  bool is_strictly_convex() const override { return true; }
  bool is_smooth() const override { return true; }
  std::string kind() const override { return "disk"; }
};

inline DomainPtr make_disk() { return std::make_shared<DiskDomain>(); }

// ---------------------------------------------------------------------------
// Ellipse with semi-axes a, b and a rigid rotation.
// ---------------------------------------------------------------------------
class EllipseDomain final : public DomainModel {
public:
  EllipseDomain(double a, double b, double rotation) : a_(a), b_(b), rot_(rotation) {
    if (!(a > 0.0 && b > 0.0) || !is_finite(a) || !is_finite(b) || !is_finite(rotation))
      throw std::invalid_argument("ellipse: semi-axes must be positive and finite");
  }

  double support(double theta) const override { return body_support(theta - rot_); }

  Point2 boundary_at_normal(double theta) const override {
    const double psi = theta - rot_;
    const double c = std::cos(psi), s = std::sin(psi);
    const double h = body_support(psi);
    const double hp = (b_ * b_ - a_ * a_) * s * c / h;
    const Point2 g{h * c - hp * s, h * s + hp * c};
    return rotate(g, rot_);
  }

  const std::vector<SingularFeature>& singular_features() const override { return no_features(); }
  Point2 interior_point() const override { return {0.0, 0.0}; }

  double signed_membership(Point2 q) const override {
    const Point2 p = rotate(q, -rot_);
    const double d = p.norm();
    if (d < 1e-300) return -std::min(a_, b_);
    const double ux = p.x / d, uy = p.y / d;
    const double g = std::sqrt((ux / a_) * (ux / a_) + (uy / b_) * (uy / b_));
    return d - 1.0 / g;
  }

  bool is_strictly_convex() const override { return true; }
  bool is_smooth() const override { return true; }
  std::string kind() const override { return "ellipse"; }

  double a() const { return a_; }
  double b() const { return b_; }
  double rotation() const { return rot_; }

private:
  static Point2 rotate(Point2 v, double ang) {
    const double c = std::cos(ang), s = std::sin(ang);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
  }
  double body_support(double psi) const {
    const double c = std::cos(psi), s = std::sin(psi);
    return std::sqrt(a_ * a_ * c * c + b_ * b_ * s * s);
  }

  double a_, b_, rot_;
};

inline DomainPtr make_ellipse(double a, double b, double rotation) {
  return std::make_shared<EllipseDomain>(a, b, rotation);
}

// ---------------------------------------------------------------------------
// Superellipse |x/a|^p + |y/b|^p <= 1 with p > 1: smooth and strictly convex.
// Support is the dual-norm value; the inverse Gauss map comes from the
// standard parametrization, so the two routes are independent of each other.
// ---------------------------------------------------------------------------
class SuperellipseDomain final : public DomainModel {
public:
  SuperellipseDomain(double p, double a, double b) : p_(p), a_(a), b_(b) {
    if (!(p > 1.0) || !is_finite(p))
      throw std::invalid_argument("superellipse: exponent must satisfy p > 1");
    if (!(a > 0.0 && b > 0.0) || !is_finite(a) || !is_finite(b))
      throw std::invalid_argument("superellipse: semi-axes must be positive and finite");
  }

  double support(double theta) const override {
    const double q = p_ / (p_ - 1.0);  // dual exponent
    const double u = std::fabs(a_ * std::cos(theta));
    const double v = std::fabs(b_ * std::sin(theta));
    const double m = std::max(u, v);
    if (m == 0.0) return 0.0;  // unreachable: cos and sin cannot both vanish
    return m * std::pow(std::pow(u / m, q) + std::pow(v / m, q), 1.0 / q);
  }

  Point2 boundary_at_normal(double theta) const override {
    const double c = std::cos(theta), s = std::sin(theta);
    const double sc = (c >= 0.0) ? 1.0 : -1.0;
    const double ss = (s >= 0.0) ? 1.0 : -1.0;
    const double qexp = 2.0 * (p_ - 1.0) / p_;  // |tan t|^qexp proportional to |tan theta|

    double ct, st;  // |cos t|, |sin t| of the boundary parameter
    const double num = b_ * std::fabs(s), den = a_ * std::fabs(c);
    if (num <= den) {
      const double w = (den > 0.0) ? std::pow(num / den, 1.0 / qexp) : 0.0;
      ct = 1.0 / std::sqrt(1.0 + w * w);
      st = w * ct;
    } else {
      const double w = (num > 0.0) ? std::pow(den / num, 1.0 / qexp) : 0.0;
      st = 1.0 / std::sqrt(1.0 + w * w);
      ct = w * st;
    }
    return {sc * a_ * std::pow(ct, 2.0 / p_), ss * b_ * std::pow(st, 2.0 / p_)};
  }

  const std::vector<SingularFeature>& singular_features() const override { return no_features(); }
  Point2 interior_point() const override { return {0.0, 0.0}; }

  double signed_membership(Point2 q) const override {
    const double d = q.norm();
    if (d < 1e-300) return -std::min(a_, b_);
    const double gx = std::fabs(q.x / (d * a_)), gy = std::fabs(q.y / (d * b_));
    const double m = std::max(gx, gy);
    const double g = m * std::pow(std::pow(gx / m, p_) + std::pow(gy / m, p_), 1.0 / p_);
    return d - 1.0 / g;
  }

  bool is_strictly_convex() const override { return true; }
  bool is_smooth() const override { return true; }
  std::string kind() const override { return "superellipse"; }

  double p() const { return p_; }
  double a() const { return a_; }
  double b() const { return b_; }

private:
  double p_, a_, b_;
};

inline DomainPtr make_superellipse(double p, double a, double b) {
  return std::make_shared<SuperellipseDomain>(p, a, b);
}

// ---------------------------------------------------------------------------
// Ball polygon: intersection of k >= 2 disks. Strictly convex; the singular
// points are the circle-arc junctions, all computed in closed form.
// ---------------------------------------------------------------------------
struct Circle {
  Point2 center;
  double radius = 1.0;
};

class BallPolygonDomain final : public DomainModel {
public:
  struct SmoothPiece {
    int circle;       // index into circles()
    NormalArc arc;    // Gauss arc of this boundary piece
  };

  explicit BallPolygonDomain(std::vector<Circle> disks, double eps_geom = 1e-9)
      : circles_(std::move(disks)) {
    if (circles_.size() < 2)
      throw std::invalid_argument("ball_polygon: need at least 2 disks");
    for (const auto& c : circles_)
      if (!(c.radius > 0.0) || !is_finite(c.center) || !is_finite(c.radius))
        throw std::invalid_argument("ball_polygon: disks must be finite with positive radius");
    build(eps_geom);
  }

  double support(double theta) const override {
    return dot(boundary_at_normal(theta), unit_vector(theta));
  }

  Point2 boundary_at_normal(double theta) const override {
    const Segment& s = locate(theta);
    if (s.is_feature) return features_[s.index].point;
    const Circle& c = circles_[s.index];
    return c.center + c.radius * unit_vector(theta);
  }

  const std::vector<SingularFeature>& singular_features() const override { return features_; }
  Point2 interior_point() const override { return interior_; }

  double signed_membership(Point2 q) const override {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& c : circles_) worst = std::max(worst, distance(q, c.center) - c.radius);
    return worst;
  }

  bool is_strictly_convex() const override { return true; }
  bool is_smooth() const override { return false; }
  std::string kind() const override { return "ball_polygon"; }

  const std::vector<Circle>& circles() const { return circles_; }
  const std::vector<SmoothPiece>& smooth_pieces() const { return pieces_; }

private:
  struct Segment {
    double offset;    // ccw offset of the segment start from the decomposition origin
    bool is_feature;
    int index;        // circle index or feature index
  };

  void build(double eps) {
    const int k = static_cast<int>(circles_.size());

    // Pairwise sanity: tangencies are rejected, duplicates/nesting/emptiness
    // make the intersection improper before any arc arithmetic runs.
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        const double d = distance(circles_[i].center, circles_[j].center);
        const double ri = circles_[i].radius, rj = circles_[j].radius;
        if (d < eps && std::fabs(ri - rj) < eps)
          throw ImproperSceneError("ball_polygon: duplicate disks make a non-reduced intersection");
        if (std::fabs(d - (ri + rj)) <= eps || std::fabs(d - std::fabs(ri - rj)) <= eps)
          throw DegenerateGeometryError("ball_polygon: tangent circles");
        if (d > ri + rj)
          throw ImproperSceneError("ball_polygon: disjoint disks give an empty intersection");
        if (d < std::fabs(ri - rj))
          throw ImproperSceneError("ball_polygon: nested disks make a non-reduced intersection");
      }
    }

    // Active Gauss set of each circle: the normals whose boundary point lies
    // inside every other disk.
    std::vector<std::vector<NormalArc>> avail(k);
    for (int i = 0; i < k; ++i) {
      std::vector<NormalArc> set{NormalArc::full_circle()};
      for (int j = 0; j < k && !set.empty(); ++j) {
        if (j == i) continue;
        const Vec2 off = circles_[j].center - circles_[i].center;
        const double d = off.norm();
        const double ri = circles_[i].radius, rj = circles_[j].radius;
        const double kappa = (d * d + ri * ri - rj * rj) / (2.0 * ri * d);
        const double half = std::acos(std::clamp(kappa, -1.0, 1.0));
        set = arc_intersect(set, NormalArc(angle_of(off) - half, 2.0 * half));
      }
      avail[i] = std::move(set);
    }

    bool any_nonempty = false;
    for (int i = 0; i < k; ++i) any_nonempty = any_nonempty || !avail[i].empty();
    if (!any_nonempty)
      throw ImproperSceneError("ball_polygon: disks have no common interior");
    for (int i = 0; i < k; ++i)
      if (avail[i].empty())
        throw ImproperSceneError("ball_polygon: disk " + std::to_string(i) +
                                 " is redundant (non-reduced intersection)");

    for (int i = 0; i < k; ++i)
      for (const auto& arc : avail[i]) pieces_.push_back({i, arc});
    std::sort(pieces_.begin(), pieces_.end(),
              [](const SmoothPiece& a, const SmoothPiece& b) { return a.arc.start() < b.arc.start(); });

    // Junction chain: consecutive pieces in normal order must meet at a point;
    // the gap between their Gauss arcs is the junction's normal arc.
    const int m = static_cast<int>(pieces_.size());
    double covered = 0.0;
    for (int t = 0; t < m; ++t) {
      const SmoothPiece& cur = pieces_[t];
      const SmoothPiece& nxt = pieces_[(t + 1) % m];
      const Circle& ci = circles_[cur.circle];
      const Circle& cn = circles_[nxt.circle];
      const double end_normal = cur.arc.end();
      const Point2 p_end = ci.center + ci.radius * unit_vector(end_normal);
      const Point2 p_start = cn.center + cn.radius * unit_vector(nxt.arc.start());
      if (distance(p_end, p_start) > 1e-7)
        throw DegenerateGeometryError("ball_polygon: junction chain broken");
      const double gap = ccw_delta(end_normal, nxt.arc.start());
      if (!(gap > eps && gap < kPi))
        throw DegenerateGeometryError("ball_polygon: degenerate junction angle");
      features_.push_back({(p_end + p_start) * 0.5, NormalArc(end_normal, gap)});
      covered += cur.arc.extent() + gap;
    }
    if (std::fabs(covered - kTwoPi) > 1e-9)
      throw DegenerateGeometryError("ball_polygon: Gauss decomposition does not tile the circle");

    Point2 centroid{0.0, 0.0};
    for (const auto& f : features_) centroid += f.point;
    interior_ = centroid / static_cast<double>(features_.size());

    // Lookup table over the circle, in offsets from the first piece start.
    origin_ = pieces_[0].arc.start();
    for (int t = 0; t < m; ++t) {
      segments_.push_back({ccw_delta(origin_, pieces_[t].arc.start()), false, pieces_[t].circle});
      segments_.push_back({ccw_delta(origin_, features_[t].normal_arc.start()), true, t});
    }
  }

  const Segment& locate(double theta) const {
    const double d = ccw_delta(origin_, normalize_angle(theta));
    // last segment whose offset is <= d
    int lo = 0, hi = static_cast<int>(segments_.size()) - 1;
    while (lo < hi) {
      const int mid = (lo + hi + 1) / 2;
      if (segments_[mid].offset <= d) lo = mid; else hi = mid - 1;
    }
    return segments_[lo];
  }

  std::vector<Circle> circles_;
  std::vector<SmoothPiece> pieces_;
  std::vector<SingularFeature> features_;
  std::vector<Segment> segments_;
  Point2 interior_;
  double origin_ = 0.0;
};

inline std::shared_ptr<const BallPolygonDomain> make_ball_polygon(std::vector<Circle> disks,
                                                                  double eps_geom = 1e-9) {
  return std::make_shared<BallPolygonDomain>(std::move(disks), eps_geom);
}

// ---------------------------------------------------------------------------
// Rounded regular polygon: a regular n-gon shrunk by the corner radius and
// swept with a disk of that radius. Smooth but not strictly convex (the flat
// faces survive), so the intersection engine refuses it; only the membership
// oracle and the zero-vertex construction consume it.
// ---------------------------------------------------------------------------
class RoundedPolygonDomain final : public DomainModel {
public:
  RoundedPolygonDomain(int n, double apothem, double corner_radius)
      : n_(n), apothem_(apothem), r_(corner_radius) {
    if (n < 3) throw std::invalid_argument("rounded_polygon: need n >= 3");
    if (!(apothem > 0.0)) throw std::invalid_argument("rounded_polygon: apothem must be positive");
    // Flat segments must survive: the inner polygon degenerates at r = apothem.
    if (!(corner_radius > 0.0 && corner_radius < apothem))
      throw std::invalid_argument("rounded_polygon: corner_radius must lie in (0, apothem)");
    const double rin = (apothem_ - r_) / std::cos(kPi / n_);
    for (int i = 0; i < n_; ++i)
      verts_.push_back(rin * unit_vector((2.0 * i + 1.0) * kPi / n_));
  }

  double support(double theta) const override {
    const Vec2 u = unit_vector(theta);
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : verts_) best = std::max(best, dot(v, u));
    return best + r_;
  }

  Point2 boundary_at_normal(double theta) const override {
    const Vec2 u = unit_vector(theta);
    int best = 0, second = 1;
    double bv = dot(verts_[0], u), sv = -std::numeric_limits<double>::infinity();
    for (int i = 1; i < n_; ++i) {
      const double v = dot(verts_[i], u);
      if (v > bv) { second = best; sv = bv; best = i; bv = v; }
      else if (v > sv) { second = i; sv = v; }
    }
    // A face normal supports the whole flat segment; return its midpoint.
    if (bv - sv < 1e-12 * std::max(1.0, apothem_))
      return (verts_[best] + verts_[second]) * 0.5 + r_ * u;
    return verts_[best] + r_ * u;
  }

  const std::vector<SingularFeature>& singular_features() const override { return no_features(); }
  Point2 interior_point() const override { return {0.0, 0.0}; }

  double signed_membership(Point2 q) const override {
    // Exact signed distance to the inner polygon, then offset by the radius.
    const double inner_apothem = apothem_ - r_;
    double gmax = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_; ++i)
      gmax = std::max(gmax, dot(q, unit_vector(2.0 * kPi * i / n_)) - inner_apothem);
    if (gmax <= 0.0) return gmax - r_;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_; ++i) {
      const Point2 a = verts_[i], b = verts_[(i + 1) % n_];
      const Vec2 ab = b - a;
      const double t = std::clamp(dot(q - a, ab) / ab.norm2(), 0.0, 1.0);
      best = std::min(best, distance(q, a + t * ab));
    }
    return best - r_;
  }

  bool is_strictly_convex() const override { return false; }
  bool is_smooth() const override { return true; }
  std::string kind() const override { return "rounded_polygon"; }

  int sides() const { return n_; }
  double apothem() const { return apothem_; }
  double corner_radius() const { return r_; }
  const std::vector<Point2>& inner_vertices() const { return verts_; }

private:
  int n_;
  double apothem_, r_;
  std::vector<Point2> verts_;
};

inline std::shared_ptr<const RoundedPolygonDomain> make_rounded_polygon(int n, double apothem,
                                                                        double corner_radius) {
  return std::make_shared<RoundedPolygonDomain>(n, apothem, corner_radius);
}

}  // namespace cpoly
