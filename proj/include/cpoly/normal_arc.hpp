#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "cpoly/geometry.hpp"

namespace cpoly {

// Closed counterclockwise arc of outward-normal directions on the unit
// circle. The full circle is a distinguished value rather than extent = 2*pi,
// because it has no endpoints (the Gauss image of a whole smooth domain).
class NormalArc {
public:
  NormalArc(NormalAngle start, double extent)
      : start_(start), extent_(extent), full_(false) {
    if (!(extent > 0.0 && extent < kTwoPi))
      throw std::invalid_argument("NormalArc: extent must lie in (0, 2*pi)");
  }
  NormalArc(double start, double extent) : NormalArc(NormalAngle(start), extent) {}

  static NormalArc full_circle() { return NormalArc(full_tag{}); }

  bool is_full() const { return full_; }
  double start() const { return start_.rad(); }
  double extent() const { return full_ ? kTwoPi : extent_; }
  double end() const { return full_ ? start_.rad() : normalize_angle(start_.rad() + extent_); }
  double midpoint() const { return normalize_angle(start_.rad() + extent() * 0.5); }

  // Closed sweep membership; `slack` widens the arc symmetrically.
  bool contains(double theta, double slack = 0.0) const {
    if (full_) return true;
    double d = ccw_delta(start_.rad(), theta);
    if (d <= extent_ + slack) return true;
    // wraparound slack before the start point
    return d >= kTwoPi - slack;
  }
  bool contains(NormalAngle a, double slack = 0.0) const { return contains(a.rad(), slack); }

  // Strict interior with a margin away from both endpoints.
  bool contains_interior(double theta, double margin = 0.0) const {
    if (full_) return true;
    double d = ccw_delta(start_.rad(), theta);
    return d > margin && d < extent_ - margin;
  }

  std::optional<NormalArc> complement() const {
    if (full_) return std::nullopt;
    return NormalArc(normalize_angle(start_.rad() + extent_), kTwoPi - extent_);
  }

private:
  struct full_tag {};
  explicit NormalArc(full_tag) : start_(0.0), extent_(kTwoPi), full_(true) {}

  NormalAngle start_;
  double extent_;
  bool full_;
};

// Set intersection of two closed sweeps: zero, one, or two disjoint maximal
// pieces, sorted by start angle. Single-point touchings are dropped (they are
// not representable as arcs and carry no Gauss measure).
inline std::vector<NormalArc> arc_intersect(const NormalArc& a, const NormalArc& b) {
  if (a.is_full()) return {b};
  if (b.is_full()) return {a};

  const double aext = a.extent();
  const double bext = b.extent();
  const double bs = ccw_delta(a.start(), b.start());

  std::vector<NormalArc> out;
  // overlap of b's main body with a, measured from a.start
  {
    const double lo = bs;
    const double hi = std::min(aext, bs + bext);
    if (hi > lo) out.emplace_back(normalize_angle(a.start() + lo), hi - lo);
  }
  // the wrapped tail of b, if it passes a.start
  if (bs + bext > kTwoPi) {
    const double hi = std::min(aext, bs + bext - kTwoPi);
    if (hi > 0.0) out.emplace_back(a.start(), hi);
  }
  if (out.size() == 2 && out[0].start() > out[1].start()) std::swap(out[0], out[1]);
  return out;
}

inline std::vector<NormalArc> arc_intersect(const std::vector<NormalArc>& set,
                                            const NormalArc& b) {
  std::vector<NormalArc> out;
  for (const auto& a : set) {
    auto pieces = arc_intersect(a, b);
    out.insert(out.end(), pieces.begin(), pieces.end());
  }
  return out;
}

inline double total_extent(const std::vector<NormalArc>& set) {
  double s = 0.0;
  for (const auto& a : set) s += a.extent();
  return s;
}

// Arc shifted by pi; used for Gauss-image antipodality arguments.
inline NormalArc antipodal_arc(const NormalArc& a) {
  if (a.is_full()) return a;
  return NormalArc(normalize_angle(a.start() + kPi), a.extent());
}

}  // namespace cpoly
