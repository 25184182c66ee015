#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cpoly {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }

  double norm2() const { return x * x + y * y; }
  double norm() const { return std::sqrt(norm2()); }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }
inline Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

// Points and direction vectors share the representation.
using Point2 = Vec2;

inline bool is_finite(double v) { return std::isfinite(v); }
inline bool is_finite(Vec2 v) { return std::isfinite(v.x) && std::isfinite(v.y); }

// Canonical angle representative in [0, 2*pi).
inline double normalize_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

// Outward unit normal direction on the unit circle, canonicalized at
// construction so wraparound arithmetic has a single normalization site.
class NormalAngle {
public:
  NormalAngle() : theta_(0.0) {}
  explicit NormalAngle(double radians) : theta_(normalize_angle(radians)) {
    if (!std::isfinite(radians)) throw std::invalid_argument("NormalAngle: non-finite angle");
  }

  double rad() const { return theta_; }

private:
  double theta_;
};

inline Vec2 unit_vector(double theta) { return {std::cos(theta), std::sin(theta)}; }
inline Vec2 unit_vector(NormalAngle a) { return unit_vector(a.rad()); }

inline double angle_of(Vec2 v) { return normalize_angle(std::atan2(v.y, v.x)); }

// theta + pi, canonicalized.
inline double antipode(double theta) { return normalize_angle(theta + kPi); }
inline NormalAngle antipode(NormalAngle a) { return NormalAngle(a.rad() + kPi); }

// Counterclockwise angular distance from `from` to `to`, in [0, 2*pi).
inline double ccw_delta(double from, double to) { return normalize_angle(to - from); }

// Numerical policy carried in every scene; never a global.
struct Tolerances {
  double eps_geom = 1e-9;    // point coincidence / membership slack
  double eps_angle = 1e-7;   // minimal arc extent treated as non-singleton
  double refine_tol = 1e-12; // bisection termination
  int scan_samples = 4096;   // initial grid for sign-change scans

  void validate() const {
    if (!(eps_geom > 0.0 && eps_angle > 0.0 && refine_tol > 0.0))
      throw std::invalid_argument("Tolerances: all values must be strictly positive");
    if (!(refine_tol < eps_geom && eps_geom < 1.0))
      throw std::invalid_argument("Tolerances: need refine_tol < eps_geom < 1");
    if (scan_samples < 64)
      throw std::invalid_argument("Tolerances: scan_samples must be >= 64");
  }
};

}  // namespace cpoly
