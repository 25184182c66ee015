#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cpoly/geometry.hpp"
#include "cpoly/normal_arc.hpp"

namespace cpoly {

// A singular boundary point together with its outward-normal arc (the Gauss
// image of that point).
struct SingularFeature {
  Point2 point;
  NormalArc normal_arc;
};

// Uniform view of a convex domain through its support function and inverse
// Gauss map. The normal angle theta parametrizes the boundary; homothets of
// the domain share the parameter because positive scaling preserves normals.
class DomainModel {
public:
  virtual ~DomainModel() = default;

  // Support function h(u(theta)) relative to the model's reference origin.
  virtual double support(double theta) const = 0;

  // Inverse Gauss map: the boundary point whose supporting line has outward
  // normal u(theta). Constant over a singular feature's normal arc.
  virtual Point2 boundary_at_normal(double theta) const = 0;

  // The m singular boundary points, in counterclockwise normal order.
  virtual const std::vector<SingularFeature>& singular_features() const = 0;

  virtual Point2 interior_point() const = 0;

  // Negative strictly inside, ~zero on the boundary, positive outside.
  // Comparable against eps_geom: the value tracks Euclidean distance up to a
  // bounded factor near the boundary.
  virtual double signed_membership(Point2 q) const = 0;

  virtual bool is_strictly_convex() const = 0;
  virtual bool is_smooth() const = 0;

  virtual std::string kind() const = 0;

  int feature_count() const { return static_cast<int>(singular_features().size()); }

protected:
  static const std::vector<SingularFeature>& no_features() {
    static const std::vector<SingularFeature> empty;
    return empty;
  }
};

using DomainPtr = std::shared_ptr<const DomainModel>;

}  // namespace cpoly
