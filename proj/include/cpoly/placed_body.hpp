#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "cpoly/domain.hpp"

namespace cpoly {

// Placement record for one generating homothet: x + scale * C.
struct HomothetSpec {
  Point2 center{0.0, 0.0};
  double scale = 1.0;

  void validate() const {
    if (!is_finite(center) || !is_finite(scale) || !(scale > 0.0))
      throw std::invalid_argument("HomothetSpec: scale must be positive and finite");
  }
};

// A domain under a homothety. Scaling by a positive factor preserves outward
// normals, so the placed body shares the domain's normal-angle parameter.
class PlacedBody {
public:
  PlacedBody(DomainPtr domain, HomothetSpec placement)
      : domain_(std::move(domain)), placement_(placement) {
    if (!domain_) throw std::invalid_argument("PlacedBody: null domain");
    placement_.validate();
    for (const auto& f : domain_->singular_features())
      features_.push_back({placement_.center + placement_.scale * f.point, f.normal_arc});
  }

  double support(double theta) const {
    return placement_.scale * domain_->support(theta) +
           dot(placement_.center, unit_vector(theta));
  }

  Point2 boundary_at_normal(double theta) const {
    return placement_.center + placement_.scale * domain_->boundary_at_normal(theta);
  }

  double signed_membership(Point2 q) const {
    return placement_.scale *
           domain_->signed_membership((q - placement_.center) / placement_.scale);
  }

  Point2 interior_point() const {
    return placement_.center + placement_.scale * domain_->interior_point();
  }

  const std::vector<SingularFeature>& singular_features() const { return features_; }

  bool is_strictly_convex() const { return domain_->is_strictly_convex(); }
  bool is_smooth() const { return domain_->is_smooth(); }

  const DomainModel& domain() const { return *domain_; }
  DomainPtr domain_ptr() const { return domain_; }
  const HomothetSpec& placement() const { return placement_; }

private:
  DomainPtr domain_;
  HomothetSpec placement_;
  std::vector<SingularFeature> features_;
};

}  // namespace cpoly
