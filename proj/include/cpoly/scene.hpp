#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "cpoly/domains.hpp"
#include "cpoly/errors.hpp"
#include "cpoly/placed_body.hpp"

namespace cpoly {

// Declarative description of a domain; the serializable counterpart of a
// DomainModel. Field names follow the scene JSON schema.
struct DomainSpec {
  std::string kind = "disk";
  double a = 1.0, b = 1.0, rotation = 0.0;  // ellipse
  double p = 2.0;                           // superellipse exponent
  std::vector<Circle> disks;                // ball_polygon
  int n = 4;                                // rounded_polygon sides
  double apothem = 1.0, corner_radius = 0.2;
};

inline DomainPtr build_domain(const DomainSpec& spec) {
  if (spec.kind == "disk") return make_disk();
  if (spec.kind == "ellipse") return make_ellipse(spec.a, spec.b, spec.rotation);
  if (spec.kind == "superellipse") return make_superellipse(spec.p, spec.a, spec.b);
  if (spec.kind == "ball_polygon") return make_ball_polygon(spec.disks);
  if (spec.kind == "rounded_polygon")
    return make_rounded_polygon(spec.n, spec.apothem, spec.corner_radius);
  throw std::invalid_argument("unknown domain kind: " + spec.kind);
}

// One C-polygon instance: n >= 2 placed bodies plus the numerical policy.
// `translative` is derived, never trusted from input.
struct SceneSpec {
  std::vector<PlacedBody> bodies;
  std::vector<DomainSpec> domain_specs;  // one entry when shared, else one per body
  bool shared_domain = true;
  bool translative = false;
  Tolerances tol;

  int n() const { return static_cast<int>(bodies.size()); }

  // Singular points of the generating domain; zero for mixed smooth scenes.
  int m() const {
    if (!shared_domain) return 0;
    return bodies.empty() ? 0 : bodies.front().domain().feature_count();
  }

  bool all_strictly_convex() const {
    for (const auto& b : bodies)
      if (!b.is_strictly_convex()) return false;
    return true;
  }

  void validate() const {
    tol.validate();
    if (bodies.size() < 2) throw ImproperSceneError("scene: need at least 2 bodies");
    if (!shared_domain) {
      for (const auto& b : bodies)
        if (!b.is_smooth() || !b.is_strictly_convex())
          throw ImproperSceneError(
              "scene: mixed scenes require every body to be smooth and strictly convex");
    }
  }
};

inline bool all_unit_scales(const std::vector<HomothetSpec>& hs) {
  for (const auto& h : hs)
    if (h.scale != 1.0) return false;
  return true;
}

inline SceneSpec make_scene(const DomainSpec& domain, const std::vector<HomothetSpec>& homothets,
                            Tolerances tol = {}) {
  SceneSpec scene;
  scene.tol = tol;
  scene.domain_specs = {domain};
  scene.shared_domain = true;
  scene.translative = all_unit_scales(homothets);
  DomainPtr model = build_domain(domain);
  for (const auto& h : homothets) scene.bodies.emplace_back(model, h);
  scene.validate();
  return scene;
}

inline SceneSpec make_mixed_scene(const std::vector<DomainSpec>& domains,
                                  const std::vector<HomothetSpec>& homothets,
                                  Tolerances tol = {}) {
  if (domains.size() != homothets.size())
    throw std::invalid_argument("mixed scene: need one domain per homothet");
  SceneSpec scene;
  scene.tol = tol;
  scene.domain_specs = domains;
  scene.shared_domain = false;
  scene.translative = false;
  for (std::size_t i = 0; i < domains.size(); ++i)
    scene.bodies.emplace_back(build_domain(domains[i]), homothets[i]);
  scene.validate();
  return scene;
}

}  // namespace cpoly
