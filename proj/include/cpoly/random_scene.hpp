#pragma once

#include <string>
#include <vector>

#include "cpoly/engine.hpp"
#include "cpoly/rng.hpp"
#include "cpoly/scene.hpp"

namespace cpoly {

// Rejection-sampling generator for the theorem corpora. Scenes must be proper
// and non-degenerate; the floors keep accepted scenes inside the oracle's
// operating envelope (well-separated vertices with readable exterior angles).
struct GeneratorConfig {
  std::vector<std::string> kinds = {"disk"};
  bool use_fixed_domain = false;
  DomainSpec fixed_domain;
  int n = 2;
  bool translative = false;
  bool mixed = false;
  int ball_disks = 3;  // disk count for random ball polygons (m == ball_disks)

  double center_box = 2.5;  // clamp on center distance from the origin
  double scale_lo = 0.75, scale_hi = 1.4;
  // Radius band of the supported core, as a fraction of the domain's minimal
  // support radius, so domains of any size generate comparable scenes.
  double ring_lo = 0.25, ring_hi = 0.45;
  // Probability (n >= 3, homothetic) of a flat homothet clipping a cap out of
  // one ring body's edge: the source of multi-edge families.
  double cap_prob = 0.0;
  int max_retries = 1000;

  // Corpus floors; lengths are fractions of the domain's minimal support
  // radius, the angle is absolute.
  double min_interior_depth = 0.01;
  double min_vertex_separation = 0.05;
  double min_vertex_angle = 0.05;

  Tolerances tol;
};

struct GenerationStats {
  int rejected = 0;            // total resamples
  int rejected_improper = 0;
  int rejected_degenerate = 0;
  int rejected_floor = 0;
};

inline DomainSpec random_domain_spec(const std::string& kind, GeneratorConfig const& cfg,
                                     SplitMix64& rng) {
  DomainSpec d;
  d.kind = kind;
  if (kind == "disk") return d;
  if (kind == "ellipse") {
    d.a = rng.uniform(0.9, 1.6);
    d.b = rng.uniform(0.6, d.a);
    d.rotation = rng.uniform(0.0, kPi);
    return d;
  }
  if (kind == "superellipse") {
    d.p = rng.uniform(1.6, 4.0);
    d.a = rng.uniform(0.8, 1.4);
    d.b = rng.uniform(0.7, 1.2);
    return d;
  }
  if (kind == "ball_polygon") {
    // A jittered ring of near-unit disks; resampled until every junction and
    // smooth piece has a healthy Gauss extent and m equals the disk count.
    const int k = cfg.ball_disks;
    for (int attempt = 0; attempt < 64; ++attempt) {
      d.disks.clear();
      const double rho = rng.uniform(0.28, 0.45);
      for (int i = 0; i < k; ++i) {
        const double ang = kTwoPi * i / k + rng.uniform(-0.25, 0.25) * kTwoPi / k;
        d.disks.push_back({rho * unit_vector(ang), 1.0 + rng.uniform(-0.08, 0.08)});
      }
      try {
        const DomainPtr model = build_domain(d);
        if (model->feature_count() != k) continue;
        bool healthy = true;
        for (const auto& f : model->singular_features())
          healthy = healthy && f.normal_arc.extent() > cfg.min_vertex_angle;
        if (healthy) return d;
      } catch (const GeometryError&) {
      }
    }
    throw GenerationExhaustedError("random_domain_spec: no healthy ball polygon found");
  }
  throw std::invalid_argument("random_domain_spec: unsupported kind " + kind);
}

// Cheap pre-filter before the full properness machinery: a shallow interior
// probe plus a coarse piercing scan. False negatives only bias the sampler
// toward healthier scenes; the full check stays authoritative.
inline bool quick_scene_hint(const SceneSpec& scene) {
  Point2 best{0, 0};
  double best_depth = std::numeric_limits<double>::infinity();
  Point2 mean{0, 0};
  for (const auto& b : scene.bodies) {
    const Point2 q = b.interior_point();
    mean += q;
    const double d = detail::scene_depth(scene, q);
    if (d < best_depth) { best_depth = d; best = q; }
  }
  mean = mean / static_cast<double>(scene.n());
  const double dm = detail::scene_depth(scene, mean);
  if (dm < best_depth) { best_depth = dm; best = mean; }
  if (best_depth >= 0.0) {
    std::tie(best, best_depth) = detail::descend_depth(scene, best, 0.3);
    if (best_depth >= -1e-6) return false;
  }
  const int coarse = 128;
  for (int j = 0; j < scene.n(); ++j) {
    bool pierces = false;
    for (int k = 0; k < coarse && !pierces; ++k) {
      const Point2 q = scene.bodies[j].boundary_at_normal(kTwoPi * k / coarse);
      bool inside = true;
      for (int i = 0; i < scene.n() && inside; ++i) {
        if (i == j) continue;
        inside = scene.bodies[i].signed_membership(q) < -1e-9;
      }
      pierces = inside;
    }
    if (!pierces) return false;
  }
  return true;
}

// Draws scenes until one passes check_proper, the degeneracy guards, and the
// corpus floors. The computed structure is returned alongside so callers do
// not pay for it twice.
inline SceneSpec random_scene(const GeneratorConfig& cfg, SplitMix64& rng,
                              CPolygonStruct* structure_out = nullptr,
                              GenerationStats* stats_out = nullptr) {
  GenerationStats local;
  GenerationStats& stats = stats_out ? *stats_out : local;

  // Committed once per call: retries of a capped trial keep looking for a
  // capped scene instead of falling back to the (easy) plain layout.
  const bool want_cap = !cfg.mixed && !cfg.translative && cfg.n >= 3 &&
                        rng.next_double() < cfg.cap_prob;

  for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
    SceneSpec scene;
    double r_ref = 1.0;
    try {
      std::vector<DomainSpec> specs;
      std::vector<DomainPtr> models;
      if (cfg.mixed) {
        for (int i = 0; i < cfg.n; ++i) {
          const std::string kind = cfg.kinds[rng.uniform_int(0, (int)cfg.kinds.size() - 1)];
          specs.push_back(random_domain_spec(kind, cfg, rng));
          models.push_back(build_domain(specs.back()));
        }
      } else {
        specs.push_back(cfg.use_fixed_domain
                            ? cfg.fixed_domain
                            : random_domain_spec(
                                  cfg.kinds[rng.uniform_int(0, (int)cfg.kinds.size() - 1)],
                                  cfg, rng));
        models.push_back(build_domain(specs.front()));
      }

      // The size unit for this scene: the smallest support radius (relative
      // to the interior point) over the domains involved.
      r_ref = std::numeric_limits<double>::infinity();
      for (const auto& m : models) {
        const Point2 c = m->interior_point();
        for (int k = 0; k < 64; ++k) {
          const double th = kTwoPi * k / 64;
          r_ref = std::min(r_ref, m->support(th) - dot(c, unit_vector(th)));
        }
      }

      // Placement: every ring body is pushed outward along its own angle
      // until its support toward the origin lands near a shared core radius.
      // That makes each body bind in its own direction, which is where proper
      // reduced intersections live; the jitter and the rejection loop below
      // keep the sampling honest.
      std::vector<HomothetSpec> homothets;
      const double core = r_ref * rng.uniform(cfg.ring_lo, cfg.ring_hi);
      const int ring_slots = want_cap ? cfg.n - 1 : cfg.n;
      double cap_dir = 0.0, cap_support = 0.0;
      for (int i = 0; i < ring_slots; ++i) {
        double scale = cfg.translative ? 1.0 : rng.uniform(cfg.scale_lo, cfg.scale_hi);
        if (want_cap && i == 0)  // the cut body: small, so the cap crosses steeply
          scale = rng.uniform(cfg.scale_lo, cfg.scale_lo + 0.25 * (cfg.scale_hi - cfg.scale_lo));
        const double phi = kTwoPi * (i + rng.uniform(0.2, 0.8)) / ring_slots;
        const double toward_origin = normalize_angle(phi + kPi);
        const DomainModel& dom = cfg.mixed ? *models[i] : *models[0];
        const double target = core * rng.uniform(0.85, 1.15);
        const double rho =
            std::clamp(scale * dom.support(toward_origin) - target, 0.0, cfg.center_box);
        homothets.push_back({rho * unit_vector(phi), scale});
        if (i == 0) { cap_dir = toward_origin; cap_support = target; }
      }
      if (want_cap) {
        // A large, flat homothet whose supporting line dips just inside the
        // first ring body's edge: it clips a cap out of that edge, splitting
        // it into a multi-edge family (how totals exceed n). The dip depth
        // shrinks with the ring density so the cap stays inside one edge.
        const double scale = rng.uniform(0.85 * cfg.scale_hi, cfg.scale_hi);
        const double density = std::pow(3.0 / ring_slots, 1.5);
        const double depth = core * rng.uniform(0.06, 0.18) * std::min(1.0, density);
        const double rho = cap_support - depth - scale * models[0]->support(cap_dir);
        homothets.push_back(
            {std::clamp(rho, -cfg.center_box, cfg.center_box) * unit_vector(cap_dir), scale});
      }
      scene = cfg.mixed ? make_mixed_scene(specs, homothets, cfg.tol)
                        : make_scene(specs.front(), homothets, cfg.tol);
    } catch (const GeometryError&) {
      ++stats.rejected;
      ++stats.rejected_degenerate;
      continue;
    }

    if (!quick_scene_hint(scene)) {
      ++stats.rejected;
      ++stats.rejected_improper;
      continue;
    }

    CPolygonStruct s;
    try {
      s = compute_structure(scene);
    } catch (const ImproperSceneError&) {
      ++stats.rejected;
      ++stats.rejected_improper;
      continue;
    } catch (const DegenerateGeometryError&) {
      ++stats.rejected;
      ++stats.rejected_degenerate;
      continue;
    }

    bool floors_ok = s.min_vertex_angle >= cfg.min_vertex_angle;
    for (std::size_t a = 0; a < s.vertices.size() && floors_ok; ++a)
      for (std::size_t b = a + 1; b < s.vertices.size() && floors_ok; ++b)
        floors_ok = distance(s.vertices[a].point, s.vertices[b].point) >=
                    cfg.min_vertex_separation * r_ref;
    if (floors_ok && cfg.min_interior_depth > 0.0) {
      Point2 centroid{0, 0};
      for (const auto& v : s.vertices) centroid += v.point;
      centroid = centroid / static_cast<double>(s.vertices.size());
      const auto [q, depth] = detail::descend_depth(scene, centroid, 0.2 * r_ref);
      (void)q;
      floors_ok = depth <= -cfg.min_interior_depth * r_ref;
    }
    if (!floors_ok) {
      ++stats.rejected;
      ++stats.rejected_floor;
      continue;
    }

    if (structure_out) *structure_out = std::move(s);
    return scene;
  }
  throw GenerationExhaustedError("random_scene: retry budget exhausted");
}

// Scene with body j removed; used by the hereditary-reducedness checks.
inline SceneSpec remove_body(const SceneSpec& scene, int j) {
  std::vector<HomothetSpec> homothets;
  std::vector<DomainSpec> specs;
  for (int i = 0; i < scene.n(); ++i) {
    if (i == j) continue;
    homothets.push_back(scene.bodies[i].placement());
    if (!scene.shared_domain) specs.push_back(scene.domain_specs[i]);
  }
  if (scene.shared_domain) return make_scene(scene.domain_specs[0], homothets, scene.tol);
  return make_mixed_scene(specs, homothets, scene.tol);
}

}  // namespace cpoly
