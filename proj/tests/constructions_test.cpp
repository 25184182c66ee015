#include <catch2/catch.hpp>

#include "cpoly/constructions.hpp"
#include "cpoly/oracle.hpp"
#include "cpoly/random_scene.hpp"

using namespace cpoly;

TEST_CASE("sharp upper bound witnesses hit 2(n-1)+m exactly") {
  SECTION("disk, n = 3") {
    const auto scene = build_sharp_upper(DomainSpec{.kind = "disk"}, 3);
    const auto s = compute_structure(scene);
    CHECK(s.total_vertices() == 4);
    CHECK(verify_bounds(s).holds);
  }
  SECTION("ellipse, n = 2 matches the pairwise lemma") {
    const auto scene =
        build_sharp_upper(DomainSpec{.kind = "ellipse", .a = 1.5, .b = 0.9}, 2);
    const auto s = compute_structure(scene);
    CHECK(s.total_vertices() == 2);
    CHECK(s.pairwise_count == 2);
  }
  SECTION("Reuleaux ball polygon, n = 2 keeps its three corners") {
    DomainSpec bp{.kind = "ball_polygon"};
    bp.disks = {{{0, 0}, 1}, {{1, 0}, 1}, {{0.5, std::sqrt(3.0) / 2}, 1}};
    const auto scene = build_sharp_upper(bp, 2);
    const auto s = compute_structure(scene);
    CHECK(s.pairwise_count == 2);
    CHECK(s.inherited_count == 3);
    CHECK(s.total_vertices() == 5);
  }
}

TEST_CASE("three-circle domain: arc extents and the antipodal condition") {
  SECTION("s = 1 is the Reuleaux boundary case") {
    const auto spec = build_three_circle_domain(1.0);
    const auto model = build_domain(spec);
    REQUIRE(model->feature_count() == 3);
    for (const auto& f : model->singular_features())
      CHECK(f.normal_arc.extent() == Approx(kPi / 3).margin(1e-9));
  }
  SECTION("s = 0.8 holds strictly") {
    const auto spec = build_three_circle_domain(0.8);
    const auto model = build_domain(spec);
    REQUIRE(model->feature_count() == 3);

    // closed form: smooth extent 2*acos(side/2) - pi/3 with side = 1/s
    const double sigma = 2.0 * std::acos(1.0 / (2.0 * 0.8)) - kPi / 3.0;
    const double nu = 2.0 * kPi / 3.0 - sigma;
    CHECK(sigma < kPi / 3.0);
    CHECK(nu > kPi / 3.0);
    for (const auto& f : model->singular_features())
      CHECK(f.normal_arc.extent() == Approx(nu).margin(1e-9));

    const auto* bp = dynamic_cast<const BallPolygonDomain*>(model.get());
    REQUIRE(bp != nullptr);
    for (const auto& piece : bp->smooth_pieces()) {
      CHECK(piece.arc.extent() == Approx(sigma).margin(1e-9));
      // the antipodal image of every smooth arc lies inside some corner arc
      const NormalArc anti = antipodal_arc(piece.arc);
      bool covered = false;
      for (const auto& f : model->singular_features())
        covered = covered || (f.normal_arc.contains(anti.start(), 1e-9) &&
                              f.normal_arc.contains(anti.end(), 1e-9));
      CHECK(covered);
    }
  }
  SECTION("oversize s fails the antipodal condition") {
    CHECK_THROWS_AS(build_three_circle_domain(1.05), std::invalid_argument);
    CHECK_THROWS_AS(build_three_circle_domain(0.3), std::invalid_argument);
  }
}

TEST_CASE("every proper 2-homothet scene over the three-circle domain inherits a vertex") {
  for (double s_param : {0.6, 0.7, 0.8, 0.9}) {
    const auto spec = build_three_circle_domain(s_param);
    GeneratorConfig cfg;
    cfg.use_fixed_domain = true;
    cfg.fixed_domain = spec;
    cfg.n = 2;
    cfg.scale_lo = 0.8;
    cfg.scale_hi = 1.25;
    SplitMix64 rng = SplitMix64::stream(20240808, static_cast<std::uint64_t>(s_param * 100));
    for (int t = 0; t < 100; ++t) {
      CPolygonStruct s;
      random_scene(cfg, rng, &s);
      CHECK(s.total_vertices() >= 3);
      CHECK(s.inherited_count >= 1);
    }
  }
}

TEST_CASE("zero-vertex constructions") {
  OracleParams params;
  params.samples = 4096;
  SECTION("two translates of the rounded square") {
    const auto scene = build_zero_vertex(2);
    CHECK(scene.translative);
    CHECK(oracle_report(scene.bodies, scene.tol, params).count == 0);
  }
  SECTION("rounded triangle with two enlarged copies") {
    const auto scene = build_zero_vertex(3);
    CHECK(scene.n() == 3);
    CHECK(oracle_report(scene.bodies, scene.tol, params).count == 0);
  }
  SECTION("rounded square with three enlarged copies") {
    const auto scene = build_zero_vertex(4);
    CHECK(oracle_report(scene.bodies, scene.tol, params).count == 0);
  }
  SECTION("diagonal offset control: flat faces cross at right angles") {
    // Shifting off-axis breaks the collinear face overlap; the two flat-face
    // crossings are honest corners and the oracle reports them.
    DomainSpec rp{.kind = "rounded_polygon", .n = 4, .apothem = 1.0, .corner_radius = 0.2};
    const auto scene = make_scene(rp, {{{0, 0}, 1.0}, {{0.3, 0.3}, 1.0}});
    const auto rep = oracle_report(scene.bodies, scene.tol, params);
    CHECK(rep.count == 2);
    for (const auto& c : rep.singular_points)
      CHECK(c.exterior_angle == Approx(kPi / 2).margin(0.01));
  }
  SECTION("parameter validation") { CHECK_THROWS_AS(build_zero_vertex(1), std::invalid_argument); }
}
