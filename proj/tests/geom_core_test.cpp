#include <catch2/catch.hpp>

#include "cpoly/normal_arc.hpp"
#include "cpoly/rng.hpp"

using namespace cpoly;

TEST_CASE("arc_contains handles the closed sweep and wraparound") {
  CHECK(NormalArc(0.0, kPi).contains(kPi / 2));
  CHECK(NormalArc(3 * kPi / 2, kPi).contains(0.0));
  CHECK_FALSE(NormalArc(0.0, kPi / 2).contains(kPi));

  // endpoints belong to the closed sweep
  CHECK(NormalArc(1.0, 2.0).contains(1.0));
  CHECK(NormalArc(1.0, 2.0).contains(3.0));
  // membership is stable under renormalization of the query angle
  CHECK(NormalArc(1.0, 2.0).contains(2.0 + 6 * kTwoPi));
  CHECK(NormalArc(1.0, 2.0).contains(2.0 - 4 * kTwoPi));
}

TEST_CASE("arc_intersect produces maximal disjoint pieces") {
  SECTION("half overlap") {
    const auto out = arc_intersect(NormalArc(0.0, kPi), NormalArc(kPi / 2, kPi));
    REQUIRE(out.size() == 1);
    CHECK(out[0].start() == Approx(kPi / 2));
    CHECK(out[0].extent() == Approx(kPi / 2));
  }
  SECTION("full circle is the identity") {
    const auto out = arc_intersect(NormalArc::full_circle(), NormalArc(1.0, 2.0));
    REQUIRE(out.size() == 1);
    CHECK(out[0].start() == Approx(1.0));
    CHECK(out[0].extent() == Approx(2.0));
  }
  SECTION("two pieces from a wrapping operand") {
    // a = (3*pi/2, pi), b = (0, 2*pi - 0.1): expected pieces worked out from
    // the endpoint ordering: (0, pi/2) and (3*pi/2, pi/2 - 0.1).
    const auto out = arc_intersect(NormalArc(3 * kPi / 2, kPi), NormalArc(0.0, kTwoPi - 0.1));
    REQUIRE(out.size() == 2);
    CHECK(out[0].start() == Approx(0.0).margin(1e-12));
    CHECK(out[0].extent() == Approx(kPi / 2));
    CHECK(out[1].start() == Approx(3 * kPi / 2));
    CHECK(out[1].extent() == Approx(kPi / 2 - 0.1));
  }
  SECTION("disjoint arcs") {
    CHECK(arc_intersect(NormalArc(0.0, 0.5), NormalArc(1.0, 0.5)).empty());
  }
}

TEST_CASE("antipode") {
  CHECK(antipode(0.0) == Approx(kPi));
  CHECK(antipode(kPi) == Approx(0.0).margin(1e-15));
  CHECK(antipode(3 * kPi / 2) == Approx(kPi / 2));
}

TEST_CASE("angle and arc properties hold on random samples") {
  SplitMix64 rng(0xC0FFEEull);
  for (int i = 0; i < 2000; ++i) {
    const double th = rng.uniform(-20.0, 20.0);
    CHECK(antipode(antipode(th)) == Approx(normalize_angle(th)).margin(1e-9));
  }
  for (int i = 0; i < 2000; ++i) {
    const NormalArc a(rng.uniform(0.0, kTwoPi), rng.uniform(1e-6, kTwoPi - 1e-6));
    const auto c = a.complement();
    REQUIRE(c.has_value());
    CHECK(a.extent() + c->extent() == Approx(kTwoPi).margin(1e-12));
  }
  for (int i = 0; i < 2000; ++i) {
    const NormalArc a(rng.uniform(0.0, kTwoPi), rng.uniform(1e-4, kTwoPi - 1e-4));
    const NormalArc b(rng.uniform(0.0, kTwoPi), rng.uniform(1e-4, kTwoPi - 1e-4));
    const auto ab = arc_intersect(a, b);
    const auto ba = arc_intersect(b, a);
    CHECK(total_extent(ab) == Approx(total_extent(ba)).margin(1e-10));
    CHECK(total_extent(ab) <= std::min(a.extent(), b.extent()) + 1e-10);
    for (const auto& piece : ab) {
      CHECK(a.contains(piece.midpoint(), 1e-12));
      CHECK(b.contains(piece.midpoint(), 1e-12));
    }
  }
}

TEST_CASE("tolerances are validated") {
  Tolerances t;
  CHECK_NOTHROW(t.validate());
  t.scan_samples = 32;
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);
  t = Tolerances{};
  t.refine_tol = 1e-3;  // must stay below eps_geom
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);
  t = Tolerances{};
  t.eps_geom = -1.0;
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);
}

TEST_CASE("full circle is a distinguished value") {
  const NormalArc full = NormalArc::full_circle();
  CHECK(full.is_full());
  CHECK(full.extent() == Approx(kTwoPi));
  CHECK_FALSE(full.complement().has_value());
  CHECK(full.contains(1.234));
  CHECK_THROWS_AS(NormalArc(0.0, kTwoPi), std::invalid_argument);
  CHECK_THROWS_AS(NormalArc(0.0, 0.0), std::invalid_argument);
}
