// Acceptance suite: one pass/fail line per criterion. Each criterion can run
// standalone via --criterion N (that is how ctest invokes them), or all in
// sequence with no arguments. Exit code 0 when every selected criterion
// passes, 4 otherwise.

#include <atomic>
#include <cstdio>
#include <cstring>
#include <future>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "cpoly/cpoly.hpp"

using namespace cpoly;

namespace {

constexpr std::uint64_t kBaseSeed = 0x5EEDBA5Eu;

struct Criterion {
  int id;
  std::string name;
  bool pass = true;
  std::vector<std::string> failures;
  std::string stats;

  void fail(const std::string& why) {
    pass = false;
    if (failures.size() < 12) failures.push_back(why);
  }
};

std::mutex g_mutex;

template <typename F>
void parallel_for(int count, F&& fn) {
  const int workers =
      std::max(1, std::min<int>(static_cast<int>(std::thread::hardware_concurrency()), 8));
  std::vector<std::future<void>> futures;
  for (int w = 0; w < workers; ++w)
    futures.push_back(std::async(std::launch::async, [&, w] {
      for (int i = w; i < count; i += workers) fn(i);
    }));
  for (auto& f : futures) f.get();
}

// ---------------------------------------------------------------------------
// Shared corpora. Regenerated per process from fixed seeds, so every
// criterion sees the same scenes without cross-process state.
// ---------------------------------------------------------------------------

struct SceneCase {
  SceneSpec scene;
  CPolygonStruct structure;
};

const char* kSmoothKinds[3] = {"disk", "ellipse", "superellipse"};

GeneratorConfig smooth_config(int trial, bool translative) {
  GeneratorConfig cfg;
  cfg.kinds = {kSmoothKinds[trial % 3]};
  cfg.n = 2 + (trial % 7);
  cfg.translative = translative;
  if (!translative) cfg.cap_prob = 0.4;
  return cfg;
}

GeneratorConfig mixed_config(int trial) {
  GeneratorConfig cfg;
  cfg.kinds = {"disk", "ellipse", "superellipse"};
  cfg.mixed = true;
  cfg.n = 2 + (trial % 7);
  return cfg;
}

GeneratorConfig ball_config(int trial) {
  GeneratorConfig cfg;
  cfg.kinds = {"ball_polygon"};
  cfg.ball_disks = 2 + (trial % 3);
  cfg.n = 2 + (trial % 4);
  cfg.translative = (trial % 2 == 0);
  cfg.scale_lo = 0.85;
  cfg.scale_hi = 1.25;
  return cfg;
}

std::vector<SceneCase> build_corpus(int trials, std::uint64_t seed,
                                    GeneratorConfig (*config_for)(int)) {
  std::vector<SceneCase> out(trials);
  parallel_for(trials, [&](int t) {
    SplitMix64 rng = SplitMix64::stream(seed, static_cast<std::uint64_t>(t));
    out[t].scene = random_scene(config_for(t), rng, &out[t].structure);
  });
  return out;
}

GeneratorConfig c2_config(int t) { return smooth_config(t, true); }
GeneratorConfig c3_config(int t) { return smooth_config(t, false); }

std::vector<SceneCase> corpus_translative() { return build_corpus(500, kBaseSeed + 2, c2_config); }
std::vector<SceneCase> corpus_homothetic() { return build_corpus(500, kBaseSeed + 3, c3_config); }
std::vector<SceneCase> corpus_mixed() { return build_corpus(200, kBaseSeed + 31, mixed_config); }
std::vector<SceneCase> corpus_ball() { return build_corpus(300, kBaseSeed + 4, ball_config); }

bool oracle_agrees(const SceneCase& sc, int samples, std::string* why) {
  OracleParams params;
  params.samples = samples;
  const OracleReport rep = oracle_report(sc.scene.bodies, sc.scene.tol, params);
  if (rep.count != sc.structure.total_vertices()) {
    *why = "oracle count " + std::to_string(rep.count) + " != engine " +
           std::to_string(sc.structure.total_vertices());
    return false;
  }
  std::vector<Point2> engine_pts, oracle_pts;
  for (const auto& v : sc.structure.vertices) engine_pts.push_back(v.point);
  for (const auto& c : rep.singular_points) oracle_pts.push_back(c.point);
  if (!match_point_sets(engine_pts, oracle_pts, 1e-6)) {
    *why = "vertex positions diverge beyond 1e-6";
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

// 1: 1000 seeded random proper homothet pairs over four domain kinds give
//    exactly two boundary points; tangency rejections logged separately.
Criterion criterion_1() {
  Criterion c{1, "Pairwise suite: 1000 proper homothet pairs cross exactly twice"};
  const char* kinds[4] = {"disk", "ellipse", "superellipse", "ball_polygon"};
  std::atomic<int> tangency_rejected{0}, improper_rejected{0}, accepted{0};

  parallel_for(1000, [&](int t) {
    GeneratorConfig cfg;
    cfg.kinds = {kinds[t % 4]};
    cfg.n = 2;
    SplitMix64 rng = SplitMix64::stream(kBaseSeed + 1, static_cast<std::uint64_t>(t));
    const Tolerances tol;
    for (int attempt = 0; attempt < 500; ++attempt) {
      DomainSpec dom;
      try {
        dom = random_domain_spec(cfg.kinds[0], cfg, rng);
      } catch (const GeometryError&) {
        continue;
      }
      SceneSpec scene;
      try {
        scene = make_scene(dom, {{{rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6)},
                                  rng.uniform(0.75, 1.4)},
                                 {{rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6)},
                                  rng.uniform(0.75, 1.4)}},
                           tol);
      } catch (const GeometryError&) {
        continue;
      }
      const PairResult r = pairwise_boundary_points(scene.bodies[0], scene.bodies[1], tol);
      if (r.kind == PairResult::Kind::Degenerate) {
        ++tangency_rejected;
        continue;
      }
      if (r.kind == PairResult::Kind::Disjoint ||
          r.kind == PairResult::Kind::NestedOrContained) {
        ++improper_rejected;
        continue;
      }
      if (r.kind != PairResult::Kind::Two) {
        std::lock_guard<std::mutex> lock(g_mutex);
        c.fail("trial " + std::to_string(t) + ": homothet pair crossed more than twice");
        return;
      }
      for (const auto& x : r.crossings) {
        if (std::fabs(scene.bodies[0].signed_membership(x.point)) > tol.eps_geom ||
            std::fabs(scene.bodies[1].signed_membership(x.point)) > tol.eps_geom) {
          std::lock_guard<std::mutex> lock(g_mutex);
          c.fail("trial " + std::to_string(t) + ": crossing off-boundary beyond eps_geom");
          return;
        }
      }
      ++accepted;
      return;
    }
    std::lock_guard<std::mutex> lock(g_mutex);
    c.fail("trial " + std::to_string(t) + ": no proper pair found in 500 attempts");
  });

  if (accepted != 1000 && c.pass) c.fail("accepted " + std::to_string(accepted) + " != 1000");
  c.stats = "accepted=" + std::to_string(accepted) +
            " tangency_rejected=" + std::to_string(tangency_rejected) +
            " improper_rejected=" + std::to_string(improper_rejected);
  return c;
}

// 2: translative smooth exactness, engine and oracle.
Criterion criterion_2() {
  Criterion c{2, "Translative exactness: total == n on 500 smooth translative scenes"};
  const auto corpus = corpus_translative();
  parallel_for(static_cast<int>(corpus.size()), [&](int t) {
    const auto& sc = corpus[t];
    std::string why;
    if (sc.structure.total_vertices() != sc.scene.n()) {
      std::lock_guard<std::mutex> lock(g_mutex);
      c.fail("trial " + std::to_string(t) + ": total " +
             std::to_string(sc.structure.total_vertices()) + " != n " +
             std::to_string(sc.scene.n()));
    } else if (!oracle_agrees(sc, 4096, &why)) {
      std::lock_guard<std::mutex> lock(g_mutex);
      c.fail("trial " + std::to_string(t) + ": " + why);
    }
  });
  c.stats = "trials=500";
  return c;
}

// 3: homothetic and mixed smooth scenes stay within [n, 2(n-1)] and realize
//    both the lower bound and strict slack per n.
Criterion criterion_3() {
  Criterion c{3, "Homothetic/mixed smooth bound: total in [n, 2(n-1)] with spread"};
  const auto homothetic = corpus_homothetic();
  const auto mixed = corpus_mixed();
  std::map<int, int> min_total, max_total;
  int checked = 0;

  auto absorb = [&](const SceneCase& sc, int t, const char* label) {
    const int n = sc.scene.n();
    const int total = sc.structure.total_vertices();
    if (total < n || total > 2 * (n - 1))
      c.fail(std::string(label) + " trial " + std::to_string(t) + ": total " +
             std::to_string(total) + " outside [n, 2(n-1)] for n=" + std::to_string(n));
    if (!min_total.count(n)) min_total[n] = max_total[n] = total;
    min_total[n] = std::min(min_total[n], total);
    max_total[n] = std::max(max_total[n], total);
    ++checked;
  };
  for (std::size_t t = 0; t < homothetic.size(); ++t) absorb(homothetic[t], (int)t, "homothetic");
  for (std::size_t t = 0; t < mixed.size(); ++t) absorb(mixed[t], (int)t, "mixed");

  for (int n = 2; n <= 8; ++n) {
    if (!min_total.count(n)) { c.fail("no trials at n=" + std::to_string(n)); continue; }
    if (min_total[n] != n)
      c.fail("lower bound never attained at n=" + std::to_string(n) +
             " (min=" + std::to_string(min_total[n]) + ")");
    if (n >= 3 && max_total[n] <= n)
      c.fail("no trial exceeded n at n=" + std::to_string(n));
  }
  std::string spread;
  for (int n = 2; n <= 8; ++n)
    if (min_total.count(n))
      spread += " n" + std::to_string(n) + ":[" + std::to_string(min_total[n]) + "," +
                std::to_string(max_total[n]) + "]";
  c.stats = "trials=" + std::to_string(checked) + spread;
  return c;
}

// 4: positive-m bounds with ball-polygon domains.
Criterion criterion_4() {
  Criterion c{4, "Positive-m bounds: ball-polygon scenes, m in {2,3,4}"};
  const auto corpus = corpus_ball();
  for (std::size_t t = 0; t < corpus.size(); ++t) {
    const auto& sc = corpus[t];
    const BoundReport b = verify_bounds(sc.structure);
    const int n = b.n, m = b.m;
    if (m != 2 + (static_cast<int>(t) % 3))
      c.fail("trial " + std::to_string(t) + ": unexpected m=" + std::to_string(m));
    const int upper = sc.scene.translative ? n + m : 2 * (n - 1) + m;
    if (b.total < n || b.total > upper)
      c.fail("trial " + std::to_string(t) + ": total " + std::to_string(b.total) +
             " outside [" + std::to_string(n) + "," + std::to_string(upper) + "]");
    if (b.inherited_count > m)
      c.fail("trial " + std::to_string(t) + ": inherited " +
             std::to_string(b.inherited_count) + " exceeds m=" + std::to_string(m));
    if (!b.holds) c.fail("trial " + std::to_string(t) + ": bound report does not hold");
  }
  c.stats = "trials=" + std::to_string(corpus.size());
  return c;
}

// Reducedness of the scene without body j, using the witness of the full
// scene (valid: the subscene contains it) plus edge-midpoint piercing probes.
bool subscene_proper(const SceneCase& sc, int j) {
  const SceneSpec& scene = sc.scene;
  const int n = scene.n();
  for (int k = 0; k < n; ++k) {
    if (k == j) continue;
    bool pierces = false;
    for (int e : sc.structure.edge_families[k]) {
      const Point2 q =
          scene.bodies[k].boundary_at_normal(sc.structure.edges[e].arc.midpoint());
      bool inside = true;
      for (int i = 0; i < n && inside; ++i) {
        if (i == k || i == j) continue;
        inside = scene.bodies[i].signed_membership(q) < -scene.tol.eps_geom;
      }
      if (inside) { pierces = true; break; }
    }
    if (!pierces) {
      // fall back to a dense scan of body k's boundary
      for (int s = 0; s < scene.tol.scan_samples && !pierces; ++s) {
        const Point2 q = scene.bodies[k].boundary_at_normal(kTwoPi * s / scene.tol.scan_samples);
        bool inside = true;
        for (int i = 0; i < n && inside; ++i) {
          if (i == k || i == j) continue;
          inside = scene.bodies[i].signed_membership(q) < -scene.tol.eps_geom;
        }
        pierces = inside;
      }
    }
    if (!pierces) return false;
  }
  return true;
}

// 5: structural lemmas over the entire corpus.
Criterion criterion_5() {
  Criterion c{5, "Structure: nonempty families, singletons, gap checks, hereditary properness"};
  std::vector<SceneCase> corpus;
  for (auto&& part : {corpus_translative(), corpus_homothetic(), corpus_mixed(), corpus_ball()})
    for (auto&& sc : part) corpus.push_back(std::move(sc));

  std::atomic<int> l5_checked{0};
  parallel_for(static_cast<int>(corpus.size()), [&](int t) {
    const auto& sc = corpus[t];
    std::vector<std::string> local;
    for (int j = 0; j < sc.scene.n(); ++j)
      if (sc.structure.edge_families[j].empty())
        local.push_back("scene " + std::to_string(t) + ": empty edge family");
    try {
      const int s1 = find_singleton_edge_family(sc.structure);
      const int s2 = find_singleton_by_descent(sc.structure);
      if (sc.structure.edge_families[s1].size() != 1 ||
          sc.structure.edge_families[s2].size() != 1)
        local.push_back("scene " + std::to_string(t) + ": singleton family lookup failed");
    } catch (const GeometryError& e) {
      local.push_back("scene " + std::to_string(t) + ": " + e.what());
    }
    const LemmaReport rep = check_gap_lemmas(sc.structure);
    if (!rep.clean())
      local.push_back("scene " + std::to_string(t) + ": " + rep.violations.front());
    if (sc.scene.n() >= 3) {
      for (int j = 0; j < sc.scene.n(); ++j)
        if (!subscene_proper(sc, j))
          local.push_back("scene " + std::to_string(t) + ": removal of body " +
                          std::to_string(j) + " breaks properness");
      ++l5_checked;
    }
    if (!local.empty()) {
      std::lock_guard<std::mutex> lock(g_mutex);
      for (const auto& msg : local) c.fail(msg);
    }
  });
  c.stats = "scenes=" + std::to_string(corpus.size()) +
            " removal_checked=" + std::to_string(l5_checked);
  return c;
}

// 6: hemisphere property for translative pairs plus the homothetic
//    counterexample.
Criterion criterion_6() {
  Criterion c{6, "Hemisphere property: exterior Gauss extent of translative pairs"};
  const char* kinds[4] = {"disk", "ellipse", "superellipse", "ball_polygon"};
  parallel_for(500, [&](int t) {
    GeneratorConfig cfg;
    cfg.kinds = {kinds[t % 4]};
    cfg.n = 2;
    cfg.translative = true;
    SplitMix64 rng = SplitMix64::stream(kBaseSeed + 6, static_cast<std::uint64_t>(t));
    const SceneSpec scene = random_scene(cfg, rng);
    const double e01 =
        exterior_gauss_extent(scene.bodies[0], scene.bodies[1], scene.tol);
    const double e10 =
        exterior_gauss_extent(scene.bodies[1], scene.bodies[0], scene.tol);
    if (e01 < kPi - 1e-7 || e10 < kPi - 1e-7) {
      std::lock_guard<std::mutex> lock(g_mutex);
      c.fail("trial " + std::to_string(t) + ": extent " + std::to_string(std::min(e01, e10)) +
             " below pi");
    }
  });

  const PlacedBody small(make_disk(), {{0, 0}, 1.0});
  const PlacedBody big(make_disk(), {{4.5, 0}, 5.0});
  const double ext = exterior_gauss_extent(small, big, Tolerances{});
  const double expected = 2.0 * (kPi - std::acos(-5.0 / 12.0));
  if (!(ext < kPi)) c.fail("homothetic counterexample not below pi");
  if (std::fabs(ext - expected) > 1e-6)
    c.fail("counterexample extent " + std::to_string(ext) + " != closed form " +
           std::to_string(expected));
  c.stats = "pairs=500 counterexample_extent=" + std::to_string(ext);
  return c;
}

// 7: sharp upper bound witnesses, engine and oracle agreeing.
Criterion criterion_7() {
  Criterion c{7, "Sharp upper bound: total == 2(n-1)+m for disk and three-circle domains"};
  struct Case { DomainSpec domain; int m; double mu; const char* label; };
  std::vector<Case> cases;
  cases.push_back({DomainSpec{.kind = "disk"}, 0, 1.5, "disk"});
  cases.push_back({build_three_circle_domain(0.8), 3, 4.0, "three-circle"});

  for (const auto& cs : cases) {
    for (int n = 2; n <= 5; ++n) {
      ConstructionParams params;
      params.mu = cs.mu;
      try {
        const SceneSpec scene = build_sharp_upper(cs.domain, n, params);
        SceneCase sc{scene, compute_structure(scene)};
        const int expected = 2 * (n - 1) + cs.m;
        if (sc.structure.total_vertices() != expected) {
          c.fail(std::string(cs.label) + " n=" + std::to_string(n) + ": total " +
                 std::to_string(sc.structure.total_vertices()) + " != " +
                 std::to_string(expected));
          continue;
        }
        std::string why;
        if (!oracle_agrees(sc, 8192, &why))
          c.fail(std::string(cs.label) + " n=" + std::to_string(n) + ": " + why);
      } catch (const GeometryError& e) {
        c.fail(std::string(cs.label) + " n=" + std::to_string(n) + ": " + e.what());
      }
    }
  }
  c.stats = "cases=8";
  return c;
}

// 8: every seeded proper 2-homothet scene over the three-circle domain has an
//    inherited vertex.
Criterion criterion_8() {
  Criterion c{8, "Three-circle domain forces an inherited vertex at n=2"};
  const DomainSpec domain = build_three_circle_domain(0.8);
  parallel_for(100, [&](int t) {
    GeneratorConfig cfg;
    cfg.use_fixed_domain = true;
    cfg.fixed_domain = domain;
    cfg.n = 2;
    cfg.scale_lo = 0.8;
    cfg.scale_hi = 1.25;
    SplitMix64 rng = SplitMix64::stream(kBaseSeed + 8, static_cast<std::uint64_t>(t));
    CPolygonStruct s;
    random_scene(cfg, rng, &s);
    if (s.total_vertices() < 3 || s.inherited_count < 1) {
      std::lock_guard<std::mutex> lock(g_mutex);
      c.fail("trial " + std::to_string(t) + ": total=" + std::to_string(s.total_vertices()) +
             " inherited=" + std::to_string(s.inherited_count));
    }
  });
  c.stats = "trials=100";
  return c;
}

// 9: zero-vertex constructions at two oracle densities.
Criterion criterion_9() {
  Criterion c{9, "Zero-vertex constructions for n in {2,3,4}"};
  for (int n = 2; n <= 4; ++n) {
    try {
      const SceneSpec scene = build_zero_vertex(n);
      for (int samples : {8192, 16384}) {
        OracleParams params;
        params.samples = samples;
        const int count = oracle_report(scene.bodies, scene.tol, params).count;
        if (count != 0)
          c.fail("n=" + std::to_string(n) + " samples=" + std::to_string(samples) +
                 ": oracle reported " + std::to_string(count));
      }
    } catch (const GeometryError& e) {
      c.fail("n=" + std::to_string(n) + ": " + e.what());
    }
  }
  c.stats = "cases=6";
  return c;
}

// 10: engine/oracle equivalence across the whole corpus.
Criterion criterion_10() {
  Criterion c{10, "Engine-oracle equivalence over the full corpus"};
  std::vector<SceneCase> corpus;
  for (auto&& part : {corpus_translative(), corpus_homothetic(), corpus_mixed(), corpus_ball()})
    for (auto&& sc : part) corpus.push_back(std::move(sc));

  std::atomic<int> excluded{0};
  OracleParams params;
  parallel_for(static_cast<int>(corpus.size()), [&](int t) {
    const auto& sc = corpus[t];
    if (sc.structure.min_vertex_angle < 2.0 * params.tau) {
      ++excluded;  // logged, outside the oracle's resolving power
      return;
    }
    std::string why;
    if (!oracle_agrees(sc, 4096, &why)) {
      std::lock_guard<std::mutex> lock(g_mutex);
      c.fail("scene " + std::to_string(t) + ": " + why);
    }
  });
  c.stats = "scenes=" + std::to_string(corpus.size()) +
            " excluded=" + std::to_string(excluded);
  return c;
}

// 11: byte-identical reports for identical (config, seed).
Criterion criterion_11() {
  Criterion c{11, "Determinism: identical seeds give byte-identical CSV reports"};
  ExperimentConfig cfg1;
  cfg1.gen.kinds = {"ellipse"};
  cfg1.gen.n = 5;
  cfg1.gen.translative = true;
  cfg1.trials = 50;
  cfg1.seed = kBaseSeed + 11;
  cfg1.oracle.samples = 1024;

  ExperimentConfig cfg2;
  cfg2.gen.kinds = {"ball_polygon"};
  cfg2.gen.ball_disks = 3;
  cfg2.gen.n = 3;
  cfg2.gen.scale_lo = 0.85;
  cfg2.gen.scale_hi = 1.25;
  cfg2.trials = 30;
  cfg2.seed = kBaseSeed + 111;
  cfg2.oracle.samples = 1024;

  for (const auto& cfg : {cfg1, cfg2}) {
    const std::string csv1 = records_to_csv(run_experiment(cfg));
    const std::string csv2 = records_to_csv(run_experiment(cfg));
    if (csv1 != csv2) c.fail("CSV reports differ between identical runs");
    const auto summary = summarize(run_experiment(cfg));
    if (!summary.ok()) c.fail("experiment summary reports violations");
  }
  c.stats = "configs=2";
  return c;
}

Criterion run_criterion(int id) {
  switch (id) {
    case 1: return criterion_1();
    case 2: return criterion_2();
    case 3: return criterion_3();
    case 4: return criterion_4();
    case 5: return criterion_5();
    case 6: return criterion_6();
    case 7: return criterion_7();
    case 8: return criterion_8();
    case 9: return criterion_9();
    case 10: return criterion_10();
    case 11: return criterion_11();
    default: throw std::invalid_argument("unknown criterion id");
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
      selected.push_back(std::atoi(argv[++i]));
  }
  if (selected.empty())
    for (int id = 1; id <= 11; ++id) selected.push_back(id);

  bool all_pass = true;
  for (int id : selected) {
    Criterion c = run_criterion(id);
    std::printf("[%s] criterion %2d: %s (%s)\n", c.pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), c.stats.c_str());
    for (const auto& f : c.failures) std::printf("        %s\n", f.c_str());
    all_pass = all_pass && c.pass;
    std::fflush(stdout);
  }
  return all_pass ? 0 : 4;
}
