// cpoly: planar intersections of homothets of a convex domain.
//
// Exit codes: 0 success, 1 usage/IO error, 2 improper scene,
// 3 degenerate geometry or generation failure, 4 theory violation
// (a vertex-count bound or an engine/oracle mismatch; a bug by definition).

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cpoly/cpoly.hpp"

namespace {

using namespace cpoly;

ordered_json bound_report_json(const BoundReport& b) {
  ordered_json j;
  j["n"] = b.n;
  j["m"] = b.m;
  j["translative"] = b.translative;
  j["pairwise"] = b.pairwise_count;
  j["inherited"] = b.inherited_count;
  j["total"] = b.total;
  j["lower"] = b.lower;
  j["upper"] = b.upper;
  j["holds"] = b.holds;
  return j;
}

ordered_json structure_json(const CPolygonStruct& s) {
  ordered_json j;
  j["proper"] = s.proper;
  j["bounds"] = bound_report_json(verify_bounds(s));
  ordered_json verts = ordered_json::array();
  for (const auto& v : s.vertices) {
    ordered_json vj;
    vj["x"] = v.point.x;
    vj["y"] = v.point.y;
    vj["kind"] = v.kind == VertexRec::Kind::Pairwise ? "pairwise" : "inherited";
    if (v.kind == VertexRec::Kind::Pairwise) {
      vj["bodies"] = {v.owner_a, v.owner_b};
    } else {
      vj["owner"] = v.owner;
      vj["feature"] = v.feature_index;
    }
    vj["arc_start"] = v.normal_arc.start();
    vj["arc_extent"] = v.normal_arc.extent();
    verts.push_back(vj);
  }
  j["vertices"] = verts;
  ordered_json edges = ordered_json::array();
  for (const auto& e : s.edges) {
    ordered_json ej;
    ej["owner"] = e.owner;
    ej["arc_start"] = e.arc.start();
    ej["arc_extent"] = e.arc.extent();
    edges.push_back(ej);
  }
  j["edges"] = edges;
  ordered_json fams = ordered_json::array();
  for (const auto& f : s.edge_families) fams.push_back(f.size());
  j["edge_family_sizes"] = fams;
  ordered_json gaps = ordered_json::array();
  for (const auto& fam : s.gap_families) gaps.push_back(fam.size());
  j["gap_family_sizes"] = gaps;
  j["singleton_family"] = find_singleton_edge_family(s);
  j["min_vertex_angle"] = s.min_vertex_angle;
  j["singleton_discards"] = s.singleton_discards;
  return j;
}

int cmd_verify(const std::string& path, bool as_json) {
  const SceneSpec scene = read_scene_file(path);
  const CPolygonStruct s = compute_structure(scene);
  const BoundReport b = verify_bounds(s);
  if (as_json) {
    std::cout << bound_report_json(b).dump(2) << "\n";
  } else {
    std::printf("scene %s: n=%d m=%d %s\n", scene_digest(scene).c_str(), b.n, b.m,
                b.translative ? "translative" : "homothetic");
    std::printf("vertices: %d pairwise + %d inherited = %d, bound [%d, %d] -> %s\n",
                b.pairwise_count, b.inherited_count, b.total, b.lower, b.upper,
                b.holds ? "holds" : "VIOLATED");
  }
  return b.holds ? 0 : 4;
}

int cmd_structure(const std::string& path, bool as_json) {
  const SceneSpec scene = read_scene_file(path);
  const CPolygonStruct s = compute_structure(scene);
  const ordered_json j = structure_json(s);
  if (as_json) {
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::printf("proper scene, %zu vertices (%d pairwise, %d inherited), %zu edges\n",
              s.vertices.size(), s.pairwise_count, s.inherited_count, s.edges.size());
  for (std::size_t i = 0; i < s.vertices.size(); ++i) {
    const auto& v = s.vertices[i];
    std::printf("  v%zu (%s) at (%.9f, %.9f), Gauss arc [%.6f, +%.6f]\n", i,
                v.kind == VertexRec::Kind::Pairwise ? "pairwise" : "inherited", v.point.x,
                v.point.y, v.normal_arc.start(), v.normal_arc.extent());
  }
  for (int j2 = 0; j2 < scene.n(); ++j2)
    std::printf("  body %d: %zu edges, %zu gaps\n", j2, s.edge_families[j2].size(),
                s.gap_families[j2].size());
  std::printf("  singleton edge family: body %d\n", find_singleton_edge_family(s));
  return 0;
}

int cmd_oracle(const std::string& path, int samples, double tau, bool as_json) {
  const SceneSpec scene = read_scene_file(path);
  OracleParams params;
  params.samples = samples;
  params.tau = tau;
  const OracleReport rep = oracle_report(scene.bodies, scene.tol, params);
  if (as_json) {
    ordered_json j;
    j["count"] = rep.count;
    ordered_json pts = ordered_json::array();
    for (const auto& c : rep.singular_points)
      pts.push_back({{"x", c.point.x}, {"y", c.point.y}, {"angle", c.exterior_angle}});
    j["singular_points"] = pts;
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("oracle: %d singular points (samples=%d, tau=%g)\n", rep.count, samples, tau);
    for (const auto& c : rep.singular_points)
      std::printf("  (%.9f, %.9f) exterior angle %.6f\n", c.point.x, c.point.y,
                  c.exterior_angle);
  }
  return 0;
}

int cmd_experiment(const ExperimentConfig& cfg, const std::string& out_csv) {
  const auto records = run_experiment(cfg);
  const ExperimentSummary summary = summarize(records);
  if (!out_csv.empty()) {
    write_text_file(out_csv, records_to_csv(records));
    write_text_file(out_csv + ".summary.json", summary_to_json(summary).dump(2) + "\n");
  } else {
    std::cout << records_to_csv(records);
  }
  std::cerr << summary_to_json(summary).dump(2) << "\n";
  return summary.ok() ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cpoly: vertex structure of intersections of homothets of a convex domain"};
  app.require_subcommand(1);

  std::string scene_path, out_path = "", config_path = "";
  bool as_json = false;

  auto* verify = app.add_subcommand("verify", "check properness and the vertex-count bounds");
  verify->add_option("scene", scene_path, "scene JSON file")->required();
  verify->add_flag("--json", as_json, "JSON output");

  auto* structure = app.add_subcommand("structure", "print the full boundary structure");
  structure->add_option("scene", scene_path, "scene JSON file")->required();
  structure->add_flag("--json", as_json, "JSON output");

  int samples = 8192;
  double tau = 0.02;
  auto* oracle = app.add_subcommand("oracle", "ray-shooting singular point detector");
  oracle->add_option("scene", scene_path, "scene JSON file")->required();
  oracle->add_option("--samples", samples, "ray count");
  oracle->add_option("--tau", tau, "singularity threshold (radians)");
  oracle->add_flag("--json", as_json, "JSON output");

  std::string kind = "sharp-upper", domain_kind = "disk";
  int cn = 3;
  double cs = 0.8, cmu = 1.5, cdelta = 0.05;
  std::uint64_t cseed = 1;
  auto* construct = app.add_subcommand("construct", "emit a sharpness-construction scene");
  construct->add_option("which", kind, "sharp-upper | three-circle | zero-vertex")->required();
  construct->add_option("-o,--out", out_path, "output scene JSON")->required();
  construct->add_option("--n", cn, "number of generating homothets");
  construct->add_option("--domain", domain_kind, "sharp-upper base domain: disk | three-circle");
  construct->add_option("--s", cs, "three-circle size parameter in (0.5, 1]");
  construct->add_option("--mu", cmu, "expansion factor");
  construct->add_option("--delta", cdelta, "inward nudge fraction");
  construct->add_option("--seed", cseed, "seed for the three-circle homothet pair");

  std::string exp_kind = "disk", report_csv = "";
  int trials = 100, exp_n = 3, ball_disks = 3;
  std::uint64_t seed = 1;
  bool translative = false, mixed = false, no_oracle = false;
  auto* experiment = app.add_subcommand("experiment", "seeded batch verification runs");
  experiment->add_option("--config", config_path, "experiment config JSON");
  experiment->add_option("--kind", exp_kind, "domain kind (disk|ellipse|superellipse|ball_polygon)");
  experiment->add_option("--n", exp_n, "bodies per scene");
  experiment->add_option("--trials", trials, "number of trials");
  experiment->add_option("--seed", seed, "corpus seed");
  experiment->add_option("--ball-disks", ball_disks, "disk count for random ball polygons");
  experiment->add_flag("--translative", translative, "translates only (all scales 1)");
  experiment->add_flag("--mixed", mixed, "per-body random smooth strictly convex domains");
  experiment->add_flag("--no-oracle", no_oracle, "skip the oracle cross-check");
  experiment->add_option("--out", report_csv, "CSV report path (summary JSON alongside)");

  bool gaps = false;
  bool edge_colors = true;
  auto* render = app.add_subcommand("render", "render a scene to SVG");
  render->add_option("scene", scene_path, "scene JSON file")->required();
  render->add_option("-o,--out", out_path, "output SVG path")->required();
  render->add_flag("--gaps", gaps, "shade gap regions");
  render->add_flag("--edge-colors,!--no-edge-colors", edge_colors,
                   "color edges by owning body (default on)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return cmd_verify(scene_path, as_json);
    if (structure->parsed()) return cmd_structure(scene_path, as_json);
    if (oracle->parsed()) return cmd_oracle(scene_path, samples, tau, as_json);

    if (construct->parsed()) {
      ConstructionParams params;
      params.mu = cmu;
      params.delta_frac = cdelta;
      params.s = cs;
      SceneSpec scene;
      if (kind == "sharp-upper") {
        DomainSpec base{.kind = "disk"};
        if (domain_kind == "three-circle") {
          base = build_three_circle_domain(cs);
          if (cmu < 4.0) params.mu = 4.0;  // tight caps need a stronger expansion
        } else if (domain_kind != "disk") {
          base.kind = domain_kind;
        }
        scene = build_sharp_upper(base, cn, params);
      } else if (kind == "three-circle") {
        const DomainSpec dom = build_three_circle_domain(cs);
        GeneratorConfig gen;
        gen.use_fixed_domain = true;
        gen.fixed_domain = dom;
        gen.n = cn;
        SplitMix64 rng = SplitMix64::stream(cseed, 0);
        scene = random_scene(gen, rng);
      } else if (kind == "zero-vertex") {
        scene = build_zero_vertex(cn, params);
      } else {
        std::cerr << "unknown construction: " << kind << "\n";
        return 1;
      }
      write_scene_file(out_path, scene);
      std::printf("wrote %s\n", out_path.c_str());
      return 0;
    }

    if (experiment->parsed()) {
      ExperimentConfig cfg;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw std::runtime_error("cannot open config: " + config_path);
        ordered_json j;
        in >> j;
        cfg.gen.kinds = {j.value("kind", exp_kind)};
        cfg.gen.n = j.value("n", exp_n);
        cfg.gen.translative = j.value("translative", translative);
        cfg.gen.mixed = j.value("mixed", mixed);
        cfg.gen.ball_disks = j.value("ball_disks", ball_disks);
        cfg.gen.scale_lo = j.value("scale_lo", cfg.gen.scale_lo);
        cfg.gen.scale_hi = j.value("scale_hi", cfg.gen.scale_hi);
        cfg.gen.center_box = j.value("center_box", cfg.gen.center_box);
        cfg.gen.cap_prob = j.value("cap_prob", cfg.gen.cap_prob);
        cfg.trials = j.value("trials", trials);
        cfg.seed = j.value("seed", seed);
        if (j.contains("tolerances")) cfg.gen.tol = tolerances_from_json(j.at("tolerances"));
        cfg.run_oracle = !j.value("no_oracle", false);
        cfg.oracle.samples = j.value("oracle_samples", cfg.oracle.samples);
        cfg.oracle.tau = j.value("oracle_tau", cfg.oracle.tau);
      } else {
        cfg.gen.kinds = {exp_kind};
        cfg.gen.n = exp_n;
        cfg.gen.translative = translative;
        cfg.gen.mixed = mixed;
        cfg.gen.ball_disks = ball_disks;
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.run_oracle = !no_oracle;
      }
      if (cfg.gen.mixed) cfg.gen.kinds = {"disk", "ellipse", "superellipse"};
      return cmd_experiment(cfg, report_csv);
    }

    if (render->parsed()) {
      const SceneSpec scene = read_scene_file(scene_path);
      RenderOptions opt;
      opt.gaps = gaps;
      opt.edge_colors = edge_colors;
      std::string svg;
      if (scene.all_strictly_convex()) {
        const CPolygonStruct s = compute_structure(scene);
        svg = render_svg(scene, &s, opt);
      } else {
        svg = render_svg(scene, nullptr, opt);
      }
      write_text_file(out_path, svg);
      std::printf("wrote %s\n", out_path.c_str());
      return 0;
    }
  } catch (const TheoryViolationError& e) {
    std::cerr << "theory violation: " << e.what() << "\n";
    return 4;
  } catch (const ImproperSceneError& e) {
    std::cerr << "improper scene: " << e.what() << "\n";
    return 2;
  } catch (const GenerationExhaustedError& e) {
    std::cerr << "generation exhausted: " << e.what() << "\n";
    return 3;
  } catch (const DegenerateGeometryError& e) {
    std::cerr << "degenerate geometry: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
