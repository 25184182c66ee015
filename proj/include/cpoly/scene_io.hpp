#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cpoly/scene.hpp"

namespace cpoly {

using ordered_json = nlohmann::ordered_json;

inline ordered_json domain_to_json(const DomainSpec& d) {
  ordered_json j;
  j["kind"] = d.kind;
  if (d.kind == "ellipse") {
    j["a"] = d.a;
    j["b"] = d.b;
    j["rotation"] = d.rotation;
  } else if (d.kind == "superellipse") {
    j["p"] = d.p;
    j["a"] = d.a;
    j["b"] = d.b;
  } else if (d.kind == "ball_polygon") {
    ordered_json disks = ordered_json::array();
    for (const auto& c : d.disks)
      disks.push_back({{"cx", c.center.x}, {"cy", c.center.y}, {"r", c.radius}});
    j["disks"] = disks;
  } else if (d.kind == "rounded_polygon") {
    j["n"] = d.n;
    j["apothem"] = d.apothem;
    j["corner_radius"] = d.corner_radius;
  } else if (d.kind != "disk") {
    throw std::invalid_argument("domain_to_json: unknown kind " + d.kind);
  }
  return j;
}

inline DomainSpec domain_from_json(const ordered_json& j) {
  DomainSpec d;
  d.kind = j.at("kind").get<std::string>();
  if (d.kind == "ellipse") {
    d.a = j.at("a").get<double>();
    d.b = j.at("b").get<double>();
    d.rotation = j.value("rotation", 0.0);
  } else if (d.kind == "superellipse") {
    d.p = j.at("p").get<double>();
    d.a = j.at("a").get<double>();
    d.b = j.at("b").get<double>();
  } else if (d.kind == "ball_polygon") {
    for (const auto& c : j.at("disks"))
      d.disks.push_back({{c.at("cx").get<double>(), c.at("cy").get<double>()},
                         c.at("r").get<double>()});
  } else if (d.kind == "rounded_polygon") {
    d.n = j.at("n").get<int>();
    d.apothem = j.at("apothem").get<double>();
    d.corner_radius = j.at("corner_radius").get<double>();
  } else if (d.kind != "disk") {
    throw std::invalid_argument("domain_from_json: unknown kind " + d.kind);
  }
  return d;
}

inline ordered_json tolerances_to_json(const Tolerances& t) {
  ordered_json j;
  j["eps_geom"] = t.eps_geom;
  j["eps_angle"] = t.eps_angle;
  j["refine_tol"] = t.refine_tol;
  j["scan_samples"] = t.scan_samples;
  return j;
}

inline Tolerances tolerances_from_json(const ordered_json& j) {
  Tolerances t;
  t.eps_geom = j.value("eps_geom", t.eps_geom);
  t.eps_angle = j.value("eps_angle", t.eps_angle);
  t.refine_tol = j.value("refine_tol", t.refine_tol);
  t.scan_samples = j.value("scan_samples", t.scan_samples);
  t.validate();
  return t;
}

inline ordered_json scene_to_json(const SceneSpec& s) {
  ordered_json j;
  if (s.shared_domain) {
    j["domain"] = domain_to_json(s.domain_specs.at(0));
  } else {
    ordered_json bodies = ordered_json::array();
    for (const auto& d : s.domain_specs) bodies.push_back(domain_to_json(d));
    j["bodies"] = bodies;
  }
  ordered_json hs = ordered_json::array();
  for (const auto& b : s.bodies) {
    const auto& h = b.placement();
    hs.push_back({{"cx", h.center.x}, {"cy", h.center.y}, {"scale", h.scale}});
  }
  j["homothets"] = hs;
  j["tolerances"] = tolerances_to_json(s.tol);
  return j;
}

inline SceneSpec scene_from_json(const ordered_json& j) {
  Tolerances tol;
  if (j.contains("tolerances")) tol = tolerances_from_json(j.at("tolerances"));

  std::vector<HomothetSpec> homothets;
  for (const auto& h : j.at("homothets")) {
    HomothetSpec spec{{h.at("cx").get<double>(), h.at("cy").get<double>()},
                      h.value("scale", 1.0)};
    spec.validate();
    homothets.push_back(spec);
  }

  if (j.contains("bodies")) {
    std::vector<DomainSpec> domains;
    for (const auto& d : j.at("bodies")) domains.push_back(domain_from_json(d));
    return make_mixed_scene(domains, homothets, tol);
  }
  return make_scene(domain_from_json(j.at("domain")), homothets, tol);
}

inline std::string scene_digest(const SceneSpec& s) {
  const std::string text = scene_to_json(s).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

inline SceneSpec read_scene_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scene file: " + path);
  ordered_json j;
  in >> j;
  return scene_from_json(j);
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
}

inline void write_scene_file(const std::string& path, const SceneSpec& s) {
  write_text_file(path, scene_to_json(s).dump(2) + "\n");
}

}  // namespace cpoly
