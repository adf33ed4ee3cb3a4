#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "json.hpp"

#include "splink/core/errors.hpp"
#include "splink/core/interval.hpp"
#include "splink/core/linkage.hpp"
#include "splink/core/realisation.hpp"
#include "splink/core/verdict.hpp"
#include "splink/oracle.hpp"

namespace splink {

// nlohmann::json keeps object keys sorted, which gives the canonical order.
using Json = nlohmann::json;

/// Rounds to 12 significant digits so that printed floats are stable.
inline double round12(double value) {
  if (!std::isfinite(value)) return value;
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  const double out = std::strtod(buffer, nullptr);
  return out == 0 ? 0.0 : out;
}

namespace detail {

inline Rational json_rational(const Json& value, const std::string& where) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return parse_rational(value.dump());
  if (value.is_number_float()) return parse_rational(value.dump());
  throw ParseError(where + ": expected a number or a numeric string");
}

inline std::string json_string(const Json& value, const std::string& where) {
  if (!value.is_string()) throw ParseError(where + ": expected a string");
  return value.get<std::string>();
}

}  // namespace detail

/// Parses the linkage schema
/// {"vertices": [...], "edges": [{"id","u","v","length"}], "terminals": [s,t]?}.
/// Lengths may be strings ("7/2", "3.5") or JSON numbers.
inline Linkage linkage_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("linkage must be a JSON object");
  if (!doc.contains("vertices") || !doc["vertices"].is_array()) throw ParseError("missing \"vertices\" array");
  if (!doc.contains("edges") || !doc["edges"].is_array()) throw ParseError("missing \"edges\" array");

  Linkage linkage;
  for (const auto& v : doc["vertices"]) linkage.vertices.push_back(detail::json_string(v, "vertex"));
  std::size_t n = 0;
  for (const auto& e : doc["edges"]) {
    const std::string where = "edge " + std::to_string(n++);
    if (!e.is_object()) throw ParseError(where + ": expected an object");
    for (const char* key : {"id", "u", "v", "length"}) {
      if (!e.contains(key)) throw ParseError(where + ": missing \"" + key + "\"");
    }
    linkage.edges.push_back({detail::json_string(e["id"], where + " id"), detail::json_string(e["u"], where + " u"),
                             detail::json_string(e["v"], where + " v"), detail::json_rational(e["length"], where)});
  }
  if (doc.contains("terminals") && !doc["terminals"].is_null()) {
    const auto& t = doc["terminals"];
    if (!t.is_array() || t.size() != 2) throw ParseError("\"terminals\" must be a pair of vertex ids");
    linkage.terminals = TerminalPair{detail::json_string(t[0], "terminal"), detail::json_string(t[1], "terminal")};
  }
  return linkage;
}

inline Linkage parse_linkage(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return linkage_from_json(doc);
}

inline Json to_json(const Linkage& linkage) {
  Json doc;
  doc["vertices"] = linkage.vertices;
  doc["edges"] = Json::array();
  for (const auto& e : linkage.edges)
    doc["edges"].push_back({{"id", e.id}, {"u", e.u}, {"v", e.v}, {"length", to_string(e.length)}});
  if (linkage.terminals) doc["terminals"] = {linkage.terminals->first, linkage.terminals->second};
  return doc;
}

inline Json to_json(const Interval& interval) {
  if (interval.is_empty()) return nullptr;
  return Json::array({to_string(interval.lo()), to_string(interval.hi())});
}

inline Json to_json(const IntervalSet& set) {
  Json out = Json::array();
  for (const auto& piece : set.members()) out.push_back(to_json(piece));
  return out;
}

inline Json rationals_json(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

inline Json to_json(const TraceEntry& entry) {
  struct Visitor {
    Json operator()(const Note& n) const { return {{"kind", "note"}, {"text", n.text}}; }
    Json operator()(const BlockReport& b) const {
      return {{"kind", "block"},
              {"block", b.block},
              {"edges", b.edges},
              {"terminals", {b.terminals.first, b.terminals.second}},
              {"range", to_json(b.range)},
              {"text", describe(b)}};
    }
    Json operator()(const SplitStep& s) const {
      Json paths = Json::array();
      for (const auto& p : s.paths) {
        Json path{{"vertices", p.vertices}, {"lengths", rationals_json(p.lengths)}, {"range", to_json(p.range)}};
        path["nabla"] = p.nabla ? to_json(*p.nabla) : Json(nullptr);
        path["nabla_text"] = p.nabla ? Json(to_string(*p.nabla)) : Json(nullptr);
        path["meets_R"] = p.meets_common_range ? Json(*p.meets_common_range) : Json(nullptr);
        paths.push_back(std::move(path));
      }
      return {{"kind", "split"},
              {"block", s.block},
              {"round", s.round},
              {"terminals", {s.terminals.first, s.terminals.second}},
              {"paths", std::move(paths)},
              {"rest_range", s.rest_range ? to_json(*s.rest_range) : Json(nullptr)},
              {"R", to_json(s.common_range)},
              {"outcome", to_string(s.outcome)},
              {"q_lengths", rationals_json(s.q_lengths)},
              {"text", describe(s)}};
    }
  };
  return std::visit(Visitor{}, entry);
}

inline Json to_json(const Verdict& verdict) {
  Json trace = Json::array();
  for (const auto& entry : verdict.trace) trace.push_back(to_json(entry));
  return {{"status", to_string(verdict.status)}, {"trace", std::move(trace)}};
}

inline Json to_json(const Realisation& realisation) {
  Json placement = Json::object();
  for (const auto& [v, p] : realisation.placement) placement[v] = {round12(p.x), round12(p.y)};
  return {{"distance", to_string(realisation.distance)}, {"placement", std::move(placement)}};
}

inline Realisation realisation_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("distance") || !doc.contains("placement"))
    throw ParseError("realisation needs \"distance\" and \"placement\"");
  Realisation r;
  r.distance = detail::json_rational(doc["distance"], "distance");
  for (const auto& [v, p] : doc["placement"].items()) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      throw ParseError("placement of \"" + v + "\" must be [x, y]");
    r.placement[v] = {p[0].get<double>(), p[1].get<double>()};
  }
  return r;
}

inline Json to_json(const FiberProbe& probe, const FiberResult& fiber) {
  return {{"mode", "fiber"},
          {"lengths", rationals_json(probe.path.lengths)},
          {"x", round12(probe.x)},
          {"components", fiber.components},
          {"kept", fiber.kept},
          {"resolution", fiber.resolution},
          {"slab_width", round12(2 * fiber.slab_half_width)},
          {"range", to_json(path_range(probe.path))}};
}

inline Json to_json(const ModuliSample& sample) {
  return {{"mode", "moduli"},
          {"components", sample.components},
          {"range", {round12(sample.min_distance), round12(sample.max_distance)}},
          {"n", sample.samples},
          {"seed", sample.seed},
          {"epsilon", round12(sample.epsilon)},
          {"patterns", sample.patterns}};
}

}  // namespace splink
