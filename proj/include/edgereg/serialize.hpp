#pragma once

// JSON encodings of the library's value types.

#include <string>
#include <vector>

#include "json.hpp"

#include "edgereg/even_connection.hpp"
#include "edgereg/graph.hpp"
#include "edgereg/monomial.hpp"
#include "edgereg/resolution.hpp"

namespace edgereg {

using Json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

inline std::string field_name(unsigned characteristic) {
  return characteristic == 0 ? "QQ" : "GF(" + std::to_string(characteristic) + ")";
}

inline Json edges_json(const std::vector<Edge>& edges) {
  Json out = Json::array();
  for (const Edge& e : edges) out.push_back(to_string(e));
  return out;
}

/// "0-1,1-2"
inline std::string compact_edges(const std::vector<Edge>& edges) {
  std::string out;
  for (const Edge& e : edges) {
    if (!out.empty()) out += ',';
    out += to_string(e);
  }
  return out;
}

inline Json to_json(const Graph& g) {
  return Json{{"n", g.vertex_count()}, {"edges", edges_json(g.edges())}};
}

inline Json to_json(const OddGirth& og) {
  if (og.is_infinite()) return "inf";
  return og.value();
}

inline Json to_json(const Monomial& m) { return m.to_string(); }

inline Json to_json(const MonomialIdeal& I) {
  return Json{{"variables", I.variable_count()}, {"generators", I.generator_strings()}};
}

/// Sorted array of {i, j, rank}.
inline Json to_json(const BettiTable& t) {
  Json out = Json::array();
  for (const auto& [ij, rank] : t.entries()) out.push_back(Json{{"i", ij.first}, {"j", ij.second}, {"rank", rank}});
  return out;
}

inline Json to_json(const EvenConnectionWitness& w) {
  return Json{{"walk", w.walk}, {"assignment", w.assignment}};
}

inline Json to_json(const PerfectMatchingCertificate& c) { return edges_json(c.pairs); }

inline Json to_json(const Graph& host, const ColonQuadraticIdeal& c) {
  return Json{{"n", c.vertex_count},
              {"edges", edges_json(c.edges)},
              {"new_edges", edges_json(c.new_edges(host))},
              {"squares", c.squares}};
}

}  // namespace edgereg
