#pragma once

// Family specifications for sweeps and their expansion into instances.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "edgereg/canonical.hpp"
#include "edgereg/error.hpp"
#include "edgereg/generators.hpp"
#include "edgereg/serialize.hpp"

namespace edgereg {

enum class FamilyKind { exhaustive_all, exhaustive_vwc, random_vwc, random_all, named };

inline std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::exhaustive_all: return "exhaustive-all";
    case FamilyKind::exhaustive_vwc: return "exhaustive-vwc";
    case FamilyKind::random_vwc: return "random-vwc";
    case FamilyKind::random_all: return "random-all";
    case FamilyKind::named: return "named";
  }
  return "?";
}

inline FamilyKind parse_family_kind(const std::string& s) {
  for (auto k : {FamilyKind::exhaustive_all, FamilyKind::exhaustive_vwc, FamilyKind::random_vwc,
                 FamilyKind::random_all, FamilyKind::named})
    if (to_string(k) == s) return k;
  throw InputError("unknown family kind '" + s + "'");
}

/// `size` is n (vertex count) for the *-all kinds and m (matching pairs) for
/// the vwc kinds; `size_min` turns it into the range size_min..size. Random
/// kinds draw `cap` distinct instances.
struct FamilySpec {
  FamilyKind kind = FamilyKind::exhaustive_all;
  std::size_t size = 0;
  std::optional<std::size_t> size_min;
  double density = 0.3;
  std::uint64_t seed = 0;
  std::optional<OddGirth> odd_girth_min;
  std::optional<std::size_t> cap;
  std::vector<std::string> names;

  bool counts_pairs() const { return kind == FamilyKind::exhaustive_vwc || kind == FamilyKind::random_vwc; }
  bool is_random() const { return kind == FamilyKind::random_vwc || kind == FamilyKind::random_all; }
  std::size_t lower() const { return size_min.value_or(size); }
  std::size_t instance_cap() const { return cap.value_or(is_random() ? 100 : 1'000'000); }

  void validate() const {
    if (cap && *cap == 0) throw InputError("cap must be positive");
    if (kind == FamilyKind::named) {
      if (names.empty()) throw InputError("named family needs a non-empty 'names' list");
      return;
    }
    if (size == 0) throw InputError(std::string("family needs a positive '") + (counts_pairs() ? "m" : "n") + "'");
    if (lower() == 0 || lower() > size) throw InputError("size range is empty");
    if (!(density >= 0.0 && density <= 1.0)) throw InputError("density must lie in [0, 1]");
    if (kind == FamilyKind::exhaustive_all && size > 8) throw InputError("exhaustive-all supports n <= 8");
    if (kind == FamilyKind::exhaustive_vwc && size > 5) throw InputError("exhaustive-vwc supports m <= 5");
    if (kind == FamilyKind::random_all && size > 12) throw InputError("random-all supports n <= 12");
    if (kind == FamilyKind::random_vwc && size > 7) throw InputError("random-vwc supports m <= 7");
  }
};

inline Json to_json(const FamilySpec& f) {
  Json j{{"kind", to_string(f.kind)}};
  if (f.kind == FamilyKind::named) {
    j["names"] = f.names;
  } else {
    const char* key = f.counts_pairs() ? "m" : "n";
    j[key] = f.size;
    if (f.size_min) j[std::string(key) + "_min"] = *f.size_min;
  }
  if (f.is_random()) {
    j["density"] = f.density;
    j["seed"] = f.seed;
  }
  if (f.odd_girth_min) j["odd_girth_min"] = to_json(*f.odd_girth_min);
  j["cap"] = f.instance_cap();
  return j;
}

inline FamilySpec family_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("family config must be a JSON object");
  FamilySpec f;
  try {
    if (!j.contains("kind")) throw InputError("family config lacks 'kind'");
    f.kind = parse_family_kind(j.at("kind").get<std::string>());
    const std::string key = f.counts_pairs() ? "m" : "n";
    const std::set<std::string> allowed{"kind", key, key + "_min", "density", "seed", "odd_girth_min", "cap", "names"};
    for (const auto& [k, v] : j.items())
      if (!allowed.count(k)) throw InputError("unexpected key '" + k + "' in family config");
    if (j.contains(key)) f.size = j.at(key).get<std::size_t>();
    if (j.contains(key + "_min")) f.size_min = j.at(key + "_min").get<std::size_t>();
    if (j.contains("density")) f.density = j.at("density").get<double>();
    if (j.contains("seed")) f.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("cap")) f.cap = j.at("cap").get<std::size_t>();
    if (j.contains("names")) f.names = j.at("names").get<std::vector<std::string>>();
    if (j.contains("odd_girth_min")) {
      const Json& og = j.at("odd_girth_min");
      if (og.is_string() && og.get<std::string>() == "inf") f.odd_girth_min = OddGirth::infinite();
      else f.odd_girth_min = OddGirth::finite(og.get<unsigned>());
    }
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed family config: ") + e.what());
  } catch (const ValidationError& e) {
    throw InputError(e.what());
  }
  f.validate();
  return f;
}

struct Instance {
  std::string id;     // "n<count>-<canonical code>"
  std::string label;  // name or generating seed, may be empty
  Graph graph;        // canonical labeling
};

inline std::string instance_id(const CanonicalForm& cf) {
  return "n" + std::to_string(cf.graph.vertex_count()) + "-" + cf.code.hex();
}

/// Instances in canonical order, deduplicated up to isomorphism, filtered by
/// odd-girth and truncated to the cap.
inline std::vector<Instance> generate_family(const FamilySpec& spec) {
  spec.validate();
  std::map<std::string, Instance> found;
  auto offer = [&](const Graph& g, std::string label) {
    if (spec.odd_girth_min && odd_girth(g) < *spec.odd_girth_min) return false;
    CanonicalForm cf = canonical_form(g);
    std::string id = instance_id(cf);
    return found.try_emplace(id, Instance{id, std::move(label), std::move(cf.graph)}).second;
  };
  const std::size_t cap = spec.instance_cap();
  switch (spec.kind) {
    case FamilyKind::exhaustive_all:
      for (std::size_t n = spec.lower(); n <= spec.size; ++n)
        for (const Graph& g : enumerate_all_graphs(n)) offer(g, "");
      break;
    case FamilyKind::exhaustive_vwc:
      for (std::size_t m = spec.lower(); m <= spec.size; ++m)
        for (const Graph& g : enumerate_vwc_graphs(m)) offer(g, "");
      break;
    case FamilyKind::named:
      for (const std::string& name : spec.names) offer(named_graph(name), name);
      break;
    case FamilyKind::random_vwc:
    case FamilyKind::random_all: {
      const std::size_t span = spec.size - spec.lower() + 1;
      const std::size_t attempts = 50 * cap + 100;
      std::size_t accepted = 0;
      for (std::size_t t = 0; t < attempts && accepted < cap; ++t) {
        const std::uint64_t seed = detail::mix_seed(spec.seed, t);
        const std::size_t size = spec.lower() + static_cast<std::size_t>(seed % span);
        Graph g;
        if (spec.kind == FamilyKind::random_vwc) {
          g = random_vwc_graph(size, spec.density, seed);
        } else {
          // isolated vertices are dropped; the harness assumes none
          const Graph raw = random_graph(size, spec.density, seed);
          VertexSet keep = 0;
          for (Vertex v = 0; v < raw.vertex_count(); ++v)
            if (raw.degree(v) > 0) keep |= bit(v);
          g = raw.induced(keep);
          if (g.edge_count() == 0) continue;
        }
        if (offer(g, "seed=" + std::to_string(seed))) ++accepted;
      }
      break;
    }
  }
  std::vector<Instance> out;
  for (auto& [id, inst] : found) {
    if (out.size() == cap) break;
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace edgereg
