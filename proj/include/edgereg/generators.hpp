#pragma once

// Graph families for sweeps: all small graphs up to isomorphism, very
// well-covered graphs built around a fixed perfect matching, random variants
// and named graphs.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "edgereg/canonical.hpp"
#include "edgereg/error.hpp"
#include "edgereg/graph.hpp"

namespace edgereg {

/// G with a new pendant vertex n + v attached to every vertex v.
inline Graph corona(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<Edge> e = g.edges();
  for (Vertex v = 0; v < n; ++v) e.emplace_back(v, static_cast<Vertex>(n + v));
  return Graph(2 * n, std::span<const Edge>(e));
}

/// The pendant edges of corona(g), which form its natural certificate.
inline PerfectMatchingCertificate corona_certificate(const Graph& g) {
  PerfectMatchingCertificate cert;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    cert.pairs.emplace_back(v, static_cast<Vertex>(g.vertex_count() + v));
  return cert;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration
// ---------------------------------------------------------------------------

/// Canonical representatives of all graphs on n vertices (isolated vertices
/// allowed), ordered by canonical code.
inline std::vector<Graph> enumerate_graphs_with_isolated(std::size_t n) {
  if (n > 8) throw InputError("exhaustive enumeration supports at most 8 vertices");
  std::vector<Graph> level{Graph(0)};
  for (std::size_t k = 0; k < n; ++k) {
    std::map<AdjacencyCode, Graph> next;
    for (const Graph& g : level) {
      for (VertexSet s = 0; s <= all_vertices(k); ++s) {
        std::vector<Edge> e = g.edges();
        for (Vertex w : members(s)) e.emplace_back(w, static_cast<Vertex>(k));
        CanonicalForm cf = canonical_form(Graph(k + 1, std::span<const Edge>(e)));
        next.try_emplace(std::move(cf.code), std::move(cf.graph));
      }
    }
    level.clear();
    for (auto& [code, g] : next) level.push_back(std::move(g));
  }
  return level;
}

/// One canonical representative per isomorphism class of graphs on n vertices
/// without isolated vertices.
inline std::vector<Graph> enumerate_all_graphs(std::size_t n) {
  if (n < 1 || n > 8) throw InputError("enumerate_all_graphs needs 1 <= n <= 8, got " + std::to_string(n));
  std::vector<Graph> out;
  for (Graph& g : enumerate_graphs_with_isolated(n))
    if (!g.has_isolated_vertex()) out.push_back(std::move(g));
  return out;
}

namespace detail {

// Cross edges between matching pairs i < j, as bits over
// (x_i x_j, x_i y_j, y_i x_j, y_i y_j). Condition (i) forbids two cross edges
// sharing a vertex, leaving the matchings of K_{2,2}.
inline constexpr std::uint8_t kCrossPatterns[7] = {0b0000, 0b0001, 0b0010, 0b0100,
                                                   0b1000, 0b1001, 0b0110};

struct VwcEnumeration {
  std::size_t m;
  std::vector<std::pair<std::size_t, std::size_t>> slots;  // pair-of-pairs order
  std::vector<VertexSet> adj;
  std::map<AdjacencyCode, Graph> found;
  OddGirth girth_min;

  static Vertex x(std::size_t i) { return static_cast<Vertex>(2 * i); }
  static Vertex y(std::size_t i) { return static_cast<Vertex>(2 * i + 1); }

  void apply(std::size_t i, std::size_t j, std::uint8_t pattern) {
    const Vertex a[2] = {x(i), y(i)};
    const Vertex b[2] = {x(j), y(j)};
    for (int t = 0; t < 4; ++t) {
      if (!(pattern & (1 << t))) continue;
      const Vertex p = a[t >> 1], q = b[t & 1];
      adj[p] ^= bit(q);
      adj[q] ^= bit(p);
    }
  }

  // Condition (ii) for centre pair c with ends drawn from pairs p and q.
  bool closes(std::size_t c, std::size_t p, std::size_t q) const {
    const VertexSet pm = bit(x(p)) | bit(y(p));
    const VertexSet qm = bit(x(q)) | bit(y(q));
    const Vertex ends[2][2] = {{x(c), y(c)}, {y(c), x(c)}};
    for (const auto& e : ends) {
      for (Vertex z : members(adj[e[0]] & pm))
        for (Vertex w : members(adj[e[1]] & qm))
          if (!(adj[z] & bit(w))) return false;
    }
    return true;
  }

  bool triple_ok(std::size_t a, std::size_t b, std::size_t c) const {
    return closes(a, b, c) && closes(a, c, b) && closes(b, a, c) && closes(b, c, a) &&
           closes(c, a, b) && closes(c, b, a);
  }

  void run(std::size_t slot) {
    if (slot == slots.size()) {
      emit();
      return;
    }
    const auto [i, j] = slots[slot];
    for (std::uint8_t pattern : kCrossPatterns) {
      apply(i, j, pattern);
      bool ok = true;
      for (std::size_t a = 0; a < i && ok; ++a) ok = triple_ok(a, i, j);
      if (ok) run(slot + 1);
      apply(i, j, pattern);
    }
  }

  void emit() {
    std::vector<Edge> e;
    for (Vertex v = 0; v < adj.size(); ++v)
      for (Vertex w : members(adj[v]))
        if (v < w) e.emplace_back(v, w);
    Graph g(adj.size(), std::span<const Edge>(e));
    if (odd_girth(g) < girth_min) return;
    CanonicalForm cf = canonical_form(g);
    if (found.count(cf.code)) return;
    if (!is_very_well_covered(g)) {
      throw ConsistencyError("certificate-first construction produced a graph the recognizer rejects: " +
                             to_edge_list(g));
    }
    found.emplace(std::move(cf.code), std::move(cf.graph));
  }
};

}  // namespace detail

/// Very well-covered graphs on 2m vertices up to isomorphism with
/// odd-girth >= girth_min, as canonical representatives ordered by code.
inline std::vector<Graph> enumerate_vwc_graphs(std::size_t m, std::optional<OddGirth> girth_min = std::nullopt) {
  if (m < 1 || m > 5) throw InputError("enumerate_vwc_graphs needs 1 <= m <= 5, got " + std::to_string(m));
  detail::VwcEnumeration run{m, {}, std::vector<VertexSet>(2 * m, 0), {}, OddGirth::finite(3)};
  if (girth_min) run.girth_min = *girth_min;
  for (std::size_t j = 1; j < m; ++j)
    for (std::size_t i = 0; i < j; ++i) run.slots.emplace_back(i, j);
  for (std::size_t i = 0; i < m; ++i) {
    run.adj[2 * i] |= bit(static_cast<Vertex>(2 * i + 1));
    run.adj[2 * i + 1] |= bit(static_cast<Vertex>(2 * i));
  }
  run.run(0);
  std::vector<Graph> out;
  for (auto& [code, g] : run.found) out.push_back(std::move(g));
  return out;
}

// ---------------------------------------------------------------------------
// Random graphs
// ---------------------------------------------------------------------------

namespace detail {

// Platform-independent draw in [0, 1); std::uniform_real_distribution is not
// specified bit-for-bit across standard libraries.
inline double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline void check_density(double density) {
  if (!(density >= 0.0 && density <= 1.0)) throw InputError("density must lie in [0, 1]");
}

}  // namespace detail

/// Erdos-Renyi graph G(n, p).
inline Graph random_graph(std::size_t n, double density, std::uint64_t seed) {
  detail::check_density(density);
  std::mt19937_64 rng(seed);
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (detail::unit_draw(rng) < density) e.emplace_back(u, v);
  return Graph(n, std::span<const Edge>(e));
}

struct RandomVwcOptions {
  std::size_t repair_rounds = 64;
  std::size_t attempts = 1000;
};

/// Very well-covered graph on 2m vertices around the matching {2i, 2i+1};
/// deterministic per seed.
inline Graph random_vwc_graph(std::size_t m, double density, std::uint64_t seed,
                              RandomVwcOptions opt = {}) {
  if (m < 1) throw InputError("random_vwc_graph needs m >= 1");
  if (2 * m > kMaxVertices) throw InputError("too many matching pairs");
  detail::check_density(density);
  std::mt19937_64 rng(seed);
  const std::size_t n = 2 * m;
  for (std::size_t attempt = 0; attempt < opt.attempts; ++attempt) {
    std::vector<VertexSet> adj(n, 0);
    auto link = [&](Vertex a, Vertex b) {
      adj[a] |= bit(b);
      adj[b] |= bit(a);
    };
    for (Vertex i = 0; i < m; ++i) link(2 * i, 2 * i + 1);
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = a + 1; b < n; ++b)
        if (a / 2 != b / 2 && detail::unit_draw(rng) < density) link(a, b);

    // close every z, x', y', w to a fixed point
    bool stable = false;
    for (std::size_t round = 0; round < opt.repair_rounds && !stable; ++round) {
      stable = true;
      for (Vertex i = 0; i < m; ++i) {
        const Vertex xv = 2 * i, yv = 2 * i + 1;
        const VertexSet nx = adj[xv] & ~bit(yv), ny = adj[yv] & ~bit(xv);
        for (Vertex z : members(nx))
          for (Vertex w : members(ny & ~bit(z)))
            if (!(adj[z] & bit(w))) {
              link(z, w);
              stable = false;
            }
      }
    }
    if (!stable) continue;
    bool triangle_free_pairs = true;
    for (Vertex i = 0; i < m && triangle_free_pairs; ++i)
      triangle_free_pairs = !(adj[2 * i] & adj[2 * i + 1]);
    if (!triangle_free_pairs) continue;

    std::vector<Edge> e;
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b : members(adj[a] & ~all_vertices(a + 1))) e.emplace_back(a, b);
    Graph g(n, std::span<const Edge>(e));
    if (!is_very_well_covered(g))
      throw ConsistencyError("repaired graph rejected by the recognizer: " + to_edge_list(g));
    return g;
  }
  throw GenerationError("no very well-covered sample after " + std::to_string(opt.attempts) + " attempts");
}

// ---------------------------------------------------------------------------
// Named graphs
// ---------------------------------------------------------------------------

/// "P4", "C7", "K4", "K3,3", "2K2", "petersen", "corona(C7)".
inline Graph named_graph(std::string_view name) {
  auto fail = [&]() -> Graph { throw InputError("unknown graph name '" + std::string(name) + "'"); };
  auto number = [&](std::string_view t) -> std::size_t {
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      fail();
    return std::stoul(std::string(t));
  };
  if (name == "petersen") return petersen_graph();
  if (name.starts_with("corona(") && name.ends_with(")")) return corona(named_graph(name.substr(7, name.size() - 8)));
  if (!name.empty() && std::isdigit(static_cast<unsigned char>(name[0]))) {
    std::size_t k = 0;
    while (k < name.size() && std::isdigit(static_cast<unsigned char>(name[k]))) ++k;
    const std::size_t copies = number(name.substr(0, k));
    const Graph one = named_graph(name.substr(k));
    Graph g(0);
    for (std::size_t c = 0; c < copies; ++c) g = disjoint_union(g, one);
    return g;
  }
  if (name.size() < 2) return fail();
  const std::string_view rest = name.substr(1);
  switch (name[0]) {
    case 'P': return path_graph(number(rest));
    case 'C': return cycle_graph(number(rest));
    case 'K': {
      const auto comma = rest.find(',');
      if (comma == std::string_view::npos) return complete_graph(number(rest));
      return complete_bipartite_graph(number(rest.substr(0, comma)), number(rest.substr(comma + 1)));
    }
    default: return fail();
  }
}

}  // namespace edgereg
