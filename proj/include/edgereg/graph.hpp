#pragma once

// Finite simple graphs and the graph invariants that govern powers of edge
// ideals: odd-girth, induced matching number, maximal independent sets,
// unmixedness and very well-coveredness.

#include <algorithm>
#include <bit>
#include <charconv>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "edgereg/error.hpp"

namespace edgereg {

using Vertex = unsigned;
using VertexSet = std::uint64_t;  // bit v set <=> vertex v present

inline constexpr std::size_t kMaxVertices = 64;

inline constexpr VertexSet bit(Vertex v) { return VertexSet{1} << v; }

inline constexpr VertexSet all_vertices(std::size_t n) {
  return n >= 64 ? ~VertexSet{0} : (VertexSet{1} << n) - 1;
}

inline std::vector<Vertex> members(VertexSet s) {
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(std::popcount(s)));
  while (s) {
    out.push_back(static_cast<Vertex>(std::countr_zero(s)));
    s &= s - 1;
  }
  return out;
}

/// Unordered pair of distinct vertices, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

  bool contains(Vertex w) const { return w == u || w == v; }
  Vertex other(Vertex w) const { return w == u ? v : u; }
  VertexSet mask() const { return bit(u) | bit(v); }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline std::string to_string(const Edge& e) {
  return std::to_string(e.u) + "-" + std::to_string(e.v);
}

class Graph {
 public:
  Graph() = default;

  explicit Graph(std::size_t n) : n_(n), adj_(n, 0) {
    if (n > kMaxVertices) {
      throw ValidationError("graph has " + std::to_string(n) +
                            " vertices; at most 64 are supported");
    }
  }

  /// Validates loops, duplicates and index range; edges are stored sorted.
  Graph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> pairs) : Graph(n) {
    for (auto [a, b] : pairs) add_validated(a, b);
    std::sort(edges_.begin(), edges_.end());
  }

  Graph(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> pairs)
      : Graph(n, std::span<const std::pair<Vertex, Vertex>>(pairs.begin(), pairs.size())) {}

  Graph(std::size_t n, std::span<const Edge> edges) : Graph(n) {
    for (const Edge& e : edges) add_validated(e.u, e.v);
    std::sort(edges_.begin(), edges_.end());
  }

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  VertexSet neighbors(Vertex v) const { return adj_[v]; }
  VertexSet vertex_mask() const { return all_vertices(n_); }
  bool adjacent(Vertex a, Vertex b) const { return a < n_ && b < n_ && (adj_[a] & bit(b)); }
  bool has_edge(const Edge& e) const { return adjacent(e.u, e.v); }
  unsigned degree(Vertex v) const { return static_cast<unsigned>(std::popcount(adj_[v])); }

  bool has_isolated_vertex() const {
    return std::any_of(adj_.begin(), adj_.end(), [](VertexSet s) { return s == 0; });
  }

  /// Graph on the same vertices with extra edges (already-present ones ignored).
  Graph with_edges(std::span<const Edge> extra) const {
    std::vector<Edge> all = edges_;
    for (const Edge& e : extra) {
      if (!has_edge(e)) all.push_back(e);
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return Graph(n_, std::span<const Edge>(all));
  }

  /// Image under a vertex relabeling: vertex v becomes perm[v].
  Graph relabeled(std::span<const Vertex> perm) const {
    std::vector<Edge> mapped;
    mapped.reserve(edges_.size());
    for (const Edge& e : edges_) mapped.emplace_back(perm[e.u], perm[e.v]);
    return Graph(n_, std::span<const Edge>(mapped));
  }

  /// Induced subgraph on the vertices of `keep`, relabeled in increasing order.
  Graph induced(VertexSet keep) const {
    std::vector<Vertex> pos(n_, 0);
    Vertex next = 0;
    for (Vertex v : members(keep)) pos[v] = next++;
    std::vector<Edge> sub;
    for (const Edge& e : edges_) {
      if ((keep & e.mask()) == e.mask()) sub.emplace_back(pos[e.u], pos[e.v]);
    }
    return Graph(next, std::span<const Edge>(sub));
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void add_validated(Vertex a, Vertex b) {
    if (a == b) throw ValidationError("loop edge at vertex " + std::to_string(a));
    if (a >= n_ || b >= n_) {
      throw ValidationError("edge " + std::to_string(a) + "-" + std::to_string(b) +
                            " out of range for " + std::to_string(n_) + " vertices");
    }
    if (adj_[a] & bit(b)) {
      throw ValidationError("duplicate edge " + std::to_string(std::min(a, b)) + "-" +
                            std::to_string(std::max(a, b)));
    }
    adj_[a] |= bit(b);
    adj_[b] |= bit(a);
    edges_.emplace_back(a, b);
  }

  std::size_t n_ = 0;
  std::vector<VertexSet> adj_;
  std::vector<Edge> edges_;
};

/// Disjoint union; the vertices of `b` are shifted past those of `a`.
inline Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> all = a.edges();
  const auto shift = static_cast<Vertex>(a.vertex_count());
  for (const Edge& e : b.edges()) all.emplace_back(e.u + shift, e.v + shift);
  return Graph(a.vertex_count() + b.vertex_count(), std::span<const Edge>(all));
}

// ---------------------------------------------------------------------------
// Edge-list documents
// ---------------------------------------------------------------------------

namespace detail {

inline std::optional<unsigned long> parse_unsigned(std::string_view tok) {
  unsigned long value = 0;
  const auto* first = tok.data();
  const auto* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return value;
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace detail

/// Parses "u v" lines ('#' starts a comment). An optional first content line
/// "n <count>" fixes the vertex count; otherwise it is 1 + the largest index.
inline Graph from_edge_list(std::string_view text) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  std::optional<std::size_t> declared;
  bool seen_content = false;
  std::size_t max_index_plus_one = 0;
  std::size_t line_no = 0;

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tokens = detail::split_ws(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (tokens.size() != 2) {
      throw ParseError(line_no, "expected two vertex indices, found " +
                                    std::to_string(tokens.size()) + " tokens");
    }
    if (!seen_content && tokens[0] == "n") {
      auto count = detail::parse_unsigned(tokens[1]);
      if (!count) throw ParseError(line_no, "malformed vertex count '" + std::string(tokens[1]) + "'");
      declared = *count;
      seen_content = true;
      continue;
    }
    seen_content = true;
    auto a = detail::parse_unsigned(tokens[0]);
    auto b = detail::parse_unsigned(tokens[1]);
    if (!a) throw ParseError(line_no, "malformed vertex index '" + std::string(tokens[0]) + "'");
    if (!b) throw ParseError(line_no, "malformed vertex index '" + std::string(tokens[1]) + "'");
    if (*a >= kMaxVertices || *b >= kMaxVertices) {
      throw ValidationError("line " + std::to_string(line_no) + ": vertex index exceeds 63");
    }
    pairs.emplace_back(static_cast<Vertex>(*a), static_cast<Vertex>(*b));
    max_index_plus_one = std::max<std::size_t>(max_index_plus_one, std::max(*a, *b) + 1);
    if (end == text.size()) break;
  }

  const std::size_t n = declared.value_or(max_index_plus_one);
  if (declared && max_index_plus_one > *declared) {
    throw ValidationError("edge endpoint " + std::to_string(max_index_plus_one - 1) +
                          " exceeds declared vertex count " + std::to_string(*declared));
  }
  return Graph(n, std::span<const std::pair<Vertex, Vertex>>(pairs));
}

/// Inverse of from_edge_list; always writes the "n <count>" header.
inline std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "n " << g.vertex_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Odd-girth
// ---------------------------------------------------------------------------

/// Length of the shortest odd cycle; bipartite graphs have infinite odd-girth,
/// which compares above every finite value.
class OddGirth {
 public:
  static OddGirth infinite() { return OddGirth(); }
  static OddGirth finite(unsigned length) {
    if (length < 3 || length % 2 == 0) {
      throw ValidationError("odd-girth must be an odd integer >= 3, got " + std::to_string(length));
    }
    return OddGirth(length);
  }

  bool is_infinite() const { return value_ == kInf; }
  unsigned value() const { return value_; }

  /// odd-girth >= bound; true for every bound when infinite.
  bool at_least(long bound) const { return is_infinite() || static_cast<long>(value_) >= bound; }

  std::string to_string() const { return is_infinite() ? "inf" : std::to_string(value_); }

  friend auto operator<=>(const OddGirth&, const OddGirth&) = default;

 private:
  static constexpr unsigned kInf = std::numeric_limits<unsigned>::max();
  OddGirth() : value_(kInf) {}
  explicit OddGirth(unsigned v) : value_(v) {}
  unsigned value_;
};

// Breadth-first layering from every root; an edge inside one layer at depth d
// closes an odd walk of length 2d + 1, and the minimum over roots is attained
// on a shortest odd cycle.
inline OddGirth odd_girth(const Graph& g) {
  const std::size_t n = g.vertex_count();
  unsigned best = std::numeric_limits<unsigned>::max();
  std::vector<int> dist(n);
  std::vector<Vertex> queue(n);
  for (Vertex root = 0; root < n; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[root] = 0;
    std::size_t head = 0, tail = 0;
    queue[tail++] = root;
    while (head < tail) {
      const Vertex a = queue[head++];
      if (2u * static_cast<unsigned>(dist[a]) + 1 >= best) break;
      for (Vertex b : members(g.neighbors(a))) {
        if (dist[b] < 0) {
          dist[b] = dist[a] + 1;
          queue[tail++] = b;
        } else if (dist[b] == dist[a]) {
          best = std::min(best, 2u * static_cast<unsigned>(dist[a]) + 1);
        }
      }
    }
  }
  return best == std::numeric_limits<unsigned>::max() ? OddGirth::infinite()
                                                      : OddGirth::finite(best);
}

// ---------------------------------------------------------------------------
// Induced matchings
// ---------------------------------------------------------------------------

namespace detail {

struct InducedMatchingSearch {
  const Graph& g;
  std::vector<VertexSet> closed;  // closed neighbourhood of each edge
  std::size_t best = 0;
  std::vector<Edge> best_set;
  std::vector<Edge> current;

  void run(std::size_t from, VertexSet blocked) {
    if (current.size() > best) {
      best = current.size();
      best_set = current;
    }
    const auto& edges = g.edges();
    std::size_t available = 0;
    VertexSet free_vertices = 0;
    for (std::size_t i = from; i < edges.size(); ++i) {
      if (!(edges[i].mask() & blocked)) {
        ++available;
        free_vertices |= edges[i].mask();
      }
    }
    const std::size_t bound =
        std::min<std::size_t>(available, static_cast<std::size_t>(std::popcount(free_vertices)) / 2);
    if (current.size() + bound <= best) return;
    for (std::size_t i = from; i < edges.size(); ++i) {
      if (edges[i].mask() & blocked) continue;
      current.push_back(edges[i]);
      run(i + 1, blocked | closed[i]);
      current.pop_back();
    }
  }
};

}  // namespace detail

/// A maximum induced matching, lexicographically first among those found by
/// the branch-and-bound search (edges in sorted order).
inline std::vector<Edge> maximum_induced_matching(const Graph& g) {
  detail::InducedMatchingSearch search{g, {}, 0, {}, {}};
  for (const Edge& e : g.edges()) {
    search.closed.push_back(e.mask() | g.neighbors(e.u) | g.neighbors(e.v));
  }
  search.run(0, 0);
  return search.best_set;
}

/// nu(G): largest set of pairwise disjoint edges inducing no further edge.
inline std::size_t induced_matching_number(const Graph& g) {
  return maximum_induced_matching(g).size();
}

inline bool is_induced_matching(const Graph& g, std::span<const Edge> matching) {
  VertexSet used = 0;
  for (const Edge& e : matching) {
    if (!g.has_edge(e) || (used & e.mask())) return false;
    used |= e.mask();
  }
  std::size_t induced = 0;
  for (const Edge& e : g.edges()) {
    if ((used & e.mask()) == e.mask()) ++induced;
  }
  return induced == matching.size();
}

// ---------------------------------------------------------------------------
// Independent sets
// ---------------------------------------------------------------------------

namespace detail {

// Bron-Kerbosch with pivoting on the complement graph. `visit` receives each
// maximal independent set once and returns false to stop the search early.
template <class Visit>
bool for_each_maximal_independent_set(const Graph& g, VertexSet r, VertexSet p, VertexSet x,
                                      Visit& visit) {
  if (p == 0 && x == 0) return visit(r);
  const VertexSet all = g.vertex_mask();
  auto non_neighbors = [&](Vertex v) { return all & ~g.neighbors(v) & ~bit(v); };

  // Pivot maximizing |P ∩ non_neighbors(u)| so the fewest branches remain.
  Vertex pivot = 0;
  int best = -1;
  for (Vertex u : members(p | x)) {
    const int c = std::popcount(p & non_neighbors(u));
    if (c > best) {
      best = c;
      pivot = u;
    }
  }
  VertexSet candidates = p & ~non_neighbors(pivot);
  while (candidates) {
    const auto v = static_cast<Vertex>(std::countr_zero(candidates));
    candidates &= candidates - 1;
    const VertexSet nv = non_neighbors(v);
    if (!for_each_maximal_independent_set(g, r | bit(v), p & nv, x & nv, visit)) return false;
    p &= ~bit(v);
    x |= bit(v);
  }
  return true;
}

template <class Visit>
void for_each_maximal_independent_set(const Graph& g, Visit visit) {
  if (g.vertex_count() == 0) {
    visit(VertexSet{0});
    return;
  }
  for_each_maximal_independent_set(g, 0, g.vertex_mask(), 0, visit);
}

}  // namespace detail

inline bool is_independent(const Graph& g, VertexSet s) {
  for (Vertex v : members(s)) {
    if (g.neighbors(v) & s) return false;
  }
  return true;
}

inline bool is_maximal_independent(const Graph& g, VertexSet s) {
  if (!is_independent(g, s)) return false;
  for (Vertex v : members(g.vertex_mask() & ~s)) {
    if (!(g.neighbors(v) & s)) return false;
  }
  return true;
}

/// Every inclusion-maximal independent set as a bitmask, sorted
/// lexicographically by member lists.
inline std::vector<VertexSet> maximal_independent_set_masks(const Graph& g) {
  std::vector<VertexSet> out;
  detail::for_each_maximal_independent_set(g, [&](VertexSet s) {
    out.push_back(s);
    return true;
  });
  std::sort(out.begin(), out.end(),
            [](VertexSet a, VertexSet b) { return members(a) < members(b); });
  return out;
}

inline std::vector<std::vector<Vertex>> maximal_independent_sets(const Graph& g) {
  std::vector<std::vector<Vertex>> out;
  for (VertexSet s : maximal_independent_set_masks(g)) out.push_back(members(s));
  return out;
}

inline bool is_unmixed(const Graph& g) {
  int size = -1;
  bool same = true;
  detail::for_each_maximal_independent_set(g, [&](VertexSet s) {
    const int c = std::popcount(s);
    if (size < 0) size = c;
    same = (c == size);
    return same;
  });
  return same;
}

/// Even order, no isolated vertex, and every maximal independent set has
/// exactly half of the vertices.
inline bool is_very_well_covered(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0 || n % 2 != 0 || g.has_isolated_vertex()) return false;
  const int half = static_cast<int>(n / 2);
  bool ok = true;
  detail::for_each_maximal_independent_set(g, [&](VertexSet s) {
    ok = (std::popcount(s) == half);
    return ok;
  });
  return ok;
}

// ---------------------------------------------------------------------------
// Perfect-matching certificates for very well-coveredness
// ---------------------------------------------------------------------------

/// A perfect matching M such that no edge of M lies in a triangle and every
/// path z, x', y', w of length 3 centred on an edge {x', y'} of M has z ~ w.
struct PerfectMatchingCertificate {
  std::vector<Edge> pairs;
  friend bool operator==(const PerfectMatchingCertificate&, const PerfectMatchingCertificate&) = default;
};

/// Whether a single edge of G meets both certificate conditions.
inline bool satisfies_certificate_conditions(const Graph& g, const Edge& e) {
  const VertexSet nx = g.neighbors(e.u) & ~bit(e.v);
  const VertexSet ny = g.neighbors(e.v) & ~bit(e.u);
  if (nx & ny) return false;  // triangle through e
  for (Vertex z : members(nx)) {
    if ((g.neighbors(z) & ny) != ny) return false;
  }
  return true;
}

inline bool check_vwc_certificate(const Graph& g, const PerfectMatchingCertificate& cert) {
  VertexSet covered = 0;
  for (const Edge& e : cert.pairs) {
    if (!g.has_edge(e) || (covered & e.mask())) return false;
    covered |= e.mask();
  }
  if (covered != g.vertex_mask()) return false;
  return std::all_of(cert.pairs.begin(), cert.pairs.end(),
                     [&](const Edge& e) { return satisfies_certificate_conditions(g, e); });
}

namespace detail {

inline bool extend_matching(const std::vector<VertexSet>& good_adj, VertexSet unmatched,
                            std::vector<Edge>& pairs) {
  if (unmatched == 0) return true;
  const auto v = static_cast<Vertex>(std::countr_zero(unmatched));
  VertexSet options = good_adj[v] & unmatched;
  while (options) {
    const auto w = static_cast<Vertex>(std::countr_zero(options));
    options &= options - 1;
    pairs.emplace_back(v, w);
    if (extend_matching(good_adj, unmatched & ~bit(v) & ~bit(w), pairs)) return true;
    pairs.pop_back();
  }
  return false;
}

}  // namespace detail

/// Lexicographically first certificate, if any. The conditions are
/// properties of individual edges, so this is a perfect-matching search in
/// the subgraph of qualifying edges.
inline std::optional<PerfectMatchingCertificate> find_vwc_certificate(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0 || n % 2 != 0) return std::nullopt;
  std::vector<VertexSet> good_adj(n, 0);
  for (const Edge& e : g.edges()) {
    if (satisfies_certificate_conditions(g, e)) {
      good_adj[e.u] |= bit(e.v);
      good_adj[e.v] |= bit(e.u);
    }
  }
  PerfectMatchingCertificate cert;
  if (!detail::extend_matching(good_adj, g.vertex_mask(), cert.pairs)) return std::nullopt;
  return cert;
}

// ---------------------------------------------------------------------------
// Named graphs
// ---------------------------------------------------------------------------

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, std::span<const Edge>(e));
}

inline Graph cycle_graph(std::size_t n) {
  if (n < 3) throw InputError("a cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (Vertex i = 0; i < n; ++i) e.emplace_back(i, static_cast<Vertex>((i + 1) % n));
  return Graph(n, std::span<const Edge>(e));
}

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, std::span<const Edge>(e));
}

inline Graph complete_bipartite_graph(std::size_t a, std::size_t b) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < a; ++i)
    for (Vertex j = 0; j < b; ++j) e.emplace_back(i, static_cast<Vertex>(a + j));
  return Graph(a + b, std::span<const Edge>(e));
}

inline Graph petersen_graph() {
  std::vector<Edge> e;
  for (Vertex i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(i + 5, (i + 2) % 5 + 5);
  }
  return Graph(10, std::span<const Edge>(e));
}

}  // namespace edgereg
