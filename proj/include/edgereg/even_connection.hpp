#pragma once

// Even-connections with respect to an s-fold product of edges, and the graph
// G' whose edge ideal is the colon (I(G)^{s+1} : e_1 ... e_s).
//
// A witness is a walk p_0, ..., p_{2l+1} (l >= 1, vertices may repeat) with
// p_0 = u, p_{2l+1} = v, each pair {p_{2k+1}, p_{2k+2}} one of the e_i, and no
// e_i used more often than it occurs in the product. Allowing repeated
// vertices never admits a pair outside the colon ideal: such a walk still
// factors u v e_1 ... e_s into s + 1 edges.

#include <algorithm>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "edgereg/error.hpp"
#include "edgereg/graph.hpp"
#include "edgereg/monomial.hpp"

namespace edgereg {

/// e_1, ..., e_s with repetition allowed; every entry is an edge of the host.
class EdgeMultiset {
 public:
  EdgeMultiset() = default;

  EdgeMultiset(const Graph& host, std::vector<Edge> edges) : edges_(std::move(edges)) {
    if (edges_.empty()) throw InputError("edge multiset must contain at least one edge");
    for (const Edge& e : edges_) {
      if (!host.has_edge(e)) throw InputError("{" + edgereg::to_string(e) + "} is not an edge of the graph");
    }
    distinct_ = edges_;
    std::sort(distinct_.begin(), distinct_.end());
    distinct_.erase(std::unique(distinct_.begin(), distinct_.end()), distinct_.end());
    multiplicity_.assign(distinct_.size(), 0);
    for (const Edge& e : edges_) ++multiplicity_[distinct_index(e)];
  }

  std::size_t size() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& operator[](std::size_t i) const { return edges_[i]; }

  const std::vector<Edge>& distinct() const { return distinct_; }
  const std::vector<unsigned>& multiplicity() const { return multiplicity_; }

  std::size_t distinct_index(const Edge& e) const {
    return static_cast<std::size_t>(std::lower_bound(distinct_.begin(), distinct_.end(), e) - distinct_.begin());
  }

  Monomial product(std::size_t nvars) const { return edge_product(nvars, edges_); }

  /// Copy without entry i (0-based).
  std::vector<Edge> without(std::size_t i) const {
    std::vector<Edge> rest;
    for (std::size_t j = 0; j < edges_.size(); ++j)
      if (j != i) rest.push_back(edges_[j]);
    return rest;
  }

  std::string to_string() const {
    std::string out;
    for (const Edge& e : edges_) {
      if (!out.empty()) out += ',';
      out += edgereg::to_string(e);
    }
    return out;
  }

  friend bool operator==(const EdgeMultiset& a, const EdgeMultiset& b) { return a.edges_ == b.edges_; }

 private:
  std::vector<Edge> edges_;
  std::vector<Edge> distinct_;
  std::vector<unsigned> multiplicity_;
};

struct EvenConnectionWitness {
  std::vector<Vertex> walk;             // p_0 ... p_{2l+1}
  std::vector<std::size_t> assignment;  // pair k uses multiset entry assignment[k]

  std::size_t pair_count() const { return assignment.size(); }
  friend bool operator==(const EvenConnectionWitness&, const EvenConnectionWitness&) = default;
};

/// Checks the walk conditions directly from the definition.
inline bool validate_witness(const Graph& g, Vertex u, Vertex v, const EdgeMultiset& m,
                             const EvenConnectionWitness& w) {
  const auto& p = w.walk;
  if (p.size() < 4 || p.size() % 2 != 0) return false;
  const std::size_t l = (p.size() - 2) / 2;
  if (w.assignment.size() != l) return false;
  if (p.front() != u || p.back() != v) return false;
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (!g.adjacent(p[i], p[i + 1])) return false;
  std::vector<std::size_t> used_index;
  for (std::size_t k = 0; k < l; ++k) {
    const std::size_t i = w.assignment[k];
    if (i >= m.size()) return false;
    if (Edge(p[2 * k + 1], p[2 * k + 2]) != m[i]) return false;
    used_index.push_back(i);
  }
  // |{k : pair_k = e_i}| <= |{j : e_j = e_i}| for every i
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::size_t uses = 0, available = 0;
    for (std::size_t k = 0; k < l; ++k)
      if (Edge(p[2 * k + 1], p[2 * k + 2]) == m[i]) ++uses;
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m[j] == m[i]) ++available;
    if (uses > available) return false;
  }
  std::sort(used_index.begin(), used_index.end());
  return std::adjacent_find(used_index.begin(), used_index.end()) == used_index.end();
}

namespace detail {

// Residual multiplicities packed in mixed radix (multiplicity + 1 per edge).
struct ResidualCodec {
  std::vector<unsigned> radix;
  std::vector<std::size_t> place;
  std::size_t states = 1;

  explicit ResidualCodec(const std::vector<unsigned>& mult) {
    for (unsigned c : mult) {
      radix.push_back(c + 1);
      place.push_back(states);
      states *= c + 1;
    }
  }
  std::size_t full(const std::vector<unsigned>& mult) const {
    std::size_t code = 0;
    for (std::size_t t = 0; t < mult.size(); ++t) code += mult[t] * place[t];
    return code;
  }
  unsigned count(std::size_t code, std::size_t t) const {
    return static_cast<unsigned>((code / place[t]) % radix[t]);
  }
};

struct WitnessSearch {
  const Graph& g;
  const EdgeMultiset& m;
  Vertex target;
  ResidualCodec codec;
  std::size_t pairs = 0;
  std::vector<char> dead;  // (k, vertex, residual)
  std::vector<Vertex> walk;
  std::vector<std::size_t> chosen;  // distinct-edge index per pair

  std::size_t slot(std::size_t k, Vertex x, std::size_t code) const {
    return (k * g.vertex_count() + x) * codec.states + code;
  }

  bool extend(std::size_t k, Vertex at, std::size_t code) {
    if (k == pairs) {
      if (!g.adjacent(at, target)) return false;
      walk.push_back(target);
      return true;
    }
    if (dead[slot(k, at, code)]) return false;
    for (Vertex a : members(g.neighbors(at))) {
      std::vector<std::pair<Vertex, std::size_t>> steps;
      for (std::size_t t = 0; t < m.distinct().size(); ++t) {
        const Edge& e = m.distinct()[t];
        if (e.contains(a) && codec.count(code, t) > 0) steps.emplace_back(e.other(a), t);
      }
      std::sort(steps.begin(), steps.end());
      for (auto [b, t] : steps) {
        walk.push_back(a);
        walk.push_back(b);
        chosen.push_back(t);
        if (extend(k + 1, b, code - codec.place[t])) return true;
        chosen.pop_back();
        walk.pop_back();
        walk.pop_back();
      }
    }
    dead[slot(k, at, code)] = 1;
    return false;
  }
};

}  // namespace detail

/// Lexicographically least walk among the shortest witnesses, if any.
inline std::optional<EvenConnectionWitness> is_even_connected(const Graph& g, Vertex u, Vertex v,
                                                              const EdgeMultiset& m) {
  if (u >= g.vertex_count() || v >= g.vertex_count()) throw InputError("vertex out of range");
  for (const Edge& e : m.edges())
    if (!g.has_edge(e)) throw InputError("{" + to_string(e) + "} is not an edge of the graph");

  detail::WitnessSearch search{g, m, v, detail::ResidualCodec(m.multiplicity()), 0, {}, {}, {}};
  const std::size_t start_code = search.codec.full(m.multiplicity());
  for (std::size_t l = 1; l <= m.size(); ++l) {
    search.pairs = l;
    search.dead.assign((l + 1) * g.vertex_count() * search.codec.states, 0);
    search.walk = {u};
    search.chosen.clear();
    if (search.extend(0, u, start_code)) {
      EvenConnectionWitness w;
      w.walk = search.walk;
      std::vector<unsigned> taken(m.distinct().size(), 0);
      for (std::size_t t : search.chosen) {
        // k-th use of an edge value takes the k-th position holding it
        unsigned seen = 0;
        for (std::size_t i = 0; i < m.size(); ++i) {
          if (m[i] == m.distinct()[t] && seen++ == taken[t]) {
            w.assignment.push_back(i);
            break;
          }
        }
        ++taken[t];
      }
      return w;
    }
  }
  return std::nullopt;
}

/// Quadratic monomial ideal presented as a graph plus squared vertices.
struct ColonQuadraticIdeal {
  std::size_t vertex_count = 0;
  std::vector<Edge> edges;       // sorted; contains E(G)
  std::vector<Vertex> squares;   // u with u^2 a generator

  bool squarefree() const { return squares.empty(); }

  Graph graph() const { return Graph(vertex_count, std::span<const Edge>(edges)); }

  std::vector<Edge> new_edges(const Graph& host) const {
    std::vector<Edge> out;
    for (const Edge& e : edges)
      if (!host.has_edge(e)) out.push_back(e);
    return out;
  }

  MonomialIdeal ideal() const {
    std::vector<Monomial> gens;
    for (const Edge& e : edges) gens.push_back(Monomial::from_edge(vertex_count, e));
    for (Vertex u : squares) gens.push_back(Monomial::variable(vertex_count, u, 2));
    return minimalize(vertex_count, std::move(gens));
  }

  friend bool operator==(const ColonQuadraticIdeal&, const ColonQuadraticIdeal&) = default;
};

/// Endpoints v even-connected to u, as a vertex mask.
inline VertexSet even_connected_from(const Graph& g, Vertex u, const EdgeMultiset& m) {
  const detail::ResidualCodec codec(m.multiplicity());
  const std::size_t n = g.vertex_count();
  std::vector<char> seen(n * codec.states, 0);
  std::vector<std::pair<Vertex, std::size_t>> queue;
  auto step_from = [&](Vertex at, std::size_t code) {
    for (Vertex a : members(g.neighbors(at))) {
      for (std::size_t t = 0; t < m.distinct().size(); ++t) {
        const Edge& e = m.distinct()[t];
        if (!e.contains(a) || codec.count(code, t) == 0) continue;
        const Vertex b = e.other(a);
        const std::size_t next = code - codec.place[t];
        if (!seen[b * codec.states + next]) {
          seen[b * codec.states + next] = 1;
          queue.emplace_back(b, next);
        }
      }
    }
  };
  step_from(u, codec.full(m.multiplicity()));
  VertexSet reach = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto [b, code] = queue[head];
    reach |= g.neighbors(b);
    step_from(b, code);
  }
  return reach;
}

/// G' with I(G') = (I(G)^{s+1} : e_1 ... e_s): E(G) plus every even-connected
/// pair, with self-connected vertices recorded as squares.
inline ColonQuadraticIdeal colon_graph(const Graph& g, const EdgeMultiset& m) {
  for (const Edge& e : m.edges())
    if (!g.has_edge(e)) throw InputError("{" + to_string(e) + "} is not an edge of the graph");
  ColonQuadraticIdeal c;
  c.vertex_count = g.vertex_count();
  c.edges = g.edges();
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    const VertexSet reach = even_connected_from(g, u, m);
    if (reach & bit(u)) c.squares.push_back(u);
    for (Vertex v : members(reach & ~all_vertices(u + 1)))
      if (!g.adjacent(u, v)) c.edges.emplace_back(u, v);
  }
  std::sort(c.edges.begin(), c.edges.end());
  return c;
}

inline bool is_colon_squarefree(const Graph& g, const EdgeMultiset& m) {
  return colon_graph(g, m).squarefree();
}

/// Colon computed by monomial arithmetic alone, for comparison with the
/// even-connection route.
inline MonomialIdeal colon_ideal_oracle(const Graph& g, const EdgeMultiset& m) {
  const MonomialIdeal I = edge_ideal(g);
  return colon_by_monomial(power(I, static_cast<unsigned>(m.size() + 1)), m.product(g.vertex_count()));
}

/// DOT drawing: original edges solid, even-connection edges dashed, squared
/// vertices with a doubled outline.
inline std::string to_dot(const Graph& g, const ColonQuadraticIdeal& c) {
  std::ostringstream out;
  out << "graph colon {\n";
  for (Vertex v = 0; v < c.vertex_count; ++v) {
    out << "  " << v;
    if (std::binary_search(c.squares.begin(), c.squares.end(), v)) out << " [peripheries=2]";
    out << ";\n";
  }
  for (const Edge& e : c.edges) {
    out << "  " << e.u << " -- " << e.v;
    if (!g.has_edge(e)) out << " [style=dashed]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace edgereg
