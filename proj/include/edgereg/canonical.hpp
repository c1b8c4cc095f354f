#pragma once

// Canonical labelings of small graphs by individualization and refinement.
// Two graphs on n vertices are isomorphic iff their canonical codes match.

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "edgereg/graph.hpp"

namespace edgereg {

/// Upper-triangle adjacency bits of a labeled graph, pair (0,1) first, packed
/// most-significant-first into 64-bit words.
struct AdjacencyCode {
  std::size_t n = 0;
  std::vector<std::uint64_t> words;

  friend auto operator<=>(const AdjacencyCode&, const AdjacencyCode&) = default;

  std::string hex() const {
    std::ostringstream out;
    out << std::hex << std::setfill('0');
    for (std::uint64_t w : words) out << std::setw(16) << w;
    return out.str();
  }
};

/// Code of `g` after relabeling vertex v to position[v].
inline AdjacencyCode adjacency_code(const Graph& g, const std::vector<Vertex>& position) {
  const std::size_t n = g.vertex_count();
  const std::size_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
  AdjacencyCode code{n, std::vector<std::uint64_t>((bits + 63) / 64, 0)};
  std::vector<Vertex> at(n);
  for (Vertex v = 0; v < n; ++v) at[position[v]] = v;
  std::size_t k = 0;
  for (Vertex i = 0; i < n; ++i) {
    const VertexSet row = g.neighbors(at[i]);
    for (Vertex j = i + 1; j < n; ++j, ++k) {
      if (row & bit(at[j])) code.words[k / 64] |= std::uint64_t{1} << (63 - k % 64);
    }
  }
  return code;
}

struct CanonicalForm {
  std::vector<Vertex> position;  // original vertex -> canonical label
  AdjacencyCode code;
  Graph graph;  // g relabeled by `position`
};

namespace detail {

using Cells = std::vector<std::vector<Vertex>>;

// Splits cells by neighbour counts into every current cell until stable.
// Groups inside a cell are ordered by their count vectors, so the resulting
// ordered partition commutes with isomorphisms.
inline void refine(const Graph& g, Cells& cells) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> cell_of(n);
  for (;;) {
    for (std::size_t c = 0; c < cells.size(); ++c)
      for (Vertex v : cells[c]) cell_of[v] = c;
    Cells next;
    next.reserve(n);
    for (const auto& cell : cells) {
      if (cell.size() == 1) {
        next.push_back(cell);
        continue;
      }
      std::vector<std::pair<std::vector<unsigned>, Vertex>> sig;
      sig.reserve(cell.size());
      for (Vertex v : cell) {
        std::vector<unsigned> counts(cells.size(), 0);
        for (Vertex w : members(g.neighbors(v))) ++counts[cell_of[w]];
        sig.emplace_back(std::move(counts), v);
      }
      std::stable_sort(sig.begin(), sig.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      std::size_t start = 0;
      for (std::size_t i = 1; i <= sig.size(); ++i) {
        if (i == sig.size() || sig[i].first != sig[start].first) {
          std::vector<Vertex> part;
          for (std::size_t t = start; t < i; ++t) part.push_back(sig[t].second);
          std::sort(part.begin(), part.end());
          next.push_back(std::move(part));
          start = i;
        }
      }
    }
    const bool split = next.size() != cells.size();
    cells = std::move(next);
    if (!split) return;
  }
}

inline void canonical_search(const Graph& g, Cells cells, CanonicalForm& best, bool& have_best) {
  refine(g, cells);
  std::size_t target = cells.size();
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (cells[c].size() > 1) {
      target = c;
      break;
    }
  }
  if (target == cells.size()) {
    std::vector<Vertex> position(g.vertex_count());
    for (std::size_t c = 0; c < cells.size(); ++c) position[cells[c][0]] = static_cast<Vertex>(c);
    AdjacencyCode code = adjacency_code(g, position);
    if (!have_best || code < best.code) {
      best.position = std::move(position);
      best.code = std::move(code);
      have_best = true;
    }
    return;
  }
  for (Vertex v : cells[target]) {
    Cells child;
    child.reserve(cells.size() + 1);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c != target) {
        child.push_back(cells[c]);
        continue;
      }
      child.push_back({v});
      std::vector<Vertex> rest;
      for (Vertex w : cells[c])
        if (w != v) rest.push_back(w);
      child.push_back(std::move(rest));
    }
    canonical_search(g, std::move(child), best, have_best);
  }
}

}  // namespace detail

inline CanonicalForm canonical_form(const Graph& g) {
  CanonicalForm best;
  bool have_best = false;
  detail::Cells cells;
  if (g.vertex_count() > 0) {
    cells.emplace_back(g.vertex_count());
    std::iota(cells[0].begin(), cells[0].end(), Vertex{0});
  }
  detail::canonical_search(g, std::move(cells), best, have_best);
  if (!have_best) best.code = AdjacencyCode{0, {}};
  best.graph = g.relabeled(best.position);
  return best;
}

inline AdjacencyCode canonical_code(const Graph& g) { return canonical_form(g).code; }

inline bool isomorphic(const Graph& a, const Graph& b) {
  return a.vertex_count() == b.vertex_count() && a.edge_count() == b.edge_count() &&
         canonical_code(a) == canonical_code(b);
}

}  // namespace edgereg
