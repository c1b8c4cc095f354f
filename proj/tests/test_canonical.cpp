#include "catch_amalgamated.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "edgereg/canonical.hpp"
#include "edgereg/generators.hpp"

using namespace edgereg;

namespace {

// Minimum adjacency code over all n! labelings.
AdjacencyCode brute_canonical_code(const Graph& g) {
  std::vector<Vertex> p(g.vertex_count());
  std::iota(p.begin(), p.end(), Vertex{0});
  std::optional<AdjacencyCode> best;
  do {
    AdjacencyCode c = adjacency_code(g, p);
    if (!best || c < *best) best = c;
  } while (std::next_permutation(p.begin(), p.end()));
  return *best;
}

}  // namespace

TEST_CASE("canonical codes separate exactly the brute-force classes", "[canonical]") {
  std::mt19937_64 rng(23);
  std::vector<Graph> pool;
  for (int t = 0; t < 160; ++t) {
    const std::size_t n = 4 + t % 4;
    const Graph g = random_graph(n, 0.2 + 0.1 * (t % 6), rng());
    pool.push_back(g);
    std::vector<Vertex> p(n);
    std::iota(p.begin(), p.end(), Vertex{0});
    std::shuffle(p.begin(), p.end(), rng);
    pool.push_back(g.relabeled(p));
  }
  std::vector<AdjacencyCode> mine, brute;
  for (const Graph& g : pool) {
    const CanonicalForm cf = canonical_form(g);
    CHECK(adjacency_code(g, cf.position) == cf.code);
    CHECK(cf.graph.edge_count() == g.edge_count());
    mine.push_back(cf.code);
    brute.push_back(brute_canonical_code(g));
  }
  for (std::size_t a = 0; a < pool.size(); ++a)
    for (std::size_t b = a + 1; b < pool.size(); ++b)
      if (pool[a].vertex_count() == pool[b].vertex_count()) CHECK((mine[a] == mine[b]) == (brute[a] == brute[b]));
}

TEST_CASE("canonical code is a complete invariant", "[canonical]") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 300; ++t) {
    const Graph g = random_graph(2 + rng() % 11, 0.4, rng());
    std::vector<Vertex> p(g.vertex_count());
    std::iota(p.begin(), p.end(), Vertex{0});
    std::shuffle(p.begin(), p.end(), rng);
    CHECK(isomorphic(g, g.relabeled(p)));
  }
  CHECK_FALSE(isomorphic(path_graph(4), Graph(4, {{0, 1}, {0, 2}, {0, 3}})));
  CHECK(isomorphic(cycle_graph(4), complete_bipartite_graph(2, 2)));
  CHECK_FALSE(isomorphic(cycle_graph(6), disjoint_union(cycle_graph(3), cycle_graph(3))));
}

TEST_CASE("regular graphs canonicalize consistently", "[canonical]") {
  const Graph pet = petersen_graph();
  std::mt19937_64 rng(31);
  const AdjacencyCode code = canonical_code(pet);
  for (int t = 0; t < 20; ++t) {
    std::vector<Vertex> p(10);
    std::iota(p.begin(), p.end(), Vertex{0});
    std::shuffle(p.begin(), p.end(), rng);
    CHECK(canonical_code(pet.relabeled(p)) == code);
  }
}
