#include "catch_amalgamated.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "edgereg/generators.hpp"
#include "edgereg/graph.hpp"

using namespace edgereg;

namespace {

// Shortest odd simple cycle by exhaustive DFS over all simple cycles.
unsigned brute_odd_girth(const Graph& g) {
  const std::size_t n = g.vertex_count();
  unsigned best = 0;
  std::vector<Vertex> path;
  std::function<void(Vertex, VertexSet)> dfs = [&](Vertex at, VertexSet used) {
    for (Vertex w = 0; w < n; ++w) {
      if (!g.adjacent(at, w)) continue;
      if (w == path.front() && path.size() >= 3 && path.size() % 2 == 1) {
        if (best == 0 || path.size() < best) best = static_cast<unsigned>(path.size());
      }
      if (w > path.front() && !(used & bit(w))) {
        path.push_back(w);
        dfs(w, used | bit(w));
        path.pop_back();
      }
    }
  };
  for (Vertex r = 0; r < n; ++r) {
    path = {r};
    dfs(r, bit(r));
  }
  return best;
}

// Largest induced matching by trying every edge subset.
std::size_t brute_nu(const Graph& g) {
  const auto& e = g.edges();
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << e.size()); ++mask) {
    VertexSet covered = 0;
    bool ok = true;
    std::vector<Edge> chosen;
    for (std::size_t i = 0; i < e.size() && ok; ++i) {
      if (!(mask & (1u << i))) continue;
      if (covered & e[i].mask()) ok = false;
      covered |= e[i].mask();
      chosen.push_back(e[i]);
    }
    if (!ok) continue;
    std::size_t inside = 0;
    for (const Edge& x : e)
      if ((covered & x.mask()) == x.mask()) ++inside;
    if (inside == chosen.size()) best = std::max(best, chosen.size());
  }
  return best;
}

// Maximal independent sets by checking all 2^n subsets.
std::vector<VertexSet> brute_mis(const Graph& g) {
  const std::size_t n = g.vertex_count();
  auto independent = [&](VertexSet s) {
    for (const Edge& e : g.edges())
      if ((s & e.mask()) == e.mask()) return false;
    return true;
  };
  std::vector<VertexSet> out;
  for (VertexSet s = 0; s < (VertexSet{1} << n); ++s) {
    if (!independent(s)) continue;
    bool maximal = true;
    for (Vertex v = 0; v < n && maximal; ++v)
      if (!(s & bit(v)) && independent(s | bit(v))) maximal = false;
    if (maximal) out.push_back(s);
  }
  return out;
}

Graph shuffled(const Graph& g, std::mt19937_64& rng) {
  std::vector<Vertex> p(g.vertex_count());
  std::iota(p.begin(), p.end(), Vertex{0});
  std::shuffle(p.begin(), p.end(), rng);
  return g.relabeled(p);
}

}  // namespace

TEST_CASE("edge-list parsing", "[graph]") {
  const Graph g = from_edge_list("0 1\n1 2");
  CHECK(g.vertex_count() == 3);
  CHECK(g.edges() == std::vector<Edge>{Edge(0, 1), Edge(1, 2)});

  const Graph empty = from_edge_list("");
  CHECK(empty.vertex_count() == 0);
  CHECK(empty.edge_count() == 0);

  CHECK_THROWS_AS(from_edge_list("0 0"), ValidationError);
  CHECK_THROWS_AS(from_edge_list("0 1\n1 0"), ValidationError);
  CHECK_THROWS_AS(from_edge_list("0 1\n1 x"), ParseError);
  try {
    from_edge_list("# header\n0 1\n1 2 3\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  const Graph padded = from_edge_list("n 5\n# comment\n0 1\n");
  CHECK(padded.vertex_count() == 5);
  CHECK(from_edge_list(to_edge_list(padded)) == padded);
  CHECK_THROWS_AS(from_edge_list("n 2\n0 3\n"), ValidationError);
}

TEST_CASE("odd-girth", "[graph]") {
  CHECK(odd_girth(cycle_graph(5)) == OddGirth::finite(5));
  CHECK(odd_girth(cycle_graph(4)).is_infinite());
  CHECK(brute_odd_girth(petersen_graph()) == 5);
  CHECK(odd_girth(petersen_graph()) == OddGirth::finite(5));
  CHECK(OddGirth::infinite() > OddGirth::finite(99));
  CHECK(OddGirth::infinite().at_least(1'000'001));
  CHECK_THROWS_AS(OddGirth::finite(4), ValidationError);
  CHECK_THROWS_AS(OddGirth::finite(1), ValidationError);

  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    const Graph g = random_graph(3 + rng() % 7, 0.35, rng());
    const unsigned b = brute_odd_girth(g);
    const OddGirth og = odd_girth(g);
    if (b == 0) CHECK(og.is_infinite());
    else CHECK(og == OddGirth::finite(b));
    CHECK(odd_girth(shuffled(g, rng)) == og);
  }
}

TEST_CASE("induced matching number", "[graph]") {
  CHECK(induced_matching_number(path_graph(4)) == 1);
  CHECK(induced_matching_number(Graph(4, {{0, 1}, {2, 3}})) == 2);
  CHECK(brute_nu(cycle_graph(7)) == 2);
  CHECK(induced_matching_number(cycle_graph(7)) == 2);
  CHECK(induced_matching_number(Graph(5)) == 0);
  CHECK(is_induced_matching(cycle_graph(7), maximum_induced_matching(cycle_graph(7))));

  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const Graph g = random_graph(2 + rng() % 7, 0.4, rng());
    if (g.edge_count() > 16) continue;
    CHECK(induced_matching_number(g) == brute_nu(g));
    const Graph h = random_graph(2 + rng() % 5, 0.5, rng());
    CHECK(induced_matching_number(disjoint_union(g, h)) == induced_matching_number(g) + induced_matching_number(h));
  }
}

TEST_CASE("maximal independent sets", "[graph]") {
  CHECK(maximal_independent_sets(cycle_graph(4)) == std::vector<std::vector<Vertex>>{{0, 2}, {1, 3}});
  CHECK(maximal_independent_sets(path_graph(2)) == std::vector<std::vector<Vertex>>{{0}, {1}});
  const auto c6 = maximal_independent_sets(cycle_graph(6));
  CHECK(std::find(c6.begin(), c6.end(), std::vector<Vertex>{0, 2, 4}) != c6.end());
  CHECK(std::find(c6.begin(), c6.end(), std::vector<Vertex>{1, 3, 5}) != c6.end());
  CHECK(std::find(c6.begin(), c6.end(), std::vector<Vertex>{0, 3}) != c6.end());

  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const Graph g = random_graph(1 + rng() % 10, 0.4, rng());
    auto mine = maximal_independent_set_masks(g);
    auto ref = brute_mis(g);
    std::sort(mine.begin(), mine.end());
    std::sort(ref.begin(), ref.end());
    REQUIRE(mine == ref);
    for (VertexSet s : mine) CHECK(is_maximal_independent(g, s));
    const auto sets = maximal_independent_sets(g);
    CHECK(std::is_sorted(sets.begin(), sets.end()));
  }
}

TEST_CASE("unmixed and very well-covered", "[graph]") {
  CHECK(is_very_well_covered(cycle_graph(4)));
  CHECK_FALSE(is_very_well_covered(cycle_graph(7)));
  CHECK_FALSE(is_very_well_covered(cycle_graph(6)));
  CHECK(is_unmixed(cycle_graph(4)));
  CHECK_FALSE(is_unmixed(cycle_graph(6)));
  CHECK(is_unmixed(complete_graph(4)));
  CHECK_FALSE(is_very_well_covered(Graph(2)));
  CHECK_FALSE(is_very_well_covered(Graph(0)));
  CHECK_FALSE(is_very_well_covered(Graph(4, {{0, 1}, {1, 2}, {2, 0}})));  // isolated vertex 3
}

TEST_CASE("very well-covered certificates", "[graph]") {
  const auto c4 = find_vwc_certificate(cycle_graph(4));
  REQUIRE(c4);
  CHECK(check_vwc_certificate(cycle_graph(4), *c4));
  CHECK(c4->pairs == std::vector<Edge>{Edge(0, 1), Edge(2, 3)});

  const auto p4 = find_vwc_certificate(path_graph(4));
  REQUIRE(p4);
  CHECK(p4->pairs == std::vector<Edge>{Edge(0, 1), Edge(2, 3)});
  CHECK_FALSE(check_vwc_certificate(path_graph(4), PerfectMatchingCertificate{{Edge(1, 2)}}));

  CHECK_FALSE(find_vwc_certificate(cycle_graph(3)));
  CHECK_FALSE(find_vwc_certificate(cycle_graph(6)));
}

TEST_CASE("certificate characterizes very well-covered graphs", "[graph][property]") {
  for (std::size_t n = 1; n <= 8; ++n) {
    for (const Graph& g : enumerate_all_graphs(n)) {
      const bool vwc = is_very_well_covered(g);
      const auto cert = find_vwc_certificate(g);
      REQUIRE(vwc == cert.has_value());
      if (cert) CHECK(check_vwc_certificate(g, *cert));
      if (vwc) CHECK(is_unmixed(g));
    }
  }
  std::mt19937_64 rng(17);
  for (int t = 0; t < 400; ++t) {
    Graph g = random_graph(10, 0.25 + 0.1 * (t % 4), rng());
    if (g.has_isolated_vertex()) continue;
    CHECK(is_very_well_covered(g) == find_vwc_certificate(g).has_value());
  }
  for (int t = 0; t < 100; ++t) {
    const Graph g = random_vwc_graph(5, 0.2, rng());
    CHECK(find_vwc_certificate(g).has_value());
  }
}

TEST_CASE("graph construction validates", "[graph]") {
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), ValidationError);
  CHECK_THROWS_AS(Graph(3, {{1, 1}}), ValidationError);
  CHECK_THROWS_AS(Graph(65), ValidationError);
  const Graph g(4, {{2, 3}, {0, 1}});
  CHECK(g.edges().front() == Edge(0, 1));
  CHECK(g.induced(0b1100).edges() == std::vector<Edge>{Edge(0, 1)});
  CHECK(corona(path_graph(2)).edge_count() == 3);
}
