#include "catch_amalgamated.hpp"

#include <random>

#include "edgereg/homology.hpp"

using namespace edgereg;

namespace {

SimplicialComplex facets(std::size_t n, std::vector<VertexSet> f) {
  return SimplicialComplex::from_facets(n, f);
}

}  // namespace

TEST_CASE("small complexes", "[homology]") {
  const auto hollow = facets(3, {0b011, 0b110, 0b101});
  const auto h = rational_homology(hollow);
  CHECK(h.rank(1) == 1);
  CHECK(h.rank(0) == 0);
  CHECK(h.rank(-1) == 0);

  CHECK(rational_homology(facets(3, {0b111})).is_acyclic());

  const auto square = facets(4, {0b0011, 0b0110, 0b1100, 0b1001});
  CHECK(rational_homology(square).rank(1) == 1);
  CHECK(rational_homology(square).rank(0) == 0);

  // empty complex {}: only the empty face
  const auto empty = SimplicialComplex::from_faces(2, {0});
  CHECK(rational_homology(empty).rank(-1) == 1);
  CHECK(rational_homology(SimplicialComplex::void_complex(2)).is_acyclic());

  // two points
  CHECK(rational_homology(facets(2, {0b01, 0b10})).rank(0) == 1);

  // boundary of the tetrahedron is a 2-sphere
  const auto sphere = facets(4, {0b0111, 0b1011, 0b1101, 0b1110});
  CHECK(rational_homology(sphere).rank(2) == 1);
  CHECK(rational_homology(sphere).rank(1) == 0);
}

TEST_CASE("faces must be closed under subsets", "[homology]") {
  CHECK_THROWS_AS(SimplicialComplex::from_faces(3, {0, 0b011}), ValidationError);
  CHECK_NOTHROW(SimplicialComplex::from_faces(3, {0, 0b001, 0b010, 0b011}));
}

TEST_CASE("torsion does not leak into rational ranks", "[homology]") {
  // six-vertex real projective plane: H~_1 = Z/2, so rationally acyclic,
  // while over GF(2) both H~_1 and H~_2 have rank 1
  const std::vector<VertexSet> rp2{0b000111, 0b001011, 0b010101, 0b101001, 0b110001,
                                   0b100110, 0b011010, 0b110010, 0b011100, 0b101100};
  const auto c = facets(6, rp2);
  CHECK(rational_homology(c).is_acyclic());
  const auto h2 = reduced_homology(c, 2);
  CHECK(h2.rank(1) == 1);
  CHECK(h2.rank(2) == 1);
  CHECK(reduced_homology(c, 3).is_acyclic());
}

TEST_CASE("Euler characteristic matches homology", "[homology][property]") {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + rng() % 7;
    std::vector<VertexSet> f;
    for (int k = 0; k < 1 + static_cast<int>(rng() % 6); ++k) f.push_back(rng() & all_vertices(n));
    const auto c = facets(n, f);
    const auto h = rational_homology(c);
    std::int64_t alt = 0;
    for (int d = -1; d <= c.dimension(); ++d) alt += (d % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(h.rank(d));
    CHECK(alt == reduced_euler_characteristic(c));
    CHECK(reduced_homology(c, 101) == h);  // no torsion at large primes on these sizes
  }
}

TEST_CASE("matrix rank over Q and GF(p)", "[homology]") {
  using Col = detail::SparseColumn<std::int64_t>;
  // [[2, 0], [0, 2]]: rank 2 over Q, rank 0 over GF(2)
  std::vector<Col> cols{Col{{0, 2}}, Col{{1, 2}}};
  CHECK(matrix_rank(cols, 2, 0) == 2);
  CHECK(matrix_rank(cols, 2, 2) == 0);
  CHECK(matrix_rank(cols, 2, 3) == 2);
  std::vector<Col> dependent{Col{{0, 1}, {1, 1}}, Col{{0, 2}, {1, 2}}, Col{{0, 1}, {1, -1}}};
  CHECK(matrix_rank(dependent, 2, 0) == 2);
}
