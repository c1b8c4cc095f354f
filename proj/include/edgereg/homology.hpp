#pragma once

// Reduced simplicial homology ranks over Q (exact) or over a prime field.
//
// Boundary matrices are reduced column by column, persistence style. Over Q
// the reduction runs over the integers: unit pivots subtract integral
// multiples, other pivots use a fraction-free combination followed by content
// division. 64-bit arithmetic is tried first and the whole reduction is
// repeated with arbitrary precision integers if it would overflow.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "edgereg/error.hpp"
#include "edgereg/graph.hpp"

namespace edgereg {

/// Finite abstract simplicial complex on vertices [0, n), faces as bitmasks.
/// A non-void complex always contains the empty face.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  static SimplicialComplex void_complex(std::size_t n) {
    SimplicialComplex c;
    c.n_ = n;
    return c;
  }

  /// All subsets of the given facets (plus the empty face).
  static SimplicialComplex from_facets(std::size_t n, std::span<const VertexSet> facets) {
    std::vector<VertexSet> faces{0};
    for (VertexSet f : facets) {
      for (VertexSet s = f;; s = (s - 1) & f) {
        faces.push_back(s);
        if (s == 0) break;
      }
    }
    return from_faces(n, std::move(faces));
  }

  /// Faces must be closed under taking subsets; throws otherwise.
  static SimplicialComplex from_faces(std::size_t n, std::vector<VertexSet> faces) {
    SimplicialComplex c;
    c.n_ = n;
    std::sort(faces.begin(), faces.end(), face_order);
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    c.faces_ = std::move(faces);
    if (!c.faces_.empty() && c.faces_.front() != 0) c.faces_.insert(c.faces_.begin(), 0);
    for (VertexSet f : c.faces_) {
      if (f & ~all_vertices(n)) throw ValidationError("face uses a vertex outside the complex");
      for (Vertex v : members(f)) {
        if (!c.contains(f & ~bit(v))) throw ValidationError("face set is not closed under subsets");
      }
    }
    return c;
  }

  /// Trusted constructor: `faces` already downward closed, sorted by
  /// face_order and duplicate free.
  static SimplicialComplex from_sorted_faces_unchecked(std::size_t n, std::vector<VertexSet> faces) {
    SimplicialComplex c;
    c.n_ = n;
    c.faces_ = std::move(faces);
    return c;
  }

  std::size_t vertex_count() const { return n_; }
  const std::vector<VertexSet>& faces() const { return faces_; }
  bool is_void() const { return faces_.empty(); }

  bool contains(VertexSet f) const {
    return std::binary_search(faces_.begin(), faces_.end(), f, face_order);
  }

  int dimension() const {
    return faces_.empty() ? -2 : std::popcount(faces_.back()) - 1;
  }

  /// f-vector indexed by dimension + 1.
  std::vector<std::size_t> f_vector() const {
    std::vector<std::size_t> f;
    for (VertexSet s : faces_) {
      const auto k = static_cast<std::size_t>(std::popcount(s));
      if (f.size() <= k) f.resize(k + 1, 0);
      ++f[k];
    }
    return f;
  }

  static bool face_order(VertexSet a, VertexSet b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  }

 private:
  std::size_t n_ = 0;
  std::vector<VertexSet> faces_;
};

/// Reduced homology ranks; rank(d) for d >= -1.
struct SimplicialComplexHomology {
  std::vector<std::uint64_t> ranks;  // ranks[d + 1]

  std::uint64_t rank(int d) const {
    const auto idx = static_cast<std::size_t>(d + 1);
    return d >= -1 && idx < ranks.size() ? ranks[idx] : 0;
  }
  bool is_acyclic() const {
    return std::all_of(ranks.begin(), ranks.end(), [](std::uint64_t r) { return r == 0; });
  }
  friend bool operator==(const SimplicialComplexHomology&, const SimplicialComplexHomology&) = default;
};

namespace detail {

struct ArithmeticOverflow {};

// Checked 64-bit integer used by the first reduction attempt.
struct CheckedInt {
  static std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow{};
    return r;
  }
  static std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticOverflow{};
    return r;
  }
};

template <class Int>
struct IntegerOps;

template <>
struct IntegerOps<std::int64_t> {
  using T = std::int64_t;
  static T mul(T a, T b) { return CheckedInt::mul(a, b); }
  static T sub(T a, T b) { return CheckedInt::sub(a, b); }
  static T gcd(T a, T b) { return std::gcd(a, b); }
  static bool is_unit(T a) { return a == 1 || a == -1; }
};

template <>
struct IntegerOps<boost::multiprecision::cpp_int> {
  using T = boost::multiprecision::cpp_int;
  static T mul(const T& a, const T& b) { return a * b; }
  static T sub(const T& a, const T& b) { return a - b; }
  static T gcd(const T& a, const T& b) { return boost::multiprecision::gcd(a, b); }
  static bool is_unit(const T& a) { return a == 1 || a == -1; }
};

template <class Int>
using SparseColumn = std::vector<std::pair<std::uint32_t, Int>>;  // sorted by row

// c <- a * c - b * p  (entries with zero result dropped)
template <class Int>
SparseColumn<Int> combine(const Int& a, const SparseColumn<Int>& c, const Int& b,
                          const SparseColumn<Int>& p) {
  using Ops = IntegerOps<Int>;
  SparseColumn<Int> out;
  out.reserve(c.size() + p.size());
  std::size_t i = 0, j = 0;
  while (i < c.size() || j < p.size()) {
    if (j == p.size() || (i < c.size() && c[i].first < p[j].first)) {
      out.emplace_back(c[i].first, Ops::mul(a, c[i].second));
      ++i;
    } else if (i == c.size() || p[j].first < c[i].first) {
      out.emplace_back(p[j].first, Ops::sub(Int(0), Ops::mul(b, p[j].second)));
      ++j;
    } else {
      Int v = Ops::sub(Ops::mul(a, c[i].second), Ops::mul(b, p[j].second));
      if (v != 0) out.emplace_back(c[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

template <class Int>
void divide_content(SparseColumn<Int>& c) {
  using Ops = IntegerOps<Int>;
  Int g(0);
  for (const auto& [r, v] : c) {
    g = Ops::gcd(g, v < 0 ? Int(-v) : v);
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& [r, v] : c) v /= g;
}

// Rank of the matrix whose columns are `cols`; `pivot_rows` receives the row
// index of the lowest entry of each surviving column.
template <class Int>
std::size_t integer_column_rank(std::vector<SparseColumn<Int>> cols, std::size_t rows,
                                std::vector<std::uint32_t>* pivot_rows) {
  constexpr std::uint32_t kNone = ~std::uint32_t{0};
  std::vector<std::uint32_t> owner(rows, kNone);
  std::size_t rank = 0;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    auto& c = cols[j];
    while (!c.empty()) {
      const std::uint32_t low = c.back().first;
      const std::uint32_t k = owner[low];
      if (k == kNone) {
        owner[low] = static_cast<std::uint32_t>(j);
        ++rank;
        if (pivot_rows) pivot_rows->push_back(low);
        break;
      }
      const auto& p = cols[k];
      const Int& a = c.back().second;
      const Int& b = p.back().second;
      if (IntegerOps<Int>::is_unit(b)) {
        c = combine<Int>(Int(1), c, b == 1 ? a : Int(-a), p);
      } else {
        const Int g = IntegerOps<Int>::gcd(a < 0 ? Int(-a) : a, b < 0 ? Int(-b) : b);
        c = combine<Int>(Int(b / g), c, Int(a / g), p);
        divide_content(c);
      }
    }
  }
  return rank;
}

inline std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  for (a %= p; e; e >>= 1, a = mod_mul(a, a, p))
    if (e & 1) r = mod_mul(r, a, p);
  return r;
}

inline std::size_t modular_column_rank(std::vector<SparseColumn<std::int64_t>> signed_cols,
                                       std::size_t rows, std::uint64_t p,
                                       std::vector<std::uint32_t>* pivot_rows) {
  using Col = std::vector<std::pair<std::uint32_t, std::uint64_t>>;
  std::vector<Col> cols(signed_cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (auto [r, v] : signed_cols[j]) {
      const auto m = static_cast<std::uint64_t>(((v % static_cast<std::int64_t>(p)) + static_cast<std::int64_t>(p)) %
                                                static_cast<std::int64_t>(p));
      if (m) cols[j].emplace_back(r, m);
    }
  }
  constexpr std::uint32_t kNone = ~std::uint32_t{0};
  std::vector<std::uint32_t> owner(rows, kNone);
  std::size_t rank = 0;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    auto& c = cols[j];
    while (!c.empty()) {
      const std::uint32_t low = c.back().first;
      const std::uint32_t k = owner[low];
      if (k == kNone) {
        owner[low] = static_cast<std::uint32_t>(j);
        ++rank;
        if (pivot_rows) pivot_rows->push_back(low);
        break;
      }
      const auto& q = cols[k];
      const std::uint64_t factor = mod_mul(c.back().second, mod_pow(q.back().second, p - 2, p), p);
      Col out;
      out.reserve(c.size() + q.size());
      std::size_t i = 0, t = 0;
      while (i < c.size() || t < q.size()) {
        if (t == q.size() || (i < c.size() && c[i].first < q[t].first)) {
          out.push_back(c[i++]);
        } else {
          const std::uint64_t sub = mod_mul(factor, q[t].second, p);
          if (i < c.size() && c[i].first == q[t].first) {
            const std::uint64_t v = (c[i].second + p - sub) % p;
            if (v) out.emplace_back(c[i].first, v);
            ++i;
          } else {
            if (sub) out.emplace_back(q[t].first, (p - sub) % p);
          }
          ++t;
        }
      }
      c = std::move(out);
    }
  }
  return rank;
}

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace detail

/// Rank of an integer matrix given by sparse columns (rows sorted). Exact
/// over Q when characteristic is 0, otherwise over GF(characteristic).
inline std::size_t matrix_rank(const std::vector<detail::SparseColumn<std::int64_t>>& cols,
                               std::size_t rows, unsigned characteristic = 0,
                               std::vector<std::uint32_t>* pivot_rows = nullptr) {
  if (characteristic != 0) {
    if (!detail::is_prime(characteristic))
      throw InputError("field characteristic must be 0 or a prime, got " + std::to_string(characteristic));
    return detail::modular_column_rank(cols, rows, characteristic, pivot_rows);
  }
  const std::size_t pivots_before = pivot_rows ? pivot_rows->size() : 0;
  try {
    return detail::integer_column_rank<std::int64_t>(cols, rows, pivot_rows);
  } catch (const detail::ArithmeticOverflow&) {
    if (pivot_rows) pivot_rows->resize(pivots_before);
    using Big = boost::multiprecision::cpp_int;
    std::vector<detail::SparseColumn<Big>> big(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (auto [r, v] : cols[j]) big[j].emplace_back(r, Big(v));
    return detail::integer_column_rank<Big>(std::move(big), rows, pivot_rows);
  }
}

/// Reduced homology ranks of `c` over Q (characteristic 0) or GF(p).
inline SimplicialComplexHomology reduced_homology(const SimplicialComplex& c,
                                                  unsigned characteristic = 0) {
  SimplicialComplexHomology h;
  if (c.is_void()) return h;

  // Faces are sorted by (size, mask), so each dimension is a contiguous block.
  const auto& faces = c.faces();
  std::vector<std::size_t> start{0};
  for (std::size_t i = 1; i < faces.size(); ++i)
    if (std::popcount(faces[i]) != std::popcount(faces[i - 1])) start.push_back(i);
  start.push_back(faces.size());
  const std::size_t levels = start.size() - 1;  // level L holds faces of size L

  auto index_in_level = [&](std::size_t level, VertexSet f) -> std::uint32_t {
    auto first = faces.begin() + static_cast<std::ptrdiff_t>(start[level]);
    auto last = faces.begin() + static_cast<std::ptrdiff_t>(start[level + 1]);
    auto it = std::lower_bound(first, last, f);
    return static_cast<std::uint32_t>(it - first);
  };

  // rank_of[L] = rank of the boundary map from size-L faces to size-(L-1).
  std::vector<std::size_t> rank_of(levels + 1, 0);
  std::vector<char> cleared;
  for (std::size_t level = levels - 1; level >= 1; --level) {
    const std::size_t count = start[level + 1] - start[level];
    const std::size_t rows = start[level] - start[level - 1];
    std::vector<detail::SparseColumn<std::int64_t>> cols;
    cols.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      if (!cleared.empty() && cleared[i]) continue;
      const VertexSet f = faces[start[level] + i];
      detail::SparseColumn<std::int64_t> col;
      col.reserve(level);
      std::int64_t sign = 1;
      for (Vertex v : members(f)) {
        col.emplace_back(index_in_level(level - 1, f & ~bit(v)), sign);
        sign = -sign;
      }
      std::sort(col.begin(), col.end());
      cols.push_back(std::move(col));
    }
    std::vector<std::uint32_t> pivots;
    rank_of[level] = matrix_rank(cols, rows, characteristic, &pivots);
    // Faces that are pivot rows here bound nothing new one level down.
    cleared.assign(rows, 0);
    for (std::uint32_t r : pivots) cleared[r] = 1;
    if (level == 1) break;
  }

  h.ranks.assign(levels, 0);
  std::int64_t euler_faces = 0, euler_homology = 0;
  for (std::size_t level = 0; level < levels; ++level) {
    const std::size_t count = start[level + 1] - start[level];
    const std::size_t cycles = count - rank_of[level];
    const std::size_t boundaries = level + 1 < levels ? rank_of[level + 1] : 0;
    h.ranks[level] = cycles - boundaries;
    const std::int64_t sign = (level % 2 == 1) ? 1 : -1;  // dimension level-1
    euler_faces += sign * static_cast<std::int64_t>(count);
    euler_homology += sign * static_cast<std::int64_t>(h.ranks[level]);
  }
  if (euler_faces != euler_homology) {
    throw ConsistencyError("Euler characteristic mismatch in homology computation");
  }
  while (!h.ranks.empty() && h.ranks.back() == 0) h.ranks.pop_back();
  return h;
}

inline SimplicialComplexHomology rational_homology(const SimplicialComplex& c) {
  return reduced_homology(c, 0);
}

/// Reduced Euler characteristic from face counts (the empty face counts -1).
inline std::int64_t reduced_euler_characteristic(const SimplicialComplex& c) {
  std::int64_t chi = 0;
  const auto f = c.f_vector();
  for (std::size_t k = 0; k < f.size(); ++k) chi += (k % 2 == 1 ? 1 : -1) * static_cast<std::int64_t>(f[k]);
  return chi;
}

}  // namespace edgereg
