#pragma once

// Monomials and monomial ideals with minimal generating sets: edge ideals,
// powers and colon ideals by a single monomial.

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "edgereg/error.hpp"
#include "edgereg/graph.hpp"

namespace edgereg {

inline constexpr std::size_t kMaxVariables = 64;

/// Monomial in a fixed ambient ring of at most 64 variables with exponents
/// below 256.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : nvars_(static_cast<std::uint8_t>(nvars)) {
    if (nvars > kMaxVariables) throw InputError("at most 64 variables are supported");
  }

  static Monomial variable(std::size_t nvars, std::size_t i, unsigned power = 1) {
    Monomial m(nvars);
    m.set(i, power);
    return m;
  }

  static Monomial from_edge(std::size_t nvars, const Edge& e) {
    Monomial m(nvars);
    m.set(e.u, 1);
    m.set(e.v, 1);
    return m;
  }

  static Monomial from_exponents(std::span<const unsigned> exps) {
    Monomial m(exps.size());
    for (std::size_t i = 0; i < exps.size(); ++i) m.set(i, exps[i]);
    return m;
  }

  std::size_t variable_count() const { return nvars_; }
  unsigned exponent(std::size_t i) const { return exps_[i]; }
  unsigned degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  VertexSet support() const {
    VertexSet s = 0;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (exps_[i]) s |= bit(static_cast<Vertex>(i));
    return s;
  }

  bool is_squarefree() const {
    return std::all_of(exps_.begin(), exps_.begin() + nvars_, [](std::uint8_t e) { return e <= 1; });
  }

  void set(std::size_t i, unsigned power) {
    if (i >= nvars_) throw InputError("variable index " + std::to_string(i) + " out of range");
    if (power > 255) throw OverflowError("exponent exceeds 255");
    degree_ = degree_ - exps_[i] + power;
    exps_[i] = static_cast<std::uint8_t>(power);
  }

  bool divides(const Monomial& other) const {
    for (std::size_t i = 0; i < nvars_; ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r(a.nvars_);
    for (std::size_t i = 0; i < a.nvars_; ++i) {
      const unsigned e = unsigned{a.exps_[i]} + b.exps_[i];
      if (e > 255) throw OverflowError("exponent overflow in monomial product");
      r.exps_[i] = static_cast<std::uint8_t>(e);
    }
    r.degree_ = a.degree_ + b.degree_;
    return r;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a.nvars_);
    for (std::size_t i = 0; i < a.nvars_; ++i) {
      r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
      r.degree_ += r.exps_[i];
    }
    return r;
  }

  friend Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r(a.nvars_);
    for (std::size_t i = 0; i < a.nvars_; ++i) {
      r.exps_[i] = std::min(a.exps_[i], b.exps_[i]);
      r.degree_ += r.exps_[i];
    }
    return r;
  }

  /// a / b; requires b | a.
  friend Monomial quotient(const Monomial& a, const Monomial& b) {
    Monomial r(a.nvars_);
    for (std::size_t i = 0; i < a.nvars_; ++i) {
      if (b.exps_[i] > a.exps_[i]) throw InputError("quotient of non-divisible monomials");
      r.exps_[i] = static_cast<std::uint8_t>(a.exps_[i] - b.exps_[i]);
    }
    r.degree_ = a.degree_ - b.degree_;
    return r;
  }

  /// Lex comparison of exponent vectors, x0 most significant.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.nvars_ <=> b.nvars_; c != 0) return c;
    for (std::size_t i = 0; i < a.nvars_; ++i)
      if (auto c = a.exps_[i] <=> b.exps_[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.nvars_ == b.nvars_ && a.exps_ == b.exps_;
  }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ull ^ nvars_;
    for (std::size_t i = 0; i < nvars_; ++i) h = (h ^ exps_[i]) * 1099511628211ull;
    return static_cast<std::size_t>(h);
  }

  /// "x3^2*x5"; the unit monomial prints as "1".
  std::string to_string() const {
    if (is_one()) return "1";
    std::string out;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (!exps_[i]) continue;
      if (!out.empty()) out += '*';
      out += 'x' + std::to_string(i);
      if (exps_[i] > 1) out += '^' + std::to_string(exps_[i]);
    }
    return out;
  }

 private:
  std::array<std::uint8_t, kMaxVariables> exps_{};
  std::uint8_t nvars_ = 0;
  unsigned degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Inverse of Monomial::to_string.
inline Monomial parse_monomial(std::string_view text, std::size_t nvars) {
  Monomial m(nvars);
  if (text == "1") return m;
  std::size_t i = 0;
  auto fail = [&] { throw InputError("malformed monomial '" + std::string(text) + "'"); };
  while (i < text.size()) {
    if (text[i] != 'x') fail();
    ++i;
    std::size_t j = i;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i) fail();
    const auto var = std::stoul(std::string(text.substr(i, j - i)));
    unsigned power = 1;
    i = j;
    if (i < text.size() && text[i] == '^') {
      ++i;
      j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i) fail();
      power = static_cast<unsigned>(std::stoul(std::string(text.substr(i, j - i))));
      i = j;
    }
    m.set(var, m.exponent(var) + power);
    if (i < text.size()) {
      if (text[i] != '*') fail();
      ++i;
    }
  }
  return m;
}

/// Monomial ideal held as its minimal generating set, sorted in descending
/// lex order. The zero ideal has no generators; the unit ideal is the one
/// whose only generator is 1.
class MonomialIdeal {
 public:
  MonomialIdeal() = default;
  explicit MonomialIdeal(std::size_t nvars) : nvars_(nvars) {}

  static MonomialIdeal unit(std::size_t nvars) {
    MonomialIdeal I(nvars);
    I.gens_.emplace_back(nvars);
    return I;
  }

  std::size_t variable_count() const { return nvars_; }
  const std::vector<Monomial>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const { return gens_.size() == 1 && gens_[0].is_one(); }

  bool contains(const Monomial& m) const {
    return std::any_of(gens_.begin(), gens_.end(), [&](const Monomial& g) { return g.divides(m); });
  }

  unsigned max_generator_degree() const {
    unsigned d = 0;
    for (const auto& g : gens_) d = std::max(d, g.degree());
    return d;
  }

  friend bool operator==(const MonomialIdeal& a, const MonomialIdeal& b) {
    return a.nvars_ == b.nvars_ && a.gens_ == b.gens_;
  }

  std::vector<std::string> generator_strings() const {
    std::vector<std::string> out;
    for (const auto& g : gens_) out.push_back(g.to_string());
    return out;
  }

 private:
  friend MonomialIdeal minimalize(std::size_t nvars, std::vector<Monomial> gens);
  std::size_t nvars_ = 0;
  std::vector<Monomial> gens_;
};

/// Drops duplicates and every monomial divisible by another member.
inline MonomialIdeal minimalize(std::size_t nvars, std::vector<Monomial> gens) {
  for (const auto& g : gens) {
    if (g.variable_count() != nvars) throw InputError("generator ambient ring mismatch");
  }
  std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a > b;
  });
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  MonomialIdeal I(nvars);
  std::size_t lower_end = 0;  // kept generators of strictly smaller degree
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i > 0 && gens[i].degree() != gens[i - 1].degree()) lower_end = I.gens_.size();
    bool redundant = false;
    for (std::size_t j = 0; j < lower_end && !redundant; ++j) redundant = I.gens_[j].divides(gens[i]);
    if (!redundant) I.gens_.push_back(gens[i]);
  }
  std::sort(I.gens_.begin(), I.gens_.end(), std::greater<>());
  return I;
}

inline MonomialIdeal minimalize(std::size_t nvars, std::initializer_list<Monomial> gens) {
  return minimalize(nvars, std::vector<Monomial>(gens));
}

/// I(G): one squarefree quadratic generator per edge.
inline MonomialIdeal edge_ideal(const Graph& g) {
  std::vector<Monomial> gens;
  gens.reserve(g.edge_count());
  for (const Edge& e : g.edges()) gens.push_back(Monomial::from_edge(g.vertex_count(), e));
  return minimalize(g.vertex_count(), std::move(gens));
}

inline MonomialIdeal product(const MonomialIdeal& I, const MonomialIdeal& J) {
  if (I.variable_count() != J.variable_count()) throw InputError("ambient ring mismatch in product");
  std::unordered_set<Monomial, MonomialHash> seen;
  seen.reserve(I.size() * J.size());
  for (const auto& a : I.generators())
    for (const auto& b : J.generators()) seen.insert(a * b);
  return minimalize(I.variable_count(), std::vector<Monomial>(seen.begin(), seen.end()));
}

/// Minimal generators of I^s, built as distinct s-fold products of generators.
inline MonomialIdeal power(const MonomialIdeal& I, unsigned s) {
  if (s == 0) throw InputError("power exponent must be positive");
  MonomialIdeal result = I;
  for (unsigned k = 1; k < s; ++k) result = product(result, I);
  return result;
}

/// (I : m), generated by g / gcd(g, m) over the generators g of I.
inline MonomialIdeal colon_by_monomial(const MonomialIdeal& I, const Monomial& m) {
  if (m.variable_count() != I.variable_count()) throw InputError("ambient ring mismatch in colon");
  std::vector<Monomial> gens;
  gens.reserve(I.size());
  for (const auto& g : I.generators()) gens.push_back(quotient(g, gcd(g, m)));
  return minimalize(I.variable_count(), std::move(gens));
}

/// Equality of minimal generating sets; both ideals must share a ring.
inline bool equals(const MonomialIdeal& I, const MonomialIdeal& J) {
  if (I.variable_count() != J.variable_count()) {
    throw InputError("cannot compare ideals in rings with " + std::to_string(I.variable_count()) +
                     " and " + std::to_string(J.variable_count()) + " variables");
  }
  return I.generators() == J.generators();
}

/// Product of the edges e_1 ... e_s as a monomial.
inline Monomial edge_product(std::size_t nvars, std::span<const Edge> edges) {
  Monomial m(nvars);
  for (const Edge& e : edges) m = m * Monomial::from_edge(nvars, e);
  return m;
}

}  // namespace edgereg
