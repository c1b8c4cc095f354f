#pragma once

// Graded Betti numbers and Castelnuovo-Mumford regularity of monomial ideals.
//
// Two engines compute the same table by unrelated routes:
//
//  * lcm: the lcm lattice L_I is built by closure. beta_{i,m}(I) is nonzero
//    only for m in L_I, where it equals the rank of the reduced homology in
//    dimension i-1 of the open interval (1, m). That interval is computed
//    through the upper Koszul complex K^m = { F subset supp(m) : m / x_F in I },
//    the union of the simplices {j : g_j < m_j} over generators g | m. Its
//    nerve is the crosscut complex of the atoms below m, so K^m and the
//    interval have the same homotopy type.
//
//  * hochster: polarize to a squarefree ideal, then
//    beta_{i,sigma} = dim H~_{|sigma|-i-2}(Delta|sigma) for the Stanley-Reisner
//    complex Delta. Subsets sigma that are not unions of generators give
//    cones and are skipped.
//
// Tables are indexed on I itself, so reg(I) = reg(R/I) + 1.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "edgereg/error.hpp"
#include "edgereg/homology.hpp"
#include "edgereg/monomial.hpp"

namespace edgereg {

/// (homological degree i, internal degree j) -> rank; zero entries absent.
class BettiTable {
 public:
  void add(int i, int j, std::uint64_t rank) {
    if (rank == 0) return;
    entries_[{i, j}] += rank;
  }

  std::uint64_t at(int i, int j) const {
    auto it = entries_.find({i, j});
    return it == entries_.end() ? 0 : it->second;
  }

  const std::map<std::pair<int, int>, std::uint64_t>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  /// max{ j - i : beta_{i,j} != 0 }.
  int regularity() const {
    if (entries_.empty()) throw InputError("regularity of an empty Betti table");
    int reg = entries_.begin()->first.second - entries_.begin()->first.first;
    for (const auto& [ij, r] : entries_) reg = std::max(reg, ij.second - ij.first);
    return reg;
  }

  int projective_dimension() const {
    int pd = 0;
    for (const auto& [ij, r] : entries_) pd = std::max(pd, ij.first);
    return pd;
  }

  friend bool operator==(const BettiTable&, const BettiTable&) = default;

  /// Macaulay2-style layout: columns are i, rows are j - i.
  std::string to_text() const {
    if (entries_.empty()) return "(zero table)\n";
    int max_i = 0, min_r = std::numeric_limits<int>::max(), max_r = std::numeric_limits<int>::min();
    for (const auto& [ij, r] : entries_) {
      max_i = std::max(max_i, ij.first);
      min_r = std::min(min_r, ij.second - ij.first);
      max_r = std::max(max_r, ij.second - ij.first);
    }
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{""};
    for (int i = 0; i <= max_i; ++i) header.push_back(std::to_string(i));
    rows.push_back(header);
    std::vector<std::string> total{"total:"};
    for (int i = 0; i <= max_i; ++i) {
      std::uint64_t sum = 0;
      for (const auto& [ij, r] : entries_)
        if (ij.first == i) sum += r;
      total.push_back(std::to_string(sum));
    }
    rows.push_back(total);
    for (int r = min_r; r <= max_r; ++r) {
      std::vector<std::string> row{std::to_string(r) + ":"};
      for (int i = 0; i <= max_i; ++i) {
        const auto v = at(i, i + r);
        row.push_back(v ? std::to_string(v) : ".");
      }
      rows.push_back(row);
    }
    std::vector<std::size_t> width(static_cast<std::size_t>(max_i) + 2, 0);
    for (const auto& row : rows)
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    std::ostringstream out;
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out << ' ';
        out << std::string(width[c] - row[c].size(), ' ') << row[c];
      }
      out << '\n';
    }
    return out.str();
  }

 private:
  std::map<std::pair<int, int>, std::uint64_t> entries_;
};

struct ResolutionOptions {
  std::size_t lcm_generator_cap = 4096;
  std::size_t lcm_element_cap = 2'000'000;
  std::size_t hochster_variable_cap = 16;
  std::size_t hochster_element_cap = 1'000'000;
  unsigned characteristic = 0;  // 0 = rationals, else a prime
};

enum class Engine { automatic, lcm, hochster, both };

inline std::string to_string(Engine e) {
  switch (e) {
    case Engine::automatic: return "auto";
    case Engine::lcm: return "lcm";
    case Engine::hochster: return "hochster";
    case Engine::both: return "both";
  }
  return "?";
}

inline void require_resolvable(const MonomialIdeal& I) {
  if (I.is_zero()) throw InputError("the zero ideal has no Betti table here");
  if (I.is_unit()) throw InputError("the unit ideal is rejected by the regularity computation");
}

// ---------------------------------------------------------------------------
// lcm lattice
// ---------------------------------------------------------------------------

/// Elements are the lcms of nonempty subsets of the minimal generators,
/// ordered by divisibility; the formal bottom (the empty lcm) is implicit.
class LcmLattice {
 public:
  static LcmLattice build(const MonomialIdeal& I, std::size_t element_cap) {
    LcmLattice L;
    L.atoms_ = I.generators();
    std::unordered_set<Monomial, MonomialHash> seen(L.atoms_.begin(), L.atoms_.end());
    std::vector<Monomial> frontier = L.atoms_;
    std::vector<Monomial> all = L.atoms_;
    while (!frontier.empty()) {
      std::vector<Monomial> next;
      for (const Monomial& x : frontier) {
        for (const Monomial& g : L.atoms_) {
          if (g.divides(x)) continue;
          Monomial y = lcm(x, g);
          if (seen.insert(y).second) {
            if (seen.size() > element_cap) {
              throw CapacityError("lcm lattice exceeds " + std::to_string(element_cap) +
                                  " elements; raise the cap or use the hochster engine");
            }
            next.push_back(y);
            all.push_back(y);
          }
        }
      }
      frontier = std::move(next);
    }
    std::sort(all.begin(), all.end(), [](const Monomial& a, const Monomial& b) {
      return a.degree() != b.degree() ? a.degree() < b.degree() : a > b;
    });
    L.elements_ = std::move(all);
    return L;
  }

  const std::vector<Monomial>& elements() const { return elements_; }
  const std::vector<Monomial>& atoms() const { return atoms_; }
  std::size_t size() const { return elements_.size(); }

  bool contains(const Monomial& m) const {
    return std::find(elements_.begin(), elements_.end(), m) != elements_.end();
  }

  /// Elements strictly below m (excluding the formal bottom).
  std::vector<Monomial> open_interval_below(const Monomial& m) const {
    std::vector<Monomial> out;
    for (const auto& x : elements_)
      if (x != m && x.divides(m)) out.push_back(x);
    return out;
  }

 private:
  std::vector<Monomial> atoms_;
  std::vector<Monomial> elements_;
};

/// Order complex of the open interval (1, m) of the lattice: faces are chains.
/// Only for small intervals (at most 64 elements).
inline SimplicialComplex interval_order_complex(const LcmLattice& L, const Monomial& m) {
  const auto below = L.open_interval_below(m);
  if (below.size() > 64) throw CapacityError("interval has more than 64 elements");
  const std::size_t k = below.size();
  std::vector<VertexSet> up(k, 0);  // up[a] = elements strictly above a in the interval
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      if (a != b && below[a].divides(below[b])) up[a] |= bit(static_cast<Vertex>(b));
  std::vector<VertexSet> faces{0};
  // Chains are extended only upward, so each is generated once.
  std::vector<std::pair<VertexSet, VertexSet>> stack;
  for (std::size_t a = 0; a < k; ++a) stack.emplace_back(bit(static_cast<Vertex>(a)), up[a]);
  while (!stack.empty()) {
    auto [chain, ext] = stack.back();
    stack.pop_back();
    faces.push_back(chain);
    for (Vertex b : members(ext)) stack.emplace_back(chain | bit(b), ext & up[b]);
  }
  return SimplicialComplex::from_faces(k, std::move(faces));
}

namespace detail {

// Downward closure of `facets` inside 2^d, returned in face order.
inline std::vector<VertexSet> dense_downward_closure(std::size_t d, const std::vector<VertexSet>& facets) {
  std::vector<char> mark(std::size_t{1} << d, 0);
  for (VertexSet f : facets) mark[f] = 1;
  for (std::size_t mask = mark.size(); mask-- > 0;) {
    if (!mark[mask]) continue;
    for (VertexSet rest = mask; rest; rest &= rest - 1) mark[mask & ~(rest & -rest)] = 1;
  }
  std::vector<VertexSet> faces;
  for (std::size_t mask = 0; mask < mark.size(); ++mask)
    if (mark[mask]) faces.push_back(mask);
  std::sort(faces.begin(), faces.end(), SimplicialComplex::face_order);
  return faces;
}

inline std::vector<VertexSet> maximal_sets(std::vector<VertexSet> sets) {
  std::sort(sets.begin(), sets.end(), [](VertexSet a, VertexSet b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa > pb : a < b;
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<VertexSet> out;
  for (VertexSet s : sets) {
    bool covered = false;
    for (VertexSet t : out)
      if ((s & t) == s) {
        covered = true;
        break;
      }
    if (!covered) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct ComplexKey {
  std::size_t d;
  std::vector<VertexSet> sets;
  friend bool operator<(const ComplexKey& a, const ComplexKey& b) {
    return a.d != b.d ? a.d < b.d : a.sets < b.sets;
  }
};

}  // namespace detail

/// Facets of the upper Koszul complex K^m in the local coordinates of
/// supp(m) (bit t = t-th variable of the support). Empty when m is outside
/// L_I, since K^m is then a cone.
inline std::vector<VertexSet> koszul_facets(const std::vector<Monomial>& gens, const Monomial& m) {
  std::vector<std::size_t> support;
  for (std::size_t j = 0; j < m.variable_count(); ++j)
    if (m.exponent(j)) support.push_back(j);
  std::vector<VertexSet> sets;
  for (const auto& g : gens) {
    if (!g.divides(m)) continue;
    VertexSet s = 0;
    for (std::size_t t = 0; t < support.size(); ++t)
      if (g.exponent(support[t]) < m.exponent(support[t])) s |= bit(static_cast<Vertex>(t));
    sets.push_back(s);
  }
  return detail::maximal_sets(std::move(sets));
}

inline SimplicialComplex upper_koszul_complex(const MonomialIdeal& I, const Monomial& m) {
  const auto facets = koszul_facets(I.generators(), m);
  const std::size_t d = static_cast<std::size_t>(std::popcount(m.support()));
  if (facets.empty()) return SimplicialComplex::void_complex(d);
  if (d > 24) throw CapacityError("upper Koszul complex on more than 24 vertices");
  return SimplicialComplex::from_sorted_faces_unchecked(d, detail::dense_downward_closure(d, facets));
}

inline bool lcm_within_caps(const MonomialIdeal& I, const ResolutionOptions& opt) {
  return I.size() <= opt.lcm_generator_cap;
}

/// Multigraded Betti numbers beta_{i,m} for every lattice element m with a
/// nonzero entry.
inline std::vector<std::pair<Monomial, SimplicialComplexHomology>> multigraded_betti_lcm(
    const MonomialIdeal& I, const ResolutionOptions& opt = {}) {
  require_resolvable(I);
  if (!lcm_within_caps(I, opt)) {
    throw CapacityError("ideal has " + std::to_string(I.size()) + " generators (lcm cap " +
                        std::to_string(opt.lcm_generator_cap) + "); use the hochster engine");
  }
  const LcmLattice L = LcmLattice::build(I, opt.lcm_element_cap);
  std::map<detail::ComplexKey, SimplicialComplexHomology> memo;
  std::vector<std::pair<Monomial, SimplicialComplexHomology>> out;
  for (const Monomial& m : L.elements()) {
    const std::size_t d = static_cast<std::size_t>(std::popcount(m.support()));
    auto facets = koszul_facets(I.generators(), m);
    // A facet on the whole support makes K^m a full simplex.
    if (facets.size() == 1 && facets[0] == all_vertices(d) && d > 0) continue;
    detail::ComplexKey key{d, facets};
    auto it = memo.find(key);
    if (it == memo.end()) {
      if (d > 24) throw CapacityError("upper Koszul complex on more than 24 vertices");
      auto faces = detail::dense_downward_closure(d, facets);
      auto h = reduced_homology(SimplicialComplex::from_sorted_faces_unchecked(d, std::move(faces)),
                                opt.characteristic);
      it = memo.emplace(std::move(key), std::move(h)).first;
    }
    if (!it->second.is_acyclic()) out.emplace_back(m, it->second);
  }
  return out;
}

inline BettiTable betti_table_lcm(const MonomialIdeal& I, const ResolutionOptions& opt = {}) {
  BettiTable table;
  for (const auto& [m, h] : multigraded_betti_lcm(I, opt)) {
    for (std::size_t k = 0; k < h.ranks.size(); ++k) {
      // ranks[k] is dimension k-1, which carries beta_{k, deg m}.
      table.add(static_cast<int>(k), static_cast<int>(m.degree()), h.ranks[k]);
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// Polarization + Hochster
// ---------------------------------------------------------------------------

/// Squarefree ideal with x_j^a replaced by x_{j,0} ... x_{j,a-1}; variable
/// (j, t) becomes offset[j] + t.
struct Polarization {
  std::size_t variable_count = 0;
  std::vector<std::size_t> offset;
  std::vector<unsigned> copies;
  std::vector<VertexSet> generators;  // supports of the polarized generators

  MonomialIdeal ideal() const {
    std::vector<Monomial> gens;
    for (VertexSet s : generators) {
      Monomial m(variable_count);
      for (Vertex v : members(s)) m.set(v, 1);
      gens.push_back(m);
    }
    return minimalize(variable_count, std::move(gens));
  }
};

inline Polarization polarize(const MonomialIdeal& I) {
  Polarization p;
  const std::size_t n = I.variable_count();
  p.copies.assign(n, 0);
  for (const auto& g : I.generators())
    for (std::size_t j = 0; j < n; ++j) p.copies[j] = std::max(p.copies[j], g.exponent(j));
  p.offset.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    p.offset[j] = p.variable_count;
    p.variable_count += p.copies[j];
  }
  if (p.variable_count > 64) throw CapacityError("polarization needs more than 64 variables");
  for (const auto& g : I.generators()) {
    VertexSet s = 0;
    for (std::size_t j = 0; j < n; ++j)
      for (unsigned t = 0; t < g.exponent(j); ++t) s |= bit(static_cast<Vertex>(p.offset[j] + t));
    p.generators.push_back(s);
  }
  return p;
}

inline std::size_t polarized_variable_count(const MonomialIdeal& I) {
  std::size_t total = 0;
  for (std::size_t j = 0; j < I.variable_count(); ++j) {
    unsigned a = 0;
    for (const auto& g : I.generators()) a = std::max(a, g.exponent(j));
    total += a;
  }
  return total;
}

inline bool hochster_within_caps(const MonomialIdeal& I, const ResolutionOptions& opt) {
  return polarized_variable_count(I) <= opt.hochster_variable_cap;
}

/// Faces of the independence complex of the hypergraph `gens` on [0, d).
inline std::vector<VertexSet> independence_complex_faces(std::size_t d, const std::vector<VertexSet>& gens) {
  std::vector<std::vector<VertexSet>> through(d);
  for (VertexSet g : gens)
    for (Vertex v : members(g)) through[v].push_back(g);
  std::vector<VertexSet> faces{0};
  std::vector<std::pair<VertexSet, Vertex>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [face, from] = stack.back();
    stack.pop_back();
    for (Vertex v = from; v < d; ++v) {
      const VertexSet next = face | bit(v);
      bool blocked = false;
      for (VertexSet g : through[v])
        if ((g & next) == g) {
          blocked = true;
          break;
        }
      if (blocked) continue;
      faces.push_back(next);
      stack.emplace_back(next, v + 1);
    }
  }
  std::sort(faces.begin(), faces.end(), SimplicialComplex::face_order);
  return faces;
}

/// Restriction Delta|sigma of the Stanley-Reisner complex of a squarefree
/// ideal with generator supports `gens`, in local coordinates of sigma.
inline SimplicialComplex stanley_reisner_restriction(const std::vector<VertexSet>& gens, VertexSet sigma) {
  const auto verts = members(sigma);
  std::vector<VertexSet> local;
  for (VertexSet g : gens) {
    if ((g & sigma) != g) continue;
    VertexSet s = 0;
    for (std::size_t t = 0; t < verts.size(); ++t)
      if (g & bit(verts[t])) s |= bit(static_cast<Vertex>(t));
    local.push_back(s);
  }
  return SimplicialComplex::from_sorted_faces_unchecked(verts.size(),
                                                        independence_complex_faces(verts.size(), local));
}

inline BettiTable betti_table_hochster(const MonomialIdeal& I, const ResolutionOptions& opt = {}) {
  require_resolvable(I);
  const std::size_t nvars = polarized_variable_count(I);
  if (nvars > opt.hochster_variable_cap) {
    throw CapacityError("polarization has " + std::to_string(nvars) + " variables (hochster cap " +
                        std::to_string(opt.hochster_variable_cap) + ")");
  }
  const Polarization pol = polarize(I);

  // Unions of generator supports; every other sigma leaves some vertex
  // outside all minimal non-faces of Delta|sigma, which is then a cone.
  std::unordered_set<VertexSet> seen(pol.generators.begin(), pol.generators.end());
  std::vector<VertexSet> frontier(seen.begin(), seen.end());
  std::vector<VertexSet> unions(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<VertexSet> next;
    for (VertexSet x : frontier)
      for (VertexSet g : pol.generators) {
        const VertexSet y = x | g;
        if (y != x && seen.insert(y).second) {
          if (seen.size() > opt.hochster_element_cap)
            throw CapacityError("too many generator unions for the hochster engine");
          next.push_back(y);
          unions.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  std::sort(unions.begin(), unions.end());

  BettiTable table;
  std::map<detail::ComplexKey, SimplicialComplexHomology> memo;
  for (VertexSet sigma : unions) {
    const auto verts = members(sigma);
    const std::size_t d = verts.size();
    std::vector<VertexSet> local;
    for (VertexSet g : pol.generators) {
      if ((g & sigma) != g) continue;
      VertexSet s = 0;
      for (std::size_t t = 0; t < d; ++t)
        if (g & bit(verts[t])) s |= bit(static_cast<Vertex>(t));
      local.push_back(s);
    }
    std::sort(local.begin(), local.end());
    detail::ComplexKey key{d, local};
    auto it = memo.find(key);
    if (it == memo.end()) {
      auto complex = SimplicialComplex::from_sorted_faces_unchecked(d, independence_complex_faces(d, local));
      it = memo.emplace(std::move(key), reduced_homology(complex, opt.characteristic)).first;
    }
    const auto& h = it->second;
    for (std::size_t k = 0; k < h.ranks.size(); ++k) {
      // dimension k-1 = |sigma| - i - 2
      const int i = static_cast<int>(d) - static_cast<int>(k) - 1;
      if (h.ranks[k] && i >= 0) table.add(i, static_cast<int>(d), h.ranks[k]);
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// Regularity
// ---------------------------------------------------------------------------

struct RegularityResult {
  int regularity = 0;
  BettiTable table;
  bool lcm_ran = false;
  bool hochster_ran = false;
};

/// Regularity with engine selection. `automatic` prefers the lcm engine and
/// falls back to hochster; `both` requires both and checks agreement.
inline RegularityResult compute_regularity(const MonomialIdeal& I, const ResolutionOptions& opt = {},
                                           Engine engine = Engine::automatic) {
  require_resolvable(I);
  RegularityResult r;
  switch (engine) {
    case Engine::lcm:
      r.table = betti_table_lcm(I, opt);
      r.lcm_ran = true;
      break;
    case Engine::hochster:
      r.table = betti_table_hochster(I, opt);
      r.hochster_ran = true;
      break;
    case Engine::automatic:
      if (lcm_within_caps(I, opt)) {
        r.table = betti_table_lcm(I, opt);
        r.lcm_ran = true;
      } else if (hochster_within_caps(I, opt)) {
        r.table = betti_table_hochster(I, opt);
        r.hochster_ran = true;
      } else {
        throw CapacityError("ideal exceeds the caps of both engines");
      }
      break;
    case Engine::both: {
      r.table = betti_table_lcm(I, opt);
      const BettiTable other = betti_table_hochster(I, opt);
      r.lcm_ran = r.hochster_ran = true;
      if (!(r.table == other)) throw ConsistencyError("lcm and hochster Betti tables disagree");
      break;
    }
  }
  r.regularity = r.table.regularity();
  return r;
}

inline int regularity(const MonomialIdeal& I, const ResolutionOptions& opt = {},
                      Engine engine = Engine::automatic) {
  return compute_regularity(I, opt, engine).regularity;
}

}  // namespace edgereg
