#pragma once

// Checkable predicates over graph instances and sweeps that aggregate them.
// Hypothesis-gated checks report "skipped" with the unmet hypothesis instead
// of a vacuous pass.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "edgereg/even_connection.hpp"
#include "edgereg/family.hpp"
#include "edgereg/graph.hpp"
#include "edgereg/monomial.hpp"
#include "edgereg/resolution.hpp"
#include "edgereg/serialize.hpp"

namespace edgereg {

enum class Verdict { pass, fail, skipped, observation };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::skipped: return "skipped";
    case Verdict::observation: return "observation";
  }
  return "?";
}

struct CheckResult {
  std::string check;
  std::string instance;
  std::string label;
  std::string params;  // "s=2;k=3;m=0-1,2-3;i=1"
  Verdict verdict = Verdict::skipped;
  std::string reason;
  Json values = Json::object();
  std::optional<double> elapsed_ms;
};

// ---------------------------------------------------------------------------
// Regularity with caching and engine cross-validation
// ---------------------------------------------------------------------------

struct EngineStats {
  std::size_t ideals = 0;
  std::size_t cross_validated = 0;
  std::size_t lcm_only = 0;
  std::size_t hochster_only = 0;
  std::size_t over_caps = 0;
  std::vector<std::string> disagreements;
};

inline Json to_json(const EngineStats& s) {
  return Json{{"ideals", s.ideals},
              {"cross_validated", s.cross_validated},
              {"lcm_only", s.lcm_only},
              {"hochster_only", s.hochster_only},
              {"over_caps", s.over_caps},
              {"disagreements", s.disagreements}};
}

struct RegularityOutcome {
  std::optional<int> value;
  bool disagreement = false;
  std::string reason;
};

/// Memoized regularity. With cross-validation on, every ideal inside both
/// engines' caps runs through both and their Betti tables are compared.
class RegularityService {
 public:
  explicit RegularityService(ResolutionOptions opt = {}, bool cross_validate = true)
      : opt_(opt), cross_validate_(cross_validate) {}

  const ResolutionOptions& options() const { return opt_; }

  RegularityOutcome regularity(const MonomialIdeal& I) {
    std::string key = std::to_string(I.variable_count());
    for (const auto& g : I.generators()) key += ' ' + g.to_string();
    {
      std::lock_guard lock(mu_);
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    Tally tally;
    RegularityOutcome out = compute(I, tally);
    std::lock_guard lock(mu_);
    auto [it, inserted] = cache_.emplace(key, out);
    if (inserted) {
      ++stats_.ideals;
      stats_.cross_validated += tally.both;
      stats_.lcm_only += tally.lcm_only;
      stats_.hochster_only += tally.hochster_only;
      stats_.over_caps += tally.none;
      if (out.disagreement) stats_.disagreements.push_back(key);
    }
    return it->second;
  }

  EngineStats stats() const {
    std::lock_guard lock(mu_);
    EngineStats s = stats_;
    std::sort(s.disagreements.begin(), s.disagreements.end());
    return s;
  }

 private:
  struct Tally {
    int both = 0, lcm_only = 0, hochster_only = 0, none = 0;
  };

  RegularityOutcome compute(const MonomialIdeal& I, Tally& tally) const {
    std::optional<BettiTable> lcm_table, hochster_table;
    std::string why;
    if (lcm_within_caps(I, opt_)) {
      try {
        lcm_table = betti_table_lcm(I, opt_);
      } catch (const CapacityError& e) {
        why = e.what();
      }
    } else {
      why = "lcm cap: " + std::to_string(I.size()) + " generators";
    }
    if (hochster_within_caps(I, opt_) && (cross_validate_ || !lcm_table)) {
      try {
        hochster_table = betti_table_hochster(I, opt_);
      } catch (const CapacityError& e) {
        why += std::string("; ") + e.what();
      }
    } else if (!lcm_table) {
      why += "; hochster cap: " + std::to_string(polarized_variable_count(I)) + " polarized variables";
    }
    RegularityOutcome out;
    if (lcm_table && hochster_table) {
      ++tally.both;
      if (!(*lcm_table == *hochster_table)) {
        out.disagreement = true;
        out.reason = "lcm and hochster Betti tables disagree";
        return out;
      }
    } else if (lcm_table) {
      ++tally.lcm_only;
    } else if (hochster_table) {
      ++tally.hochster_only;
    } else {
      ++tally.none;
      out.reason = "capacity: " + why;
      return out;
    }
    out.value = (lcm_table ? *lcm_table : *hochster_table).regularity();
    return out;
  }

  ResolutionOptions opt_;
  bool cross_validate_;
  mutable std::mutex mu_;
  std::map<std::string, RegularityOutcome> cache_;
  EngineStats stats_;
};

// ---------------------------------------------------------------------------
// Per-instance data
// ---------------------------------------------------------------------------

/// Graph invariants and edge-ideal powers shared by the checks on one
/// instance.
class InstanceContext {
 public:
  explicit InstanceContext(Instance inst)
      : inst_(std::move(inst)),
        ideal_(edge_ideal(inst_.graph)),
        girth_(odd_girth(inst_.graph)),
        nu_(induced_matching_number(inst_.graph)),
        vwc_(is_very_well_covered(inst_.graph)) {}

  explicit InstanceContext(const Graph& g) : InstanceContext(Instance{instance_id(canonical_form(g)), "", g}) {}

  const Instance& instance() const { return inst_; }
  const Graph& graph() const { return inst_.graph; }
  const MonomialIdeal& ideal() const { return ideal_; }
  OddGirth girth() const { return girth_; }
  std::size_t nu() const { return nu_; }
  bool vwc() const { return vwc_; }

  const MonomialIdeal& power(unsigned s) {
    auto it = powers_.find(s);
    if (it == powers_.end()) it = powers_.emplace(s, edgereg::power(ideal_, s)).first;
    return it->second;
  }

  /// Largest k with odd-girth >= 2k + 1; bipartite graphs satisfy every k,
  /// and s + 2 is used for them.
  unsigned derived_k(unsigned s) const {
    if (girth_.is_infinite()) return s + 2;
    return (girth_.value() - 1) / 2;
  }

 private:
  Instance inst_;
  MonomialIdeal ideal_;
  OddGirth girth_;
  std::size_t nu_;
  bool vwc_;
  std::map<unsigned, MonomialIdeal> powers_;
};

namespace detail {

inline CheckResult start(const char* check, const InstanceContext& ctx, std::string params) {
  CheckResult r;
  r.check = check;
  r.instance = ctx.instance().id;
  r.label = ctx.instance().label;
  r.params = std::move(params);
  return r;
}

inline std::string multiset_params(const EdgeMultiset& m, unsigned k) {
  return "s=" + std::to_string(m.size()) + ";k=" + std::to_string(k) + ";m=" + m.to_string();
}

inline CheckResult& skip(CheckResult& r, std::string why) {
  r.verdict = Verdict::skipped;
  r.reason = std::move(why);
  return r;
}

// Turns a regularity outcome into a value or marks the result.
inline bool need(CheckResult& r, const RegularityOutcome& o) {
  if (o.value) return true;
  if (o.disagreement) {
    r.verdict = Verdict::fail;
    r.reason = o.reason;
  } else {
    r.verdict = Verdict::skipped;
    r.reason = o.reason;
  }
  return false;
}

inline void compare(CheckResult& r, long lhs, long rhs, bool ok, const char* relation) {
  r.values["lhs"] = lhs;
  r.values["rhs"] = rhs;
  r.values["relation"] = relation;
  r.verdict = ok ? Verdict::pass : Verdict::fail;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

/// reg(I(G)) >= nu(G) + 1.
inline CheckResult check_katzman(InstanceContext& ctx, RegularityService& svc) {
  CheckResult r = detail::start("katzman", ctx, "s=1");
  if (ctx.graph().edge_count() == 0) return detail::skip(r, "graph has no edges");
  const auto reg = svc.regularity(ctx.ideal());
  if (!detail::need(r, reg)) return r;
  r.values["nu"] = ctx.nu();
  detail::compare(r, *reg.value, static_cast<long>(ctx.nu()) + 1, *reg.value >= static_cast<long>(ctx.nu()) + 1, ">=");
  return r;
}

/// reg(I(G)^s) >= 2s + nu(G) - 1.
inline CheckResult check_bht_lower_bound(InstanceContext& ctx, unsigned s, RegularityService& svc) {
  CheckResult r = detail::start("bht", ctx, "s=" + std::to_string(s));
  if (s == 0) return detail::skip(r, "s must be positive");
  if (ctx.graph().edge_count() == 0) return detail::skip(r, "graph has no edges");
  const auto reg = svc.regularity(ctx.power(s));
  if (!detail::need(r, reg)) return r;
  const long rhs = 2L * s + static_cast<long>(ctx.nu()) - 1;
  r.values["nu"] = ctx.nu();
  detail::compare(r, *reg.value, rhs, *reg.value >= rhs, ">=");
  return r;
}

/// reg(I(G)^s) == 2s + nu(G) - 1 for very well-covered G with
/// odd-girth >= 2k + 1, k >= 3 and 1 <= s <= k - 2. In hunter mode the
/// equality is also evaluated for any very well-covered G and any s >= 1
/// outside those hypotheses, reported as an observation.
inline CheckResult check_main_theorem(InstanceContext& ctx, unsigned k, unsigned s, RegularityService& svc,
                                      bool hunter = false) {
  CheckResult r = detail::start("main_theorem", ctx, "s=" + std::to_string(s) + ";k=" + std::to_string(k));
  std::string unmet;
  if (!ctx.vwc()) unmet = "not very well-covered";
  else if (k < 3) unmet = "k < 3";
  else if (!ctx.girth().at_least(2L * k + 1)) unmet = "odd-girth < 2k+1";
  else if (s < 1 || s + 2 > k) unmet = "s outside [1, k-2]";
  const bool relaxed_ok = ctx.vwc() && s >= 1;
  if (!unmet.empty() && !(hunter && relaxed_ok)) return detail::skip(r, unmet);
  const auto reg = svc.regularity(ctx.power(s));
  if (!detail::need(r, reg)) return r;
  const long rhs = 2L * s + static_cast<long>(ctx.nu()) - 1;
  r.values["nu"] = ctx.nu();
  r.values["odd_girth"] = to_json(ctx.girth());
  detail::compare(r, *reg.value, rhs, *reg.value == rhs, "==");
  if (!unmet.empty()) {
    r.verdict = Verdict::observation;
    r.reason = "outside hypotheses (" + unmet + "); equality " + (*reg.value == rhs ? "holds" : "fails");
  }
  return r;
}

/// The colon graph of (I^{s+1} : e_1...e_s) is squarefree and has
/// odd-girth >= 2(k - s) + 1, given odd-girth(G) >= 2k + 1 and s <= k - 1.
inline CheckResult check_colon_squarefree_and_oddgirth(InstanceContext& ctx, const EdgeMultiset& m, unsigned k) {
  CheckResult r = detail::start("colon_squarefree", ctx, detail::multiset_params(m, k));
  const unsigned s = static_cast<unsigned>(m.size());
  if (k < 2) return detail::skip(r, "k < 2");
  if (!ctx.girth().at_least(2L * k + 1)) return detail::skip(r, "odd-girth < 2k+1");
  if (s + 1 > k) return detail::skip(r, "s > k-1");
  const ColonQuadraticIdeal c = colon_graph(ctx.graph(), m);
  const OddGirth og = odd_girth(c.graph());
  const long bound = 2L * (k - s) + 1;
  r.values["squares"] = c.squares;
  r.values["colon_odd_girth"] = to_json(og);
  r.values["bound"] = bound;
  r.values["new_edges"] = edges_json(c.new_edges(ctx.graph()));
  const bool ok = c.squarefree() && og.at_least(bound);
  r.verdict = ok ? Verdict::pass : Verdict::fail;
  if (!ok) r.reason = c.squarefree() ? "colon graph odd-girth below bound" : "colon ideal has squares";
  return r;
}

/// (I^{s+1} : e_1...e_s) == ((I^2 : e_i)^s : prod_{j != i} e_j), i 1-based,
/// computed with monomial arithmetic only.
inline CheckResult check_lemma_colon_iteration(InstanceContext& ctx, const EdgeMultiset& m, std::size_t i,
                                               unsigned k) {
  CheckResult r = detail::start("lemma_colon", ctx, detail::multiset_params(m, k) + ";i=" + std::to_string(i));
  const unsigned s = static_cast<unsigned>(m.size());
  if (i < 1 || i > s) return detail::skip(r, "index outside [1, s]");
  if (k < 2) return detail::skip(r, "k < 2");
  if (!ctx.girth().at_least(2L * k + 1)) return detail::skip(r, "odd-girth < 2k+1");
  if (s + 1 > k) return detail::skip(r, "s > k-1");
  const std::size_t n = ctx.graph().vertex_count();
  const MonomialIdeal lhs = colon_by_monomial(ctx.power(s + 1), m.product(n));
  const MonomialIdeal inner = colon_by_monomial(ctx.power(2), Monomial::from_edge(n, m[i - 1]));
  const std::vector<Edge> rest = m.without(i - 1);
  const MonomialIdeal rhs = colon_by_monomial(power(inner, s), edge_product(n, rest));
  const bool ok = equals(lhs, rhs);
  r.values["lhs"] = lhs.generator_strings();
  r.values["rhs"] = rhs.generator_strings();
  r.verdict = ok ? Verdict::pass : Verdict::fail;
  if (!ok) r.reason = "ideals differ";
  return r;
}

/// G' is very well-covered and nu(G') <= nu(G) for very well-covered G with
/// odd-girth >= 2k + 1, k >= 3 and s <= k - 2.
inline CheckResult check_vwc_preservation(InstanceContext& ctx, const EdgeMultiset& m, unsigned k) {
  CheckResult r = detail::start("vwc_preservation", ctx, detail::multiset_params(m, k));
  const unsigned s = static_cast<unsigned>(m.size());
  if (!ctx.vwc()) return detail::skip(r, "not very well-covered");
  if (k < 3) return detail::skip(r, "k < 3");
  if (!ctx.girth().at_least(2L * k + 1)) return detail::skip(r, "odd-girth < 2k+1");
  if (s + 2 > k) return detail::skip(r, "s > k-2");
  const ColonQuadraticIdeal c = colon_graph(ctx.graph(), m);
  if (!c.squarefree()) {
    r.verdict = Verdict::fail;
    r.reason = "colon ideal has squares";
    return r;
  }
  const Graph gp = c.graph();
  const bool vwc = is_very_well_covered(gp);
  const std::size_t nu = induced_matching_number(gp);
  r.values["colon_vwc"] = vwc;
  r.values["colon_nu"] = nu;
  r.values["nu"] = ctx.nu();
  r.values["new_edges"] = edges_json(c.new_edges(ctx.graph()));
  const bool ok = vwc && nu <= ctx.nu();
  r.verdict = ok ? Verdict::pass : Verdict::fail;
  if (!vwc) r.reason = "colon graph is not very well-covered";
  else if (!ok) r.reason = "nu(G') > nu(G)";
  return r;
}

/// reg(I^{s+1}) <= max(max_l reg(I^{s+1} : m_l) + 2s, reg(I^s)) over the
/// minimal generators m_l of I^s.
inline CheckResult check_banerjee_recursion(InstanceContext& ctx, unsigned s, RegularityService& svc) {
  CheckResult r = detail::start("banerjee", ctx, "s=" + std::to_string(s));
  if (s == 0) return detail::skip(r, "s must be positive");
  if (ctx.graph().edge_count() == 0) return detail::skip(r, "graph has no edges");
  const auto next = svc.regularity(ctx.power(s + 1));
  if (!detail::need(r, next)) return r;
  const auto here = svc.regularity(ctx.power(s));
  if (!detail::need(r, here)) return r;
  long colon_max = 0;
  std::size_t colons = 0;
  std::set<std::string> seen;
  for (const Monomial& ml : ctx.power(s).generators()) {
    const MonomialIdeal c = colon_by_monomial(ctx.power(s + 1), ml);
    ++colons;
    const auto reg = svc.regularity(c);
    if (!detail::need(r, reg)) return r;
    colon_max = std::max<long>(colon_max, *reg.value);
  }
  const long rhs = std::max<long>(colon_max + 2L * s, *here.value);
  r.values["colon_max"] = colon_max;
  r.values["colons"] = colons;
  r.values["reg_s"] = *here.value;
  detail::compare(r, *next.value, rhs, *next.value <= rhs, "<=");
  return r;
}

/// Colon graph from even-connections equals the colon ideal computed by
/// monomial arithmetic; every witness passes the independent validator and
/// reversing u, v preserves connectivity.
inline CheckResult check_even_connection_oracle(InstanceContext& ctx, const EdgeMultiset& m) {
  CheckResult r = detail::start("even_connection_oracle", ctx, "s=" + std::to_string(m.size()) + ";m=" + m.to_string());
  const Graph& g = ctx.graph();
  const std::size_t n = g.vertex_count();
  const ColonQuadraticIdeal c = colon_graph(g, m);
  const MonomialIdeal oracle = colon_by_monomial(ctx.power(static_cast<unsigned>(m.size() + 1)), m.product(n));
  const MonomialIdeal mine = c.ideal();
  std::size_t witnesses = 0;
  std::string problem;
  for (Vertex u = 0; u < n && problem.empty(); ++u) {
    for (Vertex v = u; v < n && problem.empty(); ++v) {
      if (u != v && g.adjacent(u, v)) continue;
      const auto w = is_even_connected(g, u, v, m);
      const bool listed = u == v ? std::binary_search(c.squares.begin(), c.squares.end(), u)
                                 : std::binary_search(c.edges.begin(), c.edges.end(), Edge(u, v));
      if (w.has_value() != listed) problem = "witness search and colon graph disagree at " + std::to_string(u) + "," + std::to_string(v);
      else if (w && !validate_witness(g, u, v, m, *w)) problem = "invalid witness for " + std::to_string(u) + "," + std::to_string(v);
      else if (u != v && w.has_value() != is_even_connected(g, v, u, m).has_value()) problem = "asymmetric even-connection";
      if (w) ++witnesses;
    }
  }
  const bool agree = equals(mine, oracle);
  r.values["witnesses"] = witnesses;
  r.values["squares"] = c.squares;
  r.values["new_edges"] = edges_json(c.new_edges(g));
  if (!agree) {
    r.values["colon_graph_ideal"] = mine.generator_strings();
    r.values["oracle_ideal"] = oracle.generator_strings();
    problem = problem.empty() ? "colon graph differs from the oracle colon ideal" : problem;
  }
  r.verdict = problem.empty() ? Verdict::pass : Verdict::fail;
  r.reason = problem;
  return r;
}

/// Both engines on I(G)^s; skipped when either is over its caps.
inline CheckResult check_engine_agreement(InstanceContext& ctx, unsigned s, const ResolutionOptions& opt) {
  CheckResult r = detail::start("engine_agreement", ctx, "s=" + std::to_string(s));
  if (ctx.graph().edge_count() == 0) return detail::skip(r, "graph has no edges");
  const MonomialIdeal& I = ctx.power(s);
  if (!lcm_within_caps(I, opt)) return detail::skip(r, "over lcm cap");
  if (!hochster_within_caps(I, opt)) return detail::skip(r, "over hochster cap");
  try {
    const BettiTable a = betti_table_lcm(I, opt);
    const BettiTable b = betti_table_hochster(I, opt);
    r.values["lcm"] = to_json(a);
    if (!(a == b)) r.values["hochster"] = to_json(b);
    detail::compare(r, a.regularity(), b.regularity(), a == b, "table==");
  } catch (const CapacityError& e) {
    return detail::skip(r, e.what());
  }
  return r;
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{"katzman",          "bht",         "main_theorem",
                                              "colon_squarefree", "lemma_colon", "vwc_preservation",
                                              "banerjee",         "even_connection_oracle", "engine_agreement"};
  return names;
}

struct SweepParams {
  unsigned max_power = 3;           // main_theorem and edge-multiset checks
  unsigned bound_max_power = 2;     // bht, engine_agreement
  unsigned banerjee_max_power = 1;
  bool hunter = false;
  std::size_t multiset_sample = 50;
  std::size_t exhaustive_edge_limit = 10;
  unsigned exhaustive_power_limit = 2;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  bool timing = false;
  ResolutionOptions resolution;
  bool cross_validate = true;
};

inline Json to_json(const SweepParams& p) {
  return Json{{"max_power", p.max_power},
              {"bound_max_power", p.bound_max_power},
              {"banerjee_max_power", p.banerjee_max_power},
              {"hunter", p.hunter},
              {"multiset_sample", p.multiset_sample},
              {"exhaustive_edge_limit", p.exhaustive_edge_limit},
              {"exhaustive_power_limit", p.exhaustive_power_limit},
              {"seed", p.seed},
              {"cross_validate", p.cross_validate}};
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : s) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
  return h;
}

/// Edge multisets of size s in index order: all of them when s and |E| are
/// small (or there are few), otherwise a seeded sample.
inline std::vector<EdgeMultiset> edge_multisets(const Graph& g, unsigned s, const SweepParams& p,
                                                std::uint64_t salt) {
  const std::size_t e = g.edge_count();
  std::vector<EdgeMultiset> out;
  if (e == 0 || s == 0) return out;
  // C(e + s - 1, s), saturating
  double total = 1;
  for (unsigned t = 1; t <= s; ++t) total = total * static_cast<double>(e + s - t) / t;
  std::set<std::vector<std::size_t>> chosen;
  const bool exhaustive = (s <= p.exhaustive_power_limit && e <= p.exhaustive_edge_limit) ||
                          total <= static_cast<double>(p.multiset_sample);
  if (exhaustive) {
    std::vector<std::size_t> idx(s, 0);
    for (;;) {
      chosen.insert(idx);
      std::size_t t = s;
      while (t > 0 && idx[t - 1] == e - 1) --t;
      if (t == 0) break;
      ++idx[t - 1];
      for (std::size_t u = t; u < s; ++u) idx[u] = idx[t - 1];
    }
  } else {
    std::mt19937_64 rng(detail::mix_seed(p.seed, salt * 8 + s));
    for (std::size_t a = 0; a < 20 * p.multiset_sample && chosen.size() < p.multiset_sample; ++a) {
      std::vector<std::size_t> idx(s);
      for (auto& x : idx) x = static_cast<std::size_t>(rng() % e);
      std::sort(idx.begin(), idx.end());
      chosen.insert(idx);
    }
  }
  for (const auto& idx : chosen) {
    std::vector<Edge> edges;
    for (std::size_t x : idx) edges.push_back(g.edges()[x]);
    out.emplace_back(g, std::move(edges));
  }
  return out;
}

inline void validate_checks(const std::vector<std::string>& checks) {
  if (checks.empty()) throw InputError("no checks requested");
  for (const auto& c : checks)
    if (std::find(known_checks().begin(), known_checks().end(), c) == known_checks().end())
      throw InputError("unknown check '" + c + "'");
}

/// Every requested check on one instance, in a fixed order.
inline std::vector<CheckResult> run_instance(const Instance& inst, const std::vector<std::string>& checks,
                                             const SweepParams& p, RegularityService& svc) {
  InstanceContext ctx(inst);
  std::vector<CheckResult> out;
  auto wants = [&](const char* name) { return std::find(checks.begin(), checks.end(), name) != checks.end(); };
  auto timed = [&](auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r = fn();
    if (p.timing) r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(r));
  };
  const std::uint64_t salt = fnv1a(inst.id);

  if (wants("katzman")) timed([&] { return check_katzman(ctx, svc); });
  if (wants("bht"))
    for (unsigned s = 1; s <= p.bound_max_power; ++s) timed([&] { return check_bht_lower_bound(ctx, s, svc); });
  if (wants("engine_agreement"))
    for (unsigned s = 1; s <= p.bound_max_power; ++s)
      timed([&] { return check_engine_agreement(ctx, s, p.resolution); });
  if (wants("banerjee"))
    for (unsigned s = 1; s <= p.banerjee_max_power; ++s)
      timed([&] { return check_banerjee_recursion(ctx, s, svc); });
  if (wants("main_theorem")) {
    for (unsigned s = 1; s <= p.max_power; ++s) {
      const unsigned k = ctx.derived_k(s);
      const bool in_scope = ctx.vwc() && k >= 3 && s + 2 <= k;
      // outside hunter mode, only the first out-of-scope power is reported
      if (!in_scope && !p.hunter && s > 1) break;
      timed([&] { return check_main_theorem(ctx, k, s, svc, p.hunter); });
    }
  }
  const bool colon = wants("colon_squarefree"), lemma = wants("lemma_colon"), vwc = wants("vwc_preservation"),
             oracle = wants("even_connection_oracle");
  if (colon || lemma || vwc || oracle) {
    bool colon_noted = false, vwc_noted = false;
    for (unsigned s = 1; s <= p.max_power; ++s) {
      const unsigned k = ctx.derived_k(s);
      const bool colon_scope = k >= 2 && ctx.girth().at_least(2L * k + 1) && s + 1 <= k;
      const bool vwc_scope = colon_scope && ctx.vwc() && k >= 3 && s + 2 <= k;
      // the first power outside a check's hypotheses gets one skip record
      const EdgeMultiset first(ctx.graph(), std::vector<Edge>(s, ctx.graph().edges().front()));
      if (!colon_scope && !colon_noted) {
        if (colon) timed([&] { return check_colon_squarefree_and_oddgirth(ctx, first, k); });
        if (lemma) timed([&] { return check_lemma_colon_iteration(ctx, first, 1, k); });
        colon_noted = true;
      }
      if (!vwc_scope && !vwc_noted) {
        if (vwc) timed([&] { return check_vwc_preservation(ctx, first, k); });
        vwc_noted = true;
      }
      if (!oracle && !colon_scope) break;
      for (const EdgeMultiset& m : edge_multisets(ctx.graph(), s, p, salt)) {
        if (oracle) timed([&] { return check_even_connection_oracle(ctx, m); });
        if (colon && colon_scope) timed([&] { return check_colon_squarefree_and_oddgirth(ctx, m, k); });
        if (lemma && colon_scope)
          for (std::size_t i = 1; i <= s; ++i) timed([&] { return check_lemma_colon_iteration(ctx, m, i, k); });
        if (vwc && vwc_scope) timed([&] { return check_vwc_preservation(ctx, m, k); });
      }
    }
  }
  return out;
}

struct SweepReport {
  FamilySpec spec;
  std::vector<std::string> checks;
  SweepParams params;
  std::string field;
  std::string version = kVersion;
  std::size_t instances = 0;
  std::vector<CheckResult> results;
  EngineStats engines;

  std::map<std::string, std::map<std::string, std::size_t>> summary() const {
    std::map<std::string, std::map<std::string, std::size_t>> s;
    for (const auto& c : checks)
      for (auto v : {Verdict::pass, Verdict::fail, Verdict::skipped, Verdict::observation}) s[c][to_string(v)] = 0;
    for (const auto& r : results) ++s[r.check][to_string(r.verdict)];
    return s;
  }

  std::size_t count(Verdict v) const {
    return static_cast<std::size_t>(std::count_if(results.begin(), results.end(), [&](const CheckResult& r) { return r.verdict == v; }));
  }
  std::size_t failures() const { return count(Verdict::fail) + engines.disagreements.size(); }
  int exit_code() const { return failures() == 0 ? 0 : 1; }
};

inline Json to_json(const CheckResult& r) {
  Json j{{"check", r.check}, {"instance", r.instance}, {"params", r.params}, {"verdict", to_string(r.verdict)},
         {"values", r.values}};
  if (!r.label.empty()) j["label"] = r.label;
  if (!r.reason.empty()) j["reason"] = r.reason;
  if (r.elapsed_ms) j["elapsed_ms"] = *r.elapsed_ms;
  return j;
}

inline Json to_json(const SweepReport& rep, const std::vector<Instance>* instances = nullptr) {
  Json results = Json::array();
  for (const auto& r : rep.results) results.push_back(to_json(r));
  Json j{{"spec", to_json(rep.spec)},
         {"checks", rep.checks},
         {"params", to_json(rep.params)},
         {"field", rep.field},
         {"version", rep.version},
         {"instances", rep.instances},
         {"results", std::move(results)},
         {"summary", rep.summary()},
         {"engines", to_json(rep.engines)}};
  if (instances) {
    Json graphs = Json::object();
    for (const auto& inst : *instances) graphs[inst.id] = compact_edges(inst.graph.edges());
    j["graphs"] = std::move(graphs);
  }
  return j;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline std::string to_csv(const SweepReport& rep) {
  std::ostringstream out;
  out << "check,instance,label,params,verdict,lhs,rhs,reason\n";
  auto side = [](const Json& v, const char* key) -> std::string {
    if (!v.contains(key)) return "";
    const Json& x = v.at(key);
    return x.is_string() ? x.get<std::string>() : x.dump();
  };
  for (const auto& r : rep.results) {
    out << csv_field(r.check) << ',' << csv_field(r.instance) << ',' << csv_field(r.label) << ','
        << csv_field(r.params) << ',' << to_string(r.verdict) << ',' << csv_field(side(r.values, "lhs")) << ','
        << csv_field(side(r.values, "rhs")) << ',' << csv_field(r.reason) << '\n';
  }
  return out.str();
}

/// Runs the checks on every instance of a precomputed family. Results are
/// ordered by (instance, check, params) regardless of the worker count.
inline SweepReport run_sweep_on(const FamilySpec& spec, const std::vector<Instance>& instances,
                                const std::vector<std::string>& checks, const SweepParams& p,
                                RegularityService& svc) {
  validate_checks(checks);
  SweepReport rep;
  rep.spec = spec;
  rep.checks = checks;
  rep.params = p;
  rep.field = field_name(p.resolution.characteristic);
  rep.instances = instances.size();

  std::vector<std::vector<CheckResult>> per(instances.size());
  const unsigned jobs = std::max(1u, std::min<unsigned>(p.jobs, static_cast<unsigned>(instances.size())));
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < instances.size();) {
      try {
        per[i] = run_instance(instances[i], checks, p, svc);
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (err) std::rethrow_exception(err);
  for (auto& v : per)
    for (auto& r : v) rep.results.push_back(std::move(r));
  std::stable_sort(rep.results.begin(), rep.results.end(), [](const CheckResult& a, const CheckResult& b) {
    return std::tie(a.instance, a.check, a.params) < std::tie(b.instance, b.check, b.params);
  });
  rep.engines = svc.stats();
  return rep;
}

inline SweepReport run_sweep(const FamilySpec& spec, const std::vector<std::string>& checks, const SweepParams& p = {}) {
  validate_checks(checks);
  const std::vector<Instance> instances = generate_family(spec);
  RegularityService svc(p.resolution, p.cross_validate);
  return run_sweep_on(spec, instances, checks, p, svc);
}

}  // namespace edgereg
