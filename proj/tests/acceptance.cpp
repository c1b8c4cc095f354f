// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "edgereg/even_connection.hpp"
#include "edgereg/family.hpp"
#include "edgereg/generators.hpp"
#include "edgereg/resolution.hpp"
#include "edgereg/verification.hpp"

using namespace edgereg;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Tally {
  std::size_t pass = 0, fail = 0, skipped = 0;
  std::vector<std::string> failures;
};

Tally tally(const SweepReport& rep, const std::string& check) {
  Tally t;
  for (const auto& r : rep.results) {
    if (r.check != check) continue;
    if (r.verdict == Verdict::pass) ++t.pass;
    else if (r.verdict == Verdict::fail) {
      ++t.fail;
      if (t.failures.size() < 5) t.failures.push_back(to_json(r).dump());
    } else if (r.verdict == Verdict::skipped) ++t.skipped;
  }
  return t;
}

Tally merge(const Tally& a, const Tally& b) {
  Tally t{a.pass + b.pass, a.fail + b.fail, a.skipped + b.skipped, a.failures};
  t.failures.insert(t.failures.end(), b.failures.begin(), b.failures.end());
  return t;
}

// At least one pass and no fail.
Outcome from_tally(const Tally& t, const std::string& what) {
  Outcome o;
  o.ok = t.fail == 0 && t.pass > 0;
  o.detail = what + ": " + std::to_string(t.pass) + " pass, " + std::to_string(t.fail) + " fail, " +
             std::to_string(t.skipped) + " skipped";
  for (const auto& f : t.failures) o.detail += "\n      " + f;
  return o;
}

bool has_repeated_edge(const std::string& params) {
  const auto pos = params.find("m=");
  if (pos == std::string::npos) return false;
  std::string list = params.substr(pos + 2);
  list = list.substr(0, list.find(';'));
  std::vector<std::string> items;
  std::stringstream ss(list);
  for (std::string it; std::getline(ss, it, ',');) items.push_back(it);
  std::sort(items.begin(), items.end());
  return std::adjacent_find(items.begin(), items.end()) != items.end();
}

FamilySpec family(FamilyKind kind, std::size_t lo, std::size_t hi) {
  FamilySpec f;
  f.kind = kind;
  f.size_min = lo;
  f.size = hi;
  return f;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  const auto t_start = std::chrono::steady_clock::now();
  RegularityService svc({}, true);
  int failed = 0;
  auto report = [&](int id, const std::string& name, const Outcome& o, double secs) {
    std::printf("[%s] criterion %d %s (%.1fs): %s\n", o.ok ? "PASS" : "FAIL", id, name.c_str(), secs,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failed;
  };

  // Very well-covered graphs on <= 8 vertices, with every check that
  // criteria 1, 4, 5 and 6 draw on.
  auto t0 = std::chrono::steady_clock::now();
  const FamilySpec vwc_spec = family(FamilyKind::exhaustive_vwc, 1, 4);
  const auto vwc_family = generate_family(vwc_spec);
  SweepParams vwc_params;
  vwc_params.max_power = 3;
  const SweepReport vwc_rep =
      run_sweep_on(vwc_spec, vwc_family, {"main_theorem", "colon_squarefree", "lemma_colon", "vwc_preservation"},
                   vwc_params, svc);
  {
    Outcome o = from_tally(tally(vwc_rep, "main_theorem"), std::to_string(vwc_family.size()) + " graphs");
    report(1, "main theorem, very well-covered n<=8, s<=min(k-2,3)", o, seconds_since(t0));
  }

  // 2: s = 1 equality on the same family plus two coronas via hochster
  t0 = std::chrono::steady_clock::now();
  {
    Tally t;
    for (const auto& inst : vwc_family) {
      InstanceContext ctx(inst);
      const auto reg = svc.regularity(ctx.ideal());
      if (!reg.value) {
        ++t.fail;
        t.failures.push_back(inst.id + ": " + reg.reason);
      } else if (*reg.value == static_cast<int>(ctx.nu()) + 1) {
        ++t.pass;
      } else {
        ++t.fail;
        t.failures.push_back(inst.id + ": reg " + std::to_string(*reg.value) + " nu " + std::to_string(ctx.nu()));
      }
    }
    for (const char* name : {"corona(C5)", "corona(C7)"}) {
      const Graph g = named_graph(name);
      const BettiTable table = betti_table_hochster(edge_ideal(g));
      const int reg = table.regularity();
      const auto nu = induced_matching_number(g);
      if (is_very_well_covered(g) && reg == static_cast<int>(nu) + 1) ++t.pass;
      else {
        ++t.fail;
        t.failures.push_back(std::string(name) + ": reg " + std::to_string(reg) + " nu " + std::to_string(nu));
      }
    }
    report(2, "reg(I) = nu + 1 on very well-covered graphs and coronas of C5, C7", from_tally(t, "instances"),
           seconds_since(t0));
  }

  // 3: even-connection colon graph against the monomial colon, random graphs
  t0 = std::chrono::steady_clock::now();
  FamilySpec random_spec = family(FamilyKind::random_all, 3, 8);
  random_spec.density = 0.4;
  random_spec.seed = 20240601;
  random_spec.cap = 520;
  const auto random_family = generate_family(random_spec);
  SweepParams random_params;
  random_params.max_power = 3;
  random_params.seed = 7;
  const SweepReport random_rep = run_sweep_on(
      random_spec, random_family, {"even_connection_oracle", "colon_squarefree", "lemma_colon", "vwc_preservation"},
      random_params, svc);
  {
    Outcome o = from_tally(tally(random_rep, "even_connection_oracle"),
                           std::to_string(random_family.size()) + " random graphs");
    if (random_family.size() < 500) {
      o.ok = false;
      o.detail += " (fewer than 500 graphs)";
    }
    report(3, "even-connection colon graph equals the colon ideal", o, seconds_since(t0));
  }

  // 4: squarefree colon and odd-girth propagation, plus tightness on C5
  t0 = std::chrono::steady_clock::now();
  {
    Outcome o = from_tally(merge(tally(vwc_rep, "colon_squarefree"), tally(random_rep, "colon_squarefree")),
                           "instances");
    InstanceContext c5(cycle_graph(5));
    bool tight = true;
    for (const Edge& e : c5.graph().edges()) {
      const EdgeMultiset m(c5.graph(), {e});
      const CheckResult r = check_colon_squarefree_and_oddgirth(c5, m, 2);
      tight = tight && r.verdict == Verdict::pass &&
              odd_girth(colon_graph(c5.graph(), m).graph()) == OddGirth::finite(3);
    }
    o.ok = o.ok && tight;
    o.detail += tight ? "; C5, k=2, s=1 colon graph odd-girth exactly 3" : "; C5 tightness NOT reproduced";
    report(4, "squarefree colon ideals and odd-girth(G') >= 2(k-s)+1", o, seconds_since(t0));
  }

  // 5: iterated colon identity, including repeated edges
  t0 = std::chrono::steady_clock::now();
  {
    Outcome o = from_tally(merge(tally(vwc_rep, "lemma_colon"), tally(random_rep, "lemma_colon")), "instances");
    std::size_t repeated = 0;
    for (const auto* rep : {&vwc_rep, &random_rep})
      for (const auto& r : rep->results)
        if (r.check == "lemma_colon" && r.verdict == Verdict::pass && has_repeated_edge(r.params)) ++repeated;
    o.ok = o.ok && repeated > 0;
    o.detail += "; " + std::to_string(repeated) + " passes use a repeated edge";
    report(5, "iterated colon identity", o, seconds_since(t0));
  }

  // 6: very well-coveredness of the colon graph and nu(G') <= nu(G)
  t0 = std::chrono::steady_clock::now();
  {
    FamilySpec extra_spec = family(FamilyKind::random_vwc, 2, 5);
    extra_spec.density = 0.25;
    extra_spec.seed = 99;
    extra_spec.cap = 150;
    auto extra = generate_family(extra_spec);
    for (auto& inst : generate_family(FamilySpec{FamilyKind::named, 0, {}, 0.3, 0, {}, {}, {"corona(C7)", "corona(P5)"}}))
      extra.push_back(inst);
    SweepParams p;
    p.max_power = 3;
    const SweepReport extra_rep = run_sweep_on(extra_spec, extra, {"vwc_preservation"}, p, svc);
    const Tally t = merge(merge(tally(vwc_rep, "vwc_preservation"), tally(random_rep, "vwc_preservation")),
                          tally(extra_rep, "vwc_preservation"));
    report(6, "colon graph stays very well-covered with nu(G') <= nu(G)", from_tally(t, "instances"),
           seconds_since(t0));
  }

  // 7 and 8: all graphs on <= 6 vertices
  t0 = std::chrono::steady_clock::now();
  const FamilySpec small_spec = family(FamilyKind::exhaustive_all, 2, 6);
  const auto small_family = generate_family(small_spec);
  SweepParams small_params;
  small_params.bound_max_power = 2;
  small_params.banerjee_max_power = 1;
  const SweepReport small_rep = run_sweep_on(small_spec, small_family, {"katzman", "bht"}, small_params, svc);
  report(7, "reg(I) >= nu+1 and reg(I^s) >= 2s+nu-1 (s<=2), all graphs n<=6",
         from_tally(merge(tally(small_rep, "katzman"), tally(small_rep, "bht")),
                    std::to_string(small_family.size()) + " graphs"),
         seconds_since(t0));

  t0 = std::chrono::steady_clock::now();
  const SweepReport banerjee_rep = run_sweep_on(small_spec, small_family, {"banerjee"}, small_params, svc);
  report(8, "colon recursion bound on reg(I^2), all graphs n<=6",
         from_tally(tally(banerjee_rep, "banerjee"), std::to_string(small_family.size()) + " graphs"),
         seconds_since(t0));

  // 9: engine agreement on every ideal above, plus closed-form anchors
  t0 = std::chrono::steady_clock::now();
  {
    const EngineStats st = svc.stats();
    Outcome o;
    o.ok = st.disagreements.empty() && st.cross_validated > 0;
    o.detail = std::to_string(st.ideals) + " ideals, " + std::to_string(st.cross_validated) +
               " cross-validated, " + std::to_string(st.lcm_only) + " lcm only, " +
               std::to_string(st.hochster_only) + " hochster only, " + std::to_string(st.over_caps) +
               " over caps, " + std::to_string(st.disagreements.size()) + " disagreements";
    for (const auto& d : st.disagreements) o.detail += "\n      " + d;
    struct Anchor {
      std::string name;
      MonomialIdeal ideal;
      int expected;
    };
    std::vector<Anchor> anchors{{"reg(I(P4))", edge_ideal(path_graph(4)), 2},
                                {"reg(I(C5)^2)", power(edge_ideal(cycle_graph(5)), 2), 4},
                                {"reg(I(C4)^2)", power(edge_ideal(cycle_graph(4)), 2), 4}};
    for (unsigned s = 1; s <= 4; ++s)
      anchors.push_back({"reg((xy)^" + std::to_string(s) + ")", power(edge_ideal(path_graph(2)), s), 2 * static_cast<int>(s)});
    for (const auto& a : anchors) {
      const int got = compute_regularity(a.ideal, {}, Engine::both).regularity;
      if (got != a.expected) {
        o.ok = false;
        o.detail += "; " + a.name + " = " + std::to_string(got) + " (expected " + std::to_string(a.expected) + ")";
      }
    }
    o.detail += "; anchors reg(I(P4))=2, reg((xy)^s)=2s, reg(I(C5)^2)=4, reg(I(C4)^2)=4 checked on both engines";
    report(9, "engine cross-validation and anchors", o, seconds_since(t0));
  }

  // 10: identical JSON from repeated sweeps, including a two-worker run
  t0 = std::chrono::steady_clock::now();
  {
    FamilySpec spec = family(FamilyKind::random_all, 3, 7);
    spec.seed = 5;
    spec.cap = 40;
    SweepParams p;
    p.seed = 11;
    const std::vector<std::string> checks{"even_connection_oracle", "colon_squarefree", "lemma_colon", "katzman", "bht"};
    std::vector<std::string> dumps;
    for (unsigned jobs : {1u, 1u, 2u}) {
      p.jobs = jobs;
      dumps.push_back(to_json(run_sweep(spec, checks, p)).dump(2));
    }
    SweepParams vp;
    const std::string a = to_json(run_sweep(family(FamilyKind::exhaustive_vwc, 1, 3), {"main_theorem"}, vp)).dump();
    const std::string b = to_json(run_sweep(family(FamilyKind::exhaustive_vwc, 1, 3), {"main_theorem"}, vp)).dump();
    Outcome o;
    o.ok = dumps[0] == dumps[1] && dumps[0] == dumps[2] && a == b;
    o.detail = "random sweep " + std::to_string(dumps[0].size()) + " bytes x3 (jobs 1,1,2), vwc sweep x2: " +
               (o.ok ? "byte-identical" : "DIFFERENT");
    report(10, "deterministic reports", o, seconds_since(t0));
  }

  std::printf("acceptance: %d of 10 criteria failed (%.1fs total)\n", failed, seconds_since(t_start));
  return failed == 0 ? 0 : 1;
}
