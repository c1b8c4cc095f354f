#pragma once

// Command-line front end. Each command turns its flags into library calls and
// renders the resulting JSON value; `run_cli` is what the executable calls.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "edgereg/even_connection.hpp"
#include "edgereg/family.hpp"
#include "edgereg/generators.hpp"
#include "edgereg/graph.hpp"
#include "edgereg/resolution.hpp"
#include "edgereg/serialize.hpp"
#include "edgereg/verification.hpp"

namespace edgereg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInput = 2;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Graph load_graph(const std::string& path) {
  const std::string text = read_file(path);
  Graph g = from_edge_list(text);
  if (g.vertex_count() == 0) throw InputError("graph file '" + path + "' has no vertices");
  return g;
}

/// "0-1,2-3" (spaces allowed around separators).
inline std::vector<Edge> parse_edge_spec(const std::string& text) {
  std::vector<Edge> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    const auto dash = item.find('-');
    if (item.empty() || dash == std::string::npos) throw InputError("malformed edge '" + item + "' (expected u-v)");
    const auto a = detail::parse_unsigned(item.substr(0, dash));
    const auto b = detail::parse_unsigned(item.substr(dash + 1));
    if (!a || !b) throw InputError("malformed edge '" + item + "' (expected u-v)");
    if (*a == *b) throw InputError("loop '" + item + "' is not an edge");
    out.emplace_back(static_cast<Vertex>(*a), static_cast<Vertex>(*b));
  }
  if (out.empty()) throw InputError("empty edge list");
  return out;
}

inline Engine parse_engine(const std::string& s) {
  for (Engine e : {Engine::automatic, Engine::lcm, Engine::hochster, Engine::both})
    if (to_string(e) == s) return e;
  throw InputError("unknown engine '" + s + "'");
}

// ---------------------------------------------------------------------------
// Commands: each returns the JSON document it reports
// ---------------------------------------------------------------------------

inline Json analyze(const Graph& g) {
  Json j{{"n", g.vertex_count()},
         {"edges", g.edge_count()},
         {"odd_girth", to_json(odd_girth(g))},
         {"induced_matching_number", induced_matching_number(g)},
         {"induced_matching", edges_json(maximum_induced_matching(g))},
         {"maximal_independent_sets", maximal_independent_sets(g).size()},
         {"isolated_vertices", g.has_isolated_vertex()},
         {"unmixed", is_unmixed(g)},
         {"very_well_covered", is_very_well_covered(g)}};
  const auto cert = g.has_isolated_vertex() ? std::nullopt : find_vwc_certificate(g);
  j["certificate"] = cert ? to_json(*cert) : Json(nullptr);
  return j;
}

inline Json regularity(const Graph& g, unsigned s, Engine engine, const ResolutionOptions& opt) {
  if (s == 0) throw InputError("--power must be at least 1");
  if (g.edge_count() == 0) throw InputError("graph has no edges; its edge ideal is zero");
  const MonomialIdeal I = power(edge_ideal(g), s);
  const RegularityResult r = compute_regularity(I, opt, engine);
  Json engines = Json::array();
  if (r.lcm_ran) engines.push_back("lcm");
  if (r.hochster_ran) engines.push_back("hochster");
  return Json{{"power", s},
              {"generators", I.size()},
              {"regularity", r.regularity},
              {"engine", to_string(engine)},
              {"engines_run", engines},
              {"engines_agree", engine == Engine::both ? Json(true) : Json(nullptr)},
              {"field", field_name(opt.characteristic)},
              {"betti", to_json(r.table)}};
}

inline Json colon(const Graph& g, const EdgeMultiset& m) {
  const ColonQuadraticIdeal c = colon_graph(g, m);
  const bool agree = equals(c.ideal(), colon_ideal_oracle(g, m));
  Json witnesses = Json::object();
  for (const Edge& e : c.new_edges(g))
    witnesses[to_string(e)] = to_json(*is_even_connected(g, e.u, e.v, m));
  for (Vertex u : c.squares) witnesses[std::to_string(u) + "-" + std::to_string(u)] = to_json(*is_even_connected(g, u, u, m));
  Json j = to_json(g, c);
  j["multiset"] = edges_json(m.edges());
  j["squarefree"] = c.squarefree();
  j["oracle_agrees"] = agree;
  j["witnesses"] = std::move(witnesses);
  j["odd_girth"] = to_json(odd_girth(c.graph()));
  return j;
}

struct VerifyOptions {
  std::vector<std::string> checks;
  unsigned power = 1;
  std::optional<unsigned> k;
  std::optional<std::vector<Edge>> edges;
  bool hunter = false;
};

/// Checks on a single graph as given (no relabeling).
inline Json verify(const Graph& g, const VerifyOptions& o, const ResolutionOptions& opt, int& exit_code) {
  validate_checks(o.checks);
  InstanceContext ctx(Instance{instance_id(canonical_form(g)), "", g});
  RegularityService svc(opt, true);
  const unsigned k = o.k.value_or(ctx.derived_k(o.power));
  std::optional<EdgeMultiset> m;
  if (o.edges) m = EdgeMultiset(g, *o.edges);
  std::vector<CheckResult> results;
  for (const auto& name : o.checks) {
    const bool needs_edges = name == "colon_squarefree" || name == "lemma_colon" || name == "vwc_preservation" ||
                             name == "even_connection_oracle";
    if (needs_edges && !m) throw InputError("check '" + name + "' needs --edges");
    if (name == "katzman") results.push_back(check_katzman(ctx, svc));
    else if (name == "bht") results.push_back(check_bht_lower_bound(ctx, o.power, svc));
    else if (name == "main_theorem") results.push_back(check_main_theorem(ctx, k, o.power, svc, o.hunter));
    else if (name == "banerjee") results.push_back(check_banerjee_recursion(ctx, o.power, svc));
    else if (name == "engine_agreement") results.push_back(check_engine_agreement(ctx, o.power, opt));
    else if (name == "even_connection_oracle") results.push_back(check_even_connection_oracle(ctx, *m));
    else {
      const unsigned km = o.k.value_or(ctx.derived_k(static_cast<unsigned>(m->size())));
      if (name == "colon_squarefree") results.push_back(check_colon_squarefree_and_oddgirth(ctx, *m, km));
      else if (name == "vwc_preservation") results.push_back(check_vwc_preservation(ctx, *m, km));
      else
        for (std::size_t i = 1; i <= m->size(); ++i) results.push_back(check_lemma_colon_iteration(ctx, *m, i, km));
    }
  }
  Json out = Json::array();
  exit_code = kExitOk;
  for (const auto& r : results) {
    if (r.verdict == Verdict::fail) exit_code = kExitFail;
    out.push_back(to_json(r));
  }
  return Json{{"graph", to_json(g)}, {"field", field_name(opt.characteristic)}, {"results", out}};
}

struct SweepConfig {
  FamilySpec family;
  std::vector<std::string> checks;
  SweepParams params;
};

/// {"family": {...}, "checks": [...], "params": {...}}
inline SweepConfig sweep_config_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("sweep config must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (k != "family" && k != "checks" && k != "params") throw InputError("unexpected key '" + k + "' in sweep config");
  if (!j.contains("family")) throw InputError("sweep config lacks 'family'");
  if (!j.contains("checks")) throw InputError("sweep config lacks 'checks'");
  SweepConfig c;
  c.family = family_from_json(j.at("family"));
  try {
    c.checks = j.at("checks").get<std::vector<std::string>>();
    if (j.contains("params")) {
      const Json& p = j.at("params");
      if (!p.is_object()) throw InputError("'params' must be an object");
      for (const auto& [k, v] : p.items()) {
        if (k == "max_power") c.params.max_power = v.get<unsigned>();
        else if (k == "bound_max_power") c.params.bound_max_power = v.get<unsigned>();
        else if (k == "banerjee_max_power") c.params.banerjee_max_power = v.get<unsigned>();
        else if (k == "hunter") c.params.hunter = v.get<bool>();
        else if (k == "multiset_sample") c.params.multiset_sample = v.get<std::size_t>();
        else if (k == "exhaustive_edge_limit") c.params.exhaustive_edge_limit = v.get<std::size_t>();
        else if (k == "exhaustive_power_limit") c.params.exhaustive_power_limit = v.get<unsigned>();
        else if (k == "seed") c.params.seed = v.get<std::uint64_t>();
        else if (k == "cross_validate") c.params.cross_validate = v.get<bool>();
        else if (k == "characteristic") c.params.resolution.characteristic = v.get<unsigned>();
        else throw InputError("unexpected key '" + k + "' in sweep params");
      }
    }
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed sweep config: ") + e.what());
  }
  validate_checks(c.checks);
  if (c.params.resolution.characteristic != 0 && !detail::is_prime(c.params.resolution.characteristic))
    throw InputError("characteristic must be 0 or a prime");
  return c;
}

inline Json instances_json(const std::vector<Instance>& instances) {
  Json out = Json::array();
  for (const auto& inst : instances) {
    Json j{{"id", inst.id}, {"graph", to_json(inst.graph)}};
    if (!inst.label.empty()) j["label"] = inst.label;
    out.push_back(std::move(j));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text rendering of the JSON documents
// ---------------------------------------------------------------------------

inline std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "none";
  if (v.is_array()) {
    std::string out;
    for (const auto& x : v) {
      if (!out.empty()) out += ' ';
      out += scalar_text(x);
    }
    return out.empty() ? "-" : out;
  }
  return v.dump();
}

inline BettiTable betti_from_json(const Json& j) {
  BettiTable t;
  for (const auto& e : j) t.add(e.at("i").get<int>(), e.at("j").get<int>(), e.at("rank").get<std::uint64_t>());
  return t;
}

inline std::string render_text(const Json& doc) {
  std::ostringstream out;
  for (const auto& [key, value] : doc.items()) {
    if (key == "betti") {
      out << "betti:\n" << betti_from_json(value).to_text();
    } else if (value.is_object()) {
      out << key << ":\n";
      for (const auto& [k, v] : value.items()) out << "  " << k << ": " << (v.is_object() ? v.dump() : scalar_text(v)) << '\n';
    } else if (value.is_array() && !value.empty() && value.front().is_object()) {
      out << key << ":\n";
      for (const auto& x : value) out << "  " << x.dump() << '\n';
    } else {
      out << key << ": " << scalar_text(value) << '\n';
    }
  }
  return out.str();
}

inline std::string render_sweep_text(const SweepReport& rep) {
  std::ostringstream out;
  out << "family: " << to_json(rep.spec).dump() << "\n";
  out << "instances: " << rep.instances << "\nfield: " << rep.field << "\n";
  out << "check                    pass   fail   skip    obs\n";
  for (const auto& [check, counts] : rep.summary()) {
    out << check << std::string(check.size() < 24 ? 24 - check.size() : 1, ' ');
    for (const char* v : {"pass", "fail", "skipped", "observation"}) {
      const std::string n = std::to_string(counts.at(v));
      out << ' ' << std::string(n.size() < 6 ? 6 - n.size() : 0, ' ') << n;
    }
    out << '\n';
  }
  out << "engines: " << to_json(rep.engines).dump() << "\n";
  for (const auto& r : rep.results)
    if (r.verdict == Verdict::fail) out << "FAIL " << to_json(r).dump() << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Edge ideals, regularity of powers and even-connection colon graphs"};
  app.name("edgereg");
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string graph_path, edges_text, engine_name = "auto", format = "json", config_path, out_dir;
  unsigned power = 1;
  std::optional<unsigned> k_param;
  std::optional<std::uint64_t> seed;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  unsigned characteristic = 0;
  std::vector<std::string> checks;
  bool hunter = false, timing = false;
  std::string kind;
  std::size_t size = 0;
  std::optional<std::size_t> size_min, cap;
  double density = 0.3;
  std::string girth_min;
  std::vector<std::string> names;

  auto add_graph = [&](CLI::App* c) { c->add_option("--graph", graph_path, "edge-list file")->required(); };
  auto add_format = [&](CLI::App* c, std::vector<std::string> allowed) {
    c->add_option("--format", format, "output format")->check(CLI::IsMember(allowed));
  };
  auto add_field = [&](CLI::App* c) {
    c->add_option("--characteristic", characteristic, "0 for the rationals, else a prime");
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "graph invariants and a very well-covered certificate");
  add_graph(analyze_cmd);
  add_format(analyze_cmd, {"json", "text"});

  auto* reg_cmd = app.add_subcommand("regularity", "Betti table and regularity of I(G)^s");
  add_graph(reg_cmd);
  reg_cmd->add_option("--power", power, "exponent s")->check(CLI::PositiveNumber);
  reg_cmd->add_option("--engine", engine_name, "auto, lcm, hochster or both")
      ->check(CLI::IsMember({"auto", "lcm", "hochster", "both"}));
  add_format(reg_cmd, {"json", "text"});
  add_field(reg_cmd);

  auto* colon_cmd = app.add_subcommand("colon", "graph of (I^{s+1} : e_1...e_s)");
  add_graph(colon_cmd);
  colon_cmd->add_option("--edges", edges_text, "the multiset e_1..e_s as u-v,u-v")->required();
  add_format(colon_cmd, {"json", "text", "dot"});

  auto* verify_cmd = app.add_subcommand("verify", "run checks on one graph");
  add_graph(verify_cmd);
  verify_cmd->add_option("--check", checks, "check names (repeatable)")->required();
  verify_cmd->add_option("--power", power, "exponent s")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--k", k_param, "odd-girth parameter k (default: derived)");
  verify_cmd->add_option("--edges", edges_text, "edge multiset for colon checks");
  verify_cmd->add_flag("--hunter", hunter, "evaluate the main equality outside its hypotheses");
  add_format(verify_cmd, {"json", "text"});
  add_field(verify_cmd);

  auto* sweep_cmd = app.add_subcommand("sweep", "run checks over a generated family");
  sweep_cmd->add_option("--config", config_path, "sweep config JSON")->required();
  sweep_cmd->add_option("--out", out_dir, "directory for report.json and report.csv");
  sweep_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--seed", seed, "overrides the family and sampling seed");
  sweep_cmd->add_flag("--timing", timing, "record per-check elapsed time");
  add_format(sweep_cmd, {"json", "csv", "text"});

  auto* gen_cmd = app.add_subcommand("generate", "list the instances of a family");
  gen_cmd->add_option("--config", config_path, "family JSON (alternative to the flags below)");
  gen_cmd->add_option("--kind", kind, "exhaustive-all, exhaustive-vwc, random-vwc, random-all or named");
  gen_cmd->add_option("--size", size, "n, or m for the vwc kinds");
  gen_cmd->add_option("--size-min", size_min, "lower end of the size range");
  gen_cmd->add_option("--density", density, "edge probability for random kinds");
  gen_cmd->add_option("--seed", seed, "seed for random kinds");
  gen_cmd->add_option("--odd-girth-min", girth_min, "odd integer >= 3 or inf");
  gen_cmd->add_option("--cap", cap, "instance cap");
  gen_cmd->add_option("--name", names, "graph names for kind named (repeatable)");
  gen_cmd->add_option("--out", out_dir, "write one edge-list file per instance here");
  add_format(gen_cmd, {"json", "text"});

  std::vector<const char*> argv{"edgereg"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  auto emit = [&](const Json& doc) {
    if (format == "text") out << render_text(doc);
    else out << doc.dump(2) << '\n';
  };

  try {
    ResolutionOptions opt;
    if (characteristic != 0 && !detail::is_prime(characteristic))
      throw InputError("--characteristic must be 0 or a prime");
    opt.characteristic = characteristic;

    if (analyze_cmd->parsed()) {
      emit(analyze(load_graph(graph_path)));
      return kExitOk;
    }
    if (reg_cmd->parsed()) {
      emit(regularity(load_graph(graph_path), power, parse_engine(engine_name), opt));
      return kExitOk;
    }
    if (colon_cmd->parsed()) {
      const Graph g = load_graph(graph_path);
      const EdgeMultiset m(g, parse_edge_spec(edges_text));
      if (format == "dot") out << to_dot(g, colon_graph(g, m));
      else emit(colon(g, m));
      return kExitOk;
    }
    if (verify_cmd->parsed()) {
      VerifyOptions v;
      v.checks = checks;
      v.power = power;
      v.k = k_param;
      v.hunter = hunter;
      if (!edges_text.empty()) v.edges = parse_edge_spec(edges_text);
      int code = kExitOk;
      emit(verify(load_graph(graph_path), v, opt, code));
      return code;
    }
    if (sweep_cmd->parsed()) {
      Json cfg_json;
      try {
        cfg_json = Json::parse(read_file(config_path));
      } catch (const Json::parse_error& e) {
        throw InputError(std::string("config is not valid JSON: ") + e.what());
      }
      SweepConfig cfg = sweep_config_from_json(cfg_json);
      if (seed) cfg.family.seed = cfg.params.seed = *seed;
      cfg.params.jobs = jobs;
      cfg.params.timing = timing;
      const std::vector<Instance> instances = generate_family(cfg.family);
      RegularityService svc(cfg.params.resolution, cfg.params.cross_validate);
      const SweepReport rep = run_sweep_on(cfg.family, instances, cfg.checks, cfg.params, svc);
      const Json doc = to_json(rep, &instances);
      if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream(std::filesystem::path(out_dir) / "report.json") << doc.dump(2) << '\n';
        std::ofstream(std::filesystem::path(out_dir) / "report.csv") << to_csv(rep);
        out << render_sweep_text(rep);
      } else if (format == "csv") {
        out << to_csv(rep);
      } else if (format == "text") {
        out << render_sweep_text(rep);
      } else {
        out << doc.dump(2) << '\n';
      }
      return rep.exit_code();
    }
    if (gen_cmd->parsed()) {
      FamilySpec spec;
      if (!config_path.empty()) {
        try {
          spec = family_from_json(Json::parse(read_file(config_path)));
        } catch (const Json::parse_error& e) {
          throw InputError(std::string("config is not valid JSON: ") + e.what());
        }
        if (seed) spec.seed = *seed;
      } else {
        if (kind.empty()) throw InputError("generate needs --config or --kind");
        spec.kind = parse_family_kind(kind);
        spec.size = size;
        spec.size_min = size_min;
        spec.density = density;
        spec.seed = seed.value_or(0);
        spec.cap = cap;
        spec.names = names;
        if (!girth_min.empty()) {
          if (girth_min == "inf") spec.odd_girth_min = OddGirth::infinite();
          else {
            const auto v = detail::parse_unsigned(girth_min);
            if (!v) throw InputError("--odd-girth-min must be an odd integer >= 3 or inf");
            spec.odd_girth_min = OddGirth::finite(static_cast<unsigned>(*v));
          }
        }
        spec.validate();
      }
      const std::vector<Instance> instances = generate_family(spec);
      if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        for (const auto& inst : instances)
          std::ofstream(std::filesystem::path(out_dir) / (inst.id + ".edges")) << to_edge_list(inst.graph);
      }
      if (format == "text") {
        for (const auto& inst : instances) {
          out << "# " << inst.id;
          if (!inst.label.empty()) out << ' ' << inst.label;
          out << '\n' << to_edge_list(inst.graph) << '\n';
        }
      } else {
        out << Json{{"spec", to_json(spec)}, {"instances", instances_json(instances)}}.dump(2) << '\n';
      }
      return kExitOk;
    }
  } catch (const ConsistencyError& e) {
    err << "inconsistency: " << e.what() << '\n';
    return kExitFail;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace edgereg::cli
