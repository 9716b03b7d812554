#pragma once

#include <fstream>
#include <optional>
#include <set>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ppaa/aa_semantics.hpp"
#include "ppaa/aba.hpp"
#include "ppaa/distribution.hpp"
#include "ppaa/equivalence.hpp"
#include "ppaa/errors.hpp"
#include "ppaa/grounder.hpp"
#include "ppaa/paa.hpp"
#include "ppaa/parser.hpp"

namespace ppaa::cli {

enum class Command { Query, Show, Worlds, Check };
enum class Semantics { Distribution, Argumentation, Both };
enum class Format { Human, Json };

enum ExitCode : int { kOk = 0, kInputError = 1, kCapExceeded = 2, kCounterexample = 3 };

struct RunConfig {
  Command command = Command::Query;
  std::string input_path;
  std::optional<std::string> query_text;
  Semantics semantics = Semantics::Both;
  Format format = Format::Human;
  bool trace = false;
  std::uint64_t worlds_cap = std::uint64_t{1} << 24;
  std::size_t args_cap = 100'000;
  std::size_t stable_cap = 25;
  unsigned threads = 1;
  std::uint64_t seed_first = 0;
  std::uint64_t seed_last = 99;
  std::string counterexample_path = "counterexample.pl";
};

inline EngineOptions engine_options(const RunConfig& c) {
  return EngineOptions{c.worlds_cap, c.args_cap, c.threads};
}

using nlohmann::ordered_json;

inline ordered_json rational_json(const Rational& r) {
  return ordered_json{{"exact", r.str()}, {"decimal", r.to_decimal(12)}};
}

inline std::string rational_text(const Rational& r) { return r.str() + " (" + r.to_decimal(12) + ")"; }

inline ordered_json atoms_json(const std::vector<Atom>& atoms) {
  ordered_json out = ordered_json::array();
  for (const auto& a : atoms) out.push_back(to_string(a));
  return out;
}

inline std::string join_atoms(const std::vector<Atom>& atoms, const std::string& prefix = "") {
  std::string s;
  for (std::size_t i = 0; i < atoms.size(); ++i) s += (i ? ", " : "") + prefix + to_string(atoms[i]);
  return s;
}

inline GroundProgram load_program(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(InputError::Kind::Syntax, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ground(parse_program(ss.str()));
}

inline ordered_json trace_json(const std::vector<WorldTrace>& trace) {
  ordered_json out = ordered_json::array();
  for (const auto& t : trace) {
    out.push_back(ordered_json{
        {"world", atoms_json(t.world.chosen)},
        {"probability", rational_json(t.probability)},
        {"wfm",
         ordered_json{{"true", atoms_json(t.wfm.true_atoms)},
                      {"false", atoms_json(t.wfm.false_atoms)},
                      {"undefined", atoms_json(t.wfm.undefined_atoms)}}},
        {"accepted_atoms", atoms_json(t.accepted_atoms)},
        {"accepted_naf", atoms_json(t.accepted_naf)},
        {"match", t.match}});
  }
  return out;
}

inline void print_trace(std::ostream& out, const std::vector<WorldTrace>& trace) {
  for (const auto& t : trace) {
    out << "  world " << render_world(t.world) << "  P=" << rational_text(t.probability) << "\n"
        << "    wfm: true {" << join_atoms(t.wfm.true_atoms) << "} false {"
        << join_atoms(t.wfm.false_atoms) << "} undefined {" << join_atoms(t.wfm.undefined_atoms)
        << "}\n"
        << "    grounded claims: {" << join_atoms(t.accepted_atoms) << "} {"
        << join_atoms(t.accepted_naf, "not ") << "}" << (t.match ? "" : "  MISMATCH") << "\n";
  }
}

// ---------------------------------------------------------------------------

inline int cmd_query(const RunConfig& c, std::ostream& out) {
  if (!c.query_text) throw InputError(InputError::Kind::Query, "--query is required");
  auto gp = load_program(c.input_path);
  Atom q = parse_query(*c.query_text);
  auto opts = engine_options(c);
  ordered_json doc{{"command", "query"}, {"query", to_string(q)}};
  int code = kOk;

  if (c.semantics == Semantics::Both) {
    EquivalenceChecker checker(gp, opts);
    auto r = checker.check(q, c.trace);
    if (!r.holds()) code = kCounterexample;
    if (c.format == Format::Json) {
      doc["semantics"] = "both";
      doc["p_success"] = rational_json(r.p_success);
      doc["prob_g_query"] = rational_json(r.prob_g_query);
      doc["prob_g_argument_sum"] = rational_json(r.prob_g_argument_sum);
      doc["eq1_holds"] = r.eq1_holds;
      doc["eq2_holds"] = r.eq2_holds;
      if (c.trace) doc["per_world_trace"] = trace_json(r.per_world_trace);
      out << doc.dump(2) << "\n";
    } else {
      out << "query: " << to_string(q) << "\n"
          << "P_s(q|T) [distribution]:     " << rational_text(r.p_success) << "\n"
          << "Prob_G(q) [argumentation]:   " << rational_text(r.prob_g_query) << "\n"
          << "sum of Prob_G(arg) for q:    " << rational_text(r.prob_g_argument_sum) << "\n"
          << "eq1 P_s = Prob_G(q):         " << (r.eq1_holds ? "holds" : "FAILS") << "\n"
          << "eq2 P_s <= sum Prob_G(arg):  " << (r.eq2_holds ? "holds" : "FAILS") << "\n";
      if (c.trace) print_trace(out, r.per_world_trace);
    }
    return code;
  }

  Rational p;
  const char* name;
  if (c.semantics == Semantics::Distribution) {
    p = DistributionEngine(gp, opts).success_probability(q);
    name = "distribution";
  } else {
    p = PaaEngine(gp, opts).grounded_prob_query(q);
    name = "argumentation";
  }
  if (c.format == Format::Json) {
    doc["semantics"] = name;
    doc["probability"] = rational_json(p);
    out << doc.dump(2) << "\n";
  } else {
    out << "query: " << to_string(q) << "\n" << name << ": " << rational_text(p) << "\n";
  }
  return code;
}

inline int cmd_show_framework(const RunConfig& c, std::ostream& out) {
  auto gp = load_program(c.input_path);
  PaaEngine engine(gp, engine_options(c));
  const auto& f = engine.aba();
  const auto& aaf = engine.aaf();
  const auto all_facts = (WorldMask{1} << gp.pfacts.size()) - 1;
  auto grounded = engine.grounded_in(all_facts);
  std::optional<std::vector<std::vector<std::uint32_t>>> stable;
  if (aaf.size() <= c.stable_cap) stable = stable_extensions(aaf, StableOptions{c.stable_cap});

  auto arg_name = [](std::uint32_t i) { return "A" + std::to_string(i); };

  if (c.format == Format::Json) {
    ordered_json doc{{"command", "show"}};
    ordered_json lang = ordered_json::array();
    for (auto s : f.language()) lang.push_back(f.render(s));
    doc["language"] = lang;
    ordered_json rules = ordered_json::array();
    for (std::size_t i = 0; i < f.rules().size(); ++i)
      rules.push_back(ordered_json{{"id", "r" + std::to_string(i)}, {"rule", to_string(f.rules()[i])}});
    doc["rules"] = rules;
    ordered_json assumptions = ordered_json::array();
    for (auto a : f.assumptions())
      assumptions.push_back(
          ordered_json{{"assumption", f.render(a)}, {"contrary", f.render(f.contrary(a))}});
    doc["assumptions"] = assumptions;
    ordered_json args = ordered_json::array();
    for (std::uint32_t i = 0; i < aaf.size(); ++i) {
      const auto& a = aaf.args[i];
      ordered_json support = ordered_json::array(), used = ordered_json::array();
      for (auto s : a.assumptions) support.push_back(f.render(s));
      for (auto r : a.rules_used) used.push_back("r" + std::to_string(r));
      args.push_back(ordered_json{{"id", arg_name(i)},
                                  {"claim", f.render(a.claim)},
                                  {"assumptions", support},
                                  {"rules", used},
                                  {"text", render_argument(f, a)}});
    }
    doc["arguments"] = args;
    ordered_json attacks = ordered_json::array();
    for (auto [from, to] : aaf.attacks) attacks.push_back(ordered_json::array({arg_name(from), arg_name(to)}));
    doc["attacks"] = attacks;
    ordered_json g = ordered_json::array();
    for (auto i : grounded) g.push_back(arg_name(i));
    doc["grounded_all_facts"] = g;
    if (stable) {
      ordered_json st = ordered_json::array();
      for (const auto& ext : *stable) {
        ordered_json e = ordered_json::array();
        for (auto i : ext) e.push_back(arg_name(i));
        st.push_back(e);
      }
      doc["stable_extensions"] = st;
    } else {
      doc["stable_extensions"] = nullptr;
    }
    doc["warnings"] = f.warnings();
    out << doc.dump(2) << "\n";
    return kOk;
  }

  out << "language:";
  for (auto s : f.language()) out << " " << f.render(s);
  out << "\nrules: " << f.rules().size() << "\n";
  for (std::size_t i = 0; i < f.rules().size(); ++i)
    out << "  r" << i << ": " << to_string(f.rules()[i]) << ".\n";
  auto assumptions = f.assumptions();
  out << "assumptions: " << assumptions.size() << "\n";
  for (auto a : assumptions) out << "  " << f.render(a) << "  contrary " << f.render(f.contrary(a)) << "\n";
  out << "arguments: " << aaf.size() << "\n";
  for (std::uint32_t i = 0; i < aaf.size(); ++i)
    out << "  " << arg_name(i) << ": " << render_argument(f, aaf.args[i]) << "\n";
  out << "attacks: " << aaf.attacks.size() << "\n";
  for (auto [from, to] : aaf.attacks) out << "  " << arg_name(from) << " -> " << arg_name(to) << "\n";
  out << "grounded extension (all facts chosen):";
  for (auto i : grounded) out << " " << arg_name(i);
  out << "\n";
  if (stable) {
    out << "stable extensions: " << stable->size() << "\n";
    for (const auto& ext : *stable) {
      out << "  {";
      for (std::size_t k = 0; k < ext.size(); ++k) out << (k ? ", " : "") << arg_name(ext[k]);
      out << "}\n";
    }
  } else {
    out << "stable extensions: skipped (" << aaf.size() << " arguments > cap " << c.stable_cap << ")\n";
  }
  for (const auto& w : f.warnings()) out << "warning: " << w << "\n";
  return kOk;
}

inline int cmd_worlds(const RunConfig& c, std::ostream& out) {
  auto gp = load_program(c.input_path);
  PaaEngine engine(gp, engine_options(c));
  auto table = world_table(gp.pfacts, c.worlds_cap);
  if (table.total() != Rational(1))
    throw std::logic_error("world probabilities sum to " + table.total().str());
  const auto& f = engine.aba();

  ordered_json rows = ordered_json::array();
  std::ostringstream text;
  text << "worlds: " << table.rows.size() << "\n";
  for (const auto& row : table.rows) {
    std::set<Sentence> accepted;
    for (auto a : engine.grounded_in(row.mask)) accepted.insert(engine.aaf().args[a].claim);
    std::vector<std::string> claims;
    for (auto s : accepted) claims.push_back(f.render(s));
    if (c.format == Format::Json) {
      rows.push_back(ordered_json{{"world", atoms_json(row.world.chosen)},
                                  {"probability", rational_json(row.probability)},
                                  {"grounded_claims", claims}});
    } else {
      text << "  " << render_world(row.world) << "  " << rational_text(row.probability) << "  claims:";
      for (const auto& s : claims) text << " " << s << ";";
      text << "\n";
    }
  }
  if (c.format == Format::Json) {
    ordered_json doc{{"command", "worlds"}, {"worlds", rows}, {"total", rational_json(table.total())}};
    out << doc.dump(2) << "\n";
  } else {
    out << text.str() << "total: " << table.total().str() << "\n";
  }
  return kOk;
}

/// Result of checking one generated program on every atom of its base.
struct SeedResult {
  std::uint64_t seed = 0;
  std::size_t queries = 0;
  std::size_t worlds = 0;
  std::optional<std::string> counterexample;
};

inline SeedResult check_seed(std::uint64_t seed, const EngineOptions& opts) {
  SeedResult res{seed, 0, 0, std::nullopt};
  Program p = random_program(seed);
  GroundProgram gp = ground(p);
  EquivalenceChecker checker(gp, EngineOptions{opts.max_worlds, opts.max_arguments, 1});
  res.worlds = checker.trace().size();
  for (const auto& q : gp.herbrand_base) {
    ++res.queries;
    auto r = checker.check(q);
    if (!r.holds()) {
      res.counterexample = "% seed " + std::to_string(seed) + "\n" + describe_counterexample(p, r);
      break;
    }
  }
  return res;
}

inline int cmd_check(const RunConfig& c, std::ostream& out) {
  if (c.seed_last < c.seed_first) throw InputError(InputError::Kind::Syntax, "empty seed range");
  const std::size_t n = c.seed_last - c.seed_first + 1;
  std::vector<SeedResult> results(n);
  parallel_for(n, c.threads, [&](std::size_t i) {
    results[i] = check_seed(c.seed_first + i, engine_options(c));
  });

  std::size_t queries = 0, worlds = 0;
  std::vector<const SeedResult*> failures;
  for (const auto& r : results) {
    queries += r.queries;
    worlds += r.worlds;
    if (r.counterexample) failures.push_back(&r);
  }
  if (!failures.empty()) {
    std::ofstream dump(c.counterexample_path, std::ios::binary);
    dump << *failures.front()->counterexample;
  }
  if (c.format == Format::Json) {
    ordered_json failed = ordered_json::array();
    for (auto* f : failures) failed.push_back(f->seed);
    ordered_json doc{{"command", "check"},
                     {"seed_first", c.seed_first},
                     {"seed_last", c.seed_last},
                     {"programs", n},
                     {"queries", queries},
                     {"worlds", worlds},
                     {"counterexamples", failures.size()},
                     {"failed_seeds", failed}};
    if (!failures.empty()) doc["counterexample_file"] = c.counterexample_path;
    out << doc.dump(2) << "\n";
  } else {
    out << "programs: " << n << " (seeds " << c.seed_first << ".." << c.seed_last << ")\n"
        << "queries: " << queries << "\n"
        << "worlds: " << worlds << "\n"
        << "counterexamples: " << failures.size() << "\n";
    if (!failures.empty()) {
      out << "first counterexample (seed " << failures.front()->seed << ") written to "
          << c.counterexample_path << "\n"
          << *failures.front()->counterexample;
    } else {
      out << "PASS\n";
    }
  }
  return failures.empty() ? kOk : kCounterexample;
}

/// Dispatches a command, mapping failures onto the exit-code contract.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    switch (c.command) {
      case Command::Query: return cmd_query(c, out);
      case Command::Show: return cmd_show_framework(c, out);
      case Command::Worlds: return cmd_worlds(c, out);
      case Command::Check: return cmd_check(c, out);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const CapExceeded& e) {
    err << "refused: " << e.what() << "\n";
    return kCapExceeded;
  }
  return kOk;
}

}  // namespace ppaa::cli
