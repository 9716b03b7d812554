#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ppaa/errors.hpp"
#include "ppaa/program.hpp"

namespace ppaa {

struct GroundingOptions {
  std::size_t max_ground_rules = 1'000'000;
};

namespace detail {

inline void collect_constants(const Term& t, std::set<std::string>& out) {
  if (t.kind == Term::Kind::Constant) out.insert(t.name);
  for (const auto& a : t.args) collect_constants(a, out);
}

inline void collect_vars(const Atom& a, std::set<std::string>& out) {
  for (const auto& t : a.args)
    if (t.is_variable()) out.insert(t.name);
}

inline void reject_function_symbols(const Atom& a, const std::optional<SourceSpan>& span) {
  for (const auto& t : a.args)
    if (t.kind == Term::Kind::Compound)
      throw InputError(InputError::Kind::Grounding,
                       "function symbol '" + t.name + "/" + std::to_string(t.args.size()) +
                           "' in " + to_string(a) + " makes the Herbrand universe infinite",
                       span);
}

inline Atom substitute(const Atom& a, const std::map<std::string, std::string>& binding) {
  Atom out = a;
  for (auto& t : out.args)
    if (t.is_variable()) t = Term::constant(binding.at(t.name));
  return out;
}

}  // namespace detail

/// Sorted constants of a (function-free) program: its Herbrand universe.
inline std::vector<std::string> herbrand_universe(const Program& program) {
  std::set<std::string> constants;
  auto from_atom = [&](const Atom& a) {
    for (const auto& t : a.args) detail::collect_constants(t, constants);
  };
  for (const auto& r : program.rules) {
    from_atom(r.head);
    for (const auto& l : r.body) from_atom(l.atom);
  }
  for (const auto& f : program.pfacts) from_atom(f.atom);
  return {constants.begin(), constants.end()};
}

/// Replaces every rule by all of its instances over the program's constants.
/// Rules must be range-restricted: every variable occurs in a positive body
/// literal. Probabilistic facts must already be ground.
inline GroundProgram ground(const Program& program, const GroundingOptions& opts = {}) {
  for (const auto& r : program.rules) {
    detail::reject_function_symbols(r.head, r.span);
    for (const auto& l : r.body) detail::reject_function_symbols(l.atom, r.span);
  }
  for (const auto& f : program.pfacts) {
    detail::reject_function_symbols(f.atom, f.span);
    if (!f.atom.ground())
      throw InputError(InputError::Kind::Grounding,
                       "probabilistic fact " + to_string(f.atom) + " is not range-restricted", f.span);
  }

  const auto universe = herbrand_universe(program);
  std::vector<Rule> rules;
  for (const auto& r : program.rules) {
    std::set<std::string> positive, all;
    for (const auto& l : r.body)
      if (!l.negated) detail::collect_vars(l.atom, positive);
    detail::collect_vars(r.head, all);
    for (const auto& l : r.body) detail::collect_vars(l.atom, all);
    for (const auto& v : all)
      if (!positive.count(v))
        throw InputError(InputError::Kind::Grounding,
                         "rule '" + to_string(r) + "' is not range-restricted: variable " + v +
                             " does not occur in a positive body literal",
                         r.span);
    if (all.empty()) {
      rules.push_back(Rule{r.head, r.body, std::nullopt});
      continue;
    }
    if (universe.empty())
      throw InputError(InputError::Kind::Grounding,
                       "rule '" + to_string(r) + "' has variables but the program has no constants",
                       r.span);

    std::vector<std::string> vars(all.begin(), all.end());
    // Odometer over universe^|vars|.
    std::vector<std::size_t> digit(vars.size(), 0);
    std::map<std::string, std::string> binding;
    for (;;) {
      if (rules.size() >= opts.max_ground_rules)
        throw CapExceeded("ground-rules", opts.max_ground_rules, rules.size() + 1);
      for (std::size_t i = 0; i < vars.size(); ++i) binding[vars[i]] = universe[digit[i]];
      Rule g;
      g.head = detail::substitute(r.head, binding);
      for (const auto& l : r.body) g.body.push_back({detail::substitute(l.atom, binding), l.negated});
      rules.push_back(std::move(g));
      std::size_t k = 0;
      while (k < digit.size() && ++digit[k] == universe.size()) digit[k++] = 0;
      if (k == digit.size()) break;
    }
  }

  std::vector<ProbFact> pfacts;
  for (const auto& f : program.pfacts) pfacts.push_back({f.prob, f.atom, std::nullopt});
  return make_ground_program(std::move(rules), std::move(pfacts));
}

}  // namespace ppaa
