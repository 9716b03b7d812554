#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ppaa/errors.hpp"
#include "ppaa/rational.hpp"

namespace ppaa {

/// Name of the reserved contrary of fact assumptions. Never a valid
/// predicate or constant in user programs.
inline constexpr const char* kChiSymbol = "_chi";

struct Term {
  enum class Kind { Constant, Variable, Compound };

  Kind kind = Kind::Constant;
  std::string name;
  std::vector<Term> args;  // Compound only

  static Term constant(std::string n) { return {Kind::Constant, std::move(n), {}}; }
  static Term variable(std::string n) { return {Kind::Variable, std::move(n), {}}; }
  static Term compound(std::string f, std::vector<Term> a) {
    return {Kind::Compound, std::move(f), std::move(a)};
  }

  bool is_variable() const { return kind == Kind::Variable; }
  bool ground() const {
    if (kind == Kind::Variable) return false;
    return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.ground(); });
  }

  friend bool operator==(const Term&, const Term&) = default;
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = a.name <=> b.name; c != 0) return c;
    return std::lexicographical_compare_three_way(a.args.begin(), a.args.end(), b.args.begin(),
                                                  b.args.end());
  }
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  Atom() = default;
  explicit Atom(std::string p, std::vector<Term> a = {}) : predicate(std::move(p)), args(std::move(a)) {}

  bool ground() const {
    return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.ground(); });
  }

  friend bool operator==(const Atom&, const Atom&) = default;
  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
    if (auto c = a.predicate <=> b.predicate; c != 0) return c;
    return std::lexicographical_compare_three_way(a.args.begin(), a.args.end(), b.args.begin(),
                                                  b.args.end());
  }
};

struct Literal {
  Atom atom;
  bool negated = false;

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

struct Rule {
  Atom head;
  std::vector<Literal> body;
  std::optional<SourceSpan> span;  // not part of identity

  bool is_fact() const { return body.empty(); }

  friend bool operator==(const Rule& a, const Rule& b) { return a.head == b.head && a.body == b.body; }
  friend std::strong_ordering operator<=>(const Rule& a, const Rule& b) {
    if (auto c = a.head <=> b.head; c != 0) return c;
    return std::lexicographical_compare_three_way(a.body.begin(), a.body.end(), b.body.begin(),
                                                  b.body.end());
  }
};

struct ProbFact {
  Rational prob;
  Atom atom;
  std::optional<SourceSpan> span;  // not part of identity

  friend bool operator==(const ProbFact& a, const ProbFact& b) {
    return a.prob == b.prob && a.atom == b.atom;
  }
};

/// T = F ∪ R as written, possibly with variables.
struct Program {
  std::vector<Rule> rules;
  std::vector<ProbFact> pfacts;

  friend bool operator==(const Program&, const Program&) = default;
};

/// Variable-free program. Rules are sorted and unique, facts sorted by atom,
/// and the Herbrand base is sorted; positions are the canonical indices used
/// by every downstream engine.
struct GroundProgram {
  std::vector<Rule> rules;
  std::vector<ProbFact> pfacts;
  std::vector<Atom> herbrand_base;

  /// Index of `a` in herbrand_base, or nullopt.
  std::optional<std::size_t> index_of(const Atom& a) const {
    auto it = std::lower_bound(herbrand_base.begin(), herbrand_base.end(), a);
    if (it == herbrand_base.end() || *it != a) return std::nullopt;
    return static_cast<std::size_t>(it - herbrand_base.begin());
  }

  friend bool operator==(const GroundProgram&, const GroundProgram&) = default;
};

// ---------------------------------------------------------------------------
// Rendering

inline std::string to_string(const Term& t) {
  if (t.kind != Term::Kind::Compound) return t.name;
  std::string out = t.name + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ",";
    out += to_string(t.args[i]);
  }
  return out + ")";
}

inline std::string to_string(const Atom& a) {
  if (a.args.empty()) return a.predicate;
  std::string out = a.predicate + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ",";
    out += to_string(a.args[i]);
  }
  return out + ")";
}

inline std::string to_string(const Literal& l) {
  return l.negated ? "not " + to_string(l.atom) : to_string(l.atom);
}

/// Clause text without the terminating period.
inline std::string to_string(const Rule& r) {
  std::string out = to_string(r.head);
  if (r.body.empty()) return out;
  out += " :- ";
  for (std::size_t i = 0; i < r.body.size(); ++i) {
    if (i) out += ", ";
    out += to_string(r.body[i]);
  }
  return out;
}

inline std::string render_probability(const Rational& p) {
  if (auto d = p.exact_decimal()) return *d;
  return p.str();
}

inline std::string to_string(const ProbFact& f) {
  return render_probability(f.prob) + "::" + to_string(f.atom);
}

/// Source text that parses back to a structurally equal program.
inline std::string pretty_print(const Program& p) {
  std::string out;
  for (const auto& f : p.pfacts) out += to_string(f) + ".\n";
  for (const auto& r : p.rules) out += to_string(r) + ".\n";
  return out;
}

// ---------------------------------------------------------------------------
// Unification (used by validation to compare non-ground heads and facts)

namespace detail {

using Substitution = std::map<std::string, Term>;

inline const Term& walk(const Term& t, const Substitution& s) {
  const Term* cur = &t;
  while (cur->is_variable()) {
    auto it = s.find(cur->name);
    if (it == s.end()) break;
    cur = &it->second;
  }
  return *cur;
}

inline bool unify_terms(const Term& a, const Term& b, Substitution& s) {
  const Term& x = walk(a, s);
  const Term& y = walk(b, s);
  if (x.is_variable() && y.is_variable() && x.name == y.name) return true;
  if (x.is_variable()) { s[x.name] = y; return true; }
  if (y.is_variable()) { s[y.name] = x; return true; }
  if (x.kind != y.kind || x.name != y.name || x.args.size() != y.args.size()) return false;
  for (std::size_t i = 0; i < x.args.size(); ++i)
    if (!unify_terms(x.args[i], y.args[i], s)) return false;
  return true;
}

inline Term rename(const Term& t, const std::string& suffix) {
  Term out = t;
  if (out.is_variable()) out.name += suffix;
  for (auto& a : out.args) a = rename(a, suffix);
  return out;
}

}  // namespace detail

/// True if the two atoms have a common instance (variables renamed apart).
inline bool unifiable(const Atom& a, const Atom& b) {
  if (a.predicate != b.predicate || a.args.size() != b.args.size()) return false;
  detail::Substitution s;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!detail::unify_terms(detail::rename(a.args[i], "#1"), detail::rename(b.args[i], "#2"), s))
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  enum class Kind { FactIsRuleHead, DuplicateFact, ProbabilityRange, ReservedSymbol, EmptyPredicate };

  Kind kind;
  std::string message;
  std::optional<SourceSpan> span;
};

namespace detail {

inline bool mentions_reserved(const Term& t) {
  if (t.name == kChiSymbol) return true;
  return std::any_of(t.args.begin(), t.args.end(), mentions_reserved);
}

inline bool mentions_reserved(const Atom& a) {
  return a.predicate == kChiSymbol || std::any_of(a.args.begin(), a.args.end(),
                                                  [](const Term& t) { return mentions_reserved(t); });
}

inline void check_atom(const Atom& a, const std::optional<SourceSpan>& span,
                       std::vector<Violation>& out) {
  if (a.predicate.empty())
    out.push_back({Violation::Kind::EmptyPredicate, "atom with empty predicate symbol", span});
  if (mentions_reserved(a))
    out.push_back({Violation::Kind::ReservedSymbol,
                   "reserved symbol " + std::string(kChiSymbol) + " used in " + to_string(a), span});
}

}  // namespace detail

/// One record per broken invariant; empty iff `program` is well formed.
inline std::vector<Violation> validate(const Program& program) {
  std::vector<Violation> out;
  for (const auto& r : program.rules) {
    detail::check_atom(r.head, r.span, out);
    for (const auto& l : r.body) detail::check_atom(l.atom, r.span, out);
  }
  for (std::size_t i = 0; i < program.pfacts.size(); ++i) {
    const auto& f = program.pfacts[i];
    detail::check_atom(f.atom, f.span, out);
    if (f.prob < Rational(0) || f.prob > Rational(1))
      out.push_back({Violation::Kind::ProbabilityRange,
                     "probability " + f.prob.str() + " of " + to_string(f.atom) + " outside [0,1]",
                     f.span});
    for (const auto& r : program.rules)
      if (unifiable(f.atom, r.head)) {
        out.push_back({Violation::Kind::FactIsRuleHead,
                       "probabilistic fact " + to_string(f.atom) + " is the head of rule '" +
                           to_string(r) + "'",
                       f.span});
      }
    for (std::size_t j = 0; j < i; ++j)
      if (program.pfacts[j].atom == f.atom)
        out.push_back({Violation::Kind::DuplicateFact,
                       "duplicate probabilistic fact for " + to_string(f.atom), f.span});
  }
  return out;
}

/// Ground atoms occurring anywhere in the given rules and facts, sorted.
inline std::vector<Atom> herbrand_base(const std::vector<Rule>& rules,
                                       const std::vector<ProbFact>& pfacts) {
  std::set<Atom> atoms;
  for (const auto& r : rules) {
    atoms.insert(r.head);
    for (const auto& l : r.body) atoms.insert(l.atom);
  }
  for (const auto& f : pfacts) atoms.insert(f.atom);
  return {atoms.begin(), atoms.end()};
}

/// Canonicalises an already-ground rule/fact collection.
inline GroundProgram make_ground_program(std::vector<Rule> rules, std::vector<ProbFact> pfacts) {
  std::sort(rules.begin(), rules.end());
  rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
  std::sort(pfacts.begin(), pfacts.end(),
            [](const ProbFact& a, const ProbFact& b) { return a.atom < b.atom; });
  GroundProgram gp;
  gp.herbrand_base = herbrand_base(rules, pfacts);
  gp.rules = std::move(rules);
  gp.pfacts = std::move(pfacts);
  return gp;
}

/// True if ground atom `g` is an instance of `pattern` (repeated variables
/// must bind consistently).
inline bool matches(const Atom& pattern, const Atom& g) {
  if (pattern.predicate != g.predicate || pattern.args.size() != g.args.size()) return false;
  std::map<std::string, const Term*> binding;
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    const Term& p = pattern.args[i];
    if (p.is_variable()) {
      auto [it, fresh] = binding.emplace(p.name, &g.args[i]);
      if (!fresh && *it->second != g.args[i]) return false;
    } else if (p != g.args[i]) {
      return false;
    }
  }
  return true;
}

/// View of a ground program as a Program (for validation and printing).
inline Program as_program(const GroundProgram& gp) { return Program{gp.rules, gp.pfacts}; }

}  // namespace ppaa
