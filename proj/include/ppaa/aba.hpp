#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ppaa/errors.hpp"
#include "ppaa/program.hpp"
#include "ppaa/wfm.hpp"

namespace ppaa {

/// Element of the ABA language: a ground atom, its negation-as-failure
/// literal, or the reserved contrary χ of fact assumptions. Atoms are
/// referenced by their index in the framework's Herbrand base.
struct Sentence {
  enum class Kind : std::uint8_t { Atom, Naf, Chi };

  Kind kind = Kind::Atom;
  std::uint32_t atom = 0;  // unused for Chi

  static constexpr Sentence positive(std::uint32_t a) { return {Kind::Atom, a}; }
  static constexpr Sentence naf(std::uint32_t a) { return {Kind::Naf, a}; }
  static constexpr Sentence chi() { return {Kind::Chi, 0}; }

  friend bool operator==(const Sentence&, const Sentence&) = default;
  friend auto operator<=>(const Sentence&, const Sentence&) = default;
};

/// Flat ProbLog-ABA framework ⟨L, R, A, ‾⟩ with A = HB^not ∪ F and
/// contrary(not p) = p, contrary(f) = χ for f ∈ F.
class AbaFramework {
 public:
  AbaFramework() = default;
  AbaFramework(std::vector<Atom> base, std::vector<Rule> rules, std::vector<Atom> fact_atoms)
      : base_(std::move(base)), rules_(std::move(rules)), facts_(std::move(fact_atoms)) {
    indexed_ = IndexedProgram::build(rules_, base_);
    is_fact_.assign(base_.size(), 0);
    for (const auto& f : facts_) {
      auto it = std::lower_bound(base_.begin(), base_.end(), f);
      if (it == base_.end() || *it != f)
        throw std::invalid_argument("fact assumption " + to_string(f) + " outside the base");
      is_fact_[static_cast<std::size_t>(it - base_.begin())] = 1;
    }
  }

  const std::vector<Atom>& herbrand_base() const { return base_; }
  const std::vector<Rule>& rules() const { return rules_; }
  const IndexedProgram& indexed_rules() const { return indexed_; }
  const std::vector<Atom>& fact_assumptions() const { return facts_; }

  bool is_fact_atom(std::uint32_t a) const { return is_fact_[a] != 0; }

  /// HB ∪ HB^not ∪ {χ}, canonically ordered.
  std::vector<Sentence> language() const {
    std::vector<Sentence> out;
    for (std::uint32_t i = 0; i < base_.size(); ++i) out.push_back(Sentence::positive(i));
    for (std::uint32_t i = 0; i < base_.size(); ++i) out.push_back(Sentence::naf(i));
    out.push_back(Sentence::chi());
    return out;
  }

  /// F then HB^not, canonically ordered.
  std::vector<Sentence> assumptions() const {
    std::vector<Sentence> out;
    for (std::uint32_t i = 0; i < base_.size(); ++i)
      if (is_fact_[i]) out.push_back(Sentence::positive(i));
    for (std::uint32_t i = 0; i < base_.size(); ++i) out.push_back(Sentence::naf(i));
    return out;
  }

  bool is_assumption(Sentence s) const {
    switch (s.kind) {
      case Sentence::Kind::Naf: return s.atom < base_.size();
      case Sentence::Kind::Atom: return s.atom < base_.size() && is_fact_[s.atom];
      case Sentence::Kind::Chi: return false;
    }
    return false;
  }

  /// Contrary of an assumption. Throws for non-assumptions.
  Sentence contrary(Sentence a) const {
    if (!is_assumption(a)) throw std::invalid_argument("contrary of non-assumption " + render(a));
    return a.kind == Sentence::Kind::Naf ? Sentence::positive(a.atom) : Sentence::chi();
  }

  /// No assumption heads a rule and χ heads nothing.
  bool is_flat() const {
    return std::none_of(indexed_.rules.begin(), indexed_.rules.end(),
                        [&](const IndexedRule& r) { return is_fact_[r.head] != 0; });
  }

  /// Non-fatal oddities of the framework (currently: empty assumption set).
  std::vector<std::string> warnings() const {
    std::vector<std::string> out;
    if (base_.empty()) out.push_back("empty Herbrand base: the framework has no assumptions");
    return out;
  }

  std::optional<Sentence> sentence_of(const Atom& a) const {
    auto it = std::lower_bound(base_.begin(), base_.end(), a);
    if (it == base_.end() || *it != a) return std::nullopt;
    return Sentence::positive(static_cast<std::uint32_t>(it - base_.begin()));
  }

  std::string render(Sentence s) const {
    switch (s.kind) {
      case Sentence::Kind::Atom: return to_string(base_.at(s.atom));
      case Sentence::Kind::Naf: return "not " + to_string(base_.at(s.atom));
      case Sentence::Kind::Chi: return kChiSymbol;
    }
    return {};
  }

 private:
  std::vector<Atom> base_;
  std::vector<Rule> rules_;
  std::vector<Atom> facts_;
  IndexedProgram indexed_;
  std::vector<char> is_fact_;
};

/// R = gp.rules, F = atoms of gp.pfacts.
inline AbaFramework build_problog_aba(const GroundProgram& gp) {
  std::vector<Atom> facts;
  for (const auto& f : gp.pfacts) facts.push_back(f.atom);
  return AbaFramework(gp.herbrand_base, gp.rules, std::move(facts));
}

/// Argument A ⊢_S s, identified by its triple.
struct Argument {
  std::vector<Sentence> assumptions;    // A, sorted
  Sentence claim;                       // s
  std::vector<std::uint32_t> rules_used;  // S, sorted indices into AbaFramework::rules()

  friend bool operator==(const Argument&, const Argument&) = default;
  friend std::strong_ordering operator<=>(const Argument& a, const Argument& b) {
    if (auto c = a.claim <=> b.claim; c != 0) return c;
    if (auto c = a.assumptions <=> b.assumptions; c != 0) return c;
    return a.rules_used <=> b.rules_used;
  }
};

/// One derivation witnessing an argument: the rule applied at the root and
/// one sub-argument per body element. Assumption arguments have no rule.
struct Derivation {
  std::optional<std::uint32_t> rule;
  std::vector<std::uint32_t> children;
};

struct ArgumentSet {
  std::vector<Argument> arguments;  // canonical order
  std::vector<Derivation> witnesses;  // parallel to `arguments`
};

struct ArgumentOptions {
  std::size_t max_arguments = 100'000;
};

namespace detail {

/// Support of an argument during enumeration: assumption bits followed by
/// rule bits.
using SupportBits = std::vector<std::uint64_t>;

struct SupportHash {
  std::size_t operator()(const SupportBits& b) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto w : b) h = (h ^ std::hash<std::uint64_t>{}(w)) * 0x100000001b3ull;
    return h;
  }
};

inline void set_bit(SupportBits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }
inline bool test_bit(const SupportBits& b, std::size_t i) { return b[i / 64] >> (i % 64) & 1u; }
inline SupportBits unite(const SupportBits& a, const SupportBits& b) {
  SupportBits out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] | b[i];
  return out;
}

}  // namespace detail

/// All argument triples, by semi-naive saturation: seed with assumption
/// arguments and bodyless rules, then repeatedly combine, for each rule, one
/// existing argument per body element, until no new triple appears.
///
/// Combinations are folded left to right over the body, keeping only the
/// distinct partial supports, so repeated body atoms do not multiply work.
inline ArgumentSet enumerate_arguments(const AbaFramework& f, const ArgumentOptions& opts = {}) {
  using detail::SupportBits;
  const auto& rules = f.indexed_rules().rules;
  const auto assumptions = f.assumptions();
  const std::size_t n_bits = assumptions.size() + rules.size();
  const std::size_t n_words = std::max<std::size_t>(1, (n_bits + 63) / 64);
  auto assumption_bit = [&](Sentence s) {
    return static_cast<std::size_t>(std::lower_bound(assumptions.begin(), assumptions.end(), s) -
                                    assumptions.begin());
  };
  auto rule_bit = [&](std::uint32_t r) { return assumptions.size() + r; };

  struct Item {
    Sentence claim;
    SupportBits support;
  };
  std::vector<Item> items;
  std::vector<Derivation> wit;
  std::map<Sentence, std::unordered_set<SupportBits, detail::SupportHash>> seen;
  std::map<Sentence, std::vector<std::uint32_t>> by_claim;

  auto add = [&](Sentence claim, SupportBits support, Derivation d) {
    if (!seen[claim].insert(support).second) return;
    if (items.size() >= opts.max_arguments)
      throw CapExceeded("arguments", opts.max_arguments, items.size() + 1);
    by_claim[claim].push_back(static_cast<std::uint32_t>(items.size()));
    items.push_back({claim, std::move(support)});
    wit.push_back(std::move(d));
  };

  for (auto s : assumptions) {
    SupportBits b(n_words, 0);
    detail::set_bit(b, assumption_bit(s));
    add(s, std::move(b), Derivation{});
  }
  for (std::uint32_t r = 0; r < rules.size(); ++r)
    if (rules[r].pos.empty() && rules[r].neg.empty()) {
      SupportBits b(n_words, 0);
      detail::set_bit(b, rule_bit(r));
      add(Sentence::positive(rules[r].head), std::move(b), Derivation{r, {}});
    }

  // Body elements of each rule in source order.
  std::vector<std::vector<Sentence>> bodies(rules.size());
  for (std::uint32_t r = 0; r < rules.size(); ++r)
    for (const auto& lit : f.rules()[r].body) {
      auto idx = f.sentence_of(lit.atom)->atom;
      bodies[r].push_back(lit.negated ? Sentence::naf(idx) : Sentence::positive(idx));
    }

  std::uint32_t old_end = 0;
  std::uint32_t delta_end = static_cast<std::uint32_t>(items.size());
  while (old_end < delta_end) {
    for (std::uint32_t r = 0; r < rules.size(); ++r) {
      const auto& body = bodies[r];
      if (body.empty()) continue;
      // The pivot position takes an argument found in the last round,
      // earlier positions older ones, later positions anything found before
      // this round: every new combination is produced exactly once.
      for (std::size_t pivot = 0; pivot < body.size(); ++pivot) {
        SupportBits start(n_words, 0);
        detail::set_bit(start, rule_bit(r));
        std::vector<std::pair<SupportBits, std::vector<std::uint32_t>>> partial{{start, {}}};
        for (std::size_t pos = 0; pos < body.size() && !partial.empty(); ++pos) {
          auto it = by_claim.find(body[pos]);
          std::unordered_map<SupportBits, std::vector<std::uint32_t>, detail::SupportHash> next;
          std::vector<SupportBits> order;
          if (it != by_claim.end()) {
            for (const auto& [bits, children] : partial)
              for (auto id : it->second) {
                bool allowed = pos < pivot ? id < old_end
                                           : pos == pivot ? (id >= old_end && id < delta_end)
                                                          : id < delta_end;
                if (!allowed) continue;
                auto u = detail::unite(bits, items[id].support);
                if (next.count(u)) continue;
                auto ch = children;
                ch.push_back(id);
                order.push_back(u);
                next.emplace(std::move(u), std::move(ch));
              }
          }
          partial.clear();
          for (auto& u : order) {
            auto node = next.extract(u);
            partial.emplace_back(std::move(node.key()), std::move(node.mapped()));
          }
        }
        for (auto& [bits, children] : partial)
          add(Sentence::positive(rules[r].head), std::move(bits), Derivation{r, std::move(children)});
      }
    }
    old_end = delta_end;
    delta_end = static_cast<std::uint32_t>(items.size());
  }

  std::vector<Argument> args;
  args.reserve(items.size());
  for (const auto& it : items) {
    Argument a;
    a.claim = it.claim;
    for (std::size_t i = 0; i < assumptions.size(); ++i)
      if (detail::test_bit(it.support, i)) a.assumptions.push_back(assumptions[i]);
    for (std::uint32_t r = 0; r < rules.size(); ++r)
      if (detail::test_bit(it.support, rule_bit(r))) a.rules_used.push_back(r);
    args.push_back(std::move(a));
  }

  // Canonical order, with witness children remapped.
  std::vector<std::uint32_t> order(args.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t x, std::uint32_t y) { return args[x] < args[y]; });
  std::vector<std::uint32_t> rank(args.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  ArgumentSet out;
  out.arguments.reserve(args.size());
  out.witnesses.reserve(args.size());
  for (auto id : order) {
    out.arguments.push_back(std::move(args[id]));
    Derivation d = std::move(wit[id]);
    for (auto& c : d.children) c = rank[c];
    out.witnesses.push_back(std::move(d));
  }
  return out;
}

/// Derivation tree with nodes labelled by sentences or `true` (nullopt).
struct DerivationTree {
  std::optional<Sentence> label;
  std::optional<std::uint32_t> rule;  // rule expanding this node, if any
  std::vector<DerivationTree> children;
};

/// Expands the witness of argument `id` into an explicit tree.
inline DerivationTree build_tree(const ArgumentSet& set, std::uint32_t id) {
  const Argument& a = set.arguments.at(id);
  const Derivation& d = set.witnesses.at(id);
  DerivationTree t{a.claim, d.rule, {}};
  if (d.rule && d.children.empty()) t.children.push_back(DerivationTree{std::nullopt, std::nullopt, {}});
  for (auto c : d.children) t.children.push_back(build_tree(set, c));
  return t;
}

/// Checks that `tree` is a derivation of exactly the triple `arg`: root
/// labelled by the claim, every non-leaf expanded by a rule of `rules_used`
/// with matching head and body, leaves `true` or members of the assumption
/// set, rules and leaf assumptions collected equal to the triple's sets, and
/// no assumption expanded internally.
inline bool verify_derivation(const AbaFramework& f, const Argument& arg, const DerivationTree& tree) {
  std::vector<Sentence> leaves;
  std::vector<std::uint32_t> used;
  bool ok = true;
  auto visit = [&](auto&& self, const DerivationTree& node) -> void {
    if (!ok) return;
    if (!node.label) {  // `true`
      ok = node.children.empty();
      return;
    }
    if (!node.rule) {
      ok = node.children.empty() && f.is_assumption(*node.label);
      leaves.push_back(*node.label);
      return;
    }
    if (f.is_assumption(*node.label) || node.label->kind != Sentence::Kind::Atom ||
        *node.rule >= f.rules().size()) {
      ok = false;
      return;
    }
    const auto& rule = f.indexed_rules().rules[*node.rule];
    const auto& src = f.rules()[*node.rule];
    if (rule.head != node.label->atom) { ok = false; return; }
    used.push_back(*node.rule);
    if (src.body.empty()) {
      ok = node.children.size() == 1 && !node.children[0].label;
      return;
    }
    if (node.children.size() != src.body.size()) { ok = false; return; }
    for (std::size_t i = 0; i < src.body.size() && ok; ++i) {
      auto idx = f.sentence_of(src.body[i].atom)->atom;
      Sentence want = src.body[i].negated ? Sentence::naf(idx) : Sentence::positive(idx);
      if (node.children[i].label != want) { ok = false; return; }
      self(self, node.children[i]);
    }
  };
  if (tree.label != arg.claim) return false;
  visit(visit, tree);
  if (!ok) return false;
  std::sort(leaves.begin(), leaves.end());
  leaves.erase(std::unique(leaves.begin(), leaves.end()), leaves.end());
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  return leaves == arg.assumptions && used == arg.rules_used;
}

using Attack = std::pair<std::uint32_t, std::uint32_t>;

/// All (α, β) with claim(α) the contrary of some assumption supporting β.
inline std::vector<Attack> compute_attacks(const AbaFramework& f, const std::vector<Argument>& args) {
  std::map<Sentence, std::vector<std::uint32_t>> by_claim;
  for (std::uint32_t i = 0; i < args.size(); ++i) by_claim[args[i].claim].push_back(i);
  std::vector<Attack> out;
  for (std::uint32_t target = 0; target < args.size(); ++target)
    for (auto a : args[target].assumptions) {
      auto it = by_claim.find(f.contrary(a));
      if (it == by_claim.end()) continue;
      for (auto attacker : it->second) out.emplace_back(attacker, target);
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// (Args, Att) over concrete arguments.
struct AaFramework {
  std::vector<Argument> args;
  std::vector<Attack> attacks;

  std::size_t size() const { return args.size(); }
};

inline AaFramework build_aa_framework(const AbaFramework& f, const ArgumentSet& set) {
  return AaFramework{set.arguments, compute_attacks(f, set.arguments)};
}

inline AaFramework build_aa_framework(const AbaFramework& f, const ArgumentOptions& opts = {}) {
  return build_aa_framework(f, enumerate_arguments(f, opts));
}

/// "{A} ⊢_{S} s" with rules given by their index in the framework.
inline std::string render_argument(const AbaFramework& f, const Argument& a) {
  std::string out = "{";
  for (std::size_t i = 0; i < a.assumptions.size(); ++i) {
    if (i) out += ", ";
    out += f.render(a.assumptions[i]);
  }
  out += "} ⊢_{";
  for (std::size_t i = 0; i < a.rules_used.size(); ++i) {
    if (i) out += ",";
    out += "r" + std::to_string(a.rules_used[i]);
  }
  return out + "} " + f.render(a.claim);
}

}  // namespace ppaa
