#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "ppaa/aa_semantics.hpp"
#include "ppaa/aba.hpp"
#include "ppaa/parallel.hpp"
#include "ppaa/program.hpp"
#include "ppaa/rational.hpp"
#include "ppaa/worlds.hpp"

namespace ppaa {

/// P(w) = Π_{l ∈ w} p_l · Π_{l ∈ F \ w} (1 - p_l).
inline Rational world_probability(const World& w, std::span<const ProbFact> pfacts) {
  Rational p(1);
  for (const auto& f : pfacts) {
    bool in = std::find(w.chosen.begin(), w.chosen.end(), f.atom) != w.chosen.end();
    p *= in ? f.prob : Rational(1) - f.prob;
  }
  return p;
}

struct WorldTable {
  struct Row {
    WorldMask mask;
    World world;
    Rational probability;
  };
  std::vector<Row> rows;  // in mask order

  Rational total() const {
    Rational t(0);
    for (const auto& r : rows) t += r.probability;
    return t;
  }
};

inline WorldTable world_table(std::span<const ProbFact> pfacts, std::uint64_t max_worlds) {
  const auto n = world_count(pfacts.size(), max_worlds);
  WorldTable t;
  t.rows.reserve(n);
  for (WorldMask m = 0; m < n; ++m) {
    World w = world_of(m, pfacts);
    Rational p = world_probability(w, pfacts);
    t.rows.push_back({m, std::move(w), std::move(p)});
  }
  return t;
}

/// w ⊩ α iff A ∩ F ⊆ w. Fact assumptions are exactly the positive-atom
/// members of an argument's support.
inline bool applicable(const World& w, const Argument& arg, const AbaFramework& f) {
  for (auto s : arg.assumptions)
    if (s.kind == Sentence::Kind::Atom &&
        !std::binary_search(w.chosen.begin(), w.chosen.end(), f.herbrand_base()[s.atom]))
      return false;
  return true;
}

/// AAF_w together with the original index of each surviving argument.
struct Restriction {
  AaFramework aaf;
  std::vector<std::uint32_t> original;
};

template <class Keep>
Restriction restrict_if(const AaFramework& aaf, Keep&& keep) {
  Restriction r;
  std::vector<std::int64_t> local(aaf.size(), -1);
  for (std::uint32_t i = 0; i < aaf.size(); ++i)
    if (keep(i)) {
      local[i] = static_cast<std::int64_t>(r.original.size());
      r.original.push_back(i);
      r.aaf.args.push_back(aaf.args[i]);
    }
  for (auto [from, to] : aaf.attacks)
    if (local[from] >= 0 && local[to] >= 0)
      r.aaf.attacks.emplace_back(static_cast<std::uint32_t>(local[from]),
                                 static_cast<std::uint32_t>(local[to]));
  return r;
}

/// Restriction of `aaf` to the arguments applicable in `w`.
inline AaFramework restrict(const AaFramework& aaf, const World& w, const AbaFramework& f) {
  return restrict_if(aaf, [&](std::uint32_t i) { return applicable(w, aaf.args[i], f); }).aaf;
}

/// The PAA framework corresponding to a ground program, with grounded
/// acceptance evaluated once per distinct set of applicable arguments.
class PaaEngine {
 public:
  explicit PaaEngine(const GroundProgram& gp, const EngineOptions& opts = {})
      : gp_(gp), opts_(opts), aba_(build_problog_aba(gp)) {
    world_count(gp.pfacts.size(), opts.max_worlds);
    set_ = enumerate_arguments(aba_, ArgumentOptions{opts.max_arguments});
    aaf_ = build_aa_framework(aba_, set_);
    graph_ = AttackGraph(aaf_.size(), aaf_.attacks);
    needs_.assign(aaf_.size(), 0);
    for (std::uint32_t i = 0; i < aaf_.size(); ++i)
      for (auto s : aaf_.args[i].assumptions)
        if (s.kind == Sentence::Kind::Atom) needs_[i] |= WorldMask{1} << fact_index(s.atom);
    for (auto m : needs_) relevant_ |= m;
    evaluate();
  }

  const GroundProgram& program() const { return gp_; }
  const AbaFramework& aba() const { return aba_; }
  const ArgumentSet& arguments() const { return set_; }
  const AaFramework& aaf() const { return aaf_; }

  bool applicable(WorldMask w, std::uint32_t arg) const { return (needs_[arg] & ~w) == 0; }

  /// Grounded extension of AAF_w, as indices into aaf().
  std::vector<std::uint32_t> grounded_in(WorldMask w) const {
    std::vector<char> active(aaf_.size(), 0);
    for (std::uint32_t i = 0; i < aaf_.size(); ++i) active[i] = applicable(w, i);
    return mask_to_indices(grounded_mask(graph_, &active));
  }

  /// Σ P(w) over worlds whose grounded extension contains argument `arg`.
  const Rational& grounded_prob_argument(std::uint32_t arg) const { return arg_prob_.at(arg); }

  /// Σ P(w) over worlds whose grounded extension contains some argument
  /// claiming an instance of `q`; each world counted once.
  Rational grounded_prob_query(const Atom& q) const {
    std::vector<std::uint32_t> targets;
    for (std::uint32_t a = 0; a < gp_.herbrand_base.size(); ++a)
      if (matches(q, gp_.herbrand_base[a])) targets.push_back(a);
    Rational total(0);
    if (targets.empty()) return total;
    for (const auto& g : groups_) {
      bool hit = std::any_of(targets.begin(), targets.end(),
                             [&](std::uint32_t a) { return g.accepted_atom[a] != 0; });
      if (hit) total += g.probability;
    }
    return total;
  }

  /// Indices of arguments whose claim is the ground atom `q`.
  std::vector<std::uint32_t> arguments_for(const Atom& q) const {
    std::vector<std::uint32_t> out;
    auto s = aba_.sentence_of(q);
    if (!s) return out;
    for (std::uint32_t i = 0; i < aaf_.size(); ++i)
      if (aaf_.args[i].claim == *s) out.push_back(i);
    return out;
  }

  /// Number of distinct applicable-argument sets actually evaluated.
  std::size_t evaluated_groups() const { return groups_.size(); }

 private:
  struct Group {
    WorldMask key;
    Rational probability;
    std::vector<char> accepted_atom;  // by HB index: some argument claiming it is IN
  };

  std::size_t fact_index(std::uint32_t atom) const {
    const Atom& a = aba_.herbrand_base()[atom];
    for (std::size_t k = 0; k < gp_.pfacts.size(); ++k)
      if (gp_.pfacts[k].atom == a) return k;
    throw std::logic_error("fact assumption without probabilistic fact");
  }

  void evaluate() {
    world_count(gp_.pfacts.size(), opts_.max_worlds);
    // Worlds agreeing on the relevant facts induce the same AAF_w; summing
    // out the irrelevant facts leaves a product over the relevant ones.
    std::map<WorldMask, Rational> mass;
    WorldMask sub = 0;
    do {
      Rational p(1);
      for (std::size_t k = 0; k < gp_.pfacts.size(); ++k)
        if (relevant_ >> k & 1u)
          p *= (sub >> k & 1u) ? gp_.pfacts[k].prob : Rational(1) - gp_.pfacts[k].prob;
      if (!p.is_zero()) mass.emplace(sub, p);
      sub = (sub - relevant_) & relevant_;  // next submask in increasing order
    } while (sub != 0);
    groups_.clear();
    for (auto& [key, p] : mass) groups_.push_back({key, p, {}});

    std::vector<std::vector<std::uint32_t>> accepted(groups_.size());
    parallel_for(groups_.size(), opts_.threads,
                 [&](std::size_t g) { accepted[g] = grounded_in(groups_[g].key); });

    arg_prob_.assign(aaf_.size(), Rational(0));
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      groups_[g].accepted_atom.assign(gp_.herbrand_base.size(), 0);
      for (auto a : accepted[g]) {
        arg_prob_[a] += groups_[g].probability;
        const auto& claim = aaf_.args[a].claim;
        if (claim.kind == Sentence::Kind::Atom) groups_[g].accepted_atom[claim.atom] = 1;
      }
    }
  }

  GroundProgram gp_;
  EngineOptions opts_;
  AbaFramework aba_;
  ArgumentSet set_;
  AaFramework aaf_;
  AttackGraph graph_{0, {}};
  std::vector<WorldMask> needs_;
  WorldMask relevant_ = 0;
  std::vector<Group> groups_;
  std::vector<Rational> arg_prob_;
};

}  // namespace ppaa
