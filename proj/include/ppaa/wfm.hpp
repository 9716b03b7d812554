#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ppaa/errors.hpp"
#include "ppaa/program.hpp"

namespace ppaa {

/// Ground rule over atom indices of some Herbrand base.
struct IndexedRule {
  std::uint32_t head = 0;
  std::vector<std::uint32_t> pos;
  std::vector<std::uint32_t> neg;
};

/// Rules with atoms replaced by their positions in a sorted base.
struct IndexedProgram {
  std::size_t atom_count = 0;
  std::vector<IndexedRule> rules;

  static IndexedProgram build(std::span<const Rule> rules, std::span<const Atom> base) {
    auto idx = [&](const Atom& a) {
      auto it = std::lower_bound(base.begin(), base.end(), a);
      if (it == base.end() || *it != a)
        throw std::invalid_argument("atom " + to_string(a) + " is not in the base");
      return static_cast<std::uint32_t>(it - base.begin());
    };
    IndexedProgram p;
    p.atom_count = base.size();
    p.rules.reserve(rules.size());
    for (const auto& r : rules) {
      IndexedRule ir;
      ir.head = idx(r.head);
      for (const auto& l : r.body) (l.negated ? ir.neg : ir.pos).push_back(idx(l.atom));
      p.rules.push_back(std::move(ir));
    }
    return p;
  }
};

enum class Truth : std::uint8_t { False, True, Undefined };

/// Partition of a Herbrand base into true/false/undefined atoms.
struct ThreeValuedModel {
  std::vector<Atom> true_atoms;
  std::vector<Atom> false_atoms;
  std::vector<Atom> undefined_atoms;

  bool two_valued() const { return undefined_atoms.empty(); }
  friend bool operator==(const ThreeValuedModel&, const ThreeValuedModel&) = default;
};

struct StableModel {
  std::vector<Atom> true_atoms;
  friend bool operator==(const StableModel&, const StableModel&) = default;
};

namespace detail {

/// Least model of the reduct of `p` wrt `context`: rules with some negative
/// literal `not c`, c ∈ context, are dropped, remaining negative literals are
/// erased. With context == nullptr every negative literal is treated as
/// blocking, i.e. only definite rules fire.
inline std::vector<char> reduct_least_model(const IndexedProgram& p, const std::vector<char>* context) {
  const std::size_t n = p.atom_count;
  std::vector<char> model(n, 0);
  std::vector<std::uint32_t> missing(p.rules.size(), 0);
  std::vector<std::vector<std::uint32_t>> watchers(n);
  std::vector<std::uint32_t> queue;
  for (std::uint32_t i = 0; i < p.rules.size(); ++i) {
    const auto& r = p.rules[i];
    bool blocked = context == nullptr ? !r.neg.empty() : false;
    if (context != nullptr)
      for (auto c : r.neg)
        if ((*context)[c]) {
          blocked = true;
          break;
        }
    if (blocked) continue;
    missing[i] = static_cast<std::uint32_t>(r.pos.size());
    for (auto b : r.pos) watchers[b].push_back(i);
    if (missing[i] == 0 && !model[r.head]) {
      model[r.head] = 1;
      queue.push_back(r.head);
    }
  }
  while (!queue.empty()) {
    auto a = queue.back();
    queue.pop_back();
    for (auto i : watchers[a]) {
      // Repeated body atoms register the rule once per occurrence.
      if (--missing[i] == 0 && !model[p.rules[i].head]) {
        model[p.rules[i].head] = 1;
        queue.push_back(p.rules[i].head);
      }
    }
  }
  return model;
}

inline std::vector<Atom> select(std::span<const Atom> base, const std::vector<char>& mask) {
  std::vector<Atom> out;
  for (std::size_t i = 0; i < base.size(); ++i)
    if (mask[i]) out.push_back(base[i]);
  return out;
}

}  // namespace detail

/// Least Herbrand model of a definite (negation-free) program, as a mask.
inline std::vector<char> least_model(const IndexedProgram& p) {
  for (const auto& r : p.rules)
    if (!r.neg.empty()) throw std::invalid_argument("least_model: rule with negative body literal");
  return detail::reduct_least_model(p, nullptr);
}

inline std::vector<Atom> least_model(std::span<const Rule> positive_rules, std::span<const Atom> base) {
  return detail::select(base, least_model(IndexedProgram::build(positive_rules, base)));
}

/// Per-atom truth values of the well-founded model, by the alternating
/// fixpoint K_{i+1} = lm(P^{U_i}), U_{i+1} = lm(P^{K_{i+1}}) from K_0 = ∅,
/// U_0 = base.
inline std::vector<Truth> well_founded_truth(const IndexedProgram& p) {
  std::vector<char> under(p.atom_count, 0);
  std::vector<char> over(p.atom_count, 1);
  for (;;) {
    auto next_under = detail::reduct_least_model(p, &over);
    auto next_over = detail::reduct_least_model(p, &next_under);
    if (next_under == under && next_over == over) break;
    under = std::move(next_under);
    over = std::move(next_over);
  }
  std::vector<Truth> out(p.atom_count);
  for (std::size_t i = 0; i < p.atom_count; ++i)
    out[i] = under[i] ? Truth::True : (over[i] ? Truth::Undefined : Truth::False);
  return out;
}

inline ThreeValuedModel to_model(const std::vector<Truth>& truth, std::span<const Atom> base) {
  ThreeValuedModel m;
  for (std::size_t i = 0; i < base.size(); ++i) {
    switch (truth[i]) {
      case Truth::True: m.true_atoms.push_back(base[i]); break;
      case Truth::False: m.false_atoms.push_back(base[i]); break;
      case Truth::Undefined: m.undefined_atoms.push_back(base[i]); break;
    }
  }
  return m;
}

/// `base` must be sorted and contain every atom of `rules`.
inline ThreeValuedModel well_founded_model(std::span<const Rule> rules, std::span<const Atom> base) {
  return to_model(well_founded_truth(IndexedProgram::build(rules, base)), base);
}

struct StableModelOptions {
  std::size_t max_base = 20;
};

/// All stable models by exhaustive search. Atoms that head no rule are false
/// in every stable model, so only subsets of rule heads are tried.
inline std::vector<StableModel> stable_models(std::span<const Rule> rules, std::span<const Atom> base,
                                              const StableModelOptions& opts = {}) {
  if (base.size() > opts.max_base) throw CapExceeded("stable-model base", opts.max_base, base.size());
  auto p = IndexedProgram::build(rules, base);
  std::vector<std::uint32_t> heads;
  {
    std::vector<char> is_head(p.atom_count, 0);
    for (const auto& r : p.rules) is_head[r.head] = 1;
    for (std::uint32_t i = 0; i < p.atom_count; ++i)
      if (is_head[i]) heads.push_back(i);
  }
  std::vector<StableModel> out;
  const std::uint64_t count = std::uint64_t{1} << heads.size();
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    std::vector<char> guess(p.atom_count, 0);
    for (std::size_t k = 0; k < heads.size(); ++k)
      if (bits >> k & 1u) guess[heads[k]] = 1;
    if (detail::reduct_least_model(p, &guess) == guess)
      out.push_back({detail::select(base, guess)});
  }
  std::sort(out.begin(), out.end(),
            [](const StableModel& a, const StableModel& b) { return a.true_atoms < b.true_atoms; });
  return out;
}

/// True iff some ground instance of `query` over `base` is true in `model`.
/// Undefined atoms do not count.
inline bool succeeds(const ThreeValuedModel& model, const Atom& query, std::span<const Atom> base) {
  for (const auto& g : base)
    if (matches(query, g) && std::binary_search(model.true_atoms.begin(), model.true_atoms.end(), g))
      return true;
  return false;
}

}  // namespace ppaa
