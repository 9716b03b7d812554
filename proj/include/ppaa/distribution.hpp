#pragma once

#include <span>
#include <vector>

#include "ppaa/errors.hpp"
#include "ppaa/parallel.hpp"
#include "ppaa/program.hpp"
#include "ppaa/rational.hpp"
#include "ppaa/wfm.hpp"
#include "ppaa/worlds.hpp"

namespace ppaa {

/// The F' selection of a total choice, as atoms.
struct TotalChoice {
  std::vector<Atom> included_facts;
};

/// L = F' ∪ R: the rules plus a bodyless rule per included fact.
inline std::vector<Rule> induced_program(const TotalChoice& tc, const GroundProgram& gp) {
  std::vector<Rule> rules = gp.rules;
  for (const auto& a : tc.included_facts) rules.push_back(Rule{a, {}, std::nullopt});
  std::sort(rules.begin(), rules.end());
  rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
  return rules;
}

/// P(L|T) = Π_{f ∈ F'} p_f · Π_{f ∉ F'} (1 - p_f).
inline Rational program_probability(const TotalChoice& tc, std::span<const ProbFact> pfacts) {
  Rational included(1), excluded(1);
  for (const auto& f : pfacts) {
    bool in = false;
    for (const auto& a : tc.included_facts) in = in || a == f.atom;
    if (in)
      included *= f.prob;
    else
      excluded *= Rational(1) - f.prob;
  }
  return included * excluded;
}

inline TotalChoice total_choice_of(WorldMask mask, std::span<const ProbFact> pfacts) {
  return TotalChoice{world_of(mask, pfacts).chosen};
}

/// Direct distribution semantics: every total choice's induced program is
/// solved under the well-founded semantics.
class DistributionEngine {
 public:
  struct Choice {
    WorldMask mask;
    Rational probability;
    std::vector<Truth> truth;  // over gp.herbrand_base
  };

  explicit DistributionEngine(const GroundProgram& gp, const EngineOptions& opts = {})
      : gp_(gp) {
    const auto n = world_count(gp.pfacts.size(), opts.max_worlds);
    for (WorldMask m = 0; m < n; ++m) {
      Rational p = program_probability(total_choice_of(m, gp.pfacts), gp.pfacts);
      if (!p.is_zero()) choices_.push_back({m, std::move(p), {}});
    }
    parallel_for(choices_.size(), opts.threads, [&](std::size_t i) {
      choices_[i].truth = well_founded_truth(induced(choices_[i].mask));
    });
  }

  const GroundProgram& program() const { return gp_; }

  /// Choices with nonzero probability, in mask order.
  const std::vector<Choice>& choices() const { return choices_; }

  IndexedProgram induced(WorldMask mask) const {
    auto rules = induced_program(total_choice_of(mask, gp_.pfacts), gp_);
    return IndexedProgram::build(rules, gp_.herbrand_base);
  }

  ThreeValuedModel model(WorldMask mask) const {
    return to_model(well_founded_truth(induced(mask)), gp_.herbrand_base);
  }

  /// P_s(q|T): mass of the total choices whose well-founded model makes some
  /// ground instance of q true.
  Rational success_probability(const Atom& q) const {
    std::vector<std::size_t> targets;
    for (std::size_t a = 0; a < gp_.herbrand_base.size(); ++a)
      if (matches(q, gp_.herbrand_base[a])) targets.push_back(a);
    Rational total(0);
    for (const auto& c : choices_) {
      bool hit = false;
      for (auto a : targets) hit = hit || c.truth[a] == Truth::True;
      if (hit) total += c.probability;
    }
    return total;
  }

  /// Number of nonzero-probability choices with a three-valued model.
  std::size_t three_valued_choices() const {
    std::size_t n = 0;
    for (const auto& c : choices_)
      n += std::any_of(c.truth.begin(), c.truth.end(), [](Truth t) { return t == Truth::Undefined; });
    return n;
  }

 private:
  GroundProgram gp_;
  std::vector<Choice> choices_;
};

inline Rational success_probability(const Atom& q, const GroundProgram& gp, const EngineOptions& opts = {}) {
  return DistributionEngine(gp, opts).success_probability(q);
}

}  // namespace ppaa
