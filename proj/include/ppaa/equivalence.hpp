#pragma once

#include <cstdint>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "ppaa/distribution.hpp"
#include "ppaa/paa.hpp"
#include "ppaa/program.hpp"
#include "ppaa/wfm.hpp"

namespace ppaa {

/// Semantic comparison of one world: WFM of F_w ∪ R against the claims
/// accepted in the grounded extension of AAF_w.
struct WorldTrace {
  World world;
  Rational probability;
  ThreeValuedModel wfm;
  std::vector<Atom> accepted_atoms;  // positive claims of IN arguments
  std::vector<Atom> accepted_naf;    // atoms p with "not p" claimed by an IN argument
  bool match = false;
};

struct EquivalenceReport {
  Atom query;
  Rational p_success;
  Rational prob_g_query;
  Rational prob_g_argument_sum;
  bool eq1_holds = false;  // p_success == prob_g_query
  bool eq2_holds = false;  // p_success <= prob_g_argument_sum
  std::vector<WorldTrace> per_world_trace;

  bool holds() const {
    return eq1_holds && eq2_holds &&
           std::all_of(per_world_trace.begin(), per_world_trace.end(),
                       [](const WorldTrace& t) { return t.match; });
  }
};

/// Both back-ends over one ground program, shared across queries.
class EquivalenceChecker {
 public:
  explicit EquivalenceChecker(const GroundProgram& gp, const EngineOptions& opts = {})
      : gp_(gp), dist_(gp, opts), paa_(gp, opts) {}

  const DistributionEngine& distribution() const { return dist_; }
  const PaaEngine& argumentation() const { return paa_; }

  /// Per-world correspondence over all 2^|F| worlds, zero-probability
  /// ones included.
  const std::vector<WorldTrace>& trace() const {
    std::call_once(trace_once_, [&] { trace_ = compute_trace(); });
    return trace_;
  }

  EquivalenceReport check(const Atom& q, bool with_trace = true) const {
    EquivalenceReport r;
    r.query = q;
    r.p_success = dist_.success_probability(q);
    r.prob_g_query = paa_.grounded_prob_query(q);
    r.prob_g_argument_sum = Rational(0);
    for (std::uint32_t a = 0; a < paa_.aaf().size(); ++a) {
      const auto& claim = paa_.aaf().args[a].claim;
      if (claim.kind == Sentence::Kind::Atom && matches(q, gp_.herbrand_base[claim.atom]))
        r.prob_g_argument_sum += paa_.grounded_prob_argument(a);
    }
    r.eq1_holds = r.p_success == r.prob_g_query;
    r.eq2_holds = r.p_success <= r.prob_g_argument_sum;
    if (with_trace) r.per_world_trace = trace();
    return r;
  }

 private:
  std::vector<WorldTrace> compute_trace() const {
    std::vector<WorldTrace> out;
    const WorldMask n = WorldMask{1} << gp_.pfacts.size();
    for (WorldMask m = 0; m < n; ++m) {
      WorldTrace t;
      t.world = world_of(m, gp_.pfacts);
      t.probability = world_probability(t.world, gp_.pfacts);
      t.wfm = dist_.model(m);
      std::vector<char> pos(gp_.herbrand_base.size(), 0), neg(gp_.herbrand_base.size(), 0);
      for (auto a : paa_.grounded_in(m)) {
        const auto& c = paa_.aaf().args[a].claim;
        if (c.kind == Sentence::Kind::Atom) pos[c.atom] = 1;
        if (c.kind == Sentence::Kind::Naf) neg[c.atom] = 1;
      }
      for (std::size_t i = 0; i < pos.size(); ++i) {
        if (pos[i]) t.accepted_atoms.push_back(gp_.herbrand_base[i]);
        if (neg[i]) t.accepted_naf.push_back(gp_.herbrand_base[i]);
      }
      t.match = t.accepted_atoms == t.wfm.true_atoms && t.accepted_naf == t.wfm.false_atoms;
      out.push_back(std::move(t));
    }
    return out;
  }

  GroundProgram gp_;
  DistributionEngine dist_;
  PaaEngine paa_;
  mutable std::once_flag trace_once_;
  mutable std::vector<WorldTrace> trace_;
};

inline EquivalenceReport check_proposition(const Atom& q, const GroundProgram& gp,
                                           const EngineOptions& opts = {}) {
  return EquivalenceChecker(gp, opts).check(q);
}

struct RandomLimits {
  std::size_t max_pfacts = 6;
  std::size_t max_rules = 10;
  std::size_t max_atoms = 8;
  std::size_t max_body = 3;
};

/// Deterministic pseudo-random propositional program over atoms p0..p{n-1}.
/// Probabilistic-fact atoms never head a rule; negative cycles are allowed.
inline Program random_program(std::uint64_t seed, const RandomLimits& limits = {}) {
  std::mt19937_64 rng(seed);
  // Modulo on the raw engine output keeps results identical across standard
  // libraries (distribution objects are implementation-defined).
  auto below = [&](std::size_t n) { return n == 0 ? std::size_t{0} : static_cast<std::size_t>(rng() % n); };

  const std::size_t n_atoms = 1 + below(limits.max_atoms);
  std::vector<std::size_t> order(n_atoms);
  for (std::size_t i = 0; i < n_atoms; ++i) order[i] = i;
  for (std::size_t i = n_atoms; i > 1; --i) std::swap(order[i - 1], order[below(i)]);

  const std::size_t n_pfacts = below(std::min(limits.max_pfacts, n_atoms) + 1);
  auto atom = [](std::size_t i) { return Atom("p" + std::to_string(i)); };

  static const char* const kProbs[] = {"0.1", "0.2", "0.25", "0.3", "0.4", "0.5",
                                       "0.6", "0.7", "0.75", "0.8", "0.9", "0",   "1"};
  Program p;
  for (std::size_t k = 0; k < n_pfacts; ++k) {
    // 0 and 1 are drawn rarely.
    std::size_t pick = below(40) == 0 ? 11 + below(2) : below(11);
    p.pfacts.push_back({*Rational::parse(kProbs[pick]), atom(order[k]), std::nullopt});
  }
  std::vector<std::size_t> heads(order.begin() + static_cast<std::ptrdiff_t>(n_pfacts), order.end());
  std::sort(heads.begin(), heads.end());
  if (heads.empty()) return p;

  const std::size_t n_rules = below(limits.max_rules + 1);
  for (std::size_t r = 0; r < n_rules; ++r) {
    Rule rule;
    rule.head = atom(heads[below(heads.size())]);
    const std::size_t len = below(limits.max_body + 1);
    for (std::size_t b = 0; b < len; ++b) rule.body.push_back({atom(below(n_atoms)), below(3) == 0});
    p.rules.push_back(std::move(rule));
  }
  return p;
}

/// Human-readable failure dump: program text plus report and trace.
inline std::string describe_counterexample(const Program& program, const EquivalenceReport& r) {
  std::string out = "% counterexample for query " + to_string(r.query) + "\n";
  out += pretty_print(program);
  out += "% P_s = " + r.p_success.str() + ", Prob_G(q) = " + r.prob_g_query.str() +
         ", sum Prob_G(arg) = " + r.prob_g_argument_sum.str() + "\n";
  out += std::string("% eq1 ") + (r.eq1_holds ? "holds" : "FAILS") + ", eq2 " +
         (r.eq2_holds ? "holds" : "FAILS") + "\n";
  auto list = [](const std::vector<Atom>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
    return s + "}";
  };
  for (const auto& t : r.per_world_trace) {
    out += "% world " + render_world(t.world) + " P=" + t.probability.str() +
           " wfm true=" + list(t.wfm.true_atoms) + " false=" + list(t.wfm.false_atoms) +
           " undef=" + list(t.wfm.undefined_atoms) + " | grounded atoms=" + list(t.accepted_atoms) +
           " naf=" + list(t.accepted_naf) + (t.match ? "" : "  MISMATCH") + "\n";
  }
  return out;
}

}  // namespace ppaa
