#pragma once

// Brute-force reference implementations used only by the tests. They share
// no code with the engines beyond the value types: the well-founded model is
// computed with the W_P operator (immediate consequence plus greatest
// unfounded set) instead of the alternating fixpoint, arguments by
// level-wise tree construction instead of semi-naive saturation, and probabilities by direct products.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ppaa/program.hpp"
#include "ppaa/rational.hpp"

namespace oracle {

struct Clause {
  std::string head;
  std::vector<std::string> pos, neg;
};

enum class TV { F, T, U };

inline std::vector<Clause> clauses_of(const std::vector<ppaa::Rule>& rules) {
  std::vector<Clause> out;
  for (const auto& r : rules) {
    Clause c{ppaa::to_string(r.head), {}, {}};
    for (const auto& l : r.body) (l.negated ? c.neg : c.pos).push_back(ppaa::to_string(l.atom));
    out.push_back(std::move(c));
  }
  return out;
}

inline std::set<std::string> base_of(const ppaa::GroundProgram& gp) {
  std::set<std::string> out;
  for (const auto& a : gp.herbrand_base) out.insert(ppaa::to_string(a));
  return out;
}

/// Well-founded model as the least fixpoint of W_P over partial
/// interpretations (true set, false set).
inline std::map<std::string, TV> wfm(const std::vector<Clause>& prog, const std::set<std::string>& base) {
  std::set<std::string> t, f;
  auto lit_true = [&](const Clause& c) {
    for (const auto& p : c.pos)
      if (!t.count(p)) return false;
    for (const auto& n : c.neg)
      if (!f.count(n)) return false;
    return true;
  };
  auto lit_false = [&](const Clause& c) {
    for (const auto& p : c.pos)
      if (f.count(p)) return true;
    for (const auto& n : c.neg)
      if (t.count(n)) return true;
    return false;
  };
  for (;;) {
    std::set<std::string> nt;
    for (const auto& c : prog)
      if (lit_true(c)) nt.insert(c.head);
    // Atoms with possible support: least set closed under clauses whose body
    // is not false and whose positive atoms are already supported.
    std::set<std::string> supported;
    for (bool grew = true; grew;) {
      grew = false;
      for (const auto& c : prog) {
        if (supported.count(c.head) || lit_false(c)) continue;
        bool ok = true;
        for (const auto& p : c.pos) ok = ok && supported.count(p);
        if (ok) grew = supported.insert(c.head).second || grew;
      }
    }
    std::set<std::string> nf;
    for (const auto& a : base)
      if (!supported.count(a)) nf.insert(a);
    if (nt == t && nf == f) break;
    t = std::move(nt);
    f = std::move(nf);
  }
  std::map<std::string, TV> out;
  for (const auto& a : base) out[a] = t.count(a) ? TV::T : f.count(a) ? TV::F : TV::U;
  return out;
}

/// Argument triple: (assumptions, claim, rules used). NAF assumptions are
/// written "not x", fact assumptions as the bare atom.
using Triple = std::tuple<std::set<std::string>, std::string, std::set<std::size_t>>;

/// Every triple with a derivation tree of depth at most `depth` (a leaf has
/// depth 0). `facts` are the fact assumptions.
inline std::set<Triple> triples(const std::vector<Clause>& prog, const std::set<std::string>& facts,
                                const std::string& claim, int depth) {
  std::set<Triple> out;
  if (claim.rfind("not ", 0) == 0 || facts.count(claim)) {
    out.insert({{claim}, claim, {}});
    return out;
  }
  if (depth == 0) return out;
  for (std::size_t r = 0; r < prog.size(); ++r) {
    if (prog[r].head != claim) continue;
    std::vector<std::string> body = prog[r].pos;
    for (const auto& n : prog[r].neg) body.push_back("not " + n);
    std::set<std::pair<std::set<std::string>, std::set<std::size_t>>> partial{{{}, {r}}};
    for (const auto& b : body) {
      auto subs = triples(prog, facts, b, depth - 1);
      std::set<std::pair<std::set<std::string>, std::set<std::size_t>>> next;
      for (const auto& [a, s] : partial)
        for (const auto& [sa, sc, ss] : subs) {
          auto na = a;
          na.insert(sa.begin(), sa.end());
          auto ns = s;
          ns.insert(ss.begin(), ss.end());
          next.insert({na, ns});
        }
      partial = std::move(next);
    }
    for (const auto& [a, s] : partial) out.insert({a, claim, s});
  }
  return out;
}

/// Every triple with a finite tree, for one claim. Trees of depth d+1 are
/// built from trees of depth d for all claims at once; when a level adds
/// nothing for any claim, no deeper level can either.
inline std::set<Triple> all_triples(const std::vector<Clause>& prog, const std::set<std::string>& facts,
                                    const std::string& claim) {
  if (claim.rfind("not ", 0) == 0 || facts.count(claim)) return {{{claim}, claim, {}}};
  std::map<std::string, std::set<Triple>> level;
  auto sub = [&](const std::map<std::string, std::set<Triple>>& lv, const std::string& c) -> std::set<Triple> {
    if (c.rfind("not ", 0) == 0 || facts.count(c)) return {{{c}, c, {}}};
    auto it = lv.find(c);
    return it == lv.end() ? std::set<Triple>{} : it->second;
  };
  for (;;) {
    std::map<std::string, std::set<Triple>> next;
    for (std::size_t r = 0; r < prog.size(); ++r) {
      std::vector<std::string> body = prog[r].pos;
      for (const auto& n : prog[r].neg) body.push_back("not " + n);
      std::set<std::pair<std::set<std::string>, std::set<std::size_t>>> partial{{{}, {r}}};
      for (const auto& b : body) {
        std::set<std::pair<std::set<std::string>, std::set<std::size_t>>> grown;
        for (const auto& [a, s] : partial)
          for (const auto& [sa, sc, ss] : sub(level, b)) {
            auto na = a;
            na.insert(sa.begin(), sa.end());
            auto ns = s;
            ns.insert(ss.begin(), ss.end());
            grown.insert({na, ns});
          }
        partial = std::move(grown);
      }
      for (const auto& [a, s] : partial) next[prog[r].head].insert({a, prog[r].head, s});
    }
    if (next == level) break;
    level = std::move(next);
  }
  return sub(level, claim);
}

struct Numbers {
  ppaa::Rational p_success{0};
  ppaa::Rational argument_sum{0};
  ppaa::Rational total{0};
};

/// P_s(q) and Σ_α Prob_G(α) over arguments for the ground atom q, by
/// enumerating every subset of the probabilistic facts. An argument is
/// grounded in a world iff its fact assumptions were chosen and every NAF
/// assumption "not x" has x false in the world's well-founded model.
/// A negative `depth` means no depth bound.
inline Numbers evaluate(const ppaa::GroundProgram& gp, const std::string& q, int depth = -1) {
  const auto prog = clauses_of(gp.rules);
  const auto base = base_of(gp);
  std::set<std::string> fact_names;
  for (const auto& f : gp.pfacts) fact_names.insert(ppaa::to_string(f.atom));
  const auto args = depth < 0 ? all_triples(prog, fact_names, q) : triples(prog, fact_names, q, depth);

  Numbers n;
  const std::size_t k = gp.pfacts.size();
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
    ppaa::Rational p(1);
    std::set<std::string> chosen;
    auto world_prog = prog;
    for (std::size_t i = 0; i < k; ++i) {
      const auto& f = gp.pfacts[i];
      if (bits >> i & 1u) {
        p *= f.prob;
        chosen.insert(ppaa::to_string(f.atom));
        world_prog.push_back({ppaa::to_string(f.atom), {}, {}});
      } else {
        p *= ppaa::Rational(1) - f.prob;
      }
    }
    n.total += p;
    auto model = wfm(world_prog, base);
    if (model.count(q) && model[q] == TV::T) n.p_success += p;
    for (const auto& [a, c, s] : args) {
      bool in = true;
      for (const auto& x : a)
        in = in && (x.rfind("not ", 0) == 0 ? model[x.substr(4)] == TV::F : chosen.count(x) > 0);
      if (in) n.argument_sum += p;
    }
  }
  return n;
}

}  // namespace oracle
