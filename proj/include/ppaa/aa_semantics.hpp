#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ppaa/aba.hpp"
#include "ppaa/errors.hpp"

namespace ppaa {

/// Attacker/attacked adjacency of an abstract framework with arguments 0..n-1.
struct AttackGraph {
  std::vector<std::vector<std::uint32_t>> attackers;
  std::vector<std::vector<std::uint32_t>> attacked;

  AttackGraph(std::size_t n, std::span<const Attack> attacks) : attackers(n), attacked(n) {
    for (auto [from, to] : attacks) {
      attackers.at(to).push_back(from);
      attacked.at(from).push_back(to);
    }
  }

  std::size_t size() const { return attackers.size(); }
};

/// Grounded extension of the subframework induced by `active` (null means
/// every argument), as a membership mask: Kleene iteration of the
/// characteristic function from the empty set.
inline std::vector<char> grounded_mask(const AttackGraph& g, const std::vector<char>* active = nullptr) {
  const std::size_t n = g.size();
  auto live = [&](std::size_t a) { return !active || (*active)[a]; };
  std::vector<char> in(n, 0);
  for (;;) {
    std::vector<char> defeated(n, 0);
    for (std::size_t a = 0; a < n; ++a)
      if (in[a])
        for (auto t : g.attacked[a]) defeated[t] = 1;
    std::vector<char> next(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      if (!live(a)) continue;
      bool defended = true;
      for (auto att : g.attackers[a])
        if (live(att) && !defeated[att]) {
          defended = false;
          break;
        }
      next[a] = defended;
    }
    if (next == in) return in;
    in = std::move(next);
  }
}

inline std::vector<std::uint32_t> mask_to_indices(const std::vector<char>& mask) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < mask.size(); ++i)
    if (mask[i]) out.push_back(i);
  return out;
}

inline std::vector<std::uint32_t> grounded_extension(std::size_t n, std::span<const Attack> attacks) {
  return mask_to_indices(grounded_mask(AttackGraph(n, attacks)));
}

inline std::vector<std::uint32_t> grounded_extension(const AaFramework& aaf) {
  return grounded_extension(aaf.size(), aaf.attacks);
}

enum class Label : std::uint8_t { In, Out, Undec };

struct Labelling {
  std::vector<Label> label;
};

/// IN = grounded extension, OUT = attacked by IN, UNDEC otherwise.
inline Labelling grounded_labelling(std::size_t n, std::span<const Attack> attacks) {
  AttackGraph g(n, attacks);
  auto in = grounded_mask(g);
  Labelling l{std::vector<Label>(n, Label::Undec)};
  for (std::size_t a = 0; a < n; ++a)
    if (in[a]) {
      l.label[a] = Label::In;
      for (auto t : g.attacked[a]) l.label[t] = Label::Out;
    }
  return l;
}

/// IN iff all attackers OUT; OUT iff some attacker IN.
inline bool is_legal(const Labelling& l, std::span<const Attack> attacks) {
  AttackGraph g(l.label.size(), attacks);
  for (std::size_t a = 0; a < g.size(); ++a) {
    bool all_out = true, some_in = false;
    for (auto att : g.attackers[a]) {
      all_out = all_out && l.label[att] == Label::Out;
      some_in = some_in || l.label[att] == Label::In;
    }
    if ((l.label[a] == Label::In) != all_out) return false;
    if ((l.label[a] == Label::Out) != some_in) return false;
  }
  return true;
}

inline bool conflict_free(std::span<const std::uint32_t> set, std::span<const Attack> attacks) {
  std::vector<char> in;
  for (auto a : set) {
    if (a >= in.size()) in.resize(a + 1, 0);
    in[a] = 1;
  }
  auto member = [&](std::uint32_t a) { return a < in.size() && in[a]; };
  for (auto [from, to] : attacks)
    if (member(from) && member(to)) return false;
  return true;
}

/// Every member is defended by the set and the set is conflict-free.
inline bool admissible(std::size_t n, std::span<const std::uint32_t> set, std::span<const Attack> attacks) {
  if (!conflict_free(set, attacks)) return false;
  AttackGraph g(n, attacks);
  std::vector<char> defeated(n, 0);
  for (auto a : set)
    for (auto t : g.attacked[a]) defeated[t] = 1;
  for (auto a : set)
    for (auto att : g.attackers[a])
      if (!defeated[att]) return false;
  return true;
}

struct StableOptions {
  std::size_t max_arguments = 25;
};

/// All stable extensions by exhaustive search with conflict pruning.
inline std::vector<std::vector<std::uint32_t>> stable_extensions(std::size_t n,
                                                                 std::span<const Attack> attacks,
                                                                 const StableOptions& opts = {}) {
  if (n > opts.max_arguments) throw CapExceeded("stable-extension arguments", opts.max_arguments, n);
  AttackGraph g(n, attacks);
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<char> in(n, 0);
  auto search = [&](auto&& self, std::size_t k) -> void {
    if (k == n) {
      for (std::size_t a = 0; a < n; ++a) {
        if (in[a]) continue;
        bool hit = false;
        for (auto att : g.attackers[a]) hit = hit || in[att];
        if (!hit) return;
      }
      out.push_back(mask_to_indices(in));
      return;
    }
    self(self, k + 1);
    bool clash = false;
    for (auto att : g.attackers[k]) clash = clash || att == k || (att < k && in[att]);
    for (auto t : g.attacked[k]) clash = clash || (t < k && in[t]);
    if (clash) return;
    in[k] = 1;
    self(self, k + 1);
    in[k] = 0;
  };
  search(search, 0);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::vector<std::uint32_t>> stable_extensions(const AaFramework& aaf,
                                                                 const StableOptions& opts = {}) {
  return stable_extensions(aaf.size(), aaf.attacks, opts);
}

}  // namespace ppaa
