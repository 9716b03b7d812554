#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ppaa/errors.hpp"
#include "ppaa/program.hpp"
#include "ppaa/rational.hpp"

namespace ppaa {

/// Limits and parallelism shared by both inference back-ends.
struct EngineOptions {
  std::uint64_t max_worlds = std::uint64_t{1} << 24;
  std::size_t max_arguments = 100'000;
  unsigned threads = 1;
};

/// A subset of the probabilistic-fact atoms.
struct World {
  std::vector<Atom> chosen;  // sorted
  friend bool operator==(const World&, const World&) = default;
};

/// Bit k of a world mask selects pfacts[k] of a GroundProgram.
using WorldMask = std::uint64_t;

inline std::uint64_t world_count(std::size_t facts, std::uint64_t max_worlds) {
  if (facts >= 63 || (std::uint64_t{1} << facts) > max_worlds)
    throw CapExceeded("worlds", max_worlds,
                      facts >= 63 ? ~std::uint64_t{0} : std::uint64_t{1} << facts);
  return std::uint64_t{1} << facts;
}

inline World world_of(WorldMask mask, std::span<const ProbFact> pfacts) {
  World w;
  for (std::size_t k = 0; k < pfacts.size(); ++k)
    if (mask >> k & 1u) w.chosen.push_back(pfacts[k].atom);
  std::sort(w.chosen.begin(), w.chosen.end());
  return w;
}

inline WorldMask mask_of(const World& w, std::span<const ProbFact> pfacts) {
  WorldMask m = 0;
  for (const auto& a : w.chosen) {
    bool found = false;
    for (std::size_t k = 0; k < pfacts.size(); ++k)
      if (pfacts[k].atom == a) {
        m |= WorldMask{1} << k;
        found = true;
      }
    if (!found) throw std::invalid_argument("world atom " + to_string(a) + " is not a probabilistic fact");
  }
  return m;
}

inline std::string render_world(const World& w) {
  std::string out = "{";
  for (std::size_t i = 0; i < w.chosen.size(); ++i) {
    if (i) out += ", ";
    out += to_string(w.chosen[i]);
  }
  return out + "}";
}

}  // namespace ppaa
