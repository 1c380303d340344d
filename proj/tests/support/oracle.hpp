#pragma once

// Test-only reference implementations. Deliberately naive: they enumerate
// instead of reasoning, so they can check the library's clever paths.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "icalc/term.hpp"

namespace oracle {

using icalc::Configuration;
using icalc::Equation;
using icalc::Rule;
using icalc::System;
using icalc::Term;

/// Congruence by trying every body permutation and orientation. Bound names
/// must map bijectively, free names to themselves. Up to ~7 equations.
bool congruent(const Configuration& a, const Configuration& b);

struct Clash {
  Equation first;
  Equation second;
  std::vector<Equation> contractum;
};

/// Searches concrete instance pairs of r1 and r2 for equal non-empty
/// contracta coming from non-congruent active pairs. The second instance's
/// fresh names range over the first instance's fresh names plus new ones;
/// every equation pairing and orientation is tried; slots shared by both
/// instances are filled with a new name or the nullary agent o().
/// With `cross` off, arguments may not mention either instance's fresh
/// names, so only slot-to-slot pairings remain.
std::optional<Clash> find_clash(const Rule& r1, const Rule& r2, bool cross = true);

/// Merges contractum equations sharing a name until nothing changes.
bool connected(const Rule& r);

/// Small deterministic generator used for rule corpora.
class Rand {
 public:
  explicit Rand(std::uint64_t seed) : s_(seed * 2654435761ULL + 0x9e3779b97f4a7c15ULL) {}
  std::uint64_t next() {
    s_ ^= s_ << 13;
    s_ ^= s_ >> 7;
    s_ ^= s_ << 17;
    return s_;
  }
  std::size_t below(std::size_t n) { return n == 0 ? 0 : next() % n; }

 private:
  std::uint64_t s_;
};

/// Random signatures with arities <= 2 and two rules whose pattern
/// arguments are names or agents applied to names.
std::vector<System> rule_corpus(std::size_t count, std::uint64_t seed);

}  // namespace oracle
