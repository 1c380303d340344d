#pragma once

// Experiments on upward confluence: common predecessors, failure witnesses,
// diamond checks, random configurations and the builtin systems.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "icalc/rewrite.hpp"
#include "icalc/term.hpp"
#include "icalc/unrewrite.hpp"

namespace icalc {

// ---------------------------------------------------------------------------
// Builtin systems: combinators, linlam, trivial-eps, rev-demo, rev-commutation

const std::vector<std::string>& builtin_names();
std::optional<System> find_builtin(std::string_view name);
/// Throws Error for an unknown name.
System builtin(std::string_view name);

// ---------------------------------------------------------------------------
// Joins

struct JoinResult {
  bool joined = false;
  std::string method;  // which construction produced `pred`
  Configuration pred;
  Trace to_first;   // pred ->* first
  Trace to_second;  // pred ->* second
  std::size_t bound = 0;  // search bound used when not joined
};

/// Forward path from `from` to a configuration congruent to `to` using
/// exactly one step.
std::optional<Trace> one_step_path(const System& s, const Configuration& from,
                                   const Configuration& to);

/// Forward path `from` -> interaction -> indirection* -> `to`. The number of
/// indirections is fixed by the bound-name counts, so this search is exact.
std::optional<Trace> plus_path(const System& s, const Configuration& from,
                               const Configuration& to);

/// Common one-step predecessor of c1 and c2, both of which reduce to c in
/// one step. Throws PreconditionError otherwise.
JoinResult common_predecessor(const System& s, const Configuration& c1, const Configuration& c2,
                              const Configuration& c);

/// For c1 ->i c <-i c2 in a system whose rule patterns are bare names (the
/// linear lambda rule, for one) and whose contracta overlap in whole wires:
/// the template c' with c' ->+ c1 and c' ->+ c2, verified. Throws
/// PreconditionError when the redexes are disjoint or the overlap has another
/// shape.
JoinResult linlam_join(const System& s, const Configuration& c1, const Configuration& c2,
                       const Configuration& c);

/// c' ->+ c1 and c' ->+ c2 for an interaction peak c1 ->i c <-i c2. Tries
/// the disjoint-redex construction, the wire template and then a backward
/// search with at most `depth` indirections after the interaction.
JoinResult plus_join(const System& s, const Configuration& c1, const Configuration& c2,
                     const Configuration& c, std::size_t depth);

// ---------------------------------------------------------------------------
// Diamonds

enum class DiamondMode { one, plus };
const char* to_string(DiamondMode m);
std::optional<DiamondMode> parse_diamond_mode(std::string_view s);

struct DiamondFailure {
  Configuration first;
  Configuration second;
  bool inconclusive = false;  // plus mode: nothing found within the bound
};

struct DiamondReport {
  DiamondMode mode = DiamondMode::one;
  std::size_t depth = 0;
  std::size_t predecessors = 0;
  std::size_t pairs = 0;
  std::size_t joined = 0;
  std::vector<DiamondFailure> failures;
};

/// One mode: every unordered pair of distinct one-step predecessors of `c`
/// must have a common one-step predecessor. Plus mode: every pair of
/// distinct interaction predecessors must have a common ->+ predecessor.
DiamondReport diamond_check(const System& s, const Configuration& c, DiamondMode mode,
                            std::size_t depth = 2);

// ---------------------------------------------------------------------------
// Witnesses

struct FailureTriple {
  std::string origin;  // "clash" or "disconnected"
  Configuration c1;
  Configuration c2;
  Configuration c;  // c1 ->i c <-i c2
};

/// A peak with no one-step common predecessor, verified; none when the
/// system is reversible.
std::optional<FailureTriple> strong_failure_witness(const System& s);

// ---------------------------------------------------------------------------
// Sampling

/// Deterministic for a given seed. At most `size` body equations.
Configuration random_config(const System& s, std::size_t size, std::uint64_t seed);

struct Peak {
  Configuration c1, c2, c;
};

/// Interaction peaks c1 ->i c <-i c2 with c1 and c2 not congruent, built by
/// firing an active pair of a random configuration and folding c back.
std::vector<Peak> random_peaks(const System& s, std::size_t count, std::size_t size,
                               std::uint64_t seed);

struct SearchReport {
  std::size_t samples = 0;
  std::size_t size = 0;
  std::size_t depth = 0;
  std::uint64_t seed = 0;
  std::size_t one_pairs = 0;
  std::size_t plus_pairs = 0;
  std::vector<std::pair<Configuration, DiamondFailure>> one_failures;
  std::vector<std::pair<Configuration, DiamondFailure>> plus_failures;  // all inconclusive
};

SearchReport counterexample_search(const System& s, std::size_t size, std::size_t samples,
                                   std::size_t depth, std::uint64_t seed);

/// Multi-step peak x ->* c <-* y given as forward config sequences ending in
/// c. Tiles it with one-step joins (plus joins for interaction pairs) and
/// returns a common ancestor, or none when a tile fails or `cap` tiles are
/// used up.
std::optional<Configuration> tile_join(const System& s, const std::vector<Configuration>& left,
                                       const std::vector<Configuration>& right,
                                       std::size_t depth, std::size_t cap);

/// Forward reachability c' ->* target within `max_steps` steps.
bool reaches(const System& s, const Configuration& from, const Configuration& target,
             std::size_t max_steps);

}  // namespace icalc
