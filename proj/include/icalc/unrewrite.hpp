#pragma once

// Backward steps: every one-step predecessor of a configuration.

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "icalc/rewrite.hpp"
#include "icalc/term.hpp"

namespace icalc {

/// A body sub-multiset recognised as a rule's contractum.
struct ExpansionMatch {
  std::size_t rule = 0;
  std::unordered_map<Name, Name> wiring;  // rule wiring name -> configuration name
  std::vector<std::size_t> selection;     // body index per slot, left agent first
  std::vector<Term> left_args;
  std::vector<Term> right_args;

  Equation active_pair(const System& s) const;
};

struct Expansion {
  Configuration config;
  Step::Kind kind;
  std::string key;  // canonical key of `config`

  // indirection: the abstracted position of the successor and the new name
  std::optional<Position> abstracted;
  Name introduced;
  // interaction: how the contractum was recognised
  std::optional<ExpansionMatch> match;
};

/// Replaces the subterm at `p` by `x` and adds the equation x = subterm.
Configuration abstract_at(const Configuration& c, const Position& p, const Name& x);

/// All predecessors by one indirection, deduplicated by congruence.
std::vector<Expansion> indirection_expansions(const Configuration& c);

/// Every way a sub-multiset of the body instantiates a rule's contractum.
/// No deduplication.
std::vector<ExpansionMatch> contractum_matches(const System& s, const Configuration& c);

/// Matches restricted to one rule and, optionally, an exact selection
/// (given as a set of body indices).
std::vector<ExpansionMatch> contractum_matches(const System& s, const Configuration& c,
                                               std::size_t rule,
                                               const std::vector<std::size_t>* selection);

/// The predecessor obtained by folding a match back into its active pair.
Configuration fold(const System& s, const Configuration& c, const ExpansionMatch& m);

/// All predecessors by one interaction, deduplicated by congruence.
std::vector<Expansion> interaction_expansions(const System& s, const Configuration& c);

enum class ExpansionKind { interaction, indirection, all };

/// Union of both kinds, deduplicated by congruence.
std::vector<Expansion> expansions(const System& s, const Configuration& c,
                                  ExpansionKind kind = ExpansionKind::all);

/// True if some single step of `from` yields a configuration congruent to `to`.
bool reduces_in_one_step(const System& s, const Configuration& from, const Configuration& to);

}  // namespace icalc
