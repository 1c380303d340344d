#pragma once

// Static reversibility analysis of interaction systems.
//
// Two active pairs clash when their contracta are the same non-empty
// multiset. A rule is connected when its contractum pattern cannot be split
// into two non-empty parts sharing no name. A system is reversible when no
// two different active pairs clash and every rule is connected.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "icalc/term.hpp"

namespace icalc {

/// The contractum of alpha(%x1..%xm) = beta(%y1..%yn), keeping the rule's
/// own wiring names.
EquationMultiset divide_pattern(const Rule& r);

bool is_connected(const Rule& r);

/// Components of the contractum pattern (equation indices into
/// divide_pattern), ordered by smallest index.
std::vector<std::vector<std::size_t>> pattern_components(const Rule& r);

struct ClashWitness {
  Equation first;              // active pair firing the first rule
  Equation second;             // active pair firing the second rule
  EquationMultiset contractum; // shared by both
  std::size_t cross = 0;       // equations matched slot-to-pattern
};

/// Every clash between an instance of `r1` and an instance of `r2`, up to
/// renaming. Argument slots left unconstrained hold pairwise distinct names.
/// An instance's arguments never mention that instance's own fresh names;
/// they may mention the other instance's.
std::vector<ClashWitness> clash_witnesses(const Rule& r1, const Rule& r2);
std::optional<ClashWitness> clash_witness(const Rule& r1, const Rule& r2);

/// Recomputes both contracta with the rewrite engine and checks that they
/// agree, are non-empty, and come from different active pairs.
bool check_witness(const ClashWitness& w, const Rule& r1, const Rule& r2);

bool is_reversible_rule(const Rule& r);

struct RuleVerdict {
  std::size_t rule;
  bool connected;
  std::vector<ClashWitness> self_clashes;
};

struct PairClash {
  std::size_t first;
  std::size_t second;
  std::vector<ClashWitness> witnesses;
};

struct ReversibilityReport {
  std::vector<RuleVerdict> rules;
  std::vector<PairClash> clashes;  // distinct rule pairs that clash
  std::map<std::size_t, std::vector<std::size_t>> arity_table;  // arity -> rules
  bool reversible = true;
};

ReversibilityReport reversibility_report(const System& s);

/// Every rule reversible and no two rules sharing a positive arity.
bool arity_characterization(const System& s);

struct CompletenessReport {
  bool complete = true;
  bool trivial = true;
  bool distinct_arities = true;
  std::vector<std::pair<std::string, std::string>> missing;  // pairs without a rule
};

CompletenessReport completeness_check(const System& s);

}  // namespace icalc
