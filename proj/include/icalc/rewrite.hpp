#pragma once

// Forward reduction: interaction and indirection steps, normalization.

#include <optional>
#include <string>
#include <vector>

#include "icalc/term.hpp"

namespace icalc {

/// alpha(t) ÷ beta(u): the equations {t_i = v_i', u_j = w_j'} where v', w'
/// are the rule's patterns with their wiring names replaced by fresh ones.
/// Throws PreconditionError when the argument counts do not match the rule.
EquationMultiset divide(const Rule& r, const std::vector<Term>& left_args,
                        const std::vector<Term>& right_args, NameSupply& fresh);

struct PairScan {
  std::vector<std::size_t> active;  // equations firing some rule
  std::vector<std::size_t> stuck;   // agent = agent with no rule
};

PairScan scan_pairs(const System& s, const Configuration& c);
std::vector<std::size_t> active_pairs(const System& s, const Configuration& c);

/// Replaces the active pair at body index `eq` by the rule's contractum.
/// The equation's left side is matched against the rule's left agent when
/// both orientations fit (same-symbol rules).
Configuration interact(const System& s, const Configuration& c, std::size_t eq,
                       NameSupply& fresh);

enum class Side { lhs, rhs };

/// Sides of equation `eq` usable for indirection: a name whose other
/// occurrence lies outside the equation.
std::vector<Side> indirection_sides(const Configuration& c, std::size_t eq);

/// Removes equation `eq` = (x = t) and substitutes t for the other
/// occurrence of x. Without `side`, the usable side whose name sorts first
/// is eliminated. Throws PreconditionError when neither side is usable.
Configuration indirect(const Configuration& c, std::size_t eq,
                       std::optional<Side> side = std::nullopt);

struct Step {
  enum class Kind { interaction, indirection };
  Kind kind;
  std::size_t equation;       // body index in the source configuration
  Equation selected;          // the equation consumed
  std::size_t rule = 0;       // interaction: rule index
  Name eliminated;            // indirection: removed name
  Configuration result;
};

const char* to_string(Step::Kind k);

/// Every one-step reduct of `c`: each active pair and each usable side of
/// each equation.
std::vector<Step> one_step_reducts(const System& s, const Configuration& c,
                                   NameSupply& fresh);

enum class Strategy { interaction_first, indirection_first, leftmost };

enum class StopReason { normal, stuck, fuel_exhausted };

const char* to_string(Strategy s);
const char* to_string(StopReason r);
std::optional<Strategy> parse_strategy(std::string_view s);

struct Trace {
  Configuration initial;
  std::vector<Step> steps;
  StopReason stop = StopReason::normal;

  const Configuration& final_config() const {
    return steps.empty() ? initial : steps.back().result;
  }
};

Trace normalize(const System& s, const Configuration& c, Strategy strategy,
                std::size_t fuel, NameSupply& fresh);

}  // namespace icalc
