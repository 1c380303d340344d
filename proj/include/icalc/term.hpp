#pragma once

// Terms, equations, configurations, rules and systems of the interaction
// calculus, plus positions into configurations and the fresh-name supply.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace icalc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation is applied outside its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

using Name = std::string;

/// Machine-generated names start with this character; the parser rejects it.
inline constexpr char kMachinePrefix = '%';

inline bool is_machine_name(std::string_view n) {
  return !n.empty() && n.front() == kMachinePrefix;
}

struct Term {
  enum class Kind : std::uint8_t { name, agent };

  Kind kind = Kind::name;
  std::string symbol;  // name text, or agent symbol
  std::vector<Term> args;

  static Term make_name(Name n) {
    Term t;
    t.kind = Kind::name;
    t.symbol = std::move(n);
    return t;
  }
  static Term make_agent(std::string sym, std::vector<Term> args = {}) {
    Term t;
    t.kind = Kind::agent;
    t.symbol = std::move(sym);
    t.args = std::move(args);
    return t;
  }

  bool is_name() const { return kind == Kind::name; }
  bool is_agent() const { return kind == Kind::agent; }

  /// Number of nodes in the tree.
  std::size_t size() const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);
};

/// An equation t = u. Equality ignores orientation.
struct Equation {
  Term lhs;
  Term rhs;

  Equation flipped() const { return {rhs, lhs}; }

  friend bool operator==(const Equation& a, const Equation& b) {
    return (a.lhs == b.lhs && a.rhs == b.rhs) ||
           (a.lhs == b.rhs && a.rhs == b.lhs);
  }
};

using EquationMultiset = std::vector<Equation>;

/// <f1, ..., fk | e1, ..., en>. The body is a multiset; its vector order
/// carries no meaning.
struct Configuration {
  std::vector<Term> interface;
  std::vector<Equation> body;
};

/// alpha[left_args] >< beta[right_args]
struct Rule {
  std::string left;
  std::string right;
  std::vector<Term> left_args;
  std::vector<Term> right_args;

  std::size_t arity() const { return left_args.size() + right_args.size(); }
};

/// Result of looking up the rule for a pair of agent symbols. `swapped`
/// means the rule's left symbol is the second symbol of the query.
struct RuleRef {
  std::size_t index;
  bool swapped;
};

struct System {
  std::map<std::string, int> signature;
  std::vector<Rule> rules;

  std::optional<int> arity_of(const std::string& symbol) const {
    auto it = signature.find(symbol);
    if (it == signature.end()) return std::nullopt;
    return it->second;
  }
  std::optional<RuleRef> find_rule(const std::string& a,
                                   const std::string& b) const;
};

// ---------------------------------------------------------------------------
// Positions

/// Address of a subterm occurrence in a configuration.
struct Position {
  enum class Where : std::uint8_t { interface, lhs, rhs };
  Where where = Where::interface;
  std::size_t index = 0;           // interface entry or body equation
  std::vector<std::size_t> path;   // argument indices from the root

  friend bool operator==(const Position&, const Position&) = default;
};

const Term& root_of(const Configuration& c, const Position& p);
Term& root_of(Configuration& c, const Position& p);
const Term& subterm(const Configuration& c, const Position& p);
Term& subterm(Configuration& c, const Position& p);

/// Every subterm occurrence, interface first, then each equation's sides.
std::vector<Position> all_positions(const Configuration& c);

/// True if `outer` is `inner` or one of its ancestors.
bool is_prefix_of(const Position& outer, const Position& inner);

// ---------------------------------------------------------------------------
// Names

void collect_names(const Term& t, std::vector<Name>& out);
std::unordered_map<Name, int> name_counts(const Configuration& c);
std::unordered_map<Name, int> name_counts(const EquationMultiset& eqs);
bool occurs_in(const Term& t, const Name& n);

/// Names occurring exactly once, in order of first occurrence.
std::vector<Name> free_names(const Configuration& c);
/// Names occurring exactly twice, in order of first occurrence.
std::vector<Name> bound_names(const Configuration& c);

Term rename(const Term& t, const std::unordered_map<Name, Name>& m);
Equation rename(const Equation& e, const std::unordered_map<Name, Name>& m);

/// Deterministic supply of machine names `%0`, `%1`, ...
class NameSupply {
 public:
  explicit NameSupply(std::uint64_t start = 0) : next_(start) {}

  Name fresh() { return std::string(1, kMachinePrefix) + std::to_string(next_++); }
  std::uint64_t counter() const { return next_; }

  /// Moves the counter past every `%<n>` name in the argument so later
  /// draws cannot collide with it.
  void avoid(const Term& t);
  void avoid(const Configuration& c);
  void avoid(const EquationMultiset& eqs);

 private:
  void avoid_name(const Name& n);
  std::uint64_t next_;
};

}  // namespace icalc
