#pragma once

// Well-formedness checks, substitution and structural congruence.

#include <string>
#include <vector>

#include "icalc/term.hpp"

namespace icalc {

struct Diagnostic {
  enum class Severity { error, warning };
  Severity severity;
  std::string location;  // e.g. "interface[0]", "body[2]", "rule 1"
  std::string message;
};

struct Validation {
  std::vector<Diagnostic> diagnostics;

  bool ok() const;
  std::vector<Diagnostic> errors() const;
  std::vector<Diagnostic> warnings() const;
  /// One line per diagnostic.
  std::string to_string() const;
};

/// Linearity, declared agents and arities. Cyclic equations (x = t with x
/// inside t) are reported as warnings.
Validation validate_config(const System& s, const Configuration& c);

/// Rule wiring, arities against the signature, at most one rule per
/// unordered symbol pair. Same-symbol rules whose contractum changes when
/// the two sides are swapped get a coherence warning.
Validation validate_system(const System& s);

/// Replaces the unique occurrence of `x` in `c` by `t`.
/// Throws PreconditionError unless `x` occurs exactly once.
Configuration substitute(const Configuration& c, const Name& x, const Term& t);

/// Where each body equation of the input went in the canonical form.
struct Alignment {
  std::vector<std::size_t> equation;  // input body index -> canonical index
  std::vector<bool> flipped;          // orientation reversed
  std::unordered_map<Name, Name> names;  // bound input name -> canonical name

  /// Maps a position of the input configuration to the canonical one.
  Position map(const Position& p) const;
};

struct CanonicalForm {
  Configuration config;
  std::string key;  // equal keys <=> congruent configurations
  Alignment alignment;
};

/// Renames bound names to `%0, %1, ...` in order of first appearance, orients
/// every equation and orders the body so that congruent configurations get
/// identical results. Interface order is kept.
CanonicalForm canonical_form(const Configuration& c);
Configuration canonicalize(const Configuration& c);
std::string canonical_key(const Configuration& c);

bool congruent(const Configuration& a, const Configuration& b);

}  // namespace icalc
