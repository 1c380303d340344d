#pragma once

// The `.ins` surface syntax:
//
//   agents { gamma/2, delta/2, eps/0 }
//   rule gamma[x, y] >< gamma[y, x];
//   config c = < a | a = gamma(b, b) >;
//
// `#` starts a comment. A declared agent is always written with parentheses
// (`eps()`); any other identifier is a name.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "icalc/term.hpp"

namespace icalc {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& msg)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct SourceFile {
  System system;
  std::vector<std::pair<std::string, Configuration>> configs;

  const Configuration* find_config(std::string_view name) const;
};

SourceFile parse_system(std::string_view text);

/// Parses `< f1, ..., fk | t1 = u1, ... >` (trailing `;` allowed) against the
/// agents declared in `s`.
Configuration parse_config(std::string_view text, const System& s);

std::string print_term(const Term& t);
std::string print_equation(const Equation& e);
std::string print_equations(const EquationMultiset& eqs);
std::string print_rule(const Rule& r);

/// Canonical form of `c`, with generated names replaced by parseable ones.
std::string print_config(const Configuration& c);
/// `c` exactly as stored, generated names included.
std::string print_config_raw(const Configuration& c);

/// A source file declaring the system and the given configurations.
std::string print_system(const System& s,
                         const std::vector<std::pair<std::string, Configuration>>& configs = {});

}  // namespace icalc
