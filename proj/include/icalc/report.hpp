#pragma once

// Human-readable and JSON renderings of analysis and lab results. JSON key
// names are stable; see README.md.

#include <optional>
#include <string>
#include <vector>

#include "icalc/analysis.hpp"
#include "icalc/lab.hpp"
#include "icalc/rewrite.hpp"
#include "icalc/unrewrite.hpp"

namespace icalc {

std::string print_report(const System& s, const ReversibilityReport& r, bool json);
std::string print_trace(const Trace& t, bool with_steps, bool json);
std::string print_expansions(const Configuration& c, const std::vector<Expansion>& es, bool json);
std::string print_diamond(const Configuration& c, const DiamondReport& r, bool json);
std::string print_witness(const std::optional<FailureTriple>& t, bool json);
std::string print_search(const SearchReport& r, bool json);

}  // namespace icalc
