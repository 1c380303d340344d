#pragma once

#include <algorithm>
#include <string>
#include <unordered_map>

#include "icalc/core.hpp"
#include "icalc/lab.hpp"
#include "icalc/textio.hpp"
#include "oracle.hpp"

namespace testing {

using namespace icalc;

inline Configuration cfg(const System& s, const std::string& text) { return parse_config(text, s); }

/// Congruent copy: bound names renamed, body shuffled, equations flipped.
inline Configuration scramble(const Configuration& c, std::uint64_t seed) {
  oracle::Rand rng(seed);
  std::unordered_map<Name, Name> m;
  auto bound = bound_names(c);
  std::vector<std::size_t> ids(bound.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  for (std::size_t i = ids.size(); i > 1; --i) std::swap(ids[i - 1], ids[rng.below(i)]);
  for (std::size_t i = 0; i < bound.size(); ++i) m[bound[i]] = "z" + std::to_string(ids[i]);
  Configuration out;
  for (const auto& t : c.interface) out.interface.push_back(rename(t, m));
  for (const auto& e : c.body) {
    Equation r = rename(e, m);
    out.body.push_back(rng.below(2) ? r.flipped() : r);
  }
  for (std::size_t i = out.body.size(); i > 1; --i) std::swap(out.body[i - 1], out.body[rng.below(i)]);
  return out;
}

inline std::vector<std::string> keys_of(const std::vector<Expansion>& es) {
  std::vector<std::string> out;
  for (const auto& e : es) out.push_back(e.key);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace testing
