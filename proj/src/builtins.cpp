#include <utility>

#include "icalc/lab.hpp"
#include "icalc/textio.hpp"

namespace icalc {

namespace {

// The gamma/delta commutation and the eps rules are the standard ones.
constexpr const char* kCombinators = R"(agents { gamma/2, delta/2, eps/0 }
rule gamma[x, y] >< gamma[y, x];
rule delta[x, y] >< delta[x, y];
rule gamma[delta(x1, x2), delta(y1, y2)] >< delta[gamma(x1, y1), gamma(x2, y2)];
rule gamma[eps(), eps()] >< eps[];
rule delta[eps(), eps()] >< eps[];
rule eps[] >< eps[];
)";

constexpr const char* kLinlam = R"(agents { app/2, lam/2 }
rule app[x, y] >< lam[x, y];
)";

constexpr const char* kTrivialEps = R"(agents { eps/0 }
rule eps[] >< eps[];
)";

constexpr const char* kRevDemo = R"(agents { alpha/2, beta/1, gamma/2 }
rule alpha[x, y] >< beta[gamma(x, y)];
)";

constexpr const char* kRevCommutation = R"(agents { gamma/2, delta/2 }
rule gamma[delta(x1, x2), delta(y1, y2)] >< delta[gamma(x1, y1), gamma(x2, y2)];
)";

const std::vector<std::pair<std::string, const char*>>& table() {
  static const std::vector<std::pair<std::string, const char*>> t = {
      {"combinators", kCombinators},
      {"linlam", kLinlam},
      {"trivial-eps", kTrivialEps},
      {"rev-demo", kRevDemo},
      {"rev-commutation", kRevCommutation},
  };
  return t;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, _] : table()) out.push_back(name);
    return out;
  }();
  return names;
}

std::optional<System> find_builtin(std::string_view name) {
  for (const auto& [n, text] : table())
    if (n == name) return parse_system(text).system;
  return std::nullopt;
}

System builtin(std::string_view name) {
  auto s = find_builtin(name);
  if (!s) throw Error("unknown builtin system '" + std::string(name) + "'");
  return *s;
}

}  // namespace icalc
