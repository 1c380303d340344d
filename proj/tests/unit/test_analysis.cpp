#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "icalc/analysis.hpp"

using namespace testing;

namespace {

Configuration pair_config(const Equation& a, const Equation& b) { return {{}, {a, b}}; }

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("divide_pattern and connectivity") {
  System s = builtin("combinators");
  CHECK(divide_pattern(s.rules[0]).size() == 4);
  CHECK(pattern_components(s.rules[0]).size() == 2);
  CHECK_FALSE(is_connected(s.rules[0]));
  CHECK_FALSE(is_connected(s.rules[1]));
  CHECK(is_connected(s.rules[2]));
  CHECK_FALSE(is_connected(s.rules[3]));  // gamma[eps(), eps()]: two nameless equations
  CHECK(is_connected(s.rules[5]));
  CHECK_FALSE(is_connected(builtin("linlam").rules[0]));
  CHECK(is_connected(builtin("rev-demo").rules[0]));
}

TEST_CASE("combinators: annihilations clash") {
  System s = builtin("combinators");
  auto w = clash_witness(s.rules[0], s.rules[1]);
  REQUIRE(w);
  CHECK(check_witness(*w, s.rules[0], s.rules[1]));
  Configuration expect = cfg(s, "<| gamma(t, u) = gamma(v, w), delta(t, u) = delta(w, v) >");
  CHECK(oracle::congruent(pair_config(w->first, w->second), expect));
  CHECK_FALSE(clash_witness(s.rules[5], s.rules[5]));
}

TEST_CASE("linear lambda self-clash from the text") {
  System s = builtin("linlam");
  auto ws = clash_witnesses(s.rules[0], s.rules[0]);
  Configuration expect = cfg(s, "<| app(t, u) = lam(v, w), app(v, u) = lam(t, w) >");
  bool found = false;
  for (const auto& w : ws) {
    CHECK(check_witness(w, s.rules[0], s.rules[0]));
    found = found || oracle::congruent(pair_config(w.first, w.second), expect);
  }
  CHECK(found);
}

TEST_CASE("witnesses are distinct up to renaming and verify") {
  for (const auto& name : builtin_names()) {
    System s = builtin(name);
    for (const auto& r1 : s.rules)
      for (const auto& r2 : s.rules) {
        auto ws = clash_witnesses(r1, r2);
        for (std::size_t i = 0; i < ws.size(); ++i) {
          CHECK(check_witness(ws[i], r1, r2));
          for (std::size_t j = 0; j < i; ++j)
            CHECK_FALSE(oracle::congruent(pair_config(ws[i].first, ws[i].second),
                                          pair_config(ws[j].first, ws[j].second)));
        }
      }
  }
}

TEST_CASE("brute-force clash oracle agrees") {
  std::size_t pairs = 0, clashes = 0;
  for (const auto& s : oracle::rule_corpus(60, 21)) {
    REQUIRE(validate_system(s).ok());
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = i; j < 2; ++j) {
        const Rule& a = s.rules[i];
        const Rule& b = s.rules[j];
        auto lib = clash_witness(a, b);
        auto ref = oracle::find_clash(a, b);
        CHECK_MESSAGE(lib.has_value() == ref.has_value(), print_rule(a) << "  /  " << print_rule(b));
        if (lib) CHECK(check_witness(*lib, a, b));
        ++pairs;
        clashes += ref.has_value();
      }
  }
  CHECK(pairs == 180);
  CHECK(clashes > 20);
}

TEST_CASE("fresh names of the other instance matter") {
  // Only the cross pairing finds this self-clash of the reversible-looking
  // demo rule.
  System s = builtin("rev-demo");
  CHECK(oracle::find_clash(s.rules[0], s.rules[0], true));
  CHECK_FALSE(oracle::find_clash(s.rules[0], s.rules[0], false));
  auto w = clash_witness(s.rules[0], s.rules[0]);
  REQUIRE(w);
  CHECK(w->cross > 0);
  CHECK(check_witness(*w, s.rules[0], s.rules[0]));
}

TEST_CASE("equal positive arity forces a clash") {
  std::size_t n = 0;
  for (const auto& s : oracle::rule_corpus(150, 5)) {
    const Rule& a = s.rules[0];
    const Rule& b = s.rules[1];
    if (a.arity() != b.arity() || a.arity() == 0) continue;
    CHECK(clash_witness(a, b));
    ++n;
  }
  CHECK(n > 20);
}

TEST_CASE("verdict matches the arity characterization") {
  std::size_t reversible = 0;
  auto check_system = [&](const System& s) {
    auto rep = reversibility_report(s);
    CHECK(rep.reversible == arity_characterization(s));
    // independent recomputation
    bool ok = true;
    std::set<std::size_t> arities;
    for (const auto& r : s.rules) {
      ok = ok && oracle::connected(r) && !oracle::find_clash(r, r);
      if (r.arity() > 0 && !arities.insert(r.arity()).second) ok = false;
    }
    CHECK(rep.reversible == ok);
    reversible += rep.reversible;
  };
  for (const auto& s : oracle::rule_corpus(150, 8)) check_system(s);
  for (const auto& name : builtin_names()) check_system(builtin(name));
  CHECK(reversible > 10);
}

TEST_CASE("builtin verdicts") {
  CHECK_FALSE(reversibility_report(builtin("combinators")).reversible);
  CHECK_FALSE(reversibility_report(builtin("linlam")).reversible);
  CHECK(reversibility_report(builtin("trivial-eps")).reversible);
  CHECK_FALSE(reversibility_report(builtin("rev-demo")).reversible);
  CHECK_FALSE(reversibility_report(builtin("rev-commutation")).reversible);

  auto rep = reversibility_report(builtin("combinators"));
  REQUIRE(rep.rules.size() == 6);
  CHECK(rep.rules[5].self_clashes.empty());
  CHECK(rep.arity_table.at(4) == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("completeness") {
  auto t = completeness_check(builtin("trivial-eps"));
  CHECK(t.complete);
  CHECK(t.trivial);
  auto c = completeness_check(builtin("combinators"));
  CHECK(c.complete);
  CHECK_FALSE(c.trivial);
  auto l = completeness_check(builtin("linlam"));
  CHECK_FALSE(l.complete);
  CHECK(l.missing.size() == 2);
}

}  // TEST_SUITE
