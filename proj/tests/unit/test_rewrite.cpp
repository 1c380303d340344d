#include <set>

#include "doctest.h"
#include "helpers.hpp"

using namespace testing;

namespace {

std::set<Name> name_set(const std::vector<Name>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_SUITE("rewrite") {

TEST_CASE("divide introduces each fresh name exactly twice") {
  for (const auto& name : builtin_names()) {
    System s = builtin(name);
    for (const auto& r : s.rules) {
      std::vector<Term> l, rr;
      for (std::size_t i = 0; i < r.left_args.size(); ++i) l.push_back(Term::make_name("l" + std::to_string(i)));
      for (std::size_t i = 0; i < r.right_args.size(); ++i) rr.push_back(Term::make_name("r" + std::to_string(i)));
      NameSupply fresh;
      EquationMultiset eqs = divide(r, l, rr, fresh);
      CHECK(eqs.size() == r.arity());
      for (const auto& [n, k] : name_counts(eqs)) CHECK(k == (is_machine_name(n) ? 2 : 1));
    }
  }
  System s = builtin("linlam");
  NameSupply fresh;
  CHECK_THROWS_AS(divide(s.rules[0], {Term::make_name("a")}, {}, fresh), PreconditionError);
}

TEST_CASE("linear lambda interaction") {
  System s = builtin("linlam");
  Configuration c = cfg(s, "< f, r | app(f, r) = lam(x, x) >");
  auto active = active_pairs(s, c);
  REQUIRE(active.size() == 1);
  NameSupply fresh;
  Configuration d = interact(s, c, active[0], fresh);
  CHECK(d.body.size() == 4);
  CHECK(congruent(d, cfg(s, "< f, r | f = p, r = q, x = p, x = q >")));
}

TEST_CASE("indirection") {
  System s = builtin("combinators");
  Configuration c = cfg(s, "< a | a = gamma(b, c), b = eps(), c = d, d = eps() >");
  CHECK(indirection_sides(c, 0).size() == 1);
  Configuration d = indirect(c, 0);
  CHECK(congruent(d, cfg(s, "< gamma(b, c) | b = eps(), c = d, d = eps() >")));
  // x = y with both sides usable: the smaller name goes
  Configuration e = cfg(s, "< p, q | p = y, y = x, x = q >");
  CHECK(indirection_sides(e, 1).size() == 2);
  CHECK(print_config_raw(indirect(e, 1)) == "< p, q | p = y, y = q >");
  CHECK(print_config_raw(indirect(e, 1, Side::lhs)) == "< p, q | p = x, x = q >");
}

TEST_CASE("cyclic equations are inert") {
  System s = builtin("combinators");
  Configuration c = cfg(s, "< y | x = gamma(x, y) >");
  CHECK(indirection_sides(c, 0).empty());
  CHECK_THROWS_AS(indirect(c, 0), PreconditionError);
  NameSupply fresh;
  CHECK(one_step_reducts(s, c, fresh).empty());
}

TEST_CASE("stuck pairs and fuel") {
  System s = builtin("linlam");
  NameSupply fresh;
  Trace t = normalize(s, cfg(s, "< | app(a, b) = app(a, b) >"), Strategy::interaction_first, 100, fresh);
  CHECK(t.stop == StopReason::stuck);
  CHECK(t.steps.empty());

  System k = builtin("combinators");
  Trace loop = normalize(k, cfg(k, "< | delta(a, b) = gamma(a, b) >"), Strategy::interaction_first, 60, fresh);
  CHECK(loop.stop == StopReason::fuel_exhausted);
  CHECK(loop.steps.size() == 60);
}

TEST_CASE("identity applied to identity") {
  System s = builtin("linlam");
  for (auto strategy : {Strategy::interaction_first, Strategy::indirection_first, Strategy::leftmost}) {
    NameSupply fresh;
    Trace t = normalize(s, cfg(s, "< r | lam(x, x) = app(lam(y, y), r) >"), strategy, 100, fresh);
    CHECK(t.stop == StopReason::normal);
    CHECK(congruent(t.final_config(), cfg(s, "< lam(y, y) | >")));
  }
}

TEST_CASE("steps keep validity; interaction keeps names, indirection drops one") {
  for (const auto& name : builtin_names()) {
    System s = builtin(name);
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
      Configuration c = random_config(s, 5, seed);
      REQUIRE(validate_config(s, c).ok());
      NameSupply fresh;
      fresh.avoid(c);
      auto free0 = name_set(free_names(c));
      auto bound0 = bound_names(c).size();
      for (const auto& st : one_step_reducts(s, c, fresh)) {
        CHECK(validate_config(s, st.result).ok());
        CHECK(name_set(free_names(st.result)) == free0);
        if (st.kind == Step::Kind::interaction) {
          auto before = name_set(bound_names(c));
          auto after = name_set(bound_names(st.result));
          for (const auto& n : before) CHECK(after.count(n));
          CHECK(st.result.body.size() + 1 == c.body.size() + s.rules[st.rule].arity());
        } else {
          CHECK(bound_names(st.result).size() + 1 == bound0);
          CHECK(st.result.body.size() + 1 == c.body.size());
        }
      }
    }
  }
}

TEST_CASE("linear lambda normalization terminates") {
  System s = builtin("linlam");
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    NameSupply fresh;
    Trace t = normalize(s, random_config(s, 6, seed), Strategy::interaction_first, 10000, fresh);
    CHECK(t.stop != StopReason::fuel_exhausted);
  }
}

TEST_CASE("fresh names are reproducible") {
  System s = builtin("combinators");
  Configuration c = cfg(s, "< | delta(a, b) = gamma(a, b) >");
  NameSupply f1, f2;
  Trace a = normalize(s, c, Strategy::leftmost, 30, f1);
  Trace b = normalize(s, c, Strategy::leftmost, 30, f2);
  CHECK(print_config_raw(a.final_config()) == print_config_raw(b.final_config()));
  CHECK(f1.counter() == f2.counter());
}

}  // TEST_SUITE
