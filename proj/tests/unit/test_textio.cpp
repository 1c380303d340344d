#include "doctest.h"
#include "helpers.hpp"
#include "icalc/analysis.hpp"

using namespace testing;

TEST_SUITE("textio") {

TEST_CASE("system file with configs and comments") {
  auto src = parse_system(R"(# two agents
agents { app/2, lam/2 }
rule app[x, y] >< lam[x, y];   # beta
config id = < r | app(lam(x, x), a) = r, a = lam(y, y) >;
config empty = < | >;
)");
  CHECK(src.system.signature.size() == 2);
  CHECK(src.system.rules.size() == 1);
  REQUIRE(src.find_config("id") != nullptr);
  CHECK(src.find_config("id")->body.size() == 2);
  REQUIRE(src.find_config("empty") != nullptr);
  CHECK(src.find_config("empty")->body.empty());
  CHECK(src.find_config("nope") == nullptr);
}

TEST_CASE("machine names are rejected in user input") {
  System s = builtin("linlam");
  CHECK_THROWS_AS(parse_config("< %0 | %0 = lam(a, a) >", s), ParseError);
  CHECK_THROWS_AS(parse_system("agents { a/1 }\nrule a[%x] >< a[%x];\n"), ParseError);
}

TEST_CASE("parse errors carry positions") {
  System s = builtin("combinators");
  try {
    parse_config("< a |\n  a = gamma(b, >", s);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 16);
  }
  CHECK_THROWS_AS(parse_config("< a | a = eps >", s), ParseError);  // eps needs ()
  CHECK_THROWS_AS(parse_config("< a | a = b", s), ParseError);
  CHECK_THROWS_AS(parse_system("agents { a/x }"), ParseError);
  CHECK_THROWS_AS(parse_system("rule a[] >< ;"), ParseError);
}

TEST_CASE("undeclared agents parse and fail validation") {
  System s = builtin("linlam");
  Configuration c = parse_config("< a | a = foo(b, b) >", s);
  CHECK(validate_config(s, c).errors().size() == 1);
}

TEST_CASE("print then parse round-trips configurations") {
  for (const auto& name : builtin_names()) {
    System s = builtin(name);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      Configuration c = random_config(s, 5, seed);
      Configuration back = parse_config(print_config(c), s);
      CHECK(congruent(c, back));
      CHECK(print_config(back) == print_config(c));
      // generated names print as parseable ones
      NameSupply fresh;
      for (const auto& st : one_step_reducts(s, c, fresh)) {
        CHECK(congruent(st.result, parse_config(print_config(st.result), s)));
        break;
      }
    }
  }
}

TEST_CASE("print then parse round-trips systems") {
  std::vector<System> systems;
  for (const auto& name : builtin_names()) systems.push_back(builtin(name));
  for (auto& s : oracle::rule_corpus(60, 11)) systems.push_back(s);
  for (const auto& s : systems) {
    std::vector<std::pair<std::string, Configuration>> configs = {{"c", random_config(s, 3, 5)}};
    SourceFile back = parse_system(print_system(s, configs));
    CHECK(back.system.signature == s.signature);
    REQUIRE(back.system.rules.size() == s.rules.size());
    for (std::size_t i = 0; i < s.rules.size(); ++i)
      CHECK(print_rule(back.system.rules[i]) == print_rule(s.rules[i]));
    REQUIRE(back.find_config("c") != nullptr);
    CHECK(congruent(*back.find_config("c"), configs[0].second));
  }
}

TEST_CASE("printing") {
  System s = builtin("combinators");
  CHECK(print_rule(s.rules[0]) == "gamma[x, y] >< gamma[y, x]");
  CHECK(print_term(Term::make_agent("eps")) == "eps()");
  CHECK(print_config_raw(cfg(s, "< a | a = eps() >")) == "< a | a = eps() >");
}

}  // TEST_SUITE
