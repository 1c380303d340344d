#include <sstream>

#include "doctest.h"
#include "icalc/cli.hpp"
#include "json.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = icalc::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

void has_keys(const nlohmann::json& j, std::initializer_list<const char*> keys) {
  for (const char* k : keys) CHECK_MESSAGE(j.contains(k), k);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("check") {
  Run lin = run({"check", "linlam"});
  CHECK(lin.code == icalc::kExitNegative);
  CHECK(lin.out.find("disconnected") != std::string::npos);
  CHECK(lin.out.find("verdict: irreversible") != std::string::npos);

  Run triv = run({"check", "trivial-eps"});
  CHECK(triv.code == icalc::kExitOk);

  auto j = json_of(run({"check", "combinators", "--json"}));
  has_keys(j, {"verdict", "rules", "clashes", "witnesses", "arity_table", "arity_characterization",
               "completeness"});
  CHECK(j["verdict"] == "irreversible");
  CHECK(j["rules"].size() == 6);
  CHECK(j["rules"][0]["connected"] == false);
  CHECK(j["rules"][2]["connected"] == true);
  CHECK(j["rules"][5]["self_clash"].is_null());
}

TEST_CASE("reduce") {
  Run r = run({"reduce", "linlam", "-c", "< r | lam(x, x) = app(lam(y, y), r) >", "--json", "--trace"});
  CHECK(r.code == icalc::kExitOk);
  auto j = nlohmann::json::parse(r.out);
  has_keys(j, {"initial", "final", "stop", "steps", "trace"});
  CHECK(j["final"] == "< lam(x0, x0) | >");
  CHECK(j["stop"] == "normal");

  Run fuel = run({"reduce", "combinators", "-c", "< | delta(a, b) = gamma(a, b) >", "--fuel", "5"});
  CHECK(fuel.code == icalc::kExitInconclusive);
}

TEST_CASE("expand") {
  Run r = run({"expand", "linlam", "-c", "< a, b | a = x, x = b >", "--json"});
  CHECK(r.code == icalc::kExitOk);
  auto j = json_of(r);
  has_keys(j, {"config", "count", "predecessors"});
  CHECK(j["count"] == 1);
  CHECK(run({"expand", "linlam", "-c", "< a | a = b >", "--kind", "sideways"}).code == icalc::kExitUsage);
}

TEST_CASE("diamond") {
  Run plus = run({"diamond", "linlam", "-c", "< t1, u1, t2, u2 | t1 = x, x = u1, t2 = y, y = u2 >",
                  "--mode", "plus", "--json"});
  CHECK(plus.code == icalc::kExitOk);
  auto j = json_of(plus);
  has_keys(j, {"config", "mode", "depth", "predecessors", "pairs", "joined", "verdict", "failures"});
  CHECK(j["verdict"] == "joinable");

  Run one = run({"diamond", "linlam", "-c", "< t1, u1, t2, u2 | t1 = x, x = u1, t2 = y, y = u2 >"});
  CHECK(one.code == icalc::kExitNegative);
}

TEST_CASE("witness") {
  Run w = run({"witness", "combinators", "--json"});
  CHECK(w.code == icalc::kExitNegative);
  auto j = json_of(w);
  REQUIRE(j.contains("witness"));
  for (const char* k : {"origin", "c1", "c2", "c"}) CHECK(j["witness"].contains(k));
  Run none = run({"witness", "trivial-eps"});
  CHECK(none.code == icalc::kExitOk);
  CHECK(none.out == "none\n");
}

TEST_CASE("search is deterministic") {
  std::vector<std::string> args = {"search", "linlam", "--samples", "8", "--seed", "4", "--json"};
  Run a = run(args), b = run(args);
  CHECK(a.out == b.out);
  CHECK(a.code == b.code);
  auto j = json_of(a);
  has_keys(j, {"samples", "size", "depth", "seed", "one", "plus"});
  CHECK(j["plus"]["inconclusive"] == 0);
}

TEST_CASE("errors") {
  Run unknown = run({"check", "no-such-system"});
  CHECK(unknown.code == icalc::kExitUsage);
  CHECK(unknown.out.empty());
  CHECK_FALSE(unknown.err.empty());

  Run parse = run({"reduce", "linlam", "-c", "< a | a = app(b, >"});
  CHECK(parse.code == icalc::kExitUsage);
  CHECK(parse.err.find("1:") != std::string::npos);

  Run invalid = run({"reduce", "linlam", "-c", "< a, a, a | >"});
  CHECK(invalid.code == icalc::kExitInvalid);

  CHECK(run({}).code == icalc::kExitUsage);
  CHECK(run({"--help"}).code == icalc::kExitOk);
}

}  // TEST_SUITE
