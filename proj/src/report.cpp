#include "icalc/report.hpp"

#include <sstream>

#include "icalc/core.hpp"
#include "icalc/textio.hpp"
#include "json.hpp"

namespace icalc {

namespace {

using Json = nlohmann::ordered_json;

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json witness_json(const ClashWitness& w) {
  Json contractum = Json::array();
  for (const auto& e : w.contractum) contractum.push_back(print_equation(e));
  return {{"first", print_equation(w.first)},
          {"second", print_equation(w.second)},
          {"contractum", std::move(contractum)}};
}

void witness_text(std::ostream& os, const ClashWitness& w, const char* indent) {
  os << indent << print_equation(w.first) << "  vs  " << print_equation(w.second) << "\n"
     << indent << "  contractum " << print_equations(w.contractum) << "\n";
}

const char* step_name(Step::Kind k) { return to_string(k); }

std::string describe(const Step& st) {
  std::ostringstream os;
  os << step_name(st.kind) << " at body[" << st.equation << "]";
  if (st.kind == Step::Kind::interaction)
    os << " rule " << st.rule;
  else if (!is_machine_name(st.eliminated))
    os << " eliminating " << st.eliminated;
  return os.str();
}

Json trace_json(const Trace& t) {
  Json steps = Json::array();
  for (const auto& st : t.steps) {
    Json j = {{"kind", step_name(st.kind)}, {"equation", st.equation}};
    if (st.kind == Step::Kind::interaction) j["rule"] = st.rule;
    j["result"] = print_config(st.result);
    steps.push_back(std::move(j));
  }
  return steps;
}

}  // namespace

std::string print_report(const System& s, const ReversibilityReport& r, bool json) {
  if (json) {
    Json rules = Json::array();
    Json witnesses = Json::array();
    for (const auto& v : r.rules) {
      Json self = v.self_clashes.empty() ? Json(nullptr) : witness_json(v.self_clashes.front());
      rules.push_back({{"index", v.rule},
                       {"rule", print_rule(s.rules[v.rule])},
                       {"arity", s.rules[v.rule].arity()},
                       {"connected", v.connected},
                       {"self_clash", self},
                       {"self_clash_count", v.self_clashes.size()}});
      for (const auto& w : v.self_clashes) {
        Json j = witness_json(w);
        j["rules"] = {v.rule, v.rule};
        witnesses.push_back(std::move(j));
      }
    }
    Json clashes = Json::array();
    for (const auto& c : r.clashes) {
      clashes.push_back({{"rules", {c.first, c.second}},
                         {"witness", witness_json(c.witnesses.front())},
                         {"count", c.witnesses.size()}});
      for (const auto& w : c.witnesses) {
        Json j = witness_json(w);
        j["rules"] = {c.first, c.second};
        witnesses.push_back(std::move(j));
      }
    }
    Json arity = Json::object();
    for (const auto& [a, idx] : r.arity_table) arity[std::to_string(a)] = idx;
    CompletenessReport comp = completeness_check(s);
    return dump({{"verdict", r.reversible ? "reversible" : "irreversible"},
                 {"rules", std::move(rules)},
                 {"clashes", std::move(clashes)},
                 {"witnesses", std::move(witnesses)},
                 {"arity_table", std::move(arity)},
                 {"arity_characterization", arity_characterization(s)},
                 {"completeness",
                  {{"complete", comp.complete},
                   {"trivial", comp.trivial},
                   {"distinct_arities", comp.distinct_arities}}}});
  }

  std::ostringstream os;
  for (const auto& v : r.rules) {
    os << "rule " << v.rule << ": " << print_rule(s.rules[v.rule]) << "\n"
       << "  arity " << s.rules[v.rule].arity() << ", "
       << (v.connected ? "connected" : "disconnected") << ", ";
    if (v.self_clashes.empty()) {
      os << "no self-clash\n";
    } else {
      os << v.self_clashes.size() << " self-clash witness"
         << (v.self_clashes.size() == 1 ? "" : "es") << "\n";
      for (const auto& w : v.self_clashes) witness_text(os, w, "    ");
    }
  }
  for (const auto& c : r.clashes) {
    os << "clash between rules " << c.first << " and " << c.second << ": " << c.witnesses.size()
       << " witness" << (c.witnesses.size() == 1 ? "" : "es") << "\n";
    for (const auto& w : c.witnesses) witness_text(os, w, "    ");
  }
  os << "arity table:";
  if (r.arity_table.empty()) os << " (no rules)";
  for (const auto& [a, idx] : r.arity_table) {
    os << "  " << a << " ->";
    for (auto i : idx) os << " " << i;
  }
  os << "\nverdict: " << (r.reversible ? "reversible" : "irreversible") << "\n";
  return os.str();
}

std::string print_trace(const Trace& t, bool with_steps, bool json) {
  if (json) {
    Json j = {{"initial", print_config(t.initial)},
              {"final", print_config(t.final_config())},
              {"stop", to_string(t.stop)},
              {"steps", t.steps.size()}};
    if (with_steps) j["trace"] = trace_json(t);
    return dump(j);
  }
  std::ostringstream os;
  if (with_steps) {
    os << "  " << print_config(t.initial) << "\n";
    for (const auto& st : t.steps)
      os << "-> " << print_config(st.result) << "   [" << describe(st) << "]\n";
  }
  os << print_config(t.final_config()) << "\n"
     << "stop: " << to_string(t.stop) << " after " << t.steps.size() << " step"
     << (t.steps.size() == 1 ? "" : "s") << "\n";
  return os.str();
}

std::string print_expansions(const Configuration& c, const std::vector<Expansion>& es,
                             bool json) {
  if (json) {
    Json list = Json::array();
    for (const auto& e : es) {
      Json j = {{"kind", step_name(e.kind)}, {"config", print_config(e.config)}};
      if (e.match) j["rule"] = e.match->rule;
      list.push_back(std::move(j));
    }
    return dump({{"config", print_config(c)}, {"count", es.size()}, {"predecessors", list}});
  }
  std::ostringstream os;
  os << es.size() << " predecessor" << (es.size() == 1 ? "" : "s") << " of "
     << print_config(c) << "\n";
  for (const auto& e : es) {
    os << "  " << (e.kind == Step::Kind::interaction ? "interaction " : "indirection ")
       << print_config(e.config) << "\n";
  }
  return os.str();
}

std::string print_diamond(const Configuration& c, const DiamondReport& r, bool json) {
  bool plus = r.mode == DiamondMode::plus;
  std::string verdict =
      r.failures.empty() ? "joinable" : (plus ? "inconclusive" : "failure");
  if (json) {
    Json failures = Json::array();
    for (const auto& f : r.failures)
      failures.push_back({{"first", print_config(f.first)},
                          {"second", print_config(f.second)},
                          {"inconclusive", f.inconclusive}});
    return dump({{"config", print_config(c)},
                 {"mode", to_string(r.mode)},
                 {"depth", r.depth},
                 {"predecessors", r.predecessors},
                 {"pairs", r.pairs},
                 {"joined", r.joined},
                 {"verdict", verdict},
                 {"failures", failures}});
  }
  std::ostringstream os;
  os << "config " << print_config(c) << "\n"
     << "mode " << to_string(r.mode);
  if (plus) os << " (at most " << r.depth << " indirections after the interaction)";
  os << "\n"
     << r.predecessors << " predecessors, " << r.pairs << " pairs, " << r.joined << " joined\n";
  for (const auto& f : r.failures)
    os << (f.inconclusive ? "  no join within bound: " : "  no common predecessor: ")
       << print_config(f.first) << "  and  " << print_config(f.second) << "\n";
  os << "verdict: " << verdict << "\n";
  return os.str();
}

std::string print_witness(const std::optional<FailureTriple>& t, bool json) {
  if (json) {
    if (!t) return dump({{"witness", nullptr}});
    return dump({{"witness",
                  {{"origin", t->origin},
                   {"c1", print_config(t->c1)},
                   {"c2", print_config(t->c2)},
                   {"c", print_config(t->c)}}}});
  }
  if (!t) return "none\n";
  std::ostringstream os;
  os << "from " << t->origin << "\n"
     << "c1 = " << print_config(t->c1) << "\n"
     << "c2 = " << print_config(t->c2) << "\n"
     << "c  = " << print_config(t->c) << "\n"
     << "c1 and c2 reduce to c by interaction and have no common predecessor\n";
  return os.str();
}

std::string print_search(const SearchReport& r, bool json) {
  if (json) {
    auto list = [](const std::vector<std::pair<Configuration, DiamondFailure>>& fs) {
      Json out = Json::array();
      for (const auto& [c, f] : fs)
        out.push_back({{"config", print_config(c)},
                       {"first", print_config(f.first)},
                       {"second", print_config(f.second)}});
      return out;
    };
    return dump({{"samples", r.samples},
                 {"size", r.size},
                 {"depth", r.depth},
                 {"seed", r.seed},
                 {"one",
                  {{"pairs", r.one_pairs},
                   {"failures", r.one_failures.size()},
                   {"examples", list(r.one_failures)}}},
                 {"plus",
                  {{"pairs", r.plus_pairs},
                   {"inconclusive", r.plus_failures.size()},
                   {"examples", list(r.plus_failures)}}}});
  }
  std::ostringstream os;
  os << r.samples << " samples, size " << r.size << ", seed " << r.seed << "\n"
     << "one-step: " << r.one_pairs << " pairs, " << r.one_failures.size()
     << " without a common predecessor\n"
     << "plus-step: " << r.plus_pairs << " pairs, " << r.plus_failures.size()
     << " not joined within " << r.depth << " indirections\n";
  constexpr std::size_t kShown = 3;
  for (std::size_t i = 0; i < r.one_failures.size() && i < kShown; ++i) {
    const auto& [c, f] = r.one_failures[i];
    os << "  in " << print_config(c) << ":\n    " << print_config(f.first) << "\n    "
       << print_config(f.second) << "\n";
  }
  for (std::size_t i = 0; i < r.plus_failures.size() && i < kShown; ++i) {
    const auto& [c, f] = r.plus_failures[i];
    os << "  inconclusive in " << print_config(c) << ":\n    " << print_config(f.first)
       << "\n    " << print_config(f.second) << "\n";
  }
  return os.str();
}

}  // namespace icalc
