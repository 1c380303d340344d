#include "icalc/rewrite.hpp"

#include <algorithm>

#include "icalc/core.hpp"

namespace icalc {

EquationMultiset divide(const Rule& r, const std::vector<Term>& left_args,
                        const std::vector<Term>& right_args, NameSupply& fresh) {
  if (left_args.size() != r.left_args.size() || right_args.size() != r.right_args.size())
    throw PreconditionError("divide: rule " + r.left + " >< " + r.right + " expects " +
                            std::to_string(r.left_args.size()) + " + " +
                            std::to_string(r.right_args.size()) + " arguments, got " +
                            std::to_string(left_args.size()) + " + " +
                            std::to_string(right_args.size()));
  for (const auto& t : left_args) fresh.avoid(t);
  for (const auto& t : right_args) fresh.avoid(t);

  std::vector<Name> wiring;
  for (const auto& t : r.left_args) collect_names(t, wiring);
  for (const auto& t : r.right_args) collect_names(t, wiring);
  std::unordered_map<Name, Name> renaming;
  for (const auto& n : wiring)
    if (!renaming.count(n)) renaming.emplace(n, fresh.fresh());

  EquationMultiset out;
  out.reserve(r.arity());
  for (std::size_t i = 0; i < left_args.size(); ++i)
    out.push_back({left_args[i], rename(r.left_args[i], renaming)});
  for (std::size_t i = 0; i < right_args.size(); ++i)
    out.push_back({right_args[i], rename(r.right_args[i], renaming)});
  return out;
}

PairScan scan_pairs(const System& s, const Configuration& c) {
  PairScan out;
  for (std::size_t i = 0; i < c.body.size(); ++i) {
    const Equation& e = c.body[i];
    if (!e.lhs.is_agent() || !e.rhs.is_agent()) continue;
    if (s.find_rule(e.lhs.symbol, e.rhs.symbol))
      out.active.push_back(i);
    else
      out.stuck.push_back(i);
  }
  return out;
}

std::vector<std::size_t> active_pairs(const System& s, const Configuration& c) {
  return scan_pairs(s, c).active;
}

Configuration interact(const System& s, const Configuration& c, std::size_t eq,
                       NameSupply& fresh) {
  if (eq >= c.body.size()) throw PreconditionError("interact: no equation " + std::to_string(eq));
  const Equation& e = c.body[eq];
  if (!e.lhs.is_agent() || !e.rhs.is_agent())
    throw PreconditionError("interact: equation " + std::to_string(eq) + " is not an active pair");
  auto ref = s.find_rule(e.lhs.symbol, e.rhs.symbol);
  if (!ref)
    throw PreconditionError("interact: no rule for " + e.lhs.symbol + " and " + e.rhs.symbol);
  const Rule& r = s.rules[ref->index];
  const Term& left = ref->swapped ? e.rhs : e.lhs;
  const Term& right = ref->swapped ? e.lhs : e.rhs;

  fresh.avoid(c);
  EquationMultiset contractum = divide(r, left.args, right.args, fresh);

  Configuration out;
  out.interface = c.interface;
  out.body.reserve(c.body.size() + contractum.size());
  out.body.insert(out.body.end(), c.body.begin(), c.body.begin() + eq);
  out.body.insert(out.body.end(), contractum.begin(), contractum.end());
  out.body.insert(out.body.end(), c.body.begin() + eq + 1, c.body.end());
  return out;
}

namespace {

bool usable(const Term& side, const Term& other, const std::unordered_map<Name, int>& counts) {
  if (!side.is_name() || occurs_in(other, side.symbol)) return false;
  auto it = counts.find(side.symbol);
  return it != counts.end() && it->second == 2;
}

}  // namespace

std::vector<Side> indirection_sides(const Configuration& c, std::size_t eq) {
  const Equation& e = c.body.at(eq);
  auto counts = name_counts(c);
  std::vector<Side> out;
  if (usable(e.lhs, e.rhs, counts)) out.push_back(Side::lhs);
  if (usable(e.rhs, e.lhs, counts)) out.push_back(Side::rhs);
  return out;
}

Configuration indirect(const Configuration& c, std::size_t eq, std::optional<Side> side) {
  if (eq >= c.body.size()) throw PreconditionError("indirect: no equation " + std::to_string(eq));
  auto sides = indirection_sides(c, eq);
  if (sides.empty())
    throw PreconditionError("indirect: equation " + std::to_string(eq) +
                            " has no side naming a wire that continues elsewhere");
  const Equation& e = c.body[eq];
  Side chosen;
  if (side) {
    if (std::find(sides.begin(), sides.end(), *side) == sides.end())
      throw PreconditionError("indirect: requested side of equation " + std::to_string(eq) +
                              " is not usable");
    chosen = *side;
  } else if (sides.size() == 2) {
    chosen = e.rhs.symbol < e.lhs.symbol ? Side::rhs : Side::lhs;
  } else {
    chosen = sides.front();
  }
  const Term& x = chosen == Side::lhs ? e.lhs : e.rhs;
  const Term& t = chosen == Side::lhs ? e.rhs : e.lhs;

  Configuration rest;
  rest.interface = c.interface;
  rest.body.reserve(c.body.size() - 1);
  for (std::size_t i = 0; i < c.body.size(); ++i)
    if (i != eq) rest.body.push_back(c.body[i]);
  return substitute(rest, x.symbol, t);
}

const char* to_string(Step::Kind k) {
  return k == Step::Kind::interaction ? "interaction" : "indirection";
}

std::vector<Step> one_step_reducts(const System& s, const Configuration& c, NameSupply& fresh) {
  std::vector<Step> out;
  for (std::size_t i : active_pairs(s, c)) {
    const Equation& e = c.body[i];
    auto ref = s.find_rule(e.lhs.symbol, e.rhs.symbol);
    out.push_back({Step::Kind::interaction, i, e, ref->index, {}, interact(s, c, i, fresh)});
  }
  for (std::size_t i = 0; i < c.body.size(); ++i) {
    for (Side side : indirection_sides(c, i)) {
      const Equation& e = c.body[i];
      Name x = side == Side::lhs ? e.lhs.symbol : e.rhs.symbol;
      out.push_back({Step::Kind::indirection, i, e, 0, x, indirect(c, i, side)});
    }
  }
  return out;
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::interaction_first:
      return "interaction-first";
    case Strategy::indirection_first:
      return "indirection-first";
    case Strategy::leftmost:
      return "leftmost";
  }
  return "?";
}

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::normal:
      return "normal";
    case StopReason::stuck:
      return "stuck";
    case StopReason::fuel_exhausted:
      return "fuel-exhausted";
  }
  return "?";
}

std::optional<Strategy> parse_strategy(std::string_view s) {
  if (s == "interaction-first") return Strategy::interaction_first;
  if (s == "indirection-first") return Strategy::indirection_first;
  if (s == "leftmost") return Strategy::leftmost;
  return std::nullopt;
}

namespace {

struct Choice {
  Step::Kind kind;
  std::size_t eq;
};

std::optional<Choice> pick(const System& s, const Configuration& c, Strategy strategy) {
  auto active = active_pairs(s, c);
  std::optional<std::size_t> first_ind;
  for (std::size_t i = 0; i < c.body.size() && !first_ind; ++i)
    if (!indirection_sides(c, i).empty()) first_ind = i;

  std::optional<Choice> inter, ind;
  if (!active.empty()) inter = Choice{Step::Kind::interaction, active.front()};
  if (first_ind) ind = Choice{Step::Kind::indirection, *first_ind};

  switch (strategy) {
    case Strategy::interaction_first:
      return inter ? inter : ind;
    case Strategy::indirection_first:
      return ind ? ind : inter;
    case Strategy::leftmost:
      if (inter && ind) return inter->eq < ind->eq ? inter : ind;
      return inter ? inter : ind;
  }
  return std::nullopt;
}

bool has_cyclic(const Configuration& c) {
  return std::any_of(c.body.begin(), c.body.end(), [](const Equation& e) {
    return (e.lhs.is_name() && occurs_in(e.rhs, e.lhs.symbol)) ||
           (e.rhs.is_name() && occurs_in(e.lhs, e.rhs.symbol));
  });
}

}  // namespace

Trace normalize(const System& s, const Configuration& c, Strategy strategy, std::size_t fuel,
                NameSupply& fresh) {
  Trace tr;
  tr.initial = c;
  for (;;) {
    const Configuration& cur = tr.final_config();
    auto choice = pick(s, cur, strategy);
    if (!choice) {
      tr.stop = (!scan_pairs(s, cur).stuck.empty() || has_cyclic(cur)) ? StopReason::stuck
                                                                       : StopReason::normal;
      return tr;
    }
    if (tr.steps.size() >= fuel) {
      tr.stop = StopReason::fuel_exhausted;
      return tr;
    }
    Step st;
    st.kind = choice->kind;
    st.equation = choice->eq;
    st.selected = cur.body[choice->eq];
    if (choice->kind == Step::Kind::interaction) {
      st.rule = s.find_rule(st.selected.lhs.symbol, st.selected.rhs.symbol)->index;
      st.result = interact(s, cur, choice->eq, fresh);
    } else {
      auto sides = indirection_sides(cur, choice->eq);
      const Equation& e = st.selected;
      Side side = sides.size() == 2 ? (e.rhs.symbol < e.lhs.symbol ? Side::rhs : Side::lhs)
                                    : sides.front();
      st.eliminated = side == Side::lhs ? e.lhs.symbol : e.rhs.symbol;
      st.result = indirect(cur, choice->eq, side);
    }
    tr.steps.push_back(std::move(st));
  }
}

}  // namespace icalc
