#include "icalc/lab.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "icalc/analysis.hpp"
#include "icalc/core.hpp"

namespace icalc {

namespace {

std::size_t bound_count(const Configuration& c) {
  std::size_t n = 0;
  for (const auto& [_, k] : name_counts(c))
    if (k >= 2) ++n;
  return n;
}

std::unordered_set<std::string> expansion_keys(const System& s, const Configuration& c,
                                               ExpansionKind kind = ExpansionKind::all) {
  std::unordered_set<std::string> out;
  for (auto& e : expansions(s, c, kind)) out.insert(std::move(e.key));
  return out;
}

bool all_name_patterns(const System& s) {
  for (const auto& r : s.rules) {
    for (const auto& t : r.left_args)
      if (!t.is_name()) return false;
    for (const auto& t : r.right_args)
      if (!t.is_name()) return false;
  }
  return true;
}

// Matches in c whose fold is congruent to `pred`.
std::vector<ExpansionMatch> matches_folding_to(const System& s, const Configuration& c,
                                               const Configuration& pred) {
  std::string key = canonical_key(pred);
  std::vector<ExpansionMatch> out;
  for (auto& m : contractum_matches(s, c))
    if (canonical_key(fold(s, c, m)) == key) out.push_back(std::move(m));
  return out;
}

std::set<std::size_t> as_set(const std::vector<std::size_t>& v) { return {v.begin(), v.end()}; }

// Drops the selections and appends the given active pairs.
Configuration replace_redexes(const Configuration& c, const std::set<std::size_t>& drop,
                              const std::vector<Equation>& pairs) {
  Configuration out;
  out.interface = c.interface;
  for (std::size_t i = 0; i < c.body.size(); ++i)
    if (!drop.count(i)) out.body.push_back(c.body[i]);
  out.body.insert(out.body.end(), pairs.begin(), pairs.end());
  return out;
}

bool valid(const System& s, const Configuration& c) { return validate_config(s, c).ok(); }

JoinResult verified_one(const System& s, Configuration pred, const Configuration& c1,
                        const Configuration& c2, std::string method) {
  JoinResult r;
  if (!valid(s, pred)) return r;
  auto t1 = one_step_path(s, pred, c1);
  if (!t1) return r;
  auto t2 = one_step_path(s, pred, c2);
  if (!t2) return r;
  r.joined = true;
  r.method = std::move(method);
  r.pred = std::move(pred);
  r.to_first = std::move(*t1);
  r.to_second = std::move(*t2);
  return r;
}

JoinResult verified_plus(const System& s, Configuration pred, const Configuration& c1,
                         const Configuration& c2, std::string method) {
  JoinResult r;
  if (!valid(s, pred)) return r;
  auto t1 = plus_path(s, pred, c1);
  if (!t1) return r;
  auto t2 = plus_path(s, pred, c2);
  if (!t2) return r;
  r.joined = true;
  r.method = std::move(method);
  r.pred = std::move(pred);
  r.to_first = std::move(*t1);
  r.to_second = std::move(*t2);
  return r;
}

// Where a step put its output, in the coordinates of the canonical form of
// its result.
struct StepImage {
  Step::Kind kind;
  Position position;              // indirection: where t landed
  std::vector<std::size_t> selection;  // interaction: contractum equations
  std::size_t rule = 0;
};

StepImage image_of(const System& s, const Configuration& from, const Step& st,
                   const Alignment& align) {
  StepImage img;
  img.kind = st.kind;
  if (st.kind == Step::Kind::interaction) {
    img.rule = st.rule;
    std::size_t k = s.rules[st.rule].arity();
    for (std::size_t i = st.equation; i < st.equation + k; ++i)
      img.selection.push_back(align.equation.at(i));
    return img;
  }
  // The other occurrence of the eliminated name, outside the equation.
  for (const auto& p : all_positions(from)) {
    if (p.where != Position::Where::interface && p.index == st.equation) continue;
    const Term& t = subterm(from, p);
    if (!t.is_name() || t.symbol != st.eliminated) continue;
    Position q = p;
    if (q.where != Position::Where::interface && q.index > st.equation) --q.index;
    img.position = align.map(q);
    return img;
  }
  throw Error("internal: eliminated name has no other occurrence");
}

std::optional<Configuration> construct(const System& s, const Configuration& canon,
                                       const StepImage& a, const StepImage& b) {
  NameSupply fresh;
  fresh.avoid(canon);
  using K = Step::Kind;
  if (a.kind == K::indirection && b.kind == K::indirection) {
    Name x = fresh.fresh(), y = fresh.fresh();
    const Position& p = a.position;
    const Position& q = b.position;
    if (p == q) return abstract_at(abstract_at(canon, p, y), p, x);
    // Abstract the deeper position first so the shallower one stays valid.
    if (is_prefix_of(p, q)) return abstract_at(abstract_at(canon, q, y), p, x);
    return abstract_at(abstract_at(canon, p, x), q, y);
  }
  if (a.kind != b.kind) {
    const StepImage& inter = a.kind == K::interaction ? a : b;
    const StepImage& ind = a.kind == K::interaction ? b : a;
    Configuration abstracted = abstract_at(canon, ind.position, fresh.fresh());
    auto ms = contractum_matches(s, abstracted, inter.rule, &inter.selection);
    if (ms.empty()) return std::nullopt;
    return fold(s, abstracted, ms.front());
  }
  auto sa = as_set(a.selection), sb = as_set(b.selection);
  for (std::size_t i : sa)
    if (sb.count(i)) return std::nullopt;
  auto ma = contractum_matches(s, canon, a.rule, &a.selection);
  auto mb = contractum_matches(s, canon, b.rule, &b.selection);
  if (ma.empty() || mb.empty()) return std::nullopt;
  std::set<std::size_t> drop = sa;
  drop.insert(sb.begin(), sb.end());
  return replace_redexes(canon, drop, {ma.front().active_pair(s), mb.front().active_pair(s)});
}

const char* construction_name(Step::Kind a, Step::Kind b) {
  if (a == Step::Kind::indirection && b == Step::Kind::indirection) return "indirection-square";
  if (a != b) return "mixed-square";
  return "disjoint-redexes";
}

}  // namespace

// ---------------------------------------------------------------------------

std::optional<Trace> one_step_path(const System& s, const Configuration& from,
                                   const Configuration& to) {
  NameSupply fresh;
  std::string target = canonical_key(to);
  for (auto& st : one_step_reducts(s, from, fresh)) {
    if (canonical_key(st.result) != target) continue;
    Trace tr;
    tr.initial = from;
    tr.steps.push_back(std::move(st));
    return tr;
  }
  return std::nullopt;
}

namespace {

bool indirection_tail(const Configuration& c, std::size_t k, const std::string& target,
                      std::vector<Step>& steps, std::unordered_set<std::string>& dead) {
  std::string key = canonical_key(c);
  if (k == 0) return key == target;
  if (dead.count(key)) return false;
  for (std::size_t i = 0; i < c.body.size(); ++i) {
    for (Side side : indirection_sides(c, i)) {
      const Equation& e = c.body[i];
      Step st{Step::Kind::indirection, i, e, 0,
              side == Side::lhs ? e.lhs.symbol : e.rhs.symbol, indirect(c, i, side)};
      Configuration next = st.result;
      steps.push_back(std::move(st));
      if (indirection_tail(next, k - 1, target, steps, dead)) return true;
      steps.pop_back();
    }
  }
  dead.insert(std::move(key));
  return false;
}

}  // namespace

std::optional<Trace> plus_path(const System& s, const Configuration& from,
                               const Configuration& to) {
  std::string target = canonical_key(to);
  std::size_t goal = bound_count(to);
  NameSupply fresh;
  for (std::size_t i : active_pairs(s, from)) {
    const Equation& e = from.body[i];
    Step first{Step::Kind::interaction, i, e, s.find_rule(e.lhs.symbol, e.rhs.symbol)->index,
               {}, interact(s, from, i, fresh)};
    std::size_t have = bound_count(first.result);
    if (have < goal) continue;
    std::vector<Step> tail;
    std::unordered_set<std::string> dead;
    if (!indirection_tail(first.result, have - goal, target, tail, dead)) continue;
    Trace tr;
    tr.initial = from;
    tr.steps.push_back(std::move(first));
    for (auto& st : tail) tr.steps.push_back(std::move(st));
    return tr;
  }
  return std::nullopt;
}

JoinResult common_predecessor(const System& s, const Configuration& c1, const Configuration& c2,
                              const Configuration& c) {
  auto step1 = one_step_path(s, c1, c);
  auto step2 = one_step_path(s, c2, c);
  if (!step1 || !step2)
    throw PreconditionError("common_predecessor: c1 and c2 must each reduce to c in one step");

  const Step& a = step1->steps.front();
  const Step& b = step2->steps.front();
  CanonicalForm fa = canonical_form(a.result);
  CanonicalForm fb = canonical_form(b.result);
  StepImage ia = image_of(s, c1, a, fa.alignment);
  StepImage ib = image_of(s, c2, b, fb.alignment);
  if (auto pred = construct(s, fa.config, ia, ib)) {
    JoinResult r = verified_one(s, *pred, c1, c2, construction_name(a.kind, b.kind));
    if (r.joined) return r;
  }

  auto keys2 = expansion_keys(s, c2);
  for (auto& e : expansions(s, c1)) {
    if (!keys2.count(e.key)) continue;
    JoinResult r = verified_one(s, std::move(e.config), c1, c2, "search");
    if (r.joined) return r;
  }
  JoinResult r;
  r.bound = 1;
  return r;
}

JoinResult linlam_join(const System& s, const Configuration& c1, const Configuration& c2,
                       const Configuration& c) {
  if (!all_name_patterns(s))
    throw PreconditionError("linlam_join: rule patterns must be bare names");
  if (congruent(c1, c2)) throw PreconditionError("linlam_join: c1 and c2 are congruent");
  auto m1s = matches_folding_to(s, c, c1);
  auto m2s = matches_folding_to(s, c, c2);
  if (m1s.empty() || m2s.empty())
    throw PreconditionError("linlam_join: c1 and c2 must reduce to c by interaction");

  bool overlapping = false;
  for (const auto& m1 : m1s) {
    for (const auto& m2 : m2s) {
      const Rule& r1 = s.rules[m1.rule];
      const Rule& r2 = s.rules[m2.rule];
      auto s1 = as_set(m1.selection), s2 = as_set(m2.selection);
      std::set<std::size_t> common;
      for (std::size_t i : s1)
        if (s2.count(i)) common.insert(i);
      if (common.empty()) continue;
      overlapping = true;

      // Wire of each slot: the configuration name its pattern name maps to.
      auto wires = [](const Rule& r, const ExpansionMatch& m) {
        std::vector<Name> out;
        for (const auto& t : r.left_args) out.push_back(m.wiring.at(t.symbol));
        for (const auto& t : r.right_args) out.push_back(m.wiring.at(t.symbol));
        return out;
      };
      auto w1 = wires(r1, m1), w2 = wires(r2, m2);

      // Each shared equation is either part of a wire both matches use (same
      // name, both of its equations shared) or a link between two different
      // wires that continue on either side.
      auto slot_of = [](const ExpansionMatch& m, std::size_t eq) {
        return static_cast<std::size_t>(
            std::find(m.selection.begin(), m.selection.end(), eq) - m.selection.begin());
      };
      struct SharedWire {
        std::size_t first, second;  // m1 slots at the two ends
      };
      std::vector<SharedWire> same;
      std::vector<std::pair<std::size_t, std::size_t>> links;  // (m1 slot, m2 slot)
      for (std::size_t eq : common) {
        std::size_t i = slot_of(m1, eq), j = slot_of(m2, eq);
        if (w1[i] != w2[j]) {
          links.emplace_back(i, j);
          continue;
        }
        for (std::size_t k = i + 1; k < w1.size(); ++k)
          if (w1[k] == w1[i]) same.push_back({i, k});
      }

      const bool full = links.empty() && common == s1 && common == s2;
      for (std::size_t mask = 0; mask < (std::size_t{1} << same.size()); ++mask) {
        std::vector<Term> a1 = m1.left_args, b1 = m1.right_args;
        std::vector<Term> a2 = m2.left_args, b2 = m2.right_args;
        auto slot = [](std::vector<Term>& l, std::vector<Term>& r, std::size_t k) -> Term& {
          return k < l.size() ? l[k] : r[k - l.size()];
        };
        NameSupply fresh;
        fresh.avoid(c);
        for (std::size_t i = 0; i < same.size(); ++i) {
          // The first match keeps one end, the second keeps the other, and a
          // fresh name joins them.
          std::size_t keep = same[i].first, drop = same[i].second;
          if (mask >> i & 1) std::swap(keep, drop);
          Term x = Term::make_name(fresh.fresh());
          slot(a1, b1, drop) = x;
          slot(a2, b2, slot_of(m2, m1.selection[keep])) = x;
        }
        for (auto [i, j] : links) {
          Term x = Term::make_name(fresh.fresh());
          slot(a1, b1, i) = x;
          slot(a2, b2, j) = x;
        }
        std::set<std::size_t> drop = s1;
        drop.insert(s2.begin(), s2.end());
        Configuration pred = replace_redexes(
            c, drop,
            {Equation{Term::make_agent(r1.left, a1), Term::make_agent(r1.right, b1)},
             Equation{Term::make_agent(r2.left, a2), Term::make_agent(r2.right, b2)}});
        JoinResult r = verified_plus(s, std::move(pred), c1, c2,
                                     full ? "template-full-overlap" : "template-shared-wire");
        if (r.joined) return r;
      }
    }
  }
  if (!overlapping)
    throw PreconditionError("linlam_join: the redexes are disjoint; use the generic join");
  throw PreconditionError("linlam_join: the overlap matches no template");
}

JoinResult plus_join(const System& s, const Configuration& c1, const Configuration& c2,
                     const Configuration& c, std::size_t depth) {
  auto m1s = matches_folding_to(s, c, c1);
  auto m2s = matches_folding_to(s, c, c2);
  if (m1s.empty() || m2s.empty())
    throw PreconditionError("plus_join: c1 and c2 must reduce to c by interaction");

  for (const auto& m1 : m1s) {
    for (const auto& m2 : m2s) {
      auto s1 = as_set(m1.selection), s2 = as_set(m2.selection);
      bool disjoint = std::none_of(s1.begin(), s1.end(), [&](std::size_t i) { return s2.count(i); });
      if (!disjoint) continue;
      std::set<std::size_t> drop = s1;
      drop.insert(s2.begin(), s2.end());
      Configuration pred = replace_redexes(c, drop, {m1.active_pair(s), m2.active_pair(s)});
      JoinResult r = verified_plus(s, std::move(pred), c1, c2, "disjoint-redexes");
      if (r.joined) return r;
    }
  }

  if (all_name_patterns(s) && !congruent(c1, c2)) {
    try {
      return linlam_join(s, c1, c2, c);
    } catch (const PreconditionError&) {
    }
  }

  // Backward: c' ->i d ->:=^k c_i, deepening k.
  struct Side {
    std::vector<Configuration> level;  // d's with exactly k indirections
    std::unordered_set<std::string> seen_levels;
    std::unordered_map<std::string, Configuration> preds;
  };
  auto extend = [&](Side& side, bool first_level) {
    if (!first_level) {
      std::vector<Configuration> next;
      for (const auto& d : side.level)
        for (auto& e : indirection_expansions(d))
          if (side.seen_levels.insert(e.key).second) next.push_back(std::move(e.config));
      side.level = std::move(next);
    }
    for (const auto& d : side.level)
      for (auto& e : interaction_expansions(s, d)) side.preds.emplace(e.key, std::move(e.config));
  };
  Side a, b;
  a.level = {c1};
  b.level = {c2};
  a.seen_levels.insert(canonical_key(c1));
  b.seen_levels.insert(canonical_key(c2));
  for (std::size_t k = 0; k <= depth; ++k) {
    extend(a, k == 0);
    extend(b, k == 0);
    std::vector<std::string> common;
    for (const auto& [key, _] : a.preds)
      if (b.preds.count(key)) common.push_back(key);
    std::sort(common.begin(), common.end());
    for (const auto& key : common) {
      JoinResult r = verified_plus(s, a.preds.at(key), c1, c2, "search");
      if (r.joined) return r;
    }
  }
  JoinResult r;
  r.bound = depth;
  return r;
}

// ---------------------------------------------------------------------------

const char* to_string(DiamondMode m) { return m == DiamondMode::one ? "one" : "plus"; }

std::optional<DiamondMode> parse_diamond_mode(std::string_view s) {
  if (s == "one") return DiamondMode::one;
  if (s == "plus") return DiamondMode::plus;
  return std::nullopt;
}

DiamondReport diamond_check(const System& s, const Configuration& c, DiamondMode mode,
                            std::size_t depth) {
  DiamondReport rep;
  rep.mode = mode;
  rep.depth = mode == DiamondMode::plus ? depth : 1;
  if (mode == DiamondMode::one) {
    auto preds = expansions(s, c);
    rep.predecessors = preds.size();
    std::vector<std::optional<std::unordered_set<std::string>>> keys(preds.size());
    auto keys_of = [&](std::size_t i) -> const std::unordered_set<std::string>& {
      if (!keys[i]) keys[i] = expansion_keys(s, preds[i].config);
      return *keys[i];
    };
    for (std::size_t i = 0; i < preds.size(); ++i) {
      for (std::size_t j = i + 1; j < preds.size(); ++j) {
        ++rep.pairs;
        const auto& ki = keys_of(i);
        const auto& kj = keys_of(j);
        const auto& small = ki.size() < kj.size() ? ki : kj;
        const auto& large = ki.size() < kj.size() ? kj : ki;
        bool met = std::any_of(small.begin(), small.end(),
                               [&](const std::string& k) { return large.count(k) > 0; });
        if (met)
          ++rep.joined;
        else
          rep.failures.push_back({preds[i].config, preds[j].config, false});
      }
    }
    return rep;
  }
  auto preds = interaction_expansions(s, c);
  rep.predecessors = preds.size();
  for (std::size_t i = 0; i < preds.size(); ++i) {
    for (std::size_t j = i + 1; j < preds.size(); ++j) {
      ++rep.pairs;
      if (plus_join(s, preds[i].config, preds[j].config, c, depth).joined)
        ++rep.joined;
      else
        rep.failures.push_back({preds[i].config, preds[j].config, true});
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

bool disjoint_predecessors(const System& s, const Configuration& c1, const Configuration& c2) {
  auto k1 = expansion_keys(s, c1);
  for (const auto& e : expansions(s, c2))
    if (k1.count(e.key)) return false;
  return true;
}

bool interaction_step(const System& s, const Configuration& from, const Configuration& to) {
  auto t = one_step_path(s, from, to);
  return t && t->steps.front().kind == Step::Kind::interaction;
}

std::optional<FailureTriple> verify_triple(const System& s, FailureTriple t) {
  if (!valid(s, t.c1) || !valid(s, t.c2) || !valid(s, t.c)) return std::nullopt;
  if (congruent(t.c1, t.c2)) return std::nullopt;
  if (!interaction_step(s, t.c1, t.c) || !interaction_step(s, t.c2, t.c)) return std::nullopt;
  if (!disjoint_predecessors(s, t.c1, t.c2)) return std::nullopt;
  return t;
}

std::vector<Term> free_terms(const Equation& e) {
  Configuration c{{}, {e}};
  std::vector<Name> names;
  collect_names(e.lhs, names);
  collect_names(e.rhs, names);
  auto counts = name_counts(c);
  std::vector<Term> out;
  for (const auto& n : names)
    if (counts[n] == 1) out.push_back(Term::make_name(n));
  return out;
}

std::optional<FailureTriple> from_clash(const System& s, const ClashWitness& w) {
  FailureTriple t;
  t.origin = "clash";
  auto f = free_terms(w.first);
  t.c1 = {f, {w.first}};
  t.c2 = {f, {w.second}};
  t.c = {f, w.contractum};
  return verify_triple(s, std::move(t));
}

std::optional<FailureTriple> from_disconnected(const System& s, std::size_t index) {
  const Rule& r = s.rules[index];
  auto comps = pattern_components(r);
  if (comps.size() < 2) return std::nullopt;
  EquationMultiset pattern = divide_pattern(r);

  // Slots x1.., y1..; wiring names w1.. in c1 and v1.. in the copy.
  std::unordered_map<Name, Name> slot_names, wire_w, wire_v;
  for (std::size_t i = 0; i < r.left_args.size(); ++i)
    slot_names["%x" + std::to_string(i + 1)] = "x" + std::to_string(i + 1);
  for (std::size_t i = 0; i < r.right_args.size(); ++i)
    slot_names["%y" + std::to_string(i + 1)] = "y" + std::to_string(i + 1);
  std::vector<Name> wiring;
  for (const auto& e : pattern) collect_names(e.rhs, wiring);
  for (const auto& n : wiring) {
    if (wire_w.count(n)) continue;
    wire_w[n] = "w" + std::to_string(wire_w.size() + 1);
    wire_v[n] = "v" + std::to_string(wire_v.size() + 1);
  }
  auto with = [](std::unordered_map<Name, Name> a, const std::unordered_map<Name, Name>& b) {
    a.insert(b.begin(), b.end());
    return a;
  };

  std::vector<bool> in_gamma(pattern.size(), false);
  for (std::size_t i : comps.front()) in_gamma[i] = true;
  std::vector<Term> xs, ys, ys2;  // slots in gamma, in delta, renamed delta slots
  std::unordered_map<Name, Name> to_copy;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    const Name& slot = slot_names.at(pattern[i].lhs.symbol);
    if (in_gamma[i]) {
      xs.push_back(Term::make_name(slot));
    } else {
      ys.push_back(Term::make_name(slot));
      ys2.push_back(Term::make_name(slot + "b"));
      to_copy[slot] = slot + "b";
    }
  }
  EquationMultiset delta, delta_copy;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (in_gamma[i]) continue;
    Equation e = rename(pattern[i], with(slot_names, wire_w));
    delta.push_back(e);
    delta_copy.push_back(rename(rename(pattern[i], with(slot_names, wire_v)), to_copy));
  }
  std::vector<Term> iface = xs;
  iface.insert(iface.end(), ys.begin(), ys.end());
  iface.insert(iface.end(), ys2.begin(), ys2.end());

  auto active = [&](const std::unordered_map<Name, Name>& extra) {
    std::vector<Term> l, rr;
    for (std::size_t i = 0; i < r.left_args.size(); ++i)
      l.push_back(Term::make_name(slot_names.at("%x" + std::to_string(i + 1))));
    for (std::size_t i = 0; i < r.right_args.size(); ++i)
      rr.push_back(Term::make_name(slot_names.at("%y" + std::to_string(i + 1))));
    for (auto& t : l) t = rename(t, extra);
    for (auto& t : rr) t = rename(t, extra);
    return Equation{Term::make_agent(r.left, l), Term::make_agent(r.right, rr)};
  };

  FailureTriple t;
  t.origin = "disconnected";
  t.c1.interface = iface;
  t.c1.body.push_back(active(to_copy));
  t.c1.body.insert(t.c1.body.end(), delta.begin(), delta.end());
  t.c2.interface = iface;
  t.c2.body.push_back(active({}));
  t.c2.body.insert(t.c2.body.end(), delta_copy.begin(), delta_copy.end());
  NameSupply fresh;
  t.c = interact(s, t.c1, 0, fresh);
  return verify_triple(s, std::move(t));
}

}  // namespace

std::optional<FailureTriple> strong_failure_witness(const System& s) {
  for (std::size_t i = 0; i < s.rules.size(); ++i)
    for (const auto& w : clash_witnesses(s.rules[i], s.rules[i]))
      if (auto t = from_clash(s, w)) return t;
  for (std::size_t i = 0; i < s.rules.size(); ++i)
    for (std::size_t j = i + 1; j < s.rules.size(); ++j)
      for (const auto& w : clash_witnesses(s.rules[i], s.rules[j]))
        if (auto t = from_clash(s, w)) return t;
  for (std::size_t i = 0; i < s.rules.size(); ++i)
    if (auto t = from_disconnected(s, i)) return t;
  return std::nullopt;
}

}  // namespace icalc
