#include "icalc/analysis.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "icalc/core.hpp"
#include "icalc/rewrite.hpp"

namespace icalc {

EquationMultiset divide_pattern(const Rule& r) {
  EquationMultiset out;
  for (std::size_t i = 0; i < r.left_args.size(); ++i)
    out.push_back({Term::make_name("%x" + std::to_string(i + 1)), r.left_args[i]});
  for (std::size_t i = 0; i < r.right_args.size(); ++i)
    out.push_back({Term::make_name("%y" + std::to_string(i + 1)), r.right_args[i]});
  return out;
}

std::vector<std::vector<std::size_t>> pattern_components(const Rule& r) {
  EquationMultiset eqs = divide_pattern(r);
  std::vector<std::size_t> parent(eqs.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::map<Name, std::size_t> first_seen;
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    std::vector<Name> names;
    collect_names(eqs[i].rhs, names);  // lhs is the slot, never shared
    for (const auto& n : names) {
      auto [it, inserted] = first_seen.emplace(n, i);
      if (!inserted) parent[find(i)] = find(it->second);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < eqs.size(); ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [_, g] : groups) out.push_back(std::move(g));
  std::sort(out.begin(), out.end());
  return out;
}

bool is_connected(const Rule& r) { return pattern_components(r).size() <= 1; }

// ---------------------------------------------------------------------------
// Clash search
//
// The contracta are {X_i = P_i} and {X'_j = P'_j} with X argument slots and P
// patterns over the rules' wiring names. For the multisets to coincide, each
// equation of the first is paired with one of the second, either
//   straight: X_i = X'_j and P_i = P'_j up to a bijection of wiring names, or
//   cross:    X_i = P'_j and P_i = X'_j.
// An instance's own fresh names cannot occur in its arguments, so a wiring
// name is used either only straight or only cross.

namespace {

enum class Mode : std::uint8_t { none, straight, cross };

struct SearchState {
  std::vector<std::size_t> partner;  // first-rule equation -> second-rule equation
  std::vector<bool> is_cross;
  std::vector<bool> used;
  std::unordered_map<Name, Name> sigma, sigma_inv;
  std::unordered_map<Name, Mode> mode1, mode2;
};

class ClashSearch {
 public:
  ClashSearch(const Rule& r1, const Rule& r2) : r1_(r1), r2_(r2) {
    for (const auto& t : r1.left_args) p1_.push_back(&t);
    for (const auto& t : r1.right_args) p1_.push_back(&t);
    for (const auto& t : r2.left_args) p2_.push_back(&t);
    for (const auto& t : r2.right_args) p2_.push_back(&t);
  }

  std::vector<ClashWitness> run() {
    if (p1_.size() != p2_.size() || p1_.empty()) return {};
    SearchState st;
    st.partner.assign(p1_.size(), 0);
    st.is_cross.assign(p1_.size(), false);
    st.used.assign(p2_.size(), false);
    search(0, st);
    std::vector<ClashWitness> out;
    for (auto& [_, w] : found_) out.push_back(std::move(w));
    // Fewest cross equations first, then the second pair closest to the
    // first: fewest moved argument slots, earliest moved slot first.
    auto moved = [](const ClashWitness& w) {
      std::vector<std::size_t> out;
      std::vector<const Term*> a, b;
      for (const auto* side : {&w.first.lhs, &w.first.rhs})
        for (const auto& t : side->args) a.push_back(&t);
      for (const auto* side : {&w.second.lhs, &w.second.rhs})
        for (const auto& t : side->args) b.push_back(&t);
      for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
        if (!(*a[i] == *b[i])) out.push_back(i);
      return out;
    };
    std::stable_sort(out.begin(), out.end(), [&](const ClashWitness& a, const ClashWitness& b) {
      if (a.cross != b.cross) return a.cross < b.cross;
      auto ma = moved(a), mb = moved(b);
      if (ma.size() != mb.size()) return ma.size() < mb.size();
      return ma < mb;
    });
    return out;
  }

 private:
  static bool straight(const Term& a, const Term& b, SearchState& st) {
    if (a.is_name() != b.is_name()) return false;
    if (a.is_name()) {
      if (st.mode1[a.symbol] == Mode::cross || st.mode2[b.symbol] == Mode::cross) return false;
      auto it = st.sigma.find(a.symbol);
      if (it != st.sigma.end()) return it->second == b.symbol;
      if (st.sigma_inv.count(b.symbol)) return false;
      st.sigma.emplace(a.symbol, b.symbol);
      st.sigma_inv.emplace(b.symbol, a.symbol);
      st.mode1[a.symbol] = Mode::straight;
      st.mode2[b.symbol] = Mode::straight;
      return true;
    }
    if (a.symbol != b.symbol || a.args.size() != b.args.size()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
      if (!straight(a.args[i], b.args[i], st)) return false;
    return true;
  }

  static bool mark_cross(const Term& t, std::unordered_map<Name, Mode>& modes) {
    std::vector<Name> names;
    collect_names(t, names);
    for (const auto& n : names) {
      Mode& m = modes[n];
      if (m == Mode::straight) return false;
      m = Mode::cross;
    }
    return true;
  }

  void search(std::size_t i, SearchState& st) {
    if (i == p1_.size()) {
      emit(st);
      return;
    }
    for (std::size_t j = 0; j < p2_.size(); ++j) {
      if (st.used[j]) continue;
      {
        SearchState next = st;
        if (straight(*p1_[i], *p2_[j], next)) {
          next.used[j] = true;
          next.partner[i] = j;
          next.is_cross[i] = false;
          search(i + 1, next);
        }
      }
      {
        SearchState next = st;
        if (mark_cross(*p1_[i], next.mode1) && mark_cross(*p2_[j], next.mode2)) {
          next.used[j] = true;
          next.partner[i] = j;
          next.is_cross[i] = true;
          search(i + 1, next);
        }
      }
    }
  }

  static std::string slot_name(std::size_t k) {
    static const char* pool[] = {"t", "u", "v", "w", "p", "q", "r", "s"};
    if (k < 8) return pool[k];
    return "t" + std::to_string(k);
  }

  void emit(const SearchState& st) {
    // Instance names: the first rule's wiring names become x1, x2, ...;
    // straight-matched names of the second rule share them, its cross names
    // become y1, y2, ...
    std::unordered_map<Name, Name> inst1, inst2;
    std::vector<Name> names;
    for (const Term* p : p1_) collect_names(*p, names);
    for (const auto& n : names)
      if (!inst1.count(n)) inst1.emplace(n, "x" + std::to_string(inst1.size() + 1));
    for (const auto& [a, b] : st.sigma) inst2.emplace(b, inst1.at(a));
    names.clear();
    for (const Term* p : p2_) collect_names(*p, names);
    std::size_t ycount = 0;
    for (const auto& n : names)
      if (!inst2.count(n)) inst2.emplace(n, "y" + std::to_string(++ycount));

    std::vector<Term> slots1(p1_.size()), slots2(p2_.size());
    std::size_t classes = 0;
    std::size_t cross = 0;
    for (std::size_t i = 0; i < p1_.size(); ++i) {
      std::size_t j = st.partner[i];
      if (st.is_cross[i]) {
        ++cross;
        slots1[i] = rename(*p2_[j], inst2);
        slots2[j] = rename(*p1_[i], inst1);
      } else {
        slots1[i] = slots2[j] = Term::make_name(slot_name(classes++));
      }
    }

    std::size_t m1 = r1_.left_args.size(), m2 = r2_.left_args.size();
    ClashWitness w;
    w.first = {Term::make_agent(r1_.left, {slots1.begin(), slots1.begin() + m1}),
               Term::make_agent(r1_.right, {slots1.begin() + m1, slots1.end()})};
    w.second = {Term::make_agent(r2_.left, {slots2.begin(), slots2.begin() + m2}),
                Term::make_agent(r2_.right, {slots2.begin() + m2, slots2.end()})};
    for (std::size_t i = 0; i < p1_.size(); ++i)
      w.contractum.push_back({slots1[i], rename(*p1_[i], inst1)});
    w.cross = cross;

    Configuration a{{}, {w.first}}, b{{}, {w.second}};
    if (canonical_key(a) == canonical_key(b)) return;
    Configuration both{{}, {w.first, w.second}};
    found_.emplace(canonical_key(both), std::move(w));
  }

  const Rule& r1_;
  const Rule& r2_;
  std::vector<const Term*> p1_, p2_;
  std::map<std::string, ClashWitness> found_;
};

}  // namespace

std::vector<ClashWitness> clash_witnesses(const Rule& r1, const Rule& r2) {
  if (r1.arity() != r2.arity()) return {};
  return ClashSearch(r1, r2).run();
}

std::optional<ClashWitness> clash_witness(const Rule& r1, const Rule& r2) {
  auto all = clash_witnesses(r1, r2);
  if (all.empty()) return std::nullopt;
  return std::move(all.front());
}

bool check_witness(const ClashWitness& w, const Rule& r1, const Rule& r2) {
  auto args = [](const Term& t) { return t.args; };
  auto oriented = [](const Equation& e, const Rule& r) -> std::optional<Equation> {
    if (e.lhs.symbol == r.left && e.rhs.symbol == r.right) return e;
    if (e.rhs.symbol == r.left && e.lhs.symbol == r.right) return e.flipped();
    return std::nullopt;
  };
  auto a = oriented(w.first, r1);
  auto b = oriented(w.second, r2);
  if (!a || !b) return false;
  NameSupply fresh;
  fresh.avoid(Configuration{{}, {w.first, w.second}});
  EquationMultiset ma = divide(r1, args(a->lhs), args(a->rhs), fresh);
  EquationMultiset mb = divide(r2, args(b->lhs), args(b->rhs), fresh);
  if (ma.empty()) return false;
  Configuration ca{{}, ma}, cb{{}, mb}, cw{{}, w.contractum};
  if (!congruent(ca, cb) || !congruent(ca, cw)) return false;
  return !congruent(Configuration{{}, {w.first}}, Configuration{{}, {w.second}});
}

bool is_reversible_rule(const Rule& r) { return is_connected(r) && !clash_witness(r, r); }

ReversibilityReport reversibility_report(const System& s) {
  ReversibilityReport rep;
  for (std::size_t i = 0; i < s.rules.size(); ++i) {
    const Rule& r = s.rules[i];
    RuleVerdict v{i, is_connected(r), clash_witnesses(r, r)};
    if (!v.connected || !v.self_clashes.empty()) rep.reversible = false;
    rep.rules.push_back(std::move(v));
    rep.arity_table[r.arity()].push_back(i);
  }
  for (std::size_t i = 0; i < s.rules.size(); ++i) {
    for (std::size_t j = i + 1; j < s.rules.size(); ++j) {
      auto ws = clash_witnesses(s.rules[i], s.rules[j]);
      if (ws.empty()) continue;
      rep.reversible = false;
      rep.clashes.push_back({i, j, std::move(ws)});
    }
  }
  return rep;
}

bool arity_characterization(const System& s) {
  std::set<std::size_t> positive;
  for (const auto& r : s.rules) {
    if (!is_reversible_rule(r)) return false;
    if (r.arity() > 0 && !positive.insert(r.arity()).second) return false;
  }
  return true;
}

CompletenessReport completeness_check(const System& s) {
  CompletenessReport rep;
  std::set<int> arities;
  for (const auto& [sym, ar] : s.signature) {
    if (ar != 0) rep.trivial = false;
    if (!arities.insert(ar).second) rep.distinct_arities = false;
  }
  for (auto a = s.signature.begin(); a != s.signature.end(); ++a) {
    for (auto b = a; b != s.signature.end(); ++b) {
      if (!s.find_rule(a->first, b->first)) {
        rep.complete = false;
        rep.missing.emplace_back(a->first, b->first);
      }
    }
  }
  return rep;
}

}  // namespace icalc
