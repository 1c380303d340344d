#include "icalc/unrewrite.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "icalc/core.hpp"

namespace icalc {

Equation ExpansionMatch::active_pair(const System& s) const {
  const Rule& r = s.rules[rule];
  return {Term::make_agent(r.left, left_args), Term::make_agent(r.right, right_args)};
}

Configuration abstract_at(const Configuration& c, const Position& p, const Name& x) {
  Configuration out = c;
  Term& slot = subterm(out, p);
  Term moved = std::move(slot);
  slot = Term::make_name(x);
  out.body.push_back({Term::make_name(x), std::move(moved)});
  return out;
}

std::vector<Expansion> indirection_expansions(const Configuration& c) {
  NameSupply fresh;
  fresh.avoid(c);
  Name x = fresh.fresh();
  std::vector<Expansion> out;
  std::unordered_set<std::string> seen;
  for (const auto& p : all_positions(c)) {
    Configuration pred = abstract_at(c, p, x);
    std::string key = canonical_key(pred);
    if (!seen.insert(key).second) continue;
    Expansion e;
    e.config = std::move(pred);
    e.kind = Step::Kind::indirection;
    e.key = std::move(key);
    e.abstracted = p;
    e.introduced = x;
    out.push_back(std::move(e));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Contractum matching

namespace {

std::size_t depth(const Term& t) {
  std::size_t d = 0;
  for (const auto& a : t.args) d = std::max(d, depth(a));
  return t.is_agent() ? d + 1 : 0;
}

struct PatternEq {
  bool left;          // slot belongs to the rule's left agent
  std::size_t slot;   // argument index on that agent
  const Term* pattern;
};

class Matcher {
 public:
  Matcher(const System& s, const Configuration& c, std::size_t rule,
          const std::vector<std::size_t>* selection, std::vector<ExpansionMatch>& out)
      : s_(s), c_(c), rule_(rule), out_(out), counts_(name_counts(c)) {
    const Rule& r = s.rules[rule];
    for (std::size_t i = 0; i < r.left_args.size(); ++i)
      pats_.push_back({true, i, &r.left_args[i]});
    for (std::size_t i = 0; i < r.right_args.size(); ++i)
      pats_.push_back({false, i, &r.right_args[i]});
    std::stable_sort(pats_.begin(), pats_.end(), [](const PatternEq& a, const PatternEq& b) {
      return depth(*a.pattern) > depth(*b.pattern);
    });
    if (selection) {
      candidates_ = *selection;
      exact_ = true;
    } else {
      candidates_.resize(c.body.size());
      std::iota(candidates_.begin(), candidates_.end(), 0);
    }
    used_.assign(c.body.size(), false);
    chosen_.resize(pats_.size());
    captured_.resize(pats_.size());
  }

  void run() {
    if (exact_ && candidates_.size() != pats_.size()) return;
    search(0);
  }

 private:
  bool match(const Term& pat, const Term& t) {
    if (pat.is_name()) {
      if (!t.is_name()) return false;
      auto it = wiring_.find(pat.symbol);
      if (it != wiring_.end()) return it->second == t.symbol;
      if (image_.count(t.symbol)) return false;
      auto cnt = counts_.find(t.symbol);
      if (cnt == counts_.end() || cnt->second != 2) return false;
      wiring_.emplace(pat.symbol, t.symbol);
      image_.insert(t.symbol);
      trail_.push_back(pat.symbol);
      return true;
    }
    if (!t.is_agent() || t.symbol != pat.symbol || t.args.size() != pat.args.size()) return false;
    for (std::size_t i = 0; i < pat.args.size(); ++i)
      if (!match(pat.args[i], t.args[i])) return false;
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      auto it = wiring_.find(trail_.back());
      image_.erase(it->second);
      wiring_.erase(it);
      trail_.pop_back();
    }
  }

  void search(std::size_t k) {
    if (k == pats_.size()) {
      emit();
      return;
    }
    for (std::size_t b : candidates_) {
      if (used_[b]) continue;
      const Equation& e = c_.body[b];
      for (int orient = 0; orient < 2; ++orient) {
        const Term& slot_side = orient == 0 ? e.lhs : e.rhs;
        const Term& pat_side = orient == 0 ? e.rhs : e.lhs;
        std::size_t mark = trail_.size();
        if (match(*pats_[k].pattern, pat_side)) {
          used_[b] = true;
          chosen_[k] = b;
          captured_[k] = &slot_side;
          search(k + 1);
          used_[b] = false;
        }
        undo(mark);
        if (e.lhs == e.rhs) break;  // both orientations identical
      }
    }
  }

  void emit() {
    // Both occurrences of every wired name are inside the selection: each
    // wiring name appears twice in the patterns, and the name has exactly
    // two occurrences in the configuration.
    const Rule& r = s_.rules[rule_];
    ExpansionMatch m;
    m.rule = rule_;
    m.wiring = wiring_;
    m.left_args.resize(r.left_args.size());
    m.right_args.resize(r.right_args.size());
    m.selection.resize(pats_.size());
    for (std::size_t k = 0; k < pats_.size(); ++k) {
      std::size_t slot = pats_[k].left ? pats_[k].slot : r.left_args.size() + pats_[k].slot;
      m.selection[slot] = chosen_[k];
      auto& dst = pats_[k].left ? m.left_args : m.right_args;
      dst[pats_[k].slot] = *captured_[k];
    }
    out_.push_back(std::move(m));
  }

  const System& s_;
  const Configuration& c_;
  std::size_t rule_;
  std::vector<ExpansionMatch>& out_;
  std::unordered_map<Name, int> counts_;
  std::vector<PatternEq> pats_;
  std::vector<std::size_t> candidates_;
  bool exact_ = false;
  std::vector<bool> used_;
  std::vector<std::size_t> chosen_;
  std::vector<const Term*> captured_;
  std::unordered_map<Name, Name> wiring_;
  std::unordered_set<Name> image_;
  std::vector<Name> trail_;
};

}  // namespace

std::vector<ExpansionMatch> contractum_matches(const System& s, const Configuration& c,
                                               std::size_t rule,
                                               const std::vector<std::size_t>* selection) {
  std::vector<ExpansionMatch> out;
  Matcher(s, c, rule, selection, out).run();
  return out;
}

std::vector<ExpansionMatch> contractum_matches(const System& s, const Configuration& c) {
  std::vector<ExpansionMatch> out;
  for (std::size_t r = 0; r < s.rules.size(); ++r) Matcher(s, c, r, nullptr, out).run();
  return out;
}

Configuration fold(const System& s, const Configuration& c, const ExpansionMatch& m) {
  std::vector<bool> drop(c.body.size(), false);
  for (std::size_t b : m.selection) drop[b] = true;
  std::size_t at = m.selection.empty()
                       ? c.body.size()
                       : *std::min_element(m.selection.begin(), m.selection.end());
  Configuration out;
  out.interface = c.interface;
  for (std::size_t i = 0; i < c.body.size(); ++i) {
    if (i == at) out.body.push_back(m.active_pair(s));
    if (!drop[i]) out.body.push_back(c.body[i]);
  }
  if (at == c.body.size()) out.body.push_back(m.active_pair(s));
  return out;
}

std::vector<Expansion> interaction_expansions(const System& s, const Configuration& c) {
  std::vector<Expansion> out;
  std::unordered_set<std::string> seen;
  for (auto& m : contractum_matches(s, c)) {
    Configuration pred = fold(s, c, m);
    std::string key = canonical_key(pred);
    if (!seen.insert(key).second) continue;
    Expansion e;
    e.config = std::move(pred);
    e.kind = Step::Kind::interaction;
    e.key = std::move(key);
    e.match = std::move(m);
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<Expansion> expansions(const System& s, const Configuration& c, ExpansionKind kind) {
  std::vector<Expansion> out;
  if (kind != ExpansionKind::indirection) out = interaction_expansions(s, c);
  if (kind != ExpansionKind::interaction) {
    std::unordered_set<std::string> seen;
    for (const auto& e : out) seen.insert(e.key);
    for (auto& e : indirection_expansions(c))
      if (seen.insert(e.key).second) out.push_back(std::move(e));
  }
  return out;
}

bool reduces_in_one_step(const System& s, const Configuration& from, const Configuration& to) {
  NameSupply fresh;
  std::string target = canonical_key(to);
  for (const auto& st : one_step_reducts(s, from, fresh))
    if (canonical_key(st.result) == target) return true;
  return false;
}

}  // namespace icalc
