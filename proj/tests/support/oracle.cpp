#include "oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace oracle {

namespace {

using icalc::Name;
using NameMap = std::map<Name, Name>;

void names_of(const Term& t, std::vector<Name>& out) {
  if (t.is_name()) {
    out.push_back(t.symbol);
    return;
  }
  for (const auto& a : t.args) names_of(a, out);
}

std::map<Name, int> counts(const Configuration& c) {
  std::vector<Name> ns;
  for (const auto& t : c.interface) names_of(t, ns);
  for (const auto& e : c.body) {
    names_of(e.lhs, ns);
    names_of(e.rhs, ns);
  }
  std::map<Name, int> out;
  for (const auto& n : ns) ++out[n];
  return out;
}

struct Matcher {
  std::map<Name, int> ca, cb;

  bool term(const Term& x, const Term& y, NameMap& m, NameMap& inv) const {
    if (x.is_name() != y.is_name()) return false;
    if (x.is_name()) {
      auto it = m.find(x.symbol);
      if (it != m.end()) return it->second == y.symbol;
      if (inv.count(y.symbol)) return false;
      int kx = ca.at(x.symbol), ky = cb.at(y.symbol);
      if (kx != ky) return false;
      if (kx == 1 && x.symbol != y.symbol) return false;
      m[x.symbol] = y.symbol;
      inv[y.symbol] = x.symbol;
      return true;
    }
    if (x.symbol != y.symbol || x.args.size() != y.args.size()) return false;
    for (std::size_t i = 0; i < x.args.size(); ++i)
      if (!term(x.args[i], y.args[i], m, inv)) return false;
    return true;
  }
};

bool body_match(const Matcher& mt, const Configuration& a, const Configuration& b, std::size_t i,
                std::vector<bool>& used, const NameMap& m, const NameMap& inv) {
  if (i == a.body.size()) return true;
  for (std::size_t j = 0; j < b.body.size(); ++j) {
    if (used[j]) continue;
    for (int flip = 0; flip < 2; ++flip) {
      const Term& l = flip ? b.body[j].rhs : b.body[j].lhs;
      const Term& r = flip ? b.body[j].lhs : b.body[j].rhs;
      NameMap m2 = m, inv2 = inv;
      if (!mt.term(a.body[i].lhs, l, m2, inv2) || !mt.term(a.body[i].rhs, r, m2, inv2)) continue;
      used[j] = true;
      if (body_match(mt, a, b, i + 1, used, m2, inv2)) return true;
      used[j] = false;
    }
  }
  return false;
}

bool same_multiset(const std::vector<Equation>& a, const std::vector<Equation>& b) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& e : a) {
    bool found = false;
    for (std::size_t j = 0; j < b.size() && !found; ++j)
      if (!used[j] && b[j] == e) used[j] = found = true;
    if (!found) return false;
  }
  return true;
}

bool linear(const Configuration& c) {
  for (const auto& [_, k] : counts(c))
    if (k > 2) return false;
  return true;
}

bool mentions(const std::vector<Term>& ts, const std::set<Name>& names) {
  std::vector<Name> ns;
  for (const auto& t : ts) names_of(t, ns);
  for (const auto& n : ns)
    if (names.count(n)) return true;
  return false;
}

std::vector<Name> wiring(const Rule& r) {
  std::vector<Name> ns, out;
  for (const auto& t : r.left_args) names_of(t, ns);
  for (const auto& t : r.right_args) names_of(t, ns);
  for (const auto& n : ns)
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  return out;
}

std::vector<Term> slots(const Rule& r, const std::map<Name, Name>& m) {
  std::unordered_map<Name, Name> um(m.begin(), m.end());
  std::vector<Term> out;
  for (const auto& t : r.left_args) out.push_back(icalc::rename(t, um));
  for (const auto& t : r.right_args) out.push_back(icalc::rename(t, um));
  return out;
}

Equation active(const Rule& r, const std::vector<Term>& args) {
  std::size_t l = r.left_args.size();
  return {Term::make_agent(r.left, {args.begin(), args.begin() + l}),
          Term::make_agent(r.right, {args.begin() + l, args.end()})};
}

}  // namespace

bool congruent(const Configuration& a, const Configuration& b) {
  if (a.interface.size() != b.interface.size() || a.body.size() != b.body.size()) return false;
  Matcher mt{counts(a), counts(b)};
  NameMap m, inv;
  for (std::size_t i = 0; i < a.interface.size(); ++i)
    if (!mt.term(a.interface[i], b.interface[i], m, inv)) return false;
  std::vector<bool> used(b.body.size(), false);
  return body_match(mt, a, b, 0, used, m, inv);
}

std::optional<Clash> find_clash(const Rule& r1, const Rule& r2, bool cross) {
  const std::size_t n = r1.arity();
  if (n == 0 || n != r2.arity()) return std::nullopt;

  std::map<Name, Name> f1;
  for (const auto& w : wiring(r1)) f1[w] = "p" + std::to_string(f1.size());
  std::set<Name> f1_names;
  for (const auto& [_, v] : f1) f1_names.insert(v);
  const std::vector<Term> v = slots(r1, f1);
  const std::vector<Name> w2 = wiring(r2);

  std::optional<Clash> found;
  std::map<Name, Name> f2;
  std::set<Name> taken;

  auto try_assignment = [&] {
    std::set<Name> f2_names;
    for (const auto& [_, x] : f2) f2_names.insert(x);
    const std::vector<Term> w = slots(r2, f2);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    do {
      for (std::size_t orient = 0; orient < (cross ? 1u << n : 1u); ++orient) {
        std::vector<std::size_t> straight;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
          if (orient >> i & 1) continue;
          if (!(v[i] == w[perm[i]])) ok = false;
          straight.push_back(i);
        }
        if (!ok) continue;
        for (std::size_t fill = 0; fill < (1u << straight.size()); ++fill) {
          std::vector<Term> t(n), s(n);
          for (std::size_t i = 0; i < n; ++i) {
            if (orient >> i & 1) {
              t[i] = w[perm[i]];
              s[perm[i]] = v[i];
            }
          }
          for (std::size_t k = 0; k < straight.size(); ++k) {
            Term x = (fill >> k & 1) ? Term::make_agent("o")
                                     : Term::make_name("a" + std::to_string(k));
            t[straight[k]] = x;
            s[perm[straight[k]]] = x;
          }
          if (mentions(t, f1_names) || mentions(s, f2_names)) continue;
          Equation a1 = active(r1, t), a2 = active(r2, s);
          std::vector<Equation> c1, c2;
          for (std::size_t i = 0; i < n; ++i) {
            c1.push_back({t[i], v[i]});
            c2.push_back({s[i], w[i]});
          }
          Configuration p1{{}, {a1}}, p2{{}, {a2}}, body{{}, c1};
          if (!linear(p1) || !linear(p2) || !linear(body)) continue;
          if (!same_multiset(c1, c2)) continue;
          if (congruent(p1, p2)) continue;
          found = Clash{a1, a2, c1};
          return true;
        }
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
  };

  // Second instance's fresh names: any unused first-instance name, or the
  // next new one. New names are interchangeable, so they come in order.
  std::size_t next_new = 0;
  std::function<bool(std::size_t)> assign = [&](std::size_t k) -> bool {
    if (k == w2.size()) return try_assignment();
    for (const auto& p : f1_names) {
      if (taken.count(p)) continue;
      taken.insert(p);
      f2[w2[k]] = p;
      if (assign(k + 1)) return true;
      taken.erase(p);
    }
    f2[w2[k]] = "q" + std::to_string(next_new++);
    bool r = assign(k + 1);
    --next_new;
    return r;
  };
  assign(0);
  return found;
}

bool connected(const Rule& r) {
  std::vector<Term> pats;
  for (const auto& t : r.left_args) pats.push_back(t);
  for (const auto& t : r.right_args) pats.push_back(t);
  if (pats.empty()) return true;
  std::vector<std::set<Name>> groups;
  for (const auto& p : pats) {
    std::vector<Name> ns;
    names_of(p, ns);
    groups.emplace_back(ns.begin(), ns.end());
  }
  std::vector<bool> in(groups.size(), false);
  in[0] = true;
  std::set<Name> reach = groups[0];
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = 0; i < groups.size(); ++i) {
      if (in[i]) continue;
      for (const auto& x : groups[i])
        if (reach.count(x)) {
          in[i] = grew = true;
          reach.insert(groups[i].begin(), groups[i].end());
          break;
        }
    }
  }
  return std::all_of(in.begin(), in.end(), [](bool b) { return b; });
}

namespace {

std::optional<Rule> random_rule(const System& s, const std::string& a, const std::string& b,
                                Rand& rng) {
  std::vector<std::string> agents;
  for (const auto& [sym, _] : s.signature) agents.push_back(sym);
  std::size_t holes = 0;
  auto hole = [&] { return Term::make_name("#" + std::to_string(holes++)); };
  auto pattern = [&] {
    if (rng.below(2) == 0) return hole();
    const std::string& sym = agents[rng.below(agents.size())];
    std::vector<Term> args;
    for (int i = 0; i < *s.arity_of(sym); ++i) args.push_back(hole());
    return Term::make_agent(sym, std::move(args));
  };
  Rule r{a, b, {}, {}};
  for (int i = 0; i < *s.arity_of(a); ++i) r.left_args.push_back(pattern());
  for (int i = 0; i < *s.arity_of(b); ++i) r.right_args.push_back(pattern());
  if (holes % 2 == 1) return std::nullopt;
  std::vector<std::size_t> ids(holes);
  for (std::size_t i = 0; i < holes; ++i) ids[i] = i;
  for (std::size_t i = holes; i > 1; --i) std::swap(ids[i - 1], ids[rng.below(i)]);
  std::unordered_map<Name, Name> names;
  for (std::size_t k = 0; k < holes; ++k)
    names["#" + std::to_string(ids[k])] = "x" + std::to_string(k / 2);
  for (auto& t : r.left_args) t = icalc::rename(t, names);
  for (auto& t : r.right_args) t = icalc::rename(t, names);
  return r;
}

}  // namespace

std::vector<System> rule_corpus(std::size_t count, std::uint64_t seed) {
  Rand rng(seed);
  std::vector<System> out;
  const std::vector<std::string> syms = {"A", "B", "C"};
  while (out.size() < count) {
    System s;
    for (const auto& sym : syms) s.signature[sym] = static_cast<int>(rng.below(3));
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 0; i < syms.size(); ++i)
      for (std::size_t j = i; j < syms.size(); ++j) pairs.emplace_back(syms[i], syms[j]);
    std::size_t p1 = rng.below(pairs.size());
    std::size_t p2 = (p1 + 1 + rng.below(pairs.size() - 1)) % pairs.size();
    auto r1 = random_rule(s, pairs[p1].first, pairs[p1].second, rng);
    auto r2 = random_rule(s, pairs[p2].first, pairs[p2].second, rng);
    if (!r1 || !r2) continue;
    s.rules = {*r1, *r2};
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace oracle
