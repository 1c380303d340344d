#include "icalc/term.hpp"

#include <algorithm>
#include <charconv>

namespace icalc {

std::size_t Term::size() const {
  std::size_t n = 1;
  for (const auto& a : args) n += a.size();
  return n;
}

bool operator==(const Term& a, const Term& b) {
  if (a.kind != b.kind || a.symbol != b.symbol || a.args.size() != b.args.size())
    return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!(a.args[i] == b.args[i])) return false;
  return true;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (auto c = a.kind <=> b.kind; c != 0) return c;
  if (auto c = a.symbol <=> b.symbol; c != 0) return c;
  if (auto c = a.args.size() <=> b.args.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (auto c = a.args[i] <=> b.args[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::optional<RuleRef> System::find_rule(const std::string& a,
                                         const std::string& b) const {
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const Rule& r = rules[i];
    if (r.left == a && r.right == b) return RuleRef{i, false};
    if (r.left == b && r.right == a) return RuleRef{i, true};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

const Term& root_of(const Configuration& c, const Position& p) {
  switch (p.where) {
    case Position::Where::interface:
      return c.interface.at(p.index);
    case Position::Where::lhs:
      return c.body.at(p.index).lhs;
    case Position::Where::rhs:
      return c.body.at(p.index).rhs;
  }
  throw Error("bad position");
}

Term& root_of(Configuration& c, const Position& p) {
  return const_cast<Term&>(root_of(std::as_const(c), p));
}

const Term& subterm(const Configuration& c, const Position& p) {
  const Term* t = &root_of(c, p);
  for (std::size_t i : p.path) t = &t->args.at(i);
  return *t;
}

Term& subterm(Configuration& c, const Position& p) {
  return const_cast<Term&>(subterm(std::as_const(c), p));
}

namespace {

void walk_positions(const Term& t, Position& p, std::vector<Position>& out) {
  out.push_back(p);
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    p.path.push_back(i);
    walk_positions(t.args[i], p, out);
    p.path.pop_back();
  }
}

}  // namespace

std::vector<Position> all_positions(const Configuration& c) {
  std::vector<Position> out;
  for (std::size_t i = 0; i < c.interface.size(); ++i) {
    Position p{Position::Where::interface, i, {}};
    walk_positions(c.interface[i], p, out);
  }
  for (std::size_t i = 0; i < c.body.size(); ++i) {
    Position l{Position::Where::lhs, i, {}};
    walk_positions(c.body[i].lhs, l, out);
    Position r{Position::Where::rhs, i, {}};
    walk_positions(c.body[i].rhs, r, out);
  }
  return out;
}

bool is_prefix_of(const Position& outer, const Position& inner) {
  if (outer.where != inner.where || outer.index != inner.index) return false;
  if (outer.path.size() > inner.path.size()) return false;
  return std::equal(outer.path.begin(), outer.path.end(), inner.path.begin());
}

// ---------------------------------------------------------------------------

void collect_names(const Term& t, std::vector<Name>& out) {
  if (t.is_name()) {
    out.push_back(t.symbol);
    return;
  }
  for (const auto& a : t.args) collect_names(a, out);
}

namespace {

void count_into(const Term& t, std::unordered_map<Name, int>& m) {
  if (t.is_name()) {
    ++m[t.symbol];
    return;
  }
  for (const auto& a : t.args) count_into(a, m);
}

template <class F>
void for_each_name_in_order(const Configuration& c, F&& f) {
  std::vector<Name> names;
  for (const auto& t : c.interface) collect_names(t, names);
  for (const auto& e : c.body) {
    collect_names(e.lhs, names);
    collect_names(e.rhs, names);
  }
  for (const auto& n : names) f(n);
}

std::vector<Name> names_with_count(const Configuration& c, int k) {
  auto counts = name_counts(c);
  std::vector<Name> out;
  std::unordered_map<Name, bool> seen;
  for_each_name_in_order(c, [&](const Name& n) {
    if (counts[n] == k && !seen[n]) {
      seen[n] = true;
      out.push_back(n);
    }
  });
  return out;
}

}  // namespace

std::unordered_map<Name, int> name_counts(const Configuration& c) {
  std::unordered_map<Name, int> m;
  for (const auto& t : c.interface) count_into(t, m);
  for (const auto& e : c.body) {
    count_into(e.lhs, m);
    count_into(e.rhs, m);
  }
  return m;
}

std::unordered_map<Name, int> name_counts(const EquationMultiset& eqs) {
  std::unordered_map<Name, int> m;
  for (const auto& e : eqs) {
    count_into(e.lhs, m);
    count_into(e.rhs, m);
  }
  return m;
}

bool occurs_in(const Term& t, const Name& n) {
  if (t.is_name()) return t.symbol == n;
  return std::any_of(t.args.begin(), t.args.end(),
                     [&](const Term& a) { return occurs_in(a, n); });
}

std::vector<Name> free_names(const Configuration& c) { return names_with_count(c, 1); }
std::vector<Name> bound_names(const Configuration& c) { return names_with_count(c, 2); }

Term rename(const Term& t, const std::unordered_map<Name, Name>& m) {
  if (t.is_name()) {
    auto it = m.find(t.symbol);
    return it == m.end() ? t : Term::make_name(it->second);
  }
  Term out = Term::make_agent(t.symbol);
  out.args.reserve(t.args.size());
  for (const auto& a : t.args) out.args.push_back(rename(a, m));
  return out;
}

Equation rename(const Equation& e, const std::unordered_map<Name, Name>& m) {
  return {rename(e.lhs, m), rename(e.rhs, m)};
}

// ---------------------------------------------------------------------------

void NameSupply::avoid_name(const Name& n) {
  if (!is_machine_name(n) || n.size() < 2) return;
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(n.data() + 1, n.data() + n.size(), v);
  if (ec != std::errc() || ptr != n.data() + n.size()) return;
  if (v >= next_) next_ = v + 1;
}

void NameSupply::avoid(const Term& t) {
  std::vector<Name> names;
  collect_names(t, names);
  for (const auto& n : names) avoid_name(n);
}

void NameSupply::avoid(const Configuration& c) {
  for (const auto& t : c.interface) avoid(t);
  avoid(c.body);
}

void NameSupply::avoid(const EquationMultiset& eqs) {
  for (const auto& e : eqs) {
    avoid(e.lhs);
    avoid(e.rhs);
  }
}

}  // namespace icalc
