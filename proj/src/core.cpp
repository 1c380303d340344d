#include "icalc/core.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

namespace icalc {

bool Validation::ok() const {
  return std::none_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) {
    return d.severity == Diagnostic::Severity::error;
  });
}

std::vector<Diagnostic> Validation::errors() const {
  std::vector<Diagnostic> out;
  for (const auto& d : diagnostics)
    if (d.severity == Diagnostic::Severity::error) out.push_back(d);
  return out;
}

std::vector<Diagnostic> Validation::warnings() const {
  std::vector<Diagnostic> out;
  for (const auto& d : diagnostics)
    if (d.severity == Diagnostic::Severity::warning) out.push_back(d);
  return out;
}

std::string Validation::to_string() const {
  std::ostringstream os;
  for (const auto& d : diagnostics) {
    os << (d.severity == Diagnostic::Severity::error ? "error" : "warning") << ": "
       << d.location << ": " << d.message << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Validation

namespace {

void check_agents(const System& s, const Term& t, const std::string& where,
                  std::vector<Diagnostic>& out) {
  if (t.is_name()) return;
  auto ar = s.arity_of(t.symbol);
  if (!ar) {
    out.push_back({Diagnostic::Severity::error, where,
                   "undeclared agent '" + t.symbol + "'"});
  } else if (static_cast<std::size_t>(*ar) != t.args.size()) {
    out.push_back({Diagnostic::Severity::error, where,
                   "agent '" + t.symbol + "' expects " + std::to_string(*ar) +
                       " arguments, got " + std::to_string(t.args.size())});
  }
  for (const auto& a : t.args) check_agents(s, a, where, out);
}

void check_cyclic(const Equation& e, const std::string& where,
                  std::vector<Diagnostic>& out) {
  auto flag = [&](const Term& side, const Term& other) {
    if (side.is_name() && occurs_in(other, side.symbol)) {
      out.push_back({Diagnostic::Severity::warning, where,
                     "cyclic equation: '" + side.symbol +
                         "' occurs on both sides; no step consumes it"});
      return true;
    }
    return false;
  };
  if (!flag(e.lhs, e.rhs)) flag(e.rhs, e.lhs);
}

}  // namespace

Validation validate_config(const System& s, const Configuration& c) {
  Validation v;
  for (std::size_t i = 0; i < c.interface.size(); ++i)
    check_agents(s, c.interface[i], "interface[" + std::to_string(i) + "]", v.diagnostics);
  for (std::size_t i = 0; i < c.body.size(); ++i) {
    std::string where = "body[" + std::to_string(i) + "]";
    check_agents(s, c.body[i].lhs, where, v.diagnostics);
    check_agents(s, c.body[i].rhs, where, v.diagnostics);
    check_cyclic(c.body[i], where, v.diagnostics);
  }
  auto counts = name_counts(c);
  std::vector<std::pair<Name, int>> sorted(counts.begin(), counts.end());
  std::sort(sorted.begin(), sorted.end());
  for (const auto& [n, k] : sorted) {
    if (k > 2) {
      v.diagnostics.push_back({Diagnostic::Severity::error, "configuration",
                               "name " + n + " occurs " + std::to_string(k) +
                                   " times (at most 2 allowed)"});
    }
  }
  return v;
}

Validation validate_system(const System& s) {
  Validation v;
  auto& out = v.diagnostics;
  std::map<std::pair<std::string, std::string>, std::size_t> seen;
  for (std::size_t i = 0; i < s.rules.size(); ++i) {
    const Rule& r = s.rules[i];
    std::string where = "rule " + std::to_string(i) + " (" + r.left + " >< " + r.right + ")";
    for (const auto* sym : {&r.left, &r.right}) {
      if (!s.arity_of(*sym))
        out.push_back({Diagnostic::Severity::error, where, "undeclared agent '" + *sym + "'"});
    }
    if (auto ar = s.arity_of(r.left); ar && static_cast<std::size_t>(*ar) != r.left_args.size())
      out.push_back({Diagnostic::Severity::error, where,
                     "'" + r.left + "' has arity " + std::to_string(*ar) + " but the rule gives " +
                         std::to_string(r.left_args.size()) + " patterns"});
    if (auto ar = s.arity_of(r.right); ar && static_cast<std::size_t>(*ar) != r.right_args.size())
      out.push_back({Diagnostic::Severity::error, where,
                     "'" + r.right + "' has arity " + std::to_string(*ar) + " but the rule gives " +
                         std::to_string(r.right_args.size()) + " patterns"});
    for (const auto& t : r.left_args) check_agents(s, t, where, out);
    for (const auto& t : r.right_args) check_agents(s, t, where, out);

    std::map<Name, int> counts;
    std::vector<Name> names;
    for (const auto& t : r.left_args) collect_names(t, names);
    for (const auto& t : r.right_args) collect_names(t, names);
    for (const auto& n : names) ++counts[n];
    for (const auto& [n, k] : counts) {
      if (k != 2)
        out.push_back({Diagnostic::Severity::error, where,
                       "wiring name " + n + " occurs " + std::to_string(k) +
                           " times (exactly 2 required)"});
    }

    auto key = std::minmax(r.left, r.right);
    auto [it, inserted] = seen.emplace(std::pair{key.first, key.second}, i);
    if (!inserted)
      out.push_back({Diagnostic::Severity::error, where,
                     "second rule for the pair (" + key.first + ", " + key.second +
                         "), first is rule " + std::to_string(it->second)});

    if (r.left == r.right && r.left_args.size() == r.right_args.size()) {
      // Contractum of alpha(x) = alpha(y) read in both orientations.
      Configuration fwd, bwd;
      std::size_t n = r.left_args.size();
      for (std::size_t k = 0; k < n; ++k)
        fwd.interface.push_back(Term::make_name("%x" + std::to_string(k)));
      for (std::size_t k = 0; k < n; ++k)
        fwd.interface.push_back(Term::make_name("%y" + std::to_string(k)));
      bwd.interface = fwd.interface;
      for (std::size_t k = 0; k < n; ++k) {
        fwd.body.push_back({fwd.interface[k], r.left_args[k]});
        fwd.body.push_back({fwd.interface[n + k], r.right_args[k]});
        bwd.body.push_back({fwd.interface[n + k], r.left_args[k]});
        bwd.body.push_back({fwd.interface[k], r.right_args[k]});
      }
      if (!congruent(fwd, bwd))
        out.push_back({Diagnostic::Severity::warning, where,
                       "contractum changes when the two sides are swapped"});
    }
  }
  return v;
}

// ---------------------------------------------------------------------------

namespace {

bool replace_name(Term& t, const Name& x, const Term& by) {
  if (t.is_name()) {
    if (t.symbol == x) {
      t = by;
      return true;
    }
    return false;
  }
  for (auto& a : t.args)
    if (replace_name(a, x, by)) return true;
  return false;
}

}  // namespace

Configuration substitute(const Configuration& c, const Name& x, const Term& t) {
  auto counts = name_counts(c);
  auto it = counts.find(x);
  int k = it == counts.end() ? 0 : it->second;
  if (k != 1)
    throw PreconditionError("substitute: name " + x + " occurs " + std::to_string(k) +
                            " times, expected exactly once");
  Configuration out = c;
  for (auto& f : out.interface)
    if (replace_name(f, x, t)) return out;
  for (auto& e : out.body)
    if (replace_name(e.lhs, x, t) || replace_name(e.rhs, x, t)) return out;
  return out;  // unreachable
}

// ---------------------------------------------------------------------------
// Canonical forms
//
// Bound names are numbered in order of first appearance in the serialized
// output. After the interface, equations touching an already numbered name
// are emitted first, smallest text first; that walk is forced except for
// rare exact ties, which are branched. What remains splits into connected
// components that touch nothing numbered. Each is canonicalized on its own,
// starting from every candidate in its smallest (color, text) class, and the
// components are emitted in order of their local texts. Colors come from
// refinement over the equation/name incidence graph and only reduce ties.

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= kFnvPrime;
  }
  return h;
}

std::uint64_t hash_str(std::string_view s) {
  std::uint64_t h = kFnvOffset;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= kFnvPrime;
  }
  return h;
}

struct Occurrence {
  Position::Where where;
  std::size_t index;
  std::vector<std::size_t> path;
};

class Canonicalizer {
 public:
  explicit Canonicalizer(const Configuration& c) : c_(c), counts_(name_counts(c)) {}

  CanonicalForm run() {
    compute_colors();
    eq_names_.resize(c_.body.size());
    for (std::size_t i = 0; i < c_.body.size(); ++i) {
      std::vector<Name> ns;
      collect_names(c_.body[i].lhs, ns);
      collect_names(c_.body[i].rhs, ns);
      for (auto& n : ns)
        if (bound(n)) eq_names_[i].push_back(std::move(n));
    }

    State st;
    st.used.assign(c_.body.size(), false);
    st.text.push_back('<');
    for (std::size_t i = 0; i < c_.interface.size(); ++i) {
      if (i) st.text.push_back(',');
      write(c_.interface[i], st, nullptr);
    }
    st.text.push_back('|');
    st = walk(std::move(st));

    // Components left over touch no numbered name.
    std::vector<std::vector<std::size_t>> comps = components(st.used);
    std::vector<std::pair<std::string, std::vector<std::pair<std::size_t, bool>>>> local;
    for (const auto& k : comps) {
      State done = start_component(k);
      local.emplace_back(std::move(done.text), std::move(done.order));
    }
    std::stable_sort(local.begin(), local.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [_, order] : local)
      for (const auto& [eq, flip] : order) commit(eq, flip, st);

    st.text.push_back('>');
    return build(st);
  }

 private:
  struct State {
    std::unordered_map<Name, int> naming;
    int next = 0;
    std::vector<bool> used;
    std::string text;
    std::vector<std::pair<std::size_t, bool>> order;  // (input eq, flipped)
  };

  bool bound(const Name& n) const {
    auto it = counts_.find(n);
    return it != counts_.end() && it->second >= 2;
  }

  // Appends the serialization of t. New bound names are numbered on the fly;
  // `assigned` records them so a trial can be rolled back.
  void write(const Term& t, State& st, std::vector<Name>* assigned) const {
    if (t.is_name()) {
      if (!bound(t.symbol)) {
        st.text.push_back('\'');
        st.text += t.symbol;
        return;
      }
      auto it = st.naming.find(t.symbol);
      int idx;
      if (it == st.naming.end()) {
        idx = st.next++;
        st.naming.emplace(t.symbol, idx);
        if (assigned) assigned->push_back(t.symbol);
      } else {
        idx = it->second;
      }
      st.text.push_back('%');
      st.text += std::to_string(idx);
      return;
    }
    st.text += t.symbol;
    st.text.push_back('(');
    for (std::size_t i = 0; i < t.args.size(); ++i) {
      if (i) st.text.push_back(',');
      write(t.args[i], st, assigned);
    }
    st.text.push_back(')');
  }

  std::string trial(const Equation& e, bool flip, State& st) const {
    std::vector<Name> assigned;
    std::size_t mark = st.text.size();
    int next = st.next;
    const Term& a = flip ? e.rhs : e.lhs;
    const Term& b = flip ? e.lhs : e.rhs;
    write(a, st, &assigned);
    st.text.push_back('=');
    write(b, st, &assigned);
    std::string out = st.text.substr(mark);
    st.text.resize(mark);
    st.next = next;
    for (const auto& n : assigned) st.naming.erase(n);
    return out;
  }

  void commit(std::size_t eq, bool flip, State& st) const {
    if (!st.order.empty()) st.text.push_back(';');
    const Equation& e = c_.body[eq];
    write(flip ? e.rhs : e.lhs, st, nullptr);
    st.text.push_back('=');
    write(flip ? e.lhs : e.rhs, st, nullptr);
    st.used[eq] = true;
    st.order.emplace_back(eq, flip);
  }

  bool touches_numbered(std::size_t eq, const State& st) const {
    for (const auto& n : eq_names_[eq])
      if (st.naming.count(n)) return true;
    return false;
  }

  // Both orientations can print alike and still name things differently;
  // only a syntactically symmetric equation makes them one choice.
  void collapse(std::vector<std::pair<std::size_t, bool>>& ties) const {
    if (ties.size() == 2 && ties[0].first == ties[1].first &&
        c_.body[ties[0].first].lhs == c_.body[ties[0].first].rhs)
      ties.resize(1);
  }

  // Emits every equation reachable from numbered names.
  State walk(State st) const {
    for (;;) {
      std::string best_text;
      std::vector<std::pair<std::size_t, bool>> ties;
      for (std::size_t i = 0; i < c_.body.size(); ++i) {
        if (st.used[i] || !touches_numbered(i, st)) continue;
        for (bool flip : {false, true}) {
          std::string s = trial(c_.body[i], flip, st);
          if (ties.empty() || s < best_text) {
            best_text = std::move(s);
            ties.assign(1, {i, flip});
          } else if (s == best_text) {
            ties.emplace_back(i, flip);
          }
        }
      }
      collapse(ties);
      if (ties.empty()) return st;
      if (ties.size() == 1) {
        commit(ties[0].first, ties[0].second, st);
        continue;
      }
      std::optional<State> best;
      for (const auto& [eq, flip] : ties) {
        State branch = st;
        commit(eq, flip, branch);
        State done = walk(std::move(branch));
        if (!best || done.text < best->text) best = std::move(done);
      }
      return std::move(*best);
    }
  }

  std::vector<std::vector<std::size_t>> components(const std::vector<bool>& used) const {
    std::vector<std::size_t> parent(c_.body.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    std::unordered_map<Name, std::size_t> first;
    for (std::size_t i = 0; i < c_.body.size(); ++i) {
      if (used[i]) continue;
      for (const auto& n : eq_names_[i]) {
        auto [it, fresh] = first.emplace(n, i);
        if (!fresh) parent[find(i)] = find(it->second);
      }
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < c_.body.size(); ++i)
      if (!used[i]) groups[find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [_, g] : groups) out.push_back(std::move(g));
    return out;
  }

  // Best local serialization of one component, numbering from 0.
  State start_component(const std::vector<std::size_t>& comp) const {
    State st;
    st.used.assign(c_.body.size(), true);
    for (auto i : comp) st.used[i] = false;
    std::uint64_t best_color = 0;
    std::string best_text;
    std::vector<std::pair<std::size_t, bool>> ties;
    for (auto i : comp) {
      for (bool flip : {false, true}) {
        std::string s = trial(c_.body[i], flip, st);
        std::uint64_t col = eq_color_[i];
        if (ties.empty() || col < best_color || (col == best_color && s < best_text)) {
          best_color = col;
          best_text = std::move(s);
          ties.assign(1, {i, flip});
        } else if (col == best_color && s == best_text) {
          ties.emplace_back(i, flip);
        }
      }
    }
    collapse(ties);
    std::optional<State> best;
    for (const auto& [eq, flip] : ties) {
      State branch = st;
      commit(eq, flip, branch);
      State done = walk(std::move(branch));
      if (!best || done.text < best->text) best = std::move(done);
    }
    return std::move(*best);
  }

  CanonicalForm build(const State& st) const {
    CanonicalForm out;
    out.key = st.text;
    std::unordered_map<Name, Name> names;
    for (const auto& [n, idx] : st.naming) names.emplace(n, "%" + std::to_string(idx));
    for (const auto& f : c_.interface) out.config.interface.push_back(rename(f, names));
    out.alignment.equation.assign(c_.body.size(), 0);
    out.alignment.flipped.assign(c_.body.size(), false);
    for (std::size_t k = 0; k < st.order.size(); ++k) {
      auto [eq, flip] = st.order[k];
      Equation e = rename(c_.body[eq], names);
      out.config.body.push_back(flip ? e.flipped() : e);
      out.alignment.equation[eq] = k;
      out.alignment.flipped[eq] = flip;
    }
    out.alignment.names = std::move(names);
    return out;
  }

  // -- colors ---------------------------------------------------------------

  std::uint64_t side_hash(const Term& t) const {
    if (t.is_name()) {
      auto it = name_color_.find(t.symbol);
      return mix(0x9e3779b97f4a7c15ULL, it == name_color_.end() ? 0 : it->second);
    }
    std::uint64_t h = hash_str(t.symbol);
    for (const auto& a : t.args) h = mix(h, side_hash(a));
    return mix(h, t.args.size());
  }

  void gather(const Term& t, Occurrence& occ,
              std::unordered_map<Name, std::vector<Occurrence>>& out) const {
    if (t.is_name()) {
      if (bound(t.symbol)) out[t.symbol].push_back(occ);
      return;
    }
    for (std::size_t i = 0; i < t.args.size(); ++i) {
      occ.path.push_back(i);
      gather(t.args[i], occ, out);
      occ.path.pop_back();
    }
  }

  void compute_colors() {
    std::unordered_map<Name, std::vector<Occurrence>> occs;
    for (std::size_t i = 0; i < c_.interface.size(); ++i) {
      Occurrence o{Position::Where::interface, i, {}};
      gather(c_.interface[i], o, occs);
    }
    for (std::size_t i = 0; i < c_.body.size(); ++i) {
      Occurrence l{Position::Where::lhs, i, {}};
      gather(c_.body[i].lhs, l, occs);
      Occurrence r{Position::Where::rhs, i, {}};
      gather(c_.body[i].rhs, r, occs);
    }
    for (const auto& [n, k] : counts_)
      name_color_[n] = k >= 2 ? 0x51ed270b27fd0a3dULL : hash_str(n);

    eq_color_.assign(c_.body.size(), 0);
    std::size_t classes = 0;
    for (;;) {
      for (std::size_t i = 0; i < c_.body.size(); ++i) {
        std::uint64_t a = side_hash(c_.body[i].lhs), b = side_hash(c_.body[i].rhs);
        eq_color_[i] = mix(mix(kFnvOffset, std::min(a, b)), std::max(a, b));
      }
      std::size_t now = distinct(eq_color_) + distinct_names();
      if (now <= classes) break;
      classes = now;
      std::unordered_map<Name, std::uint64_t> next = name_color_;
      for (const auto& [n, list] : occs) {
        std::vector<std::uint64_t> parts;
        for (const auto& o : list) {
          std::uint64_t h;
          if (o.where == Position::Where::interface) {
            h = mix(0x1234567ULL, o.index);
          } else {
            const Equation& e = c_.body[o.index];
            const Term& side = o.where == Position::Where::lhs ? e.lhs : e.rhs;
            h = mix(eq_color_[o.index], side_hash(side));
          }
          for (std::size_t p : o.path) h = mix(h, p + 1);
          parts.push_back(h);
        }
        std::sort(parts.begin(), parts.end());
        std::uint64_t h = name_color_[n];
        for (auto p : parts) h = mix(h, p);
        next[n] = h;
      }
      name_color_ = std::move(next);
    }
  }

  static std::size_t distinct(std::vector<std::uint64_t> v) {
    std::sort(v.begin(), v.end());
    return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
  }
  std::size_t distinct_names() const {
    std::vector<std::uint64_t> v;
    for (const auto& [_, h] : name_color_) v.push_back(h);
    return distinct(std::move(v));
  }

  const Configuration& c_;
  std::unordered_map<Name, int> counts_;
  std::vector<std::vector<Name>> eq_names_;
  std::unordered_map<Name, std::uint64_t> name_color_;
  std::vector<std::uint64_t> eq_color_;
};

}  // namespace

Position Alignment::map(const Position& p) const {
  if (p.where == Position::Where::interface) return p;
  Position out = p;
  out.index = equation.at(p.index);
  if (flipped.at(p.index))
    out.where = p.where == Position::Where::lhs ? Position::Where::rhs : Position::Where::lhs;
  return out;
}

CanonicalForm canonical_form(const Configuration& c) { return Canonicalizer(c).run(); }

Configuration canonicalize(const Configuration& c) { return canonical_form(c).config; }

std::string canonical_key(const Configuration& c) { return canonical_form(c).key; }

bool congruent(const Configuration& a, const Configuration& b) {
  if (a.interface.size() != b.interface.size() || a.body.size() != b.body.size())
    return false;
  return canonical_key(a) == canonical_key(b);
}

}  // namespace icalc
