#include <deque>
#include <random>
#include <unordered_set>

#include "icalc/core.hpp"
#include "icalc/lab.hpp"

namespace icalc {

namespace {

// std::uniform_int_distribution and std::shuffle differ between standard
// libraries; these keep seeded output identical everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(gen_() % n); }
  bool chance(std::size_t num, std::size_t den) { return below(den) < num; }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 gen_;
};

std::uint64_t derive(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (i + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Generator {
 public:
  Generator(const System& s, std::uint64_t seed) : s_(s), rng_(seed) {
    for (const auto& [sym, ar] : s.signature) agents_.emplace_back(sym, ar);
  }

  Configuration run(std::size_t size) {
    Configuration c;
    std::size_t n_eq = size == 0 ? 0 : 1 + rng_.below(size);
    std::size_t n_iface = size == 0 ? rng_.below(2) : rng_.below(3);
    for (std::size_t i = 0; i < n_iface; ++i)
      c.interface.push_back(rng_.chance(1, 4) ? term(1) : hole());
    for (std::size_t i = 0; i < n_eq; ++i) c.body.push_back(equation());
    wire(c);
    // Firing a pair or two leaves contractum-shaped wiring behind, which is
    // where predecessors become ambiguous.
    if (rng_.chance(1, 2)) fire(c, 1 + rng_.below(2), size);
    return c;
  }

 private:
  Term hole() { return Term::make_name("%h" + std::to_string(holes_++)); }

  Term agent(const std::string& sym, std::size_t depth) {
    std::vector<Term> args;
    for (int i = 0; i < s_.arity_of(sym); ++i) args.push_back(term(depth));
    return Term::make_agent(sym, std::move(args));
  }

  Term term(std::size_t depth) {
    if (depth == 0 || agents_.empty() || rng_.chance(3, 10)) return hole();
    const auto& [sym, _] = agents_[rng_.below(agents_.size())];
    return agent(sym, depth - 1);
  }

  Equation equation() {
    if (!s_.rules.empty() && rng_.chance(1, 2)) {
      const Rule& r = s_.rules[rng_.below(s_.rules.size())];
      Equation e{agent(r.left, 1), agent(r.right, 1)};
      return rng_.chance(1, 2) ? e.flipped() : e;
    }
    return {term(2), term(2)};
  }

  void wire(Configuration& c) {
    std::vector<std::size_t> ids(holes_);
    for (std::size_t i = 0; i < holes_; ++i) ids[i] = i;
    rng_.shuffle(ids);
    std::size_t n_free = holes_ % 2;
    if (holes_ >= 4 && rng_.chance(1, 3)) n_free += 2;
    std::unordered_map<Name, Name> names;
    for (std::size_t k = 0; k < ids.size(); ++k) {
      Name n = k < n_free ? "f" + std::to_string(k) : "n" + std::to_string((k - n_free) / 2);
      names.emplace("%h" + std::to_string(ids[k]), std::move(n));
    }
    for (auto& t : c.interface) t = rename(t, names);
    for (auto& e : c.body) e = rename(e, names);
  }

  void fire(Configuration& c, std::size_t times, std::size_t size) {
    NameSupply fresh;
    for (std::size_t k = 0; k < times; ++k) {
      auto active = active_pairs(s_, c);
      if (active.empty()) break;
      std::size_t eq = active[rng_.below(active.size())];
      const Equation& e = c.body[eq];
      auto ref = s_.find_rule(e.lhs.symbol, e.rhs.symbol);
      if (c.body.size() - 1 + s_.rules[ref->index].arity() > size) break;
      c = interact(s_, c, eq, fresh);
    }
    // Generated names become ordinary ones, continuing after n<k>.
    std::unordered_map<Name, Name> names;
    std::size_t next = holes_;
    auto visit = [&](const Term& t) {
      std::vector<Name> ns;
      collect_names(t, ns);
      for (const auto& n : ns)
        if (is_machine_name(n) && !names.count(n)) names.emplace(n, "n" + std::to_string(next++));
    };
    for (const auto& t : c.interface) visit(t);
    for (const auto& e : c.body) {
      visit(e.lhs);
      visit(e.rhs);
    }
    for (auto& t : c.interface) t = rename(t, names);
    for (auto& e : c.body) e = rename(e, names);
  }

  const System& s_;
  Rng rng_;
  std::vector<std::pair<std::string, int>> agents_;
  std::size_t holes_ = 0;
};

}  // namespace

Configuration random_config(const System& s, std::size_t size, std::uint64_t seed) {
  return Generator(s, seed).run(size);
}

std::vector<Peak> random_peaks(const System& s, std::size_t count, std::size_t size,
                               std::uint64_t seed) {
  std::vector<Peak> out;
  for (std::uint64_t i = 0; out.size() < count && i < 100 * (count + 1); ++i) {
    std::uint64_t sub = derive(seed, i);
    Configuration c1 = random_config(s, size, sub);
    auto active = active_pairs(s, c1);
    if (active.empty()) continue;
    Rng rng(sub ^ 0x5bd1e995ULL);
    NameSupply fresh;
    Configuration c = canonicalize(interact(s, c1, active[rng.below(active.size())], fresh));
    std::string k1 = canonical_key(c1);
    for (auto& e : interaction_expansions(s, c)) {
      if (e.key == k1) continue;
      out.push_back({c1, std::move(e.config), c});
      if (out.size() == count) break;
    }
  }
  return out;
}

SearchReport counterexample_search(const System& s, std::size_t size, std::size_t samples,
                                   std::size_t depth, std::uint64_t seed) {
  SearchReport rep;
  rep.samples = samples;
  rep.size = size;
  rep.depth = depth;
  rep.seed = seed;
  for (std::size_t i = 0; i < samples; ++i) {
    Configuration c = random_config(s, size, derive(seed, i));
    DiamondReport one = diamond_check(s, c, DiamondMode::one);
    rep.one_pairs += one.pairs;
    for (auto& f : one.failures) rep.one_failures.emplace_back(c, std::move(f));
    DiamondReport plus = diamond_check(s, c, DiamondMode::plus, depth);
    rep.plus_pairs += plus.pairs;
    for (auto& f : plus.failures) rep.plus_failures.emplace_back(c, std::move(f));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Tiling

namespace {

using Seq = std::vector<Configuration>;  // forward path, front ->* back

struct Tile {
  Configuration top;
  Seq left;   // top ->* left-start
  Seq right;  // top ->* right-start
};

Seq configs_of(const Trace& t) {
  Seq out{t.initial};
  for (const auto& st : t.steps) out.push_back(st.result);
  return out;
}

Seq concat(Seq a, const Seq& b) {
  // a ends where b starts (up to congruence)
  a.insert(a.end(), b.begin() + 1, b.end());
  return a;
}

class Tiler {
 public:
  Tiler(const System& s, std::size_t depth, std::size_t cap) : s_(s), depth_(depth), cap_(cap) {}

  // l and r are forward paths ending in congruent configurations.
  std::optional<Tile> join(const Seq& l, const Seq& r) {
    if (l.size() == 1) return Tile{r.front(), r, {r.front()}};
    if (r.size() == 1) return Tile{l.front(), {l.front()}, l};
    const Configuration& x = l[l.size() - 2];
    const Configuration& y = r[r.size() - 2];
    Seq l0(l.begin(), l.end() - 1), r0(r.begin(), r.end() - 1);
    if (congruent(x, y)) return join(l0, r0);
    if (cap_ == 0) return std::nullopt;
    --cap_;

    JoinResult jr = common_predecessor(s_, x, y, l.back());
    if (!jr.joined && one_step_interaction(x, l.back()) && one_step_interaction(y, l.back()))
      jr = plus_join(s_, x, y, l.back(), depth_);
    if (!jr.joined) return std::nullopt;
    Seq p = configs_of(jr.to_first), q = configs_of(jr.to_second);

    auto a = join(l0, p);  // a.top ->* l.front(), a.top ->* e
    if (!a) return std::nullopt;
    auto b = join(q, r0);  // b.top ->* e, b.top ->* r.front()
    if (!b) return std::nullopt;
    auto c = join(a->right, b->left);  // c.top ->* a.top, c.top ->* b.top
    if (!c) return std::nullopt;
    return Tile{c->top, concat(c->left, a->left), concat(c->right, b->right)};
  }

 private:
  bool one_step_interaction(const Configuration& from, const Configuration& to) {
    NameSupply fresh;
    std::string key = canonical_key(to);
    for (std::size_t i : active_pairs(s_, from))
      if (canonical_key(interact(s_, from, i, fresh)) == key) return true;
    return false;
  }

  const System& s_;
  std::size_t depth_;
  std::size_t cap_;
};

}  // namespace

std::optional<Configuration> tile_join(const System& s, const std::vector<Configuration>& left,
                                       const std::vector<Configuration>& right,
                                       std::size_t depth, std::size_t cap) {
  if (left.empty() || right.empty() || !congruent(left.back(), right.back()))
    throw PreconditionError("tile_join: both paths must end in the same configuration");
  auto t = Tiler(s, depth, cap).join(left, right);
  if (!t) return std::nullopt;
  return t->top;
}

bool reaches(const System& s, const Configuration& from, const Configuration& target,
             std::size_t max_steps) {
  std::string goal = canonical_key(target);
  std::unordered_set<std::string> seen{canonical_key(from)};
  std::deque<std::pair<Configuration, std::size_t>> queue{{from, 0}};
  while (!queue.empty()) {
    auto [c, d] = std::move(queue.front());
    queue.pop_front();
    if (canonical_key(c) == goal) return true;
    if (d == max_steps) continue;
    NameSupply fresh;
    for (auto& st : one_step_reducts(s, c, fresh))
      if (seen.insert(canonical_key(st.result)).second) queue.emplace_back(std::move(st.result), d + 1);
  }
  return false;
}

}  // namespace icalc
