#include "densat/ccs.hpp"

#include <algorithm>
#include <cstdint>

namespace densat {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

enum : std::int8_t { kUnknown = -1, kOut = 0, kIn = 1 };

// Backtracking over the members of csf(seed), deciding each one in or out.
// After every decision the closure rules are propagated to a fixpoint in
// both directions, so a clash is found as soon as it is forced.
class Enumerator {
 public:
  Enumerator(const FormulaSet& seed, const CcsVisitor& visit)
      : seed_(seed), universe_(csf(seed).items()), visit_(visit) {
    const std::size_t n = universe_.size();
    links_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Formula& f = universe_[i];
      Links& l = links_[i];
      if (f.is_and()) {
        l.a = index_of(f.left());
        l.b = index_of(f.right());
      } else if (f.is_not()) {
        const Formula& g = f.child();
        l.a = index_of(g);
        if (g.is_and()) {
          l.b = index_of(Formula::negation(g.left()));
          l.c = index_of(Formula::negation(g.right()));
        } else if (g.is_not()) {
          l.b = index_of(g.child());
        }
      }
    }
  }

  bool run() {
    std::vector<std::int8_t> state(universe_.size(), kUnknown);
    for (const auto& f : seed_) state[index_of(f)] = kIn;
    if (!propagate(state)) return true;
    return branch(state);
  }

 private:
  struct Links {
    std::size_t a = kNone, b = kNone, c = kNone;
  };

  std::size_t index_of(const Formula& f) const {
    auto it = std::lower_bound(universe_.begin(), universe_.end(), f);
    return (it != universe_.end() && *it == f) ? static_cast<std::size_t>(it - universe_.begin()) : kNone;
  }

  // Sets state[i] to v; returns false on a clash.
  static bool force(std::vector<std::int8_t>& state, std::size_t i, std::int8_t v, bool& changed) {
    if (state[i] == v) return true;
    if (state[i] != kUnknown) return false;
    state[i] = v;
    changed = true;
    return true;
  }

  bool propagate(std::vector<std::int8_t>& state) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < universe_.size(); ++i) {
        const Formula& f = universe_[i];
        const Links& l = links_[i];
        const std::int8_t s = state[i];
        switch (f.kind()) {
          case Kind::Falsum:
            if (!force(state, i, kOut, changed)) return false;
            break;
          case Kind::And:
            if (s == kIn) {
              if (!force(state, l.a, kIn, changed) || !force(state, l.b, kIn, changed)) return false;
            } else if (s == kUnknown && (state[l.a] == kOut || state[l.b] == kOut)) {
              force(state, i, kOut, changed);
            }
            break;
          case Kind::Not: {
            // a negation and its body never coexist
            if (s == kIn && !force(state, l.a, kOut, changed)) return false;
            if (state[l.a] == kIn && !force(state, i, kOut, changed)) return false;
            const Formula& g = f.child();
            if (g.is_not()) {
              if (state[i] == kIn && !force(state, l.b, kIn, changed)) return false;
              if (state[i] == kUnknown && state[l.b] == kOut) force(state, i, kOut, changed);
            } else if (g.is_and()) {
              const std::int8_t nl = state[l.b], nr = state[l.c];
              if (state[i] == kIn) {
                if (nl == kOut && nr == kOut) return false;
                if (nl == kOut && !force(state, l.c, kIn, changed)) return false;
                if (nr == kOut && !force(state, l.b, kIn, changed)) return false;
              } else if (state[i] == kUnknown && nl == kOut && nr == kOut) {
                force(state, i, kOut, changed);
              }
            }
            break;
          }
          default:
            break;
        }
      }
    }
    return true;
  }

  bool branch(std::vector<std::int8_t>& state) const {
    auto it = std::find(state.begin(), state.end(), kUnknown);
    if (it == state.end()) return emit(state);
    const std::size_t i = static_cast<std::size_t>(it - state.begin());
    for (std::int8_t v : {kOut, kIn}) {
      std::vector<std::int8_t> next = state;
      next[i] = v;
      if (propagate(next) && !branch(next)) return false;
    }
    return true;
  }

  bool emit(const std::vector<std::int8_t>& state) const {
    std::vector<Formula> members;
    for (std::size_t i = 0; i < universe_.size(); ++i) {
      if (state[i] == kIn) members.push_back(universe_[i]);
    }
    return visit_(Ccs{FormulaSet(std::move(members)), seed_});
  }

  const FormulaSet& seed_;
  std::vector<Formula> universe_;
  std::vector<Links> links_;
  const CcsVisitor& visit_;
};

}  // namespace

bool for_each_ccs(const FormulaSet& seed, const CcsVisitor& visit) { return Enumerator(seed, visit).run(); }

std::vector<Ccs> enumerate_ccs(const FormulaSet& seed) {
  std::vector<Ccs> out;
  for_each_ccs(seed, [&](const Ccs& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

bool is_saturated(const FormulaSet& w) {
  for (const auto& f : w) {
    switch (f.kind()) {
      case Kind::Falsum:
        return false;
      case Kind::And:
        if (!w.contains(f.left()) || !w.contains(f.right())) return false;
        break;
      case Kind::Not: {
        const Formula& g = f.child();
        if (w.contains(g)) return false;
        if (g.is_and() && !w.contains(Formula::negation(g.left())) &&
            !w.contains(Formula::negation(g.right())))
          return false;
        if (g.is_not() && !w.contains(g.child())) return false;
        break;
      }
      default:
        break;
    }
  }
  return true;
}

bool is_ccs_of(const FormulaSet& candidate, const FormulaSet& seed) {
  return seed.subset_of(candidate) && candidate.subset_of(csf(seed)) && is_saturated(candidate);
}

}  // namespace densat
