#include "densat/kde.hpp"

#include <algorithm>
#include <unordered_map>

namespace densat {

namespace {

constexpr std::size_t kUnused = static_cast<std::size_t>(-1);

using Bits = boost::dynamic_bitset<>;

}  // namespace

std::size_t SubformulaIndex::free_bits() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const Formula& f) { return f.is_atom() || f.is_box(); }));
}

SubformulaIndex build_index(const Formula& phi) {
  if (phi.uses_b()) throw std::invalid_argument("the fixpoint procedure takes unimodal formulas");
  SubformulaIndex ix;
  std::unordered_map<Formula, std::size_t, FormulaHash> seen;
  auto visit = [&](auto&& self, const Formula& f) -> std::size_t {
    if (auto it = seen.find(f); it != seen.end()) return it->second;
    std::size_t a = kUnused, b = kUnused;
    switch (f.kind()) {
      case Kind::Not:
      case Kind::Box:
        a = self(self, f.child());
        break;
      case Kind::And:
        a = self(self, f.left());
        b = self(self, f.right());
        break;
      default:
        break;
    }
    const std::size_t i = ix.entries.size();
    ix.entries.push_back(f);
    ix.first.push_back(a);
    ix.second.push_back(b);
    seen.emplace(f, i);
    return i;
  };
  visit(visit, phi);
  return ix;
}

std::size_t ClipFrame::edge_count() const {
  std::size_t n = 0;
  for (const auto& row : succ) n += row.count();
  return n;
}

std::vector<std::size_t> ClipFrame::tips() const {
  std::vector<std::size_t> out;
  for (auto i = alive.find_first(); i != Bits::npos; i = alive.find_next(i)) out.push_back(i);
  return out;
}

ClipFrame initial_clip(const SubformulaIndex& ix, const KdeOptions& opts) {
  const std::size_t n = ix.n();
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < n; ++i) {
    if (ix.entries[i].is_atom() || ix.entries[i].is_box()) free.push_back(i);
  }
  if (free.size() > opts.max_free_bits) {
    throw FeasibilityError("formula has " + std::to_string(free.size()) + " atom/box positions, limit is " +
                           std::to_string(opts.max_free_bits));
  }

  auto tips = std::make_shared<std::vector<Tip>>();
  const std::size_t count = std::size_t{1} << free.size();
  tips->reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    Tip t(n, false);
    std::size_t next_free = 0;
    for (std::size_t i = 0; i < n; ++i) {
      switch (ix.entries[i].kind()) {
        case Kind::Atom:
        case Kind::Box:
          t[i] = (mask >> next_free++) & 1;
          break;
        case Kind::Falsum:
          t[i] = false;
          break;
        case Kind::Not:
          t[i] = !t[ix.first[i]];
          break;
        case Kind::And:
          t[i] = t[ix.first[i]] && t[ix.second[i]];
          break;
      }
    }
    tips->push_back(std::move(t));
  }
  std::sort(tips->begin(), tips->end());

  // a -> b is allowed iff every true box of a has a true body in b
  const std::size_t m = tips->size();
  std::vector<Bits> need(m, Bits(n)), have(m, Bits(n));
  for (std::size_t s = 0; s < m; ++s) {
    const Tip& t = (*tips)[s];
    for (std::size_t i = 0; i < n; ++i) {
      if (t[i]) have[s].set(i);
      if (t[i] && ix.entries[i].is_box()) need[s].set(ix.first[i]);
    }
  }

  ClipFrame c;
  c.universe = tips;
  c.alive = Bits(m);
  c.alive.set();
  c.succ.assign(m, Bits(m));
  for (std::size_t s = 0; s < m; ++s) {
    for (std::size_t t = 0; t < m; ++t) {
      if (need[s].is_subset_of(have[t])) c.succ[s].set(t);
    }
  }
  return c;
}

ClipFrame sigma_step(const ClipFrame& c, const SubformulaIndex& ix) {
  const std::size_t m = c.universe->size();
  const std::size_t n = ix.n();

  // zero[i]: live tips whose bit i is 0
  std::vector<std::size_t> boxes;
  for (std::size_t i = 0; i < n; ++i) {
    if (ix.entries[i].is_box()) boxes.push_back(i);
  }
  std::unordered_map<std::size_t, Bits> zero;
  for (std::size_t i : boxes) {
    const std::size_t j = ix.first[i];
    if (zero.count(j)) continue;
    Bits z(m);
    for (std::size_t t = 0; t < m; ++t) {
      if (c.alive.test(t) && !c.tip(t)[j]) z.set(t);
    }
    zero.emplace(j, std::move(z));
  }

  ClipFrame out;
  out.universe = c.universe;
  out.alive = Bits(m);
  out.succ.assign(m, Bits(m));
  for (std::size_t s = 0; s < m; ++s) {
    if (!c.alive.test(s)) continue;
    const Tip& t = c.tip(s);
    bool keep = true;
    for (std::size_t i : boxes) {
      if (!t[i] && !c.succ[s].intersects(zero.at(ix.first[i]))) {
        keep = false;
        break;
      }
    }
    if (keep) out.alive.set(s);
  }

  for (std::size_t s = 0; s < m; ++s) {
    if (!out.alive.test(s)) continue;
    Bits two(m);
    const Bits& row = c.succ[s];
    for (auto u = row.find_first(); u != Bits::npos; u = row.find_next(u)) two |= c.succ[u];
    out.succ[s] = row & two & out.alive;
  }
  return out;
}

Fixpoint fixpoint(const Formula& phi, const KdeOptions& opts) {
  Fixpoint fp;
  fp.index = build_index(phi);
  fp.clip = initial_clip(fp.index, opts);
  fp.initial_tips = fp.clip.tip_count();
  fp.initial_edges = fp.clip.edge_count();
  while (true) {
    ClipFrame next = sigma_step(fp.clip, fp.index);
    if (next == fp.clip) break;
    fp.clip = std::move(next);
    ++fp.iterations;
  }
  if (fp.clip.alive.none()) throw std::logic_error("fixpoint clip is empty");
  return fp;
}

KripkeModel clip_model(const SubformulaIndex& ix, const ClipFrame& clip, World root) {
  const auto live = clip.tips();
  std::vector<std::size_t> world_of(clip.universe->size(), kUnused);
  for (std::size_t w = 0; w < live.size(); ++w) world_of[live[w]] = w;

  KripkeModel m;
  m.bimodal = false;
  m.world_count = live.size();
  m.root = root;
  for (std::size_t w = 0; w < live.size(); ++w) {
    const Bits& row = clip.succ[live[w]];
    for (auto t = row.find_first(); t != Bits::npos; t = row.find_next(t)) m.ra.emplace_back(w, world_of[t]);
  }
  for (std::size_t i = 0; i < ix.n(); ++i) {
    if (!ix.entries[i].is_atom()) continue;
    auto& ws = m.valuation[ix.entries[i].name()];
    for (std::size_t w = 0; w < live.size(); ++w) {
      if (clip.tip(live[w])[i]) ws.push_back(w);
    }
  }
  m.normalize();
  m.validate();
  return m;
}

namespace {

// First live world whose target bit equals `bit`.
std::optional<World> first_with_target(const Fixpoint& fp, bool bit) {
  const auto live = fp.clip.tips();
  const std::size_t last = fp.index.n() - 1;
  for (std::size_t w = 0; w < live.size(); ++w) {
    if (fp.clip.tip(live[w])[last] == bit) return w;
  }
  return std::nullopt;
}

}  // namespace

KdeAnswer kde_decide_valid(const Formula& phi, const KdeOptions& opts) {
  Fixpoint fp = fixpoint(phi, opts);
  KdeAnswer a;
  a.iterations = fp.iterations;
  auto bad = first_with_target(fp, false);
  a.yes = !bad;
  if (bad) a.model = clip_model(fp.index, fp.clip, *bad);
  return a;
}

KdeAnswer kde_decide_sat(const Formula& phi, const KdeOptions& opts) {
  Fixpoint fp = fixpoint(phi, opts);
  KdeAnswer a;
  a.iterations = fp.iterations;
  auto good = first_with_target(fp, true);
  a.yes = good.has_value();
  if (good) a.model = clip_model(fp.index, fp.clip, *good);
  return a;
}

bool kde_valid(const Formula& phi, const KdeOptions& opts) { return kde_decide_valid(phi, opts).yes; }

}  // namespace densat
