#include "densat/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

namespace densat {

// ---------------------------------------------------------------------------
// KripkeModel

namespace {

void sort_unique(std::vector<Edge>& edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

}  // namespace

void KripkeModel::normalize() {
  sort_unique(ra);
  sort_unique(rb);
  for (auto& [atom, worlds] : valuation) {
    std::sort(worlds.begin(), worlds.end());
    worlds.erase(std::unique(worlds.begin(), worlds.end()), worlds.end());
  }
}

void KripkeModel::validate() const {
  if (world_count == 0) throw std::invalid_argument("model has no worlds");
  if (root >= world_count) throw std::invalid_argument("root outside the model");
  for (const auto* rel : {&ra, &rb}) {
    for (const auto& [s, t] : *rel) {
      if (s >= world_count || t >= world_count) throw std::invalid_argument("edge outside the model");
    }
  }
  if (!bimodal && !rb.empty()) throw std::invalid_argument("unimodal model with b-edges");
  for (const auto& [atom, worlds] : valuation) {
    for (World w : worlds) {
      if (w >= world_count) throw std::invalid_argument("valuation of " + atom + " outside the model");
    }
  }
}

std::span<const Edge> KripkeModel::successors(Modality m, World w) const {
  const auto& rel = m == Modality::A ? ra : rb;
  auto lo = std::lower_bound(rel.begin(), rel.end(), Edge{w, 0});
  auto hi = std::lower_bound(lo, rel.end(), Edge{w + 1, 0});
  return {lo, hi};
}

bool KripkeModel::holds(const std::string& atom, World w) const {
  auto it = valuation.find(atom);
  return it != valuation.end() && std::binary_search(it->second.begin(), it->second.end(), w);
}

nlohmann::ordered_json to_json(const KripkeModel& m) {
  nlohmann::ordered_json j;
  std::vector<World> worlds(m.world_count);
  for (World w = 0; w < m.world_count; ++w) worlds[w] = w;
  auto edges = [](const std::vector<Edge>& rel) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [s, t] : rel) arr.push_back({s, t});
    return arr;
  };
  j["worlds"] = worlds;
  j["ra"] = edges(m.ra);
  if (m.bimodal) j["rb"] = edges(m.rb);
  j["val"] = nlohmann::ordered_json::object();
  for (const auto& [atom, ws] : m.valuation) j["val"][atom] = ws;
  j["root"] = m.root;
  return j;
}

KripkeModel model_from_json(const nlohmann::ordered_json& j) {
  KripkeModel m;
  const auto& worlds = j.at("worlds");
  m.world_count = worlds.size();
  for (std::size_t i = 0; i < worlds.size(); ++i) {
    if (worlds[i].get<World>() != i) throw std::invalid_argument("worlds must be 0..n-1 in order");
  }
  for (const auto& e : j.at("ra")) m.ra.emplace_back(e.at(0).get<World>(), e.at(1).get<World>());
  m.bimodal = j.contains("rb");
  if (m.bimodal) {
    for (const auto& e : j.at("rb")) m.rb.emplace_back(e.at(0).get<World>(), e.at(1).get<World>());
  }
  for (const auto& [atom, ws] : j.at("val").items()) m.valuation[atom] = ws.get<std::vector<World>>();
  m.root = j.at("root").get<World>();
  m.normalize();
  m.validate();
  return m;
}

// ---------------------------------------------------------------------------
// Satisfaction

namespace {

bool sat_at(const KripkeModel& m, World w, const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
      return m.holds(f.name(), w);
    case Kind::Falsum:
      return false;
    case Kind::Not:
      return !sat_at(m, w, f.child());
    case Kind::And:
      return sat_at(m, w, f.left()) && sat_at(m, w, f.right());
    case Kind::Box:
      for (const auto& e : m.successors(f.modality(), w)) {
        if (!sat_at(m, e.second, f.child())) return false;
      }
      return true;
  }
  return false;
}

}  // namespace

bool model_check(const KripkeModel& m, World world, const Formula& f) {
  if (world >= m.world_count) throw std::out_of_range("unknown world " + std::to_string(world));
  return sat_at(m, world, f);
}

bool model_check(const KripkeModel& m, World world, const FormulaSet& s) {
  return std::all_of(s.begin(), s.end(), [&](const Formula& f) { return model_check(m, world, f); });
}

std::vector<bool> truth_set(const KripkeModel& m, const Formula& f) {
  const std::size_t n = m.world_count;
  switch (f.kind()) {
    case Kind::Atom: {
      std::vector<bool> out(n, false);
      if (auto it = m.valuation.find(f.name()); it != m.valuation.end())
        for (World w : it->second) out[w] = true;
      return out;
    }
    case Kind::Falsum:
      return std::vector<bool>(n, false);
    case Kind::Not: {
      auto out = truth_set(m, f.child());
      out.flip();
      return out;
    }
    case Kind::And: {
      auto l = truth_set(m, f.left());
      auto r = truth_set(m, f.right());
      for (std::size_t i = 0; i < n; ++i) l[i] = l[i] && r[i];
      return l;
    }
    case Kind::Box: {
      auto body = truth_set(m, f.child());
      std::vector<bool> out(n, true);
      for (const auto& [s, t] : f.modality() == Modality::A ? m.ra : m.rb) {
        if (!body[t]) out[s] = false;
      }
      return out;
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Frame classes

namespace {

bool has_edge(const std::vector<Edge>& rel, World s, World t) {
  return std::binary_search(rel.begin(), rel.end(), Edge{s, t});
}

}  // namespace

bool is_dense(const KripkeModel& m) {
  for (const auto& [s, t] : m.ra) {
    bool found = false;
    for (World u = 0; u < m.world_count && !found; ++u) found = has_edge(m.ra, s, u) && has_edge(m.ra, u, t);
    if (!found) return false;
  }
  return true;
}

bool is_weakly_dense(const KripkeModel& m) {
  for (const auto& [s, t] : m.ra) {
    bool found = false;
    for (World u = 0; u < m.world_count && !found; ++u) found = has_edge(m.ra, s, u) && has_edge(m.rb, u, t);
    if (!found) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Bounded search. Worlds fit in a 32-bit mask, relations in a 64-bit mask
// indexed by s*n+t.

namespace {

using Mask = std::uint32_t;

struct Frame {
  std::size_t n;
  std::vector<Mask> succ_a, succ_b;
};

Frame decode_frame(std::size_t n, std::uint64_t a_bits, std::uint64_t b_bits) {
  Frame fr{n, std::vector<Mask>(n, 0), std::vector<Mask>(n, 0)};
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      if (a_bits >> (s * n + t) & 1) fr.succ_a[s] |= Mask{1} << t;
      if (b_bits >> (s * n + t) & 1) fr.succ_b[s] |= Mask{1} << t;
    }
  }
  return fr;
}

bool frame_in_class(const Frame& fr, FrameClass cls) {
  if (cls == FrameClass::All) return true;
  const auto& mid = cls == FrameClass::Dense ? fr.succ_a : fr.succ_b;
  for (std::size_t s = 0; s < fr.n; ++s) {
    for (std::size_t t = 0; t < fr.n; ++t) {
      if (!(fr.succ_a[s] >> t & 1)) continue;
      bool found = false;
      for (std::size_t u = 0; u < fr.n && !found; ++u) found = (fr.succ_a[s] >> u & 1) && (mid[u] >> t & 1);
      if (!found) return false;
    }
  }
  return true;
}

Mask eval_mask(const Formula& f, const Frame& fr, const std::map<std::string, Mask>& val, Mask all) {
  switch (f.kind()) {
    case Kind::Atom:
      return val.at(f.name());
    case Kind::Falsum:
      return 0;
    case Kind::Not:
      return all & ~eval_mask(f.child(), fr, val, all);
    case Kind::And:
      return eval_mask(f.left(), fr, val, all) & eval_mask(f.right(), fr, val, all);
    case Kind::Box: {
      Mask body = eval_mask(f.child(), fr, val, all);
      const auto& succ = f.modality() == Modality::A ? fr.succ_a : fr.succ_b;
      Mask out = 0;
      for (std::size_t s = 0; s < fr.n; ++s)
        if ((succ[s] & ~body) == 0) out |= Mask{1} << s;
      return out;
    }
  }
  return 0;
}

}  // namespace

std::optional<KripkeModel> bounded_search(const FormulaSet& u, FrameClass cls, const SearchLimits& limits) {
  std::set<std::string> atom_set;
  for (const auto& f : u) f.collect_atoms(atom_set);
  const std::vector<std::string> atoms(atom_set.begin(), atom_set.end());
  if (atoms.size() > limits.max_atoms)
    throw SearchBoundError("formula set has " + std::to_string(atoms.size()) + " atoms, limit is " +
                           std::to_string(limits.max_atoms));
  const bool use_b = u.uses_b() || cls == FrameClass::WeaklyDense;

  std::uint64_t budget = 0;
  for (std::size_t n = 1; n <= limits.max_worlds; ++n) {
    std::size_t bits = n * n * (use_b ? 2 : 1) + n * atoms.size();
    if (n > 5 || bits >= 63 || (budget += std::uint64_t{1} << bits) > limits.max_candidates)
      throw SearchBoundError("search space too large for " + std::to_string(limits.max_worlds) + " worlds");
  }

  for (std::size_t n = 1; n <= limits.max_worlds; ++n) {
    const Mask all = static_cast<Mask>((std::uint64_t{1} << n) - 1);
    const std::uint64_t rel_count = std::uint64_t{1} << (n * n);
    const std::uint64_t b_count = use_b ? rel_count : 1;
    const std::uint64_t val_count = std::uint64_t{1} << (n * atoms.size());
    for (std::uint64_t a_bits = 0; a_bits < rel_count; ++a_bits) {
      for (std::uint64_t b_bits = 0; b_bits < b_count; ++b_bits) {
        const Frame fr = decode_frame(n, a_bits, b_bits);
        if (!frame_in_class(fr, cls)) continue;
        for (std::uint64_t v_bits = 0; v_bits < val_count; ++v_bits) {
          std::map<std::string, Mask> val;
          for (std::size_t i = 0; i < atoms.size(); ++i) val[atoms[i]] = static_cast<Mask>((v_bits >> (i * n)) & all);
          Mask roots = all;
          for (const auto& f : u) {
            roots &= eval_mask(f, fr, val, all);
            if (!roots) break;
          }
          if (!roots) continue;

          KripkeModel m;
          m.world_count = n;
          m.bimodal = use_b;
          for (std::size_t s = 0; s < n; ++s) {
            for (std::size_t t = 0; t < n; ++t) {
              if (fr.succ_a[s] >> t & 1) m.ra.emplace_back(s, t);
              if (fr.succ_b[s] >> t & 1) m.rb.emplace_back(s, t);
            }
          }
          for (const auto& [atom, mask] : val) {
            auto& ws = m.valuation[atom];
            for (std::size_t w = 0; w < n; ++w)
              if (mask >> w & 1) ws.push_back(w);
          }
          while (!(roots >> m.root & 1)) ++m.root;
          return m;
        }
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// K tableau: propositional expansion into a set of literals (atoms, boxes and
// their negations), then one successor per negated box.

namespace {

class KTableau {
 public:
  bool satisfiable(std::vector<Formula> pending) { return expand(std::move(pending), {}); }

 private:
  static Formula complement(const Formula& f) { return f.is_not() ? f.child() : Formula::negation(f); }

  bool expand(std::vector<Formula> pending, std::set<Formula> literals) {
    while (!pending.empty()) {
      Formula f = pending.back();
      pending.pop_back();
      if (f.is_falsum()) return false;
      if (f.is_and()) {
        pending.push_back(f.left());
        pending.push_back(f.right());
        continue;
      }
      if (f.is_not()) {
        const Formula& g = f.child();
        if (g.is_falsum()) continue;
        if (g.is_not()) {
          pending.push_back(g.child());
          continue;
        }
        if (g.is_and()) {
          auto left = pending;
          left.push_back(Formula::negation(g.left()));
          if (expand(std::move(left), literals)) return true;
          pending.push_back(Formula::negation(g.right()));
          continue;
        }
      }
      if (literals.count(complement(f))) return false;
      literals.insert(f);
    }
    return modal_successors(literals);
  }

  bool modal_successors(const std::set<Formula>& literals) {
    for (Modality m : {Modality::A, Modality::B}) {
      std::vector<Formula> boxed;
      for (const auto& f : literals)
        if (f.is_box(m)) boxed.push_back(f.child());
      for (const auto& f : literals) {
        if (!f.is_not() || !f.child().is_box(m)) continue;
        std::vector<Formula> next = boxed;
        next.push_back(Formula::negation(f.child().child()));
        if (!satisfiable(std::move(next))) return false;
      }
    }
    return true;
  }
};

}  // namespace

bool k_satisfiable(const FormulaSet& u) { return KTableau().satisfiable(u.items()); }

bool k_valid(const Formula& f) { return !k_satisfiable(FormulaSet{Formula::negation(f)}); }

}  // namespace densat
