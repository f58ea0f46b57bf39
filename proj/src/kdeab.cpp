#include "densat/kdeab.hpp"

#include <deque>

namespace densat {

std::size_t counter_exponent(const FormulaSet& w) { return csf(sf(w)).size() * (w.degree() + 1); }

std::size_t query_counter_exponent(const FormulaSet& u) {
  std::size_t best = 0;
  for_each_ccs(u, [&](const Ccs& c) {
    if (c.members.degree() > 0) best = std::max(best, counter_exponent(c.members));
    return true;
  });
  return best;
}

nlohmann::ordered_json to_json(const SolverStats& s) {
  return {{"ccs_enumerated", s.ccs_enumerated},
          {"windows_explored", s.windows_explored},
          {"max_depth", s.max_depth},
          {"continuations_checked", s.continuations_checked},
          {"continuation_violations", s.continuation_violations}};
}

Solver::Solver(SolverOptions opts) : opts_(opts) {}

SatResult Solver::sat_set(const FormulaSet& u) {
  SatResult res;
  std::optional<FormulaSet> root;
  for_each_ccs(u, [&](const Ccs& c) {
    ++stats_.ccs_enumerated;
    if (!sat_ccs_at(c.members, 0)) return true;
    root = c.members;
    return false;
  });
  res.sat = root.has_value();
  if (root && !lasso_missing_) {
    KripkeModel m = extract_model(*root);
    if (!is_weakly_dense(m)) throw InternalError("extracted model is not weakly dense");
    if (!model_check(m, m.root, u)) throw InternalError("extracted model does not satisfy the query");
    res.witness = std::move(m);
  }
  res.stats = stats_;
  return res;
}

bool Solver::sat_ccs(const FormulaSet& w) { return sat_ccs_at(w, 0); }

bool Solver::good_head(const FormulaSet& head, std::size_t depth) { return sat_ccs_at(head, depth); }

bool Solver::sat_ccs_at(const FormulaSet& w, std::size_t depth) {
  stats_.max_depth = std::max<std::uint64_t>(stats_.max_depth, depth);
  if (opts_.memo) {
    if (auto it = memo_.find(w); it != memo_.end()) return it->second;
  }

  TraceEntry entry;
  bool ok = true;
  const FormulaSet b_inv = box_inverse(w, Modality::B);

  for (const Formula& f : w) {
    if (!ok) break;
    if (!(f.is_not() && f.child().is_box(Modality::B))) continue;
    FormulaSet seed = b_inv;
    seed.insert(Formula::negation(f.child().child()));
    std::optional<FormulaSet> child;
    for_each_ccs(seed, [&](const Ccs& c) {
      ++stats_.ccs_enumerated;
      if (!sat_ccs_at(c.members, depth + 1)) return true;
      child = c.members;
      return false;
    });
    if (child)
      entry.b_children.push_back(*child);
    else
      ok = false;
  }

  for (const Formula& f : w) {
    if (!ok) break;
    if (!(f.is_not() && f.child().is_box(Modality::A))) continue;
    const Formula body = Formula::negation(f.child().child());
    AnchorState& st = anchors_[w];
    std::optional<Lasso> lasso;
    bool found = false;
    for_each_initial_window(w, body, [&](const Window& t) {
      ++stats_.windows_explored;
      bool accepted = false;
      if (opts_.bound.mode == BoundMode::Lasso) {
        std::set<Parts> on_stack;
        accepted = chain_lasso(t, st, on_stack, depth);
      } else {
        accepted = chain_counter(t, st, depth);
      }
      if (!accepted) return true;
      found = true;
      lasso = lasso_from(t, st);
      return false;
    });
    if (!found) {
      ok = false;
    } else if (lasso) {
      entry.lassos.push_back(std::move(*lasso));
    } else {
      lasso_missing_ = true;
    }
  }

  if (ok) trace_[w] = std::move(entry);
  if (opts_.memo) memo_[w] = ok;
  return ok;
}

bool Solver::sat_window_chain(const Window& t) {
  AnchorState& st = anchors_[t.anchor];
  if (opts_.bound.mode == BoundMode::Lasso) {
    std::set<Parts> on_stack;
    return chain_lasso(t, st, on_stack, 0);
  }
  return chain_counter(t, st, 0);
}

void Solver::check_continuation(const Window& t, const Window& n) {
  ++stats_.continuations_checked;
  if (opts_.verify_continuations && !is_window(merge(t, n), t.anchor, t.seed_extra)) ++stats_.continuation_violations;
}

// Accepts iff a chain of windows with SAT heads starting at t reaches a
// window already on the chain.
bool Solver::chain_lasso(const Window& t, AnchorState& st, std::set<Parts>& on_stack, std::size_t depth) {
  if (on_stack.count(t.parts) || st.next.count(t.parts)) return true;
  if (st.dead.count(t.parts)) return false;
  if (!good_head(t.head(), depth + 1)) {
    st.dead.insert(t.parts);
    return false;
  }
  on_stack.insert(t.parts);
  bool accepted = false;
  for_each_continuation(t, [&](const Window& n) {
    ++stats_.windows_explored;
    check_continuation(t, n);
    if (!chain_lasso(n, st, on_stack, depth)) return true;
    st.next[t.parts] = n.parts;
    accepted = true;
    return false;
  });
  on_stack.erase(t.parts);
  if (!accepted) st.dead.insert(t.parts);
  return accepted;
}

// Layered form of the counted recursion: G_1 holds the reachable windows
// with SAT heads, G_{i+1} those of G_1 with a continuation in G_i. The
// chain is accepted iff t is in G_N.
bool Solver::chain_counter(const Window& t, AnchorState& st, std::size_t depth) {
  std::uint64_t n_value = 0;
  bool unbounded = false;
  if (opts_.bound.counter_override) {
    n_value = *opts_.bound.counter_override;
  } else {
    const std::size_t e = counter_exponent(t.anchor);
    if (e >= 63)
      unbounded = true;
    else
      n_value = std::uint64_t{1} << e;
  }
  if (!unbounded && n_value == 0) return true;

  std::map<Parts, std::size_t> id;
  std::vector<Window> nodes;
  std::vector<bool> good;
  std::vector<std::vector<std::size_t>> edges;
  std::deque<std::size_t> queue;
  auto add = [&](const Window& w) {
    auto [it, fresh] = id.emplace(w.parts, nodes.size());
    if (fresh) {
      nodes.push_back(w);
      good.push_back(false);
      edges.emplace_back();
      queue.push_back(it->second);
    }
    return it->second;
  };
  add(t);
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    good[i] = good_head(nodes[i].head(), depth + 1);
    if (!good[i]) continue;
    const Window cur = nodes[i];
    for_each_continuation(cur, [&](const Window& n) {
      ++stats_.windows_explored;
      check_continuation(cur, n);
      const std::size_t j = add(n);
      edges[i].push_back(j);
      return true;
    });
  }

  std::vector<bool> layer = good;  // G_1
  bool stable = false;
  for (std::uint64_t round = 1; unbounded || round < n_value; ++round) {
    std::vector<bool> next(layer.size(), false);
    for (std::size_t i = 0; i < layer.size(); ++i) {
      if (!good[i]) continue;
      for (std::size_t j : edges[i]) {
        if (layer[j]) {
          next[i] = true;
          break;
        }
      }
    }
    if (next == layer) {
      stable = true;
      break;
    }
    layer = std::move(next);
  }
  if (!layer[0]) return false;

  // A stable layer is closed under "has a continuation inside", which gives
  // a lasso by following the first such continuation.
  if (stable) {
    for (std::size_t i = 0; i < layer.size(); ++i) {
      if (!layer[i]) continue;
      for (std::size_t j : edges[i]) {
        if (layer[j]) {
          st.next.emplace(nodes[i].parts, nodes[j].parts);
          break;
        }
      }
    }
  }
  return true;
}

std::optional<Solver::Lasso> Solver::lasso_from(const Window& t, const AnchorState& st) const {
  Lasso out;
  std::map<Parts, std::size_t> pos;
  Parts cur = t.parts;
  while (true) {
    if (auto it = pos.find(cur); it != pos.end()) {
      out.cycle_start = it->second;
      return out;
    }
    pos.emplace(cur, out.heads.size());
    out.heads.push_back(cur.front());
    auto nx = st.next.find(cur);
    if (nx == st.next.end()) return std::nullopt;
    cur = nx->second;
  }
}

KripkeModel Solver::extract_model(const FormulaSet& root) const {
  std::map<FormulaSet, World> world_of;
  std::vector<const FormulaSet*> order;
  auto world = [&](const FormulaSet& x) {
    auto [it, fresh] = world_of.emplace(x, order.size());
    if (fresh) order.push_back(&it->first);
    return it->second;
  };

  KripkeModel m;
  m.bimodal = true;
  world(root);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const FormulaSet& x = *order[i];
    auto it = trace_.find(x);
    if (it == trace_.end()) throw InternalError("search trace has no entry for " + render(x, Syntax::Bimodal));
    const TraceEntry& e = it->second;
    for (const auto& c : e.b_children) m.rb.emplace_back(i, world(c));
    for (const auto& lasso : e.lassos) {
      const auto& h = lasso.heads;
      if (h.empty() || lasso.cycle_start >= h.size()) throw InternalError("malformed lasso");
      std::vector<World> ws;
      for (const auto& head : h) ws.push_back(world(head));
      for (World hw : ws) m.ra.emplace_back(i, hw);
      for (std::size_t j = 0; j + 1 < ws.size(); ++j) m.rb.emplace_back(ws[j + 1], ws[j]);
      m.rb.emplace_back(ws[lasso.cycle_start], ws.back());
    }
  }

  m.world_count = order.size();
  m.root = 0;
  std::set<std::string> atoms;
  for (const FormulaSet* x : order)
    for (const auto& f : *x) f.collect_atoms(atoms);
  for (const auto& a : atoms) m.valuation[a];
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const auto& f : *order[i])
      if (f.is_atom()) m.valuation[f.name()].push_back(i);
  }
  m.normalize();
  m.validate();
  return m;
}

}  // namespace densat
