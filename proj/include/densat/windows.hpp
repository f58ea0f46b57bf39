#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "densat/ccs.hpp"
#include "densat/formula.hpp"
#include "json.hpp"

namespace densat {

/// A k-window (w_0, ..., w_k) for an anchor CCS w. Initial windows carry the
/// diamond body their head was seeded with; continuations carry none.
struct Window {
  FormulaSet anchor;
  std::vector<FormulaSet> parts;
  std::optional<Formula> seed_extra;

  std::size_t k() const noexcept { return parts.size() - 1; }
  const FormulaSet& head() const { return parts.front(); }

  friend bool operator==(const Window&, const Window&) = default;
};

using WindowVisitor = std::function<bool(const Window&)>;

/// All d(w)-windows for w whose head is seeded with `body`. Returns false
/// if the visitor stopped the walk. Throws std::invalid_argument when
/// d(w) = 0.
bool for_each_initial_window(const FormulaSet& w, const Formula& body, const WindowVisitor& visit);

/// All continuations of t for its anchor, each given as a window
/// (w~_1, ..., w~_{k+1}).
bool for_each_continuation(const Window& t, const WindowVisitor& visit);

std::vector<Window> initial_windows(const FormulaSet& w, const Formula& body);
std::vector<Window> continuations(const Window& t);

/// Checks the window membership conditions for every part. `extra` joins the
/// seed of parts[0].
bool is_window(const std::vector<FormulaSet>& parts, const FormulaSet& anchor,
               const std::optional<Formula>& extra = std::nullopt);

/// (w_0, w~_1, ..., w~_{k+1}).
std::vector<FormulaSet> merge(const Window& t, const Window& next);

nlohmann::ordered_json to_json(const Window& t, Syntax syntax = Syntax::Bimodal);

}  // namespace densat
