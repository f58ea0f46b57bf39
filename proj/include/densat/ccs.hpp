#pragma once

#include <functional>
#include <vector>

#include "densat/formula.hpp"

namespace densat {

/// A consistent classical saturation of `seed`: an open, saturated branch of a
/// propositional tableau for the seed, with boxes treated as opaque literals.
struct Ccs {
  FormulaSet members;
  FormulaSet seed;

  friend bool operator==(const Ccs&, const Ccs&) = default;
};

/// Visitor returns false to stop the enumeration early.
using CcsVisitor = std::function<bool(const Ccs&)>;

/// Enumerates every member of CCS(seed) exactly once, in a fixed order.
/// Returns false if the visitor stopped the walk. An inconsistent seed
/// produces no calls at all.
bool for_each_ccs(const FormulaSet& seed, const CcsVisitor& visit);

std::vector<Ccs> enumerate_ccs(const FormulaSet& seed);

/// True iff `candidate` is in CCS(seed).
bool is_ccs_of(const FormulaSet& candidate, const FormulaSet& seed);

/// Saturation and consistency conditions only, without the seed bounds.
bool is_saturated(const FormulaSet& candidate);

}  // namespace densat
