#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "densat/formula.hpp"
#include "densat/oracle.hpp"

namespace densat {

/// Subformulas of the target, children before parents, target last.
struct SubformulaIndex {
  std::vector<Formula> entries;
  /// For boxes, the index of the body; for negations, the child; for
  /// conjunctions, the left conjunct. Unused otherwise.
  std::vector<std::size_t> first;
  /// Right conjunct for conjunctions.
  std::vector<std::size_t> second;

  std::size_t n() const noexcept { return entries.size(); }
  /// Atoms and boxes; the only positions whose bit is not forced.
  std::size_t free_bits() const;
};

/// Throws std::invalid_argument on bimodal input.
SubformulaIndex build_index(const Formula& phi);

using Tip = std::vector<bool>;

/// A set of tips with a relation, both stored as bitsets over the tips of
/// the initial clip (the universe), which is sorted lexicographically.
struct ClipFrame {
  std::shared_ptr<const std::vector<Tip>> universe;
  boost::dynamic_bitset<> alive;
  std::vector<boost::dynamic_bitset<>> succ;

  std::size_t tip_count() const { return alive.count(); }
  std::size_t edge_count() const;
  /// Universe indices of the live tips, ascending.
  std::vector<std::size_t> tips() const;
  bool has_edge(std::size_t s, std::size_t t) const { return succ[s].test(t); }
  const Tip& tip(std::size_t i) const { return (*universe)[i]; }

  friend bool operator==(const ClipFrame& x, const ClipFrame& y) {
    return x.universe == y.universe && x.alive == y.alive && x.succ == y.succ;
  }
};

class FeasibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct KdeOptions {
  std::size_t max_free_bits = 22;
};

ClipFrame initial_clip(const SubformulaIndex& ix, const KdeOptions& opts = {});
ClipFrame sigma_step(const ClipFrame& c, const SubformulaIndex& ix);

struct Fixpoint {
  SubformulaIndex index;
  ClipFrame clip;
  std::size_t iterations = 0;
  std::size_t initial_tips = 0;
  std::size_t initial_edges = 0;
};

/// Iterates sigma_step from the initial clip until it stabilises. Throws
/// std::logic_error if the result is empty.
Fixpoint fixpoint(const Formula& phi, const KdeOptions& opts = {});

/// The clip read as a unimodal model: world i is the i-th live tip, an atom
/// holds where its bit is set. Pointed at world `root`.
KripkeModel clip_model(const SubformulaIndex& ix, const ClipFrame& clip, World root = 0);

struct KdeAnswer {
  bool yes = false;
  /// Witness for sat, countermodel for valid.
  std::optional<KripkeModel> model;
  std::size_t iterations = 0;
};

KdeAnswer kde_decide_valid(const Formula& phi, const KdeOptions& opts = {});
KdeAnswer kde_decide_sat(const Formula& phi, const KdeOptions& opts = {});

bool kde_valid(const Formula& phi, const KdeOptions& opts = {});
inline KdeAnswer kde_sat(const Formula& phi, const KdeOptions& opts = {}) { return kde_decide_sat(phi, opts); }

}  // namespace densat
