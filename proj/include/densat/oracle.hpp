#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "densat/formula.hpp"
#include "json.hpp"

namespace densat {

using World = std::size_t;
using Edge = std::pair<World, World>;

/// Explicit finite pointed Kripke model. Worlds are 0..world_count-1.
struct KripkeModel {
  std::size_t world_count = 1;
  std::vector<Edge> ra;
  std::vector<Edge> rb;
  std::map<std::string, std::vector<World>> valuation;
  World root = 0;
  bool bimodal = true;  // unimodal models serialize without "rb"

  /// Sorts and deduplicates edges and valuation entries.
  void normalize();
  /// Throws std::invalid_argument if an edge, valuation entry or the root
  /// refers to a world outside 0..world_count-1, or there are no worlds.
  void validate() const;

  std::span<const Edge> successors(Modality m, World w) const;
  bool holds(const std::string& atom, World w) const;

  friend bool operator==(const KripkeModel&, const KripkeModel&) = default;
};

nlohmann::ordered_json to_json(const KripkeModel& m);
KripkeModel model_from_json(const nlohmann::ordered_json& j);

/// Pointwise satisfaction by structural recursion. Throws std::out_of_range
/// for an unknown world.
bool model_check(const KripkeModel& m, World world, const Formula& f);
bool model_check(const KripkeModel& m, World world, const FormulaSet& s);

/// Truth set of `f` computed bottom-up over all worlds at once. Written
/// separately from model_check so the two can audit each other.
std::vector<bool> truth_set(const KripkeModel& m, const Formula& f);

/// sRt implies sRu and uRt for some u (on ra).
bool is_dense(const KripkeModel& m);
/// s Ra t implies s Ra u and u Rb t for some u.
bool is_weakly_dense(const KripkeModel& m);

enum class FrameClass { All, Dense, WeaklyDense };

struct SearchLimits {
  std::size_t max_worlds = 3;
  std::size_t max_atoms = 2;
  // Upper bound on the number of (frame, valuation) pairs visited.
  std::uint64_t max_candidates = std::uint64_t{1} << 28;
};

class SearchBoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// First pointed model (in the fixed enumeration order) of the class whose
/// root satisfies every formula of `u`. nullopt means none within the bound,
/// not unsatisfiability.
std::optional<KripkeModel> bounded_search(const FormulaSet& u, FrameClass cls, const SearchLimits& limits);

/// Validity over all frames, decided by a plain K tableau.
bool k_valid(const Formula& f);
/// Satisfiability of a finite set over all frames (both modalities plain K).
bool k_satisfiable(const FormulaSet& u);

}  // namespace densat
