#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "densat/ccs.hpp"
#include "densat/oracle.hpp"
#include "densat/windows.hpp"
#include "json.hpp"

namespace densat {

enum class BoundMode { Lasso, Counter };

struct BoundPolicy {
  BoundMode mode = BoundMode::Lasso;
  /// Counter mode only: replaces 2^(M*(d+1)) by this value.
  std::optional<std::uint64_t> counter_override;
};

/// M*(d(w)+1) with M = |csf(sf(w))|; the counter is 2 to this power.
std::size_t counter_exponent(const FormulaSet& w);
/// Largest counter exponent over the CCSs of u (0 if none has degree > 0).
std::size_t query_counter_exponent(const FormulaSet& u);

struct SolverOptions {
  BoundPolicy bound;
  bool memo = true;
  /// Check every merged continuation tuple with is_window.
  bool verify_continuations = false;
};

struct SolverStats {
  std::uint64_t ccs_enumerated = 0;
  std::uint64_t windows_explored = 0;
  std::uint64_t max_depth = 0;
  std::uint64_t continuations_checked = 0;
  std::uint64_t continuation_violations = 0;
};

nlohmann::ordered_json to_json(const SolverStats& s);

struct SatResult {
  bool sat = false;
  std::optional<KripkeModel> witness;
  SolverStats stats;
};

/// Raised when a runtime self-check fails (a witness that does not verify,
/// a malformed trace).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The window-based satisfiability procedure for weakly dense frames. One
/// Solver is one query context; its memo tables persist across calls.
class Solver {
 public:
  explicit Solver(SolverOptions opts = {});

  /// SAT iff some CCS of u is SAT. A SAT answer carries a verified witness,
  /// except in counter mode when the counter ran out before the window
  /// search stabilised.
  SatResult sat_set(const FormulaSet& u);
  bool sat_ccs(const FormulaSet& w);
  bool sat_window_chain(const Window& t);

  /// Finite model read off the recorded search for an accepted CCS.
  KripkeModel extract_model(const FormulaSet& root) const;

  const SolverStats& stats() const noexcept { return stats_; }

  struct Lasso {
    std::vector<FormulaSet> heads;
    std::size_t cycle_start = 0;
  };
  struct TraceEntry {
    std::vector<FormulaSet> b_children;
    std::vector<Lasso> lassos;
  };

 private:
  using Parts = std::vector<FormulaSet>;
  struct AnchorState {
    std::set<Parts> dead;
    std::map<Parts, Parts> next;  // accepted window -> continuation on its lasso
  };

  bool sat_ccs_at(const FormulaSet& w, std::size_t depth);
  bool chain_lasso(const Window& t, AnchorState& st, std::set<Parts>& on_stack, std::size_t depth);
  bool chain_counter(const Window& t, AnchorState& st, std::size_t depth);
  bool good_head(const FormulaSet& head, std::size_t depth);
  void check_continuation(const Window& t, const Window& n);
  std::optional<Lasso> lasso_from(const Window& t, const AnchorState& st) const;

  SolverOptions opts_;
  SolverStats stats_;
  std::map<FormulaSet, bool> memo_;
  std::map<FormulaSet, AnchorState> anchors_;
  std::map<FormulaSet, TraceEntry> trace_;
  bool lasso_missing_ = false;
};

inline SatResult sat_set(const FormulaSet& u, SolverOptions opts = {}) { return Solver(opts).sat_set(u); }

}  // namespace densat
