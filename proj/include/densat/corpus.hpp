#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "densat/formula.hpp"
#include "json.hpp"

namespace densat {

/// Every core formula with at most max_size nodes over the given atoms, by
/// size, then in a fixed constructor order. Bimodal corpora use both boxes.
std::vector<Formula> enumerate_formulas(std::size_t max_size, const std::vector<std::string>& atoms, bool bimodal);

/// `count` formulas spread evenly over the list, starting with the first.
std::vector<Formula> stride_sample(const std::vector<Formula>& all, std::size_t count);

/// "p", "q", "r", ... starting at `first`.
std::vector<std::string> atom_names(std::size_t count, char first = 'p');

struct SuiteReport {
  explicit SuiteReport(std::string n = {}) : name(std::move(n)) {}

  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::map<std::string, std::uint64_t> counts;
  std::vector<std::string> examples;  // first few failing inputs
  double seconds = 0;

  bool passed() const noexcept { return failures == 0; }
  void fail(const std::string& what);
};

nlohmann::ordered_json to_json(const SuiteReport& r);
/// "PASS name: cases=... failures=... (k=v ...) in 1.23s"
std::string summary_line(const SuiteReport& r);

/// SAT whenever the dense oracle finds a model; every SAT witness verifies
/// and is dense.
SuiteReport kde_oracle_suite(const std::vector<Formula>& corpus, std::size_t oracle_worlds, std::size_t max_atoms);
/// Every fixpoint tip model-checks to exactly its bits.
SuiteReport truth_lemma_suite(const std::vector<Formula>& corpus);
/// Every fixpoint frame is dense and nonempty.
SuiteReport fixpoint_frame_suite(const std::vector<Formula>& corpus);
/// k_valid(f) == kde_valid(tau(p, f)) and the size bound, for p-free f.
SuiteReport translation_suite(const std::vector<Formula>& corpus, const std::string& p = "p");

/// Oracle-found (weakly dense) implies SAT; SAT implies a verified witness.
SuiteReport kdeab_oracle_suite(const std::vector<Formula>& corpus, std::size_t oracle_worlds, std::size_t max_atoms);
/// Every continuation generated while solving the queries merges into a
/// window.
SuiteReport continuation_suite(const std::vector<FormulaSet>& queries);
/// Lasso and counter mode agree wherever the counter is at most
/// 2^max_exponent, plus on the worked window example.
SuiteReport bound_policy_suite(const std::vector<Formula>& corpus, std::size_t max_exponent = 16);

/// The four algebraic properties of saturations on random seed pairs.
SuiteReport ccs_algebra_suite(std::uint64_t seed, std::size_t pairs, std::size_t max_members = 4,
                              std::size_t max_size = 5);

}  // namespace densat
