#include "densat/cli.hpp"

#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "densat/corpus.hpp"
#include "densat/kde.hpp"
#include "densat/kdeab.hpp"
#include "densat/oracle.hpp"
#include "densat/translate.hpp"

namespace densat {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolveArgs {
  std::string logic = "kdeab";
  std::string mode = "sat";
  std::string model_path;
  std::string bound = "lasso";
  std::optional<std::uint64_t> counter;
  bool no_memo = false;
  bool stats = false;
  std::size_t max_free_bits = 22;
  std::string formula;
};

struct OracleArgs {
  std::string cls = "all";
  std::size_t max_worlds = 2;
  std::size_t max_atoms = 2;
  std::string formula;
};

struct TranslateArgs {
  std::string fresh;
  std::string formula;
};

struct CorpusArgs {
  std::string logic = "kde";
  std::size_t max_size = 5;
  std::size_t atoms = 1;
  std::size_t oracle_worlds = 2;
  std::size_t ccs_pairs = 1000;
  bool json = false;
};

// Bimodal syntax if the text names a modality, unimodal otherwise.
Formula parse_any(const std::string& text) {
  try {
    return parse(text, Syntax::Unimodal);
  } catch (const ParseError& e) {
    if (e.reason() != ParseError::Reason::ModalityMismatch) throw;
    return parse(text, Syntax::Bimodal);
  }
}

void write_model(const std::string& path, const KripkeModel& m) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << to_json(m).dump() << '\n';
}

int solve(const SolveArgs& a, std::ostream& out) {
  const bool sat_mode = a.mode == "sat";
  if (a.logic == "kde") {
    const Formula phi = parse(a.formula, Syntax::Unimodal);
    KdeOptions opts{a.max_free_bits};
    KdeAnswer ans = sat_mode ? kde_decide_sat(phi, opts) : kde_decide_valid(phi, opts);
    if (ans.model) {
      if (!is_dense(*ans.model)) throw InternalError("fixpoint model is not dense");
      if (model_check(*ans.model, ans.model->root, phi) != sat_mode) throw InternalError("fixpoint model fails check");
    }
    out << (sat_mode ? (ans.yes ? "SAT" : "UNSAT") : (ans.yes ? "VALID" : "INVALID")) << '\n';
    if (a.stats) out << nlohmann::ordered_json{{"iterations", ans.iterations}}.dump() << '\n';
    if (!a.model_path.empty() && ans.model) write_model(a.model_path, *ans.model);
    return kExitOk;
  }

  const Formula phi = parse(a.formula, Syntax::Bimodal);
  SolverOptions opts;
  opts.bound.mode = a.bound == "counter" ? BoundMode::Counter : BoundMode::Lasso;
  opts.bound.counter_override = a.counter;
  opts.memo = !a.no_memo;
  SatResult res = sat_set(FormulaSet{sat_mode ? phi : Formula::negation(phi)}, opts);
  if (sat_mode)
    out << (res.sat ? "SAT" : "UNSAT") << '\n';
  else
    out << (res.sat ? "INVALID" : "VALID") << '\n';
  if (a.stats) out << to_json(res.stats).dump() << '\n';
  if (!a.model_path.empty() && res.witness) write_model(a.model_path, *res.witness);
  return kExitOk;
}

int oracle(const OracleArgs& a, std::ostream& out) {
  const Formula phi = parse_any(a.formula);
  FrameClass cls = a.cls == "dense" ? FrameClass::Dense
                   : a.cls == "weakly-dense" ? FrameClass::WeaklyDense
                                             : FrameClass::All;
  std::optional<KripkeModel> m;
  try {
    m = bounded_search(FormulaSet{phi}, cls, {a.max_worlds, a.max_atoms});
  } catch (const SearchBoundError& e) {
    throw UsageError(e.what());
  }
  if (m) {
    out << "FOUND\n" << to_json(*m).dump() << '\n';
  } else {
    out << "NONE-WITHIN-BOUND\n";
  }
  return kExitOk;
}

int translate(const TranslateArgs& a, std::ostream& out) {
  const Formula phi = parse(a.formula, Syntax::Unimodal);
  const std::string p = a.fresh.empty() ? fresh_atom(phi) : a.fresh;
  try {
    out << render(tau(p, phi), Syntax::Unimodal) << '\n';
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return kExitOk;
}

int corpus(const CorpusArgs& a, std::ostream& out) {
  std::vector<SuiteReport> reports;
  if (a.logic == "kde") {
    const auto forms = enumerate_formulas(a.max_size, atom_names(a.atoms), false);
    reports.push_back(kde_oracle_suite(forms, a.oracle_worlds, a.atoms));
    reports.push_back(truth_lemma_suite(forms));
    reports.push_back(fixpoint_frame_suite(forms));
    reports.push_back(translation_suite(enumerate_formulas(a.max_size, atom_names(a.atoms, 'q'), false)));
  } else {
    const auto forms = enumerate_formulas(a.max_size, atom_names(a.atoms), true);
    std::vector<FormulaSet> queries;
    for (const auto& f : forms) queries.emplace_back(FormulaSet{f});
    reports.push_back(kdeab_oracle_suite(forms, a.oracle_worlds, a.atoms));
    reports.push_back(continuation_suite(queries));
    reports.push_back(bound_policy_suite(forms));
    reports.push_back(ccs_algebra_suite(1, a.ccs_pairs));
  }
  bool all = std::all_of(reports.begin(), reports.end(), [](const SuiteReport& r) { return r.passed(); });
  out << (all ? "PASS" : "FAIL") << '\n';
  for (const auto& r : reports) {
    if (a.json)
      out << to_json(r).dump() << '\n';
    else
      out << summary_line(r) << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decision procedures for dense and weakly dense modal logics", "densat"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "decide satisfiability or validity");
  solve_cmd->add_option("--logic", sa.logic)->check(CLI::IsMember({"kde", "kdeab"}));
  solve_cmd->add_option("--mode", sa.mode)->check(CLI::IsMember({"sat", "valid"}));
  solve_cmd->add_option("--model", sa.model_path, "write the witness or countermodel as JSON");
  solve_cmd->add_option("--bound", sa.bound)->check(CLI::IsMember({"lasso", "counter"}));
  solve_cmd->add_option("--counter", sa.counter, "counter value for --bound counter");
  solve_cmd->add_flag("--no-memo", sa.no_memo);
  solve_cmd->add_flag("--stats", sa.stats);
  solve_cmd->add_option("--max-free-bits", sa.max_free_bits);
  solve_cmd->add_option("formula", sa.formula)->required();

  OracleArgs oa;
  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive bounded model search");
  oracle_cmd->add_option("--class", oa.cls)->check(CLI::IsMember({"all", "dense", "weakly-dense"}));
  oracle_cmd->add_option("--max-worlds", oa.max_worlds);
  oracle_cmd->add_option("--max-atoms", oa.max_atoms);
  oracle_cmd->add_option("formula", oa.formula)->required();

  TranslateArgs ta;
  auto* translate_cmd = app.add_subcommand("translate", "relativise boxes to a fresh atom");
  translate_cmd->add_option("--fresh", ta.fresh);
  translate_cmd->add_option("formula", ta.formula)->required();

  CorpusArgs ca;
  auto* corpus_cmd = app.add_subcommand("corpus", "cross-check the solvers against the oracles");
  corpus_cmd->add_option("--logic", ca.logic)->check(CLI::IsMember({"kde", "kdeab"}));
  corpus_cmd->add_option("--max-size", ca.max_size);
  corpus_cmd->add_option("--atoms", ca.atoms)->check(CLI::Range(1, 4));
  corpus_cmd->add_option("--oracle-worlds", ca.oracle_worlds);
  corpus_cmd->add_option("--ccs-pairs", ca.ccs_pairs);
  corpus_cmd->add_flag("--json", ca.json);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*solve_cmd) return solve(sa, out);
    if (*oracle_cmd) return oracle(oa, out);
    if (*translate_cmd) return translate(ta, out);
    if (*corpus_cmd) return corpus(ca, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FeasibilityError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace densat
