#include "densat/corpus.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include "densat/ccs.hpp"
#include "densat/kde.hpp"
#include "densat/kdeab.hpp"
#include "densat/oracle.hpp"
#include "densat/translate.hpp"
#include "densat/windows.hpp"

namespace densat {

std::vector<Formula> enumerate_formulas(std::size_t max_size, const std::vector<std::string>& atoms, bool bimodal) {
  std::vector<std::vector<Formula>> by_size(max_size + 1);
  if (max_size == 0) return {};
  for (const auto& a : atoms) by_size[1].push_back(Formula::atom(a));
  by_size[1].push_back(Formula::falsum());
  for (std::size_t n = 2; n <= max_size; ++n) {
    auto& out = by_size[n];
    for (const auto& f : by_size[n - 1]) {
      out.push_back(Formula::negation(f));
      out.push_back(Formula::box(Modality::A, f));
      if (bimodal) out.push_back(Formula::box(Modality::B, f));
    }
    for (std::size_t l = 1; l + 1 < n; ++l) {
      for (const auto& x : by_size[l])
        for (const auto& y : by_size[n - 1 - l]) out.push_back(Formula::conjunction(x, y));
    }
  }
  std::vector<Formula> all;
  for (auto& level : by_size) all.insert(all.end(), level.begin(), level.end());
  return all;
}

std::vector<Formula> stride_sample(const std::vector<Formula>& all, std::size_t count) {
  if (count == 0 || all.empty()) return {};
  if (count >= all.size()) return all;
  std::vector<Formula> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(all[i * all.size() / count]);
  return out;
}

std::vector<std::string> atom_names(std::size_t count, char first) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) out.emplace_back(1, static_cast<char>(first + i));
  return out;
}

void SuiteReport::fail(const std::string& what) {
  ++failures;
  if (examples.size() < 5) examples.push_back(what);
}

nlohmann::ordered_json to_json(const SuiteReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["passed"] = r.passed();
  j["cases"] = r.cases;
  j["failures"] = r.failures;
  j["counts"] = r.counts;
  j["examples"] = r.examples;
  return j;
}

std::string summary_line(const SuiteReport& r) {
  std::ostringstream out;
  out << (r.passed() ? "PASS " : "FAIL ") << r.name << ": cases=" << r.cases << " failures=" << r.failures;
  for (const auto& [k, v] : r.counts) out << ' ' << k << '=' << v;
  for (const auto& e : r.examples) out << "\n  e.g. " << e;
  return out.str();
}

namespace {

class Timer {
 public:
  explicit Timer(SuiteReport& r) : r_(r), start_(std::chrono::steady_clock::now()) {}
  ~Timer() { r_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  SuiteReport& r_;
  std::chrono::steady_clock::time_point start_;
};

std::string uni_text(const Formula& f) { return render(f, Syntax::Unimodal); }
std::string bi_text(const Formula& f) { return render(f, Syntax::Bimodal); }

}  // namespace

SuiteReport kde_oracle_suite(const std::vector<Formula>& corpus, std::size_t oracle_worlds, std::size_t max_atoms) {
  SuiteReport r{"kde-oracle"};
  Timer timer(r);
  for (const auto& f : corpus) {
    ++r.cases;
    bool found = bounded_search(FormulaSet{f}, FrameClass::Dense, {oracle_worlds, max_atoms}).has_value();
    KdeAnswer a = kde_sat(f);
    r.counts[a.yes ? "sat" : "unsat"]++;
    if (found) r.counts["oracle_found"]++;
    if (found && !a.yes) r.fail("oracle model but UNSAT: " + uni_text(f));
    if (a.yes) {
      if (!a.model || !model_check(*a.model, a.model->root, f) || !is_dense(*a.model))
        r.fail("bad witness: " + uni_text(f));
    }
  }
  return r;
}

SuiteReport truth_lemma_suite(const std::vector<Formula>& corpus) {
  SuiteReport r{"truth-lemma"};
  Timer timer(r);
  for (const auto& f : corpus) {
    ++r.cases;
    Fixpoint fp = fixpoint(f);
    KripkeModel m = clip_model(fp.index, fp.clip);
    const auto live = fp.clip.tips();
    std::uint64_t bad = 0;
    for (std::size_t i = 0; i < fp.index.n(); ++i) {
      auto truth = truth_set(m, fp.index.entries[i]);
      for (World w = 0; w < live.size(); ++w) bad += truth[w] != fp.clip.tip(live[w])[i];
    }
    r.counts["tips"] += live.size();
    r.counts["mismatched_bits"] += bad;
    if (bad) r.fail(uni_text(f));
  }
  return r;
}

SuiteReport fixpoint_frame_suite(const std::vector<Formula>& corpus) {
  SuiteReport r{"fixpoint-frame"};
  Timer timer(r);
  for (const auto& f : corpus) {
    ++r.cases;
    Fixpoint fp;
    try {
      fp = fixpoint(f);
    } catch (const std::logic_error&) {
      r.fail("empty fixpoint: " + uni_text(f));
      continue;
    }
    r.counts["iterations_max"] = std::max<std::uint64_t>(r.counts["iterations_max"], fp.iterations);
    if (!is_dense(clip_model(fp.index, fp.clip))) r.fail("not dense: " + uni_text(f));
    if (fp.iterations > fp.initial_tips + fp.initial_edges) r.fail("too many iterations: " + uni_text(f));
  }
  return r;
}

SuiteReport translation_suite(const std::vector<Formula>& corpus, const std::string& p) {
  SuiteReport r{"translation"};
  Timer timer(r);
  for (const auto& f : corpus) {
    if (f.atoms().count(p)) continue;
    ++r.cases;
    Formula t = tau(p, f);
    bool k = k_valid(f);
    r.counts[k ? "k_valid" : "k_invalid"]++;
    if (t.size() > 5 * f.size()) r.fail("size bound: " + uni_text(f));
    if (k != kde_valid(t)) r.fail("validity differs: " + uni_text(f));
  }
  return r;
}

SuiteReport kdeab_oracle_suite(const std::vector<Formula>& corpus, std::size_t oracle_worlds, std::size_t max_atoms) {
  SuiteReport r{"kdeab-oracle"};
  Timer timer(r);
  for (const auto& f : corpus) {
    ++r.cases;
    const FormulaSet u{f};
    bool found = bounded_search(u, FrameClass::WeaklyDense, {oracle_worlds, max_atoms}).has_value();
    SatResult res;
    try {
      res = sat_set(u);
    } catch (const InternalError& e) {
      r.fail(std::string(e.what()) + ": " + bi_text(f));
      continue;
    }
    r.counts[res.sat ? "sat" : "unsat"]++;
    if (found) r.counts["oracle_found"]++;
    if (found && !res.sat) r.fail("oracle model but UNSAT: " + bi_text(f));
    if (res.sat) {
      if (!res.witness || !is_weakly_dense(*res.witness) || !model_check(*res.witness, res.witness->root, f))
        r.fail("bad witness: " + bi_text(f));
    }
  }
  return r;
}

SuiteReport continuation_suite(const std::vector<FormulaSet>& queries) {
  SuiteReport r{"continuations"};
  Timer timer(r);
  SolverOptions opts;
  opts.verify_continuations = true;
  for (const auto& u : queries) {
    ++r.cases;
    Solver s(opts);
    s.sat_set(u);
    r.counts["checked"] += s.stats().continuations_checked;
    if (s.stats().continuation_violations) {
      r.counts["violations"] += s.stats().continuation_violations;
      r.fail(render(u, Syntax::Bimodal));
    }
  }
  return r;
}

SuiteReport bound_policy_suite(const std::vector<Formula>& corpus, std::size_t max_exponent) {
  SuiteReport r{"bound-policy"};
  Timer timer(r);
  SolverOptions counter;
  counter.bound.mode = BoundMode::Counter;
  auto compare = [&](const FormulaSet& u) {
    ++r.cases;
    bool lasso = sat_set(u).sat;
    bool counted = sat_set(u, counter).sat;
    if (lasso != counted) r.fail(render(u, Syntax::Bimodal));
  };
  for (const auto& f : corpus) {
    const FormulaSet u{f};
    if (query_counter_exponent(u) > max_exponent) {
      r.counts["skipped_large_counter"]++;
      continue;
    }
    compare(u);
  }

  // worked example: {[a]q, ~[a]p} is SAT through the self-continuation ({q},{q})
  const Formula p = Formula::atom("p"), q = Formula::atom("q");
  const FormulaSet w{Formula::box(Modality::A, q), Formula::negation(Formula::box(Modality::A, p))};
  compare(w);
  Solver lasso, counted(SolverOptions{counter.bound, true, false});
  const auto starts = initial_windows(w, Formula::negation(p));
  const auto loop = starts.empty() ? std::vector<Window>{} : continuations(starts.front());
  const bool self_loop = loop.size() == 1 && loop.front().parts == std::vector<FormulaSet>{FormulaSet{q}, FormulaSet{q}} &&
                         continuations(loop.front()) == loop;
  ++r.cases;
  if (!self_loop || !lasso.sat_ccs(w) || !counted.sat_ccs(w)) r.fail("worked example");
  return r;
}

namespace {

Formula random_formula(std::mt19937_64& rng, std::size_t size) {
  static const std::vector<std::string> atoms{"p", "q"};
  if (size <= 1) {
    std::uniform_int_distribution<std::size_t> pick(0, atoms.size());
    std::size_t i = pick(rng);
    return i == atoms.size() ? Formula::falsum() : Formula::atom(atoms[i]);
  }
  std::uniform_int_distribution<int> op(0, size >= 3 ? 3 : 2);
  switch (op(rng)) {
    case 0:
      return Formula::negation(random_formula(rng, size - 1));
    case 1:
      return Formula::box(Modality::A, random_formula(rng, size - 1));
    case 2:
      return Formula::box(Modality::B, random_formula(rng, size - 1));
    default: {
      std::uniform_int_distribution<std::size_t> split(1, size - 2);
      std::size_t l = split(rng);
      return Formula::conjunction(random_formula(rng, l), random_formula(rng, size - 1 - l));
    }
  }
}

FormulaSet random_set(std::mt19937_64& rng, std::size_t max_members, std::size_t max_size) {
  std::uniform_int_distribution<std::size_t> members(1, max_members), size(1, max_size);
  std::vector<Formula> v;
  for (std::size_t i = members(rng); i > 0; --i) v.push_back(random_formula(rng, size(rng)));
  return FormulaSet(std::move(v));
}

FormulaSet members_in(const FormulaSet& w, const FormulaSet& closure) { return w.intersected(closure); }

}  // namespace

SuiteReport ccs_algebra_suite(std::uint64_t seed, std::size_t pairs, std::size_t max_members, std::size_t max_size) {
  SuiteReport r{"ccs-algebra"};
  Timer timer(r);
  std::mt19937_64 rng(seed);
  std::map<std::string, std::uint64_t> broken;
  auto note = [&](const char* prop, const FormulaSet& u, const FormulaSet& v) {
    if (broken[prop]++ == 0)
      r.fail(std::string(prop) + " u=" + render(u, Syntax::Bimodal) + " v=" + render(v, Syntax::Bimodal));
    else
      ++r.failures;
  };

  while (r.cases < pairs) {
    const FormulaSet u = random_set(rng, max_members, max_size);
    const FormulaSet v = random_set(rng, max_members, max_size);
    ++r.cases;
    const FormulaSet uv = u.united(v);
    const FormulaSet cu = csf(u), cv = csf(v);
    const auto ccs_u = enumerate_ccs(u);

    // (2): the witnesses w ∩ csf(u) and w ∩ csf(v)
    for (const Ccs& w : enumerate_ccs(uv)) {
      r.counts["instances_2"]++;
      const FormulaSet v1 = members_in(w.members, cu), v2 = members_in(w.members, cv);
      if (!is_ccs_of(v1, u) || !is_ccs_of(v2, v) || v1.united(v2) != w.members) note("prop2", u, v);
    }

    // (1), (3), (4) share the hypotheses w1 ∈ CCS(v), w ∈ CCS(u ∪ w1)
    for (const Ccs& w1 : enumerate_ccs(v)) {
      for (const Ccs& w : enumerate_ccs(u.united(w1.members))) {
        r.counts["instances_134"]++;
        if (!is_ccs_of(w.members, uv)) note("prop1", u, v);
        bool split = false;
        for (const Ccs& v2 : ccs_u) {
          if (w1.members.united(v2.members) == w.members) {
            split = true;
            break;
          }
        }
        if (!split) note("prop3", u, v);
        if (w.members.minus(w1.members).degree() > u.degree()) note("prop4", u, v);
      }
    }
  }
  for (const auto& [k, n] : broken) r.counts[k + "_violations"] = n;
  return r;
}

}  // namespace densat
