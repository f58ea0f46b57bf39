#include "densat/oracle.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace densat;
using namespace densat::testing;

namespace {

KripkeModel single_world() {
  KripkeModel m;
  m.world_count = 1;
  return m;
}

// r -a-> x, x -b-> x, p false everywhere
KripkeModel two_world_witness() {
  KripkeModel m;
  m.world_count = 2;
  m.ra = {{0, 1}};
  m.rb = {{1, 1}};
  m.valuation["p"] = {};
  return m;
}

KripkeModel random_model(std::mt19937_64& rng, std::size_t n) {
  KripkeModel m;
  m.world_count = n;
  std::bernoulli_distribution coin(0.35);
  for (World s = 0; s < n; ++s)
    for (World t = 0; t < n; ++t) {
      if (coin(rng)) m.ra.emplace_back(s, t);
      if (coin(rng)) m.rb.emplace_back(s, t);
    }
  for (const char* atom : {"p", "q"})
    for (World w = 0; w < n; ++w)
      if (coin(rng)) m.valuation[atom].push_back(w);
  m.normalize();
  return m;
}

}  // namespace

TEST_CASE("model_check on hand models") {
  auto one = single_world();
  CHECK(model_check(one, 0, uni("[]false")));
  CHECK_FALSE(model_check(one, 0, uni("<>true")));
  CHECK(model_check(two_world_witness(), 0, bi("~[a]p")));
  CHECK_FALSE(model_check(two_world_witness(), 1, bi("~[a]p")));
  CHECK(model_check(two_world_witness(), 1, bi("[b][b]~p & <b>true")));
  CHECK_THROWS_AS(model_check(one, 3, p()), std::out_of_range);
}

TEST_CASE("frame predicates") {
  auto empty = single_world();
  CHECK(is_dense(empty));
  CHECK(is_weakly_dense(empty));

  KripkeModel refl = single_world();
  refl.ra = {{0, 0}};
  CHECK(is_dense(refl));
  CHECK_FALSE(is_weakly_dense(refl));

  KripkeModel edge;
  edge.world_count = 2;
  edge.ra = {{0, 1}};
  CHECK_FALSE(is_weakly_dense(edge));
  CHECK_FALSE(is_dense(edge));
  CHECK(is_weakly_dense(two_world_witness()));
}

TEST_CASE("pointwise and bottom-up evaluators agree") {
  std::mt19937_64 rng(99);
  FormulaGen gen(17, {"p", "q"}, true);
  for (int i = 0; i < 2000; ++i) {
    auto m = random_model(rng, 1 + i % 5);
    Formula f = gen.up_to(12);
    auto set = truth_set(m, f);
    for (World w = 0; w < m.world_count; ++w) {
      INFO(render(f, Syntax::Bimodal));
      CHECK(set[w] == model_check(m, w, f));
    }
  }
}

TEST_CASE("bounded search") {
  SearchLimits two{2, 1};
  auto found = bounded_search(FormulaSet{bi("~[a]p")}, FrameClass::WeaklyDense, two);
  REQUIRE(found);
  // smallest worlds first: one world, reflexive under both relations
  CHECK(found->world_count == 1);
  CHECK(found->ra == std::vector<Edge>{{0, 0}});
  CHECK(found->rb == std::vector<Edge>{{0, 0}});
  CHECK(model_check(*found, found->root, bi("~[a]p")));
  CHECK(is_weakly_dense(*found));

  CHECK_FALSE(bounded_search(FormulaSet{uni("p & ~p")}, FrameClass::All, {3, 1}));
  CHECK_FALSE(bounded_search(FormulaSet{uni("~([][]p -> []p)")}, FrameClass::Dense, {3, 1}));

  // a K countermodel to the density axiom needs a chain of length two
  auto chain = bounded_search(FormulaSet{uni("~([][]p -> []p)")}, FrameClass::All, {3, 1});
  REQUIRE(chain);
  CHECK(chain->world_count == 2);
  CHECK_FALSE(is_dense(*chain));

  CHECK_THROWS_AS(bounded_search(FormulaSet{uni("p & q & r")}, FrameClass::All, {2, 2}), SearchBoundError);
  CHECK_THROWS_AS(bounded_search(FormulaSet{bi("[a]p")}, FrameClass::All, {6, 1}), SearchBoundError);
}

TEST_CASE("bounded search results satisfy the query and their class") {
  FormulaGen gen(23, {"p"}, true);
  for (int i = 0; i < 300; ++i) {
    Formula f = gen.up_to(7);
    for (FrameClass cls : {FrameClass::All, FrameClass::Dense, FrameClass::WeaklyDense}) {
      auto m = bounded_search(FormulaSet{f}, cls, {2, 1});
      if (!m) continue;
      CHECK(model_check(*m, m->root, f));
      if (cls == FrameClass::Dense) CHECK(is_dense(*m));
      if (cls == FrameClass::WeaklyDense) CHECK(is_weakly_dense(*m));
    }
  }
}

TEST_CASE("model JSON") {
  auto m = two_world_witness();
  auto j = to_json(m);
  CHECK(j.dump() == R"({"worlds":[0,1],"ra":[[0,1]],"rb":[[1,1]],"val":{"p":[]},"root":0})");
  CHECK(model_from_json(j) == m);

  KripkeModel uni_model = single_world();
  uni_model.bimodal = false;
  uni_model.ra = {{0, 0}};
  CHECK_FALSE(to_json(uni_model).contains("rb"));
  CHECK(model_from_json(to_json(uni_model)) == uni_model);

  auto bad = j;
  bad["ra"] = {{0, 5}};
  CHECK_THROWS_AS(model_from_json(bad), std::invalid_argument);
}

TEST_CASE("K tableau") {
  CHECK(k_valid(uni("[](p & q) -> []p")));
  CHECK_FALSE(k_valid(uni("[][]p -> []p")));
  CHECK(k_valid(uni("p -> p")));
  CHECK(k_valid(uni("[](p -> q) -> []p -> []q")));
  CHECK_FALSE(k_valid(uni("[]p -> p")));
  CHECK_FALSE(k_valid(uni("<>true")));
  CHECK(k_valid(uni("<>p -> <>true")));
  CHECK(k_satisfiable(FormulaSet{bi("<a>p"), bi("[b]~p")}));
  CHECK_FALSE(k_satisfiable(FormulaSet{bi("<a>p"), bi("[a]~p")}));
}

TEST_CASE("K tableau agrees with bounded search on small formulas") {
  // Tree models of depth d(f) and branching at most the number of diamonds
  // suffice; for 5-node formulas 3 worlds always cover that.
  FormulaGen gen(31, {"p"}, false);
  for (int i = 0; i < 400; ++i) {
    Formula f = gen.up_to(5);
    bool found = bounded_search(FormulaSet{neg(f)}, FrameClass::All, {3, 1}).has_value();
    INFO(render(f, Syntax::Unimodal));
    CHECK(k_valid(f) == !found);
  }
}
