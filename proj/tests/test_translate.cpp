#include "densat/kde.hpp"
#include "densat/translate.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace densat;
using namespace densat::testing;

TEST_CASE("tau examples") {
  CHECK(tau("p", q()) == q());
  Formula bq = Formula::box(Modality::A, q());
  CHECK(tau("p", bq) == Formula::box(Modality::A, neg(conj(p(), neg(q())))));
  CHECK(render(tau("p", bq), Syntax::Unimodal) == "[](p -> q)");
  Formula dq = neg(Formula::box(Modality::A, neg(q())));
  CHECK(tau("p", dq) == neg(Formula::box(Modality::A, neg(conj(p(), neg(neg(q())))))));
  CHECK(tau("p", Formula::falsum()) == Formula::falsum());
}

TEST_CASE("tau rejects its own atom and bimodal input") {
  CHECK_THROWS_AS(tau("p", uni("[]p")), std::invalid_argument);
  CHECK_THROWS_AS(tau("p", bi("[b]q")), std::invalid_argument);
}

TEST_CASE("fresh atoms") {
  CHECK(fresh_atom(uni("q")) == "a");
  CHECK(fresh_atom(uni("a & q")) == "a0");
  CHECK(fresh_atom(uni("a & a0 & b")) == "a00");
}

TEST_CASE("size bound and the two validity notions") {
  FormulaGen gen(4, {"q", "r"}, false);
  for (int i = 0; i < 300; ++i) {
    Formula f = gen.up_to(7);
    Formula t = tau("p", f);
    INFO(render(f, Syntax::Unimodal));
    CHECK(t.size() <= 5 * f.size());
    CHECK(t.degree() == f.degree());
    // valid over all frames iff valid over dense frames after translation
    CHECK(k_valid(f) == k_valid(t));
    CHECK(k_valid(f) == kde_valid(t));
  }
}
