#include "doctest.h"
#include "support.hpp"

using namespace densat;
using namespace densat::testing;

TEST_CASE("parse desugars connectives into the core AST") {
  CHECK(uni("p & ~q") == conj(p(), neg(q())));

  // <>p -> <><>p
  Formula dp = neg(boxa(neg(p())));
  Formula expected = neg(conj(dp, boxa(neg(neg(boxa(neg(p())))))));
  CHECK(uni("<>p -> <><>p") == expected);

  CHECK(bi("[a][b]p -> [a]p") == neg(conj(boxa(boxb(p())), neg(boxa(p())))));

  CHECK(uni("true") == neg(Formula::falsum()));
  CHECK(uni("false") == Formula::falsum());
  CHECK(uni("p | q") == neg(conj(neg(p()), neg(q()))));
  CHECK(uni("[]p -> p") == neg(conj(boxa(p()), neg(p()))));
}

TEST_CASE("precedence and associativity") {
  CHECK(uni("p & q | r") == uni("(p & q) | r"));
  CHECK(uni("p | q & r") == uni("p | (q & r)"));
  CHECK(uni("p -> q -> r") == uni("p -> (q -> r)"));
  CHECK(uni("p & q & r") == conj(conj(p(), q()), r()));
  CHECK(uni("~[]p") == neg(boxa(p())));
  CHECK(uni("[]p & q") == conj(boxa(p()), q()));
  CHECK(uni(" ( p ) ") == p());
}

TEST_CASE("parse errors carry a position and a reason") {
  auto reason_of = [](const std::string& text, Syntax s) {
    try {
      parse(text, s);
    } catch (const ParseError& e) {
      return e.reason();
    }
    FAIL("expected a parse error for " << text);
    return ParseError::Reason::Syntax;
  };
  CHECK(reason_of("p &", Syntax::Unimodal) == ParseError::Reason::Syntax);
  CHECK(reason_of("(p", Syntax::Unimodal) == ParseError::Reason::Syntax);
  CHECK(reason_of("P", Syntax::Unimodal) == ParseError::Reason::Syntax);
  CHECK(reason_of("[c]p", Syntax::Bimodal) == ParseError::Reason::Syntax);
  CHECK(reason_of("[a]p", Syntax::Unimodal) == ParseError::Reason::ModalityMismatch);
  CHECK(reason_of("<b>p", Syntax::Unimodal) == ParseError::Reason::ModalityMismatch);
  CHECK(reason_of("[]p", Syntax::Bimodal) == ParseError::Reason::ModalityMismatch);
  CHECK(reason_of("p <> q", Syntax::Unimodal) == ParseError::Reason::Syntax);

  try {
    parse("p & & q", Syntax::Unimodal);
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("measures count nodes and modal depth") {
  CHECK(measures(p()) == Measures{0, 1});
  CHECK(measures(boxa(boxb(p()))) == Measures{2, 3});
  CHECK(measures(uni("[]p & ~p")) == Measures{1, 5});

  FormulaSet empty;
  CHECK(empty.degree() == 0);
  CHECK(empty.symbol_count() == 0);
  FormulaSet s{boxa(p()), conj(p(), q())};
  CHECK(s.degree() == 1);
  CHECK(s.symbol_count() == 5);
}

TEST_CASE("render prints sugar that parses back to the same tree") {
  CHECK(render(uni("[]q -> p"), Syntax::Unimodal) == "[]q -> p");
  CHECK(render(boxa(uni("p -> q")), Syntax::Unimodal) == "[](p -> q)");
  CHECK(render(bi("[a][b]p -> [a]p"), Syntax::Bimodal) == "[a][b]p -> [a]p");
  CHECK(render(uni("<>p & ~~q"), Syntax::Unimodal) == "<>p & ~~q");
  CHECK(render(uni("p | q | r"), Syntax::Unimodal) == "p | q | r");
  CHECK(render(uni("~(p & ~~q)"), Syntax::Unimodal) == "~(p & ~~q)");
  CHECK(render(uni("(p -> q) -> r"), Syntax::Unimodal) == "p & ~q | r");
  CHECK(render(uni("(p | q) -> r"), Syntax::Unimodal) == "~p & ~q | r");
  CHECK(render(uni("true"), Syntax::Unimodal) == "true");
}

TEST_CASE("render/parse round trip on random trees") {
  for (bool bimodal : {false, true}) {
    Syntax syn = bimodal ? Syntax::Bimodal : Syntax::Unimodal;
    FormulaGen gen(7, {"p", "q"}, bimodal);
    for (int i = 0; i < 3000; ++i) {
      Formula f = gen.up_to(14);
      std::string text = render(f, syn);
      Formula back = parse(text, syn);
      INFO(text);
      REQUIRE(back == f);
      CHECK(render(back, syn) == text);
    }
  }
}

TEST_CASE("size is compositional") {
  FormulaGen gen(11, {"p", "q"}, true);
  for (int i = 0; i < 500; ++i) {
    Formula l = gen.up_to(8), r = gen.up_to(8);
    CHECK(conj(l, r).size() == 1 + l.size() + r.size());
    CHECK(neg(l).size() == 1 + l.size());
    CHECK(boxb(l).degree() == 1 + l.degree());
    CHECK(conj(l, r).degree() == std::max(l.degree(), r.degree()));
  }
}

TEST_CASE("csf splits classically without crossing boxes") {
  FormulaSet u{neg(conj(p(), q()))};
  FormulaSet expected{neg(conj(p(), q())), conj(p(), q()), neg(p()), p(), neg(q()), q()};
  CHECK(csf(u) == expected);
  CHECK(csf(FormulaSet{p()}) == FormulaSet{p()});
  FormulaSet boxed{boxa(conj(p(), q()))};
  CHECK(csf(boxed) == boxed);
}

TEST_CASE("sf also unfolds boxes") {
  CHECK(sf(FormulaSet{boxa(p())}) == FormulaSet{boxa(p()), p()});
  FormulaSet u{neg(boxb(neg(p())))};
  // the negated-box rule adds ~~p, which then yields ~p and p
  CHECK(sf(u) == FormulaSet{neg(boxb(neg(p()))), boxb(neg(p())), neg(neg(p())), neg(p()), p()});
  CHECK(sf(FormulaSet{conj(p(), q())}) == FormulaSet{conj(p(), q()), p(), q()});
}

TEST_CASE("box_inverse picks bodies of top-level boxes") {
  FormulaSet w{boxa(p()), boxb(q()), neg(boxa(r()))};
  CHECK(box_inverse(w, Modality::A) == FormulaSet{p()});
  CHECK(box_inverse(FormulaSet{boxa(p()), boxa(conj(q(), r()))}, Modality::A) ==
        FormulaSet{p(), conj(q(), r())});
  CHECK(box_inverse(FormulaSet{p(), neg(q())}, Modality::B).empty());
}

TEST_CASE("closure laws on random sets") {
  FormulaGen gen(3, {"p", "q"}, true);
  for (int i = 0; i < 400; ++i) {
    FormulaSet u = gen.set(3, 7);
    FormulaSet v = u.united(gen.set(2, 6));
    FormulaSet cu = csf(u), su = sf(u);
    CHECK(u.subset_of(cu));
    CHECK(cu.subset_of(su));
    CHECK(csf(cu) == cu);
    CHECK(sf(su) == su);
    CHECK(cu.subset_of(csf(v)));
    CHECK(su.subset_of(sf(v)));
    for (Modality m : {Modality::A, Modality::B}) {
      FormulaSet inv = box_inverse(u, m);
      if (!inv.empty()) CHECK(inv.degree() + 1 <= u.degree());
    }
  }
}
