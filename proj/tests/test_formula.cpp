#include <set>

#include "branchsat/formula.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace branchsat;
using testsupport::pick;

namespace {

FormulaPtr nnf_of(const std::string& s) { return to_nnf(parse(s)); }

// Arbitrary tree with general negation and implication-free connectives.
FormulaPtr random_raw(int budget) {
  if (budget <= 1) return testsupport::random_literal(3);
  switch (pick(0, 8)) {
    case 0: return mk_not(random_raw(budget - 1));
    case 1: return mk_and(random_raw(budget / 2), random_raw(budget - budget / 2 - 1));
    case 2: return mk_or(random_raw(budget / 2), random_raw(budget - budget / 2 - 1));
    case 3: return mk_next(random_raw(budget - 1));
    case 4: return mk_until(random_raw(budget / 2), random_raw(budget - budget / 2 - 1));
    case 5: return mk_release(random_raw(budget / 2), random_raw(budget - budget / 2 - 1));
    case 6: return mk_exists(random_raw(budget - 1));
    case 7: return mk_forall(random_raw(budget - 1));
    default: return mk_implies(random_raw(budget / 2), random_raw(budget - budget / 2 - 1));
  }
}

}  // namespace

TEST_CASE("parse builds the expected tree") {
  auto f = parse("E (p U q)");
  REQUIRE(f->op == Op::Exists);
  REQUIRE(f->left->op == Op::Until);
  CHECK(f->left->left->op == Op::Prop);
  CHECK(f->left->left->name == "p");
  CHECK(f->left->right->name == "q");

  auto g = parse("A F G p & E G E F !p");
  REQUIRE(g->op == Op::And);
  CHECK(print(g) == "AFGp & EGEF!p");
  CHECK(g->left->op == Op::Forall);
  CHECK(g->left->left->op == Op::Until);
  CHECK(g->left->left->left->op == Op::True);
  CHECK(g->left->left->right->op == Op::Release);
}

TEST_CASE("parse precedence and associativity") {
  CHECK(print(parse("p | q & r")) == "p | (q & r)");
  CHECK(structurally_equal(parse("p U q U r"), parse("p U (q U r)")));
  CHECK(structurally_equal(parse("p -> q -> r"), parse("p -> (q -> r)")));
  CHECK(structurally_equal(parse("X p U q"), parse("(X p) U q")));
  CHECK(structurally_equal(parse("p & q U r"), parse("p & (q U r)")));
  CHECK(structurally_equal(parse("!p"), mk_negprop("p")));
}

TEST_CASE("parse errors carry positions") {
  try {
    parse("p U");
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("end of input") != std::string::npos);
    CHECK(e.line() == 1);
  }
  CHECK_THROWS_AS(parse("p $ q"), ParseError);
  CHECK_THROWS_AS(parse("(p & q"), ParseError);
  CHECK_THROWS_AS(parse("p\n & W q"), ParseError);
  try {
    parse("p &\n  Z q");
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
    CHECK(std::string(e.what()).find("unknown operator") != std::string::npos);
  }
}

TEST_CASE("to_nnf pushes negation to propositions") {
  CHECK(print(nnf_of("!(p & q)")) == "!p | !q");
  CHECK(print(nnf_of("!(p U q)")) == "!p R !q");
  CHECK(print(nnf_of("!X p")) == "X!p");
  CHECK(print(nnf_of("!E G p")) == "AF!p");
  CHECK(print(nnf_of("p -> q")) == "!p | q");
  CHECK(print(nnf_of("!tt")) == "ff");
}

TEST_CASE("nnf properties on random formulas") {
  for (int i = 0; i < 500; ++i) {
    auto f = random_raw(pick(1, 20));
    auto n = to_nnf(f);
    CHECK(is_nnf(n));
    CHECK(structurally_equal(to_nnf(n), n));
    CHECK(structurally_equal(to_nnf(mk_not(to_nnf(mk_not(n)))), n));
    CHECK(formula_size(n) <= 2 * formula_size(f) + 2);
  }
}

TEST_CASE("print and parse round-trip") {
  for (int i = 0; i < 500; ++i) {
    auto f = random_raw(pick(1, 20));
    auto t = parse(print(f));
    CHECK(structurally_equal(t, parse(print(t))));
    CHECK(print(t) == print(f));
  }
}

TEST_CASE("closure of E(p U q)") {
  auto t = FormulaTable::build(nnf_of("E(p U q)"));
  std::set<std::string> got;
  for (Fid i = 0; i < t.size(); ++i) got.insert(t.print(i));
  CHECK(got == std::set<std::string>{"E(p U q)", "p U q", "X(p U q)", "p", "q"});
  CHECK(t.print(t.root()) == "E(p U q)");
  CHECK(t.untils().size() == 1);
  CHECK(t.subformula_count() == 4);
}

TEST_CASE("closure of a literal") {
  auto t = FormulaTable::build(nnf_of("p"));
  CHECK(t.size() == 1);
  CHECK(t.print(0) == "p");
}

TEST_CASE("closure of the running example") {
  auto t = FormulaTable::build(nnf_of("A F G p & E G E F !p"));
  CHECK(t.size() <= 2 * t.subformula_count());
  for (const char* s : {"XFGp", "XGp", "XGEF!p", "XF!p"}) CHECK_MESSAGE(t.find(std::string(s)).has_value(), s);
  CHECK(t.in_fl_r(*t.find(std::string("Gp"))));
  CHECK(t.in_fl_r(*t.find(std::string("XGp"))));
  CHECK_FALSE(t.in_fl_r(*t.find(std::string("FGp"))));
  CHECK(t.fragment() == Fragment::CtlStar);
}

TEST_CASE("closure invariants on random formulas") {
  for (int i = 0; i < 300; ++i) {
    auto f = to_nnf(random_raw(pick(1, 60)));
    auto t = FormulaTable::build(f);
    CHECK(t.size() <= 2 * t.subformula_count());
    CHECK(t.subformula_count() == formula_size(f));
    for (Fid id = 0; id < t.size(); ++id) {
      const auto& e = t.at(id);
      if (e.left >= 0) CHECK(static_cast<Fid>(e.left) < t.size());
      if (e.op == Op::Until || e.op == Op::Release) {
        auto x = t.next_of(id);
        REQUIRE(x.has_value());
        CHECK(t.at(*x).op == Op::Next);
        CHECK(t.at(*x).left == static_cast<int>(id));
      }
    }
    for (std::size_t k = 1; k < t.untils().size(); ++k) CHECK(t.untils()[k - 1] < t.untils()[k]);
    // hash-consing: equal printed forms share one index
    std::set<std::string> printed;
    for (Fid id = 0; id < t.size(); ++id) CHECK(printed.insert(t.print(id)).second);
  }
}

TEST_CASE("fragment classification") {
  CHECK(classify_fragment(nnf_of("A(p U q)")) == Fragment::Ctl);
  CHECK(classify_fragment(nnf_of("E((p U q) & (r R s))")) == Fragment::CtlPlus);
  CHECK(classify_fragment(nnf_of("A F G p")) == Fragment::CtlStar);
  CHECK(classify_fragment(nnf_of("E X A(p U q)")) == Fragment::Ctl);
  CHECK(classify_fragment(nnf_of("E X (p U q)")) == Fragment::CtlPlus);
  CHECK(classify_fragment(nnf_of("E (X p & F q)")) == Fragment::CtlPlus);
  CHECK(classify_fragment(nnf_of("E X X p")) == Fragment::CtlStar);
  CHECK(classify_fragment(nnf_of("p & !q")) == Fragment::Ctl);
  CHECK(classify_fragment(nnf_of("F p")) == Fragment::CtlStar);
}

TEST_CASE("fragments nest on random formulas") {
  for (int i = 0; i < 300; ++i) {
    CHECK(classify_fragment(testsupport::random_ctl(pick(1, 15))) == Fragment::Ctl);
    CHECK(classify_fragment(testsupport::random_ctlplus(pick(1, 15))) != Fragment::CtlStar);
  }
}
