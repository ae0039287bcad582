#include "ctlev/formula.hpp"

#include <gtest/gtest.h>

#include "ctlev/oracle.hpp"
#include "support/corpus.hpp"

namespace ctlev {
namespace {

Formula P(const char* name) { return Formula::prop(name); }

TEST(Parse, TrueIsNullary) {
  Formula f = parse_formula("true");
  EXPECT_EQ(f.op(), Op::True);
  EXPECT_TRUE(f.children().empty());
  EXPECT_TRUE(f.is_compound());
}

TEST(Parse, GameFormulas) {
  EXPECT_EQ(parse_formula("EG (!win && EF win)"),
            Formula::unary(Op::EG, Formula::conj(Formula::negation(P("win")), Formula::unary(Op::EF, P("win")))));
  EXPECT_EQ(parse_formula("E [!d1 U win]"), Formula::until(Op::EU, Formula::negation(P("d1")), P("win")));
}

TEST(Parse, MissingOperand) {
  try {
    parse_formula("EX");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 3);
  }
}

TEST(Parse, ReportsPositionAndToken) {
  try {
    parse_formula("p &&\n  q )");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 5);
    EXPECT_EQ(e.token(), ")");
  }
  EXPECT_THROW(parse_formula("E[p q]"), ParseError);
  EXPECT_THROW(parse_formula("EG"), ParseError);
  EXPECT_THROW(parse_formula("p $ q"), ParseError);
  EXPECT_THROW(parse_formula("U"), ParseError);
}

TEST(Parse, Precedence) {
  // ! binds tighter than &&, which binds tighter than ||.
  EXPECT_EQ(parse_formula("!p && q || r"),
            Formula::disj(Formula::conj(Formula::negation(P("p")), P("q")), P("r")));
  EXPECT_EQ(parse_formula("p || q && r"), Formula::disj(P("p"), Formula::conj(P("q"), P("r"))));
  EXPECT_EQ(parse_formula("EX p && q"), Formula::conj(Formula::unary(Op::EX, P("p")), P("q")));
  EXPECT_EQ(parse_formula("A[p U q || r]"), Formula::until(Op::AU, P("p"), Formula::disj(P("q"), P("r"))));
}

TEST(Parse, QuantifierLettersAreIdentifiersOtherwise) {
  EXPECT_EQ(parse_formula("E && A"), Formula::conj(P("E"), P("A")));
  EXPECT_EQ(parse_formula("EXa"), P("EXa"));
}

TEST(Parse, SameTextSameNode) {
  EXPECT_EQ(parse_formula("E[p U q]"), parse_formula("E [ p U q ]"));
  EXPECT_EQ(std::hash<Formula>{}(parse_formula("EX p")), std::hash<Formula>{}(parse_formula("EX  p")));
}

TEST(Print, RoundTripsOnRandomFormulas) {
  testing::Rng rng(3);
  const auto ps = testing::props(3);
  for (int i = 0; i < 2000; ++i) {
    const Formula f = testing::random_formula(rng, ps, 6);
    EXPECT_EQ(parse_formula(f.to_string()), f) << f.to_string();
  }
}

TEST(Print, MinimalParentheses) {
  EXPECT_EQ(parse_formula("(p || q) && r").to_string(), "(p || q) && r");
  EXPECT_EQ(parse_formula("p || (q || r)").to_string(), "p || (q || r)");
  EXPECT_EQ(parse_formula("(p || q) || r").to_string(), "p || q || r");
  EXPECT_EQ(parse_formula("EG (!win && EF win)").to_string(), "EG (!win && EF win)");
  EXPECT_EQ(parse_formula("!E[true U !p]").to_string(), "!E[true U !p]");
}

TEST(Desugar, Rules) {
  EXPECT_EQ(desugar(parse_formula("EX p")), parse_formula("EX p"));
  EXPECT_EQ(desugar(parse_formula("EF win")), parse_formula("E[true U win]"));
  EXPECT_EQ(desugar(parse_formula("AG p")), parse_formula("!E[true U !p]"));
  EXPECT_EQ(desugar(parse_formula("false")), parse_formula("!true"));
  EXPECT_EQ(desugar(parse_formula("p && q")), parse_formula("!(!p || !q)"));
  EXPECT_EQ(desugar(parse_formula("AX p")), parse_formula("!EX !p"));
  EXPECT_EQ(desugar(parse_formula("AF p")), parse_formula("!EG !p"));
  EXPECT_EQ(desugar(parse_formula("A[p U q]")), parse_formula("!(E[!q U !(!!p || !!q)] || EG !q)"));
}

TEST(Desugar, CoreAndIdempotent) {
  testing::Rng rng(5);
  const auto ps = testing::props(3);
  for (int i = 0; i < 1000; ++i) {
    const Formula f = testing::random_formula(rng, ps, 5);
    const Formula d = desugar(f);
    EXPECT_TRUE(d.is_core()) << f.to_string();
    EXPECT_TRUE(subformula_closure(d).core_only());
    EXPECT_EQ(desugar(d), d);
  }
}

// Universal readings evaluated directly over maximal paths, compared with the
// existential core forms the rewrites produce.
TEST(Desugar, PreservesPathSemantics) {
  testing::Rng rng(17);
  const auto ps = testing::props(2);
  const Formula p = P("p"), q = P("q");
  for (int i = 0; i < 200; ++i) {
    const Model m = testing::random_kripke(rng, 5, 8, ps);
    NaiveSemantics naive(m);
    auto holds = [&](StateIndex s, const Formula& f) { return *m.label(s, f); };
    for (StateIndex s = 0; s < m.size(); ++s) {
      const auto paths = maximal_lassos(m, m.id(s), 2 * m.size());
      bool ag = true, af = true, au = true;
      for (const Path& path : paths) {
        bool hit_q = false, until = false;
        for (StateIndex x : path.stem) {
          ag = ag && holds(x, p);
          hit_q = hit_q || holds(x, q);
        }
        for (StateIndex x : path.stem) {
          if (holds(x, q)) {
            until = true;
            break;
          }
          if (!holds(x, p)) break;
        }
        af = af && hit_q;
        au = au && until;
      }
      bool ax = true;
      for (StateIndex t : m.successors(s)) ax = ax && holds(t, p);

      EXPECT_EQ(naive.sat(s, desugar(parse_formula("AG p"))), ag);
      EXPECT_EQ(naive.sat(s, desugar(parse_formula("AF q"))), af);
      EXPECT_EQ(naive.sat(s, desugar(parse_formula("A[p U q]"))), au);
      EXPECT_EQ(naive.sat(s, desugar(parse_formula("AX p"))), ax);
      EXPECT_EQ(naive.sat(s, desugar(parse_formula("p && !q"))), holds(s, p) && !holds(s, q));
      EXPECT_FALSE(naive.sat(s, desugar(parse_formula("false"))));
    }
  }
}

TEST(Closure, Examples) {
  EXPECT_EQ(subformula_closure(P("p")), FormulaSet({P("p")}));
  EXPECT_EQ(subformula_closure(parse_formula("!p")), FormulaSet({P("p"), parse_formula("!p")}));
  EXPECT_EQ(subformula_closure(parse_formula("E[!d1 U win]")),
            FormulaSet({P("d1"), parse_formula("!d1"), P("win"), parse_formula("E[!d1 U win]")}));
}

TEST(Closure, Properties) {
  testing::Rng rng(9);
  const auto ps = testing::props(3);
  for (int i = 0; i < 1000; ++i) {
    const Formula f = testing::random_formula(rng, ps, 5);
    const FormulaSet c = subformula_closure(f);
    EXPECT_TRUE(c.contains(f));
    EXPECT_TRUE(c.is_subformula_closed());
    EXPECT_LE(c.size(), f.node_count());
    EXPECT_EQ(c.depth(), f.depth());
    for (std::size_t k = 1; k < c.size(); ++k) EXPECT_LE(c.members()[k - 1].depth(), c.members()[k].depth());
  }
}

TEST(Depth, Examples) {
  EXPECT_EQ(P("p").depth(), 1);
  EXPECT_EQ(parse_formula("!p").depth(), 2);
  EXPECT_EQ(parse_formula("p || EX q").depth(), 3);
}

TEST(Make, ChecksArity) {
  EXPECT_THROW(Formula::make(Op::EU, {P("p")}), Error);
  EXPECT_THROW(Formula::make(Op::True, {P("p")}), Error);
}

}  // namespace
}  // namespace ctlev
