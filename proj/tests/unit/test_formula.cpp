#include <gtest/gtest.h>

#include "oracle/oracles.hpp"
#include "qlogic/error.hpp"
#include "qlogic/formula.hpp"
#include "qlogic/generator.hpp"
#include "qlogic/parser.hpp"

using namespace qlogic;

namespace {

Signature formula_sig() {
    return parse_signature("fun f/1\nfun g/2\nfun c/0\nrel P/1\nrel Q/1\nrel R/2\nrel S/2\nequality on\n");
}

Formula f(const std::string& text) {
    Signature sig = formula_sig();
    ParseOptions opts;
    opts.allow_reserved = true;
    return parse_formula(text, sig, opts);
}

Term t(const std::string& text) { return parse_term(text, formula_sig()); }

Variable v(const std::string& name) { return Variable(name); }

}  // namespace

TEST(SubstFormula, RenamesBinderToAvoidCapture) {
    Formula r = subst_formula(f("forall x. S(x, y)"), {{v("y"), t("x")}});
    EXPECT_EQ(r, f("forall _h0. S(_h0, x)"));
}

TEST(SubstFormula, IdentityGivesAlphaEquivalentFormula) {
    Formula p = f("forall x. P(x)");
    Formula r = subst_formula(p, {});
    EXPECT_TRUE(alpha_eq(r, p));
    EXPECT_EQ(r, f("forall _h0. P(_h0)"));
}

TEST(SubstFormula, CommutesWithConnectives) {
    EXPECT_EQ(subst_formula(f("P(x) & Q(y)"), {{v("x"), t("f(y)")}}), f("P(f(y)) & Q(y)"));
    EXPECT_EQ(subst_formula(f("~(x = y) | true"), {{v("y"), t("c")}}), f("~(x = c) | true"));
}

TEST(SubstFormula, BinderSkipsReservedNamesFreeInTheRange) {
    Formula r = subst_formula(f("forall x. R(x, y)"), {{v("y"), Term::var(Variable::reserved(0))}});
    EXPECT_EQ(r, f("forall _h1. R(_h1, _h0)"));
}

TEST(SubstFormula, BoundVariableIsNotReplaced) {
    Formula r = subst_formula(f("forall x. P(x)"), {{v("x"), t("c")}});
    EXPECT_TRUE(alpha_eq(r, f("forall x. P(x)")));
}

TEST(AlphaEq, Examples) {
    EXPECT_TRUE(alpha_eq(f("forall x. P(x)"), f("forall y. P(y)")));
    EXPECT_FALSE(alpha_eq(f("forall x. P(x)"), f("forall x. Q(x)")));
    EXPECT_TRUE(alpha_eq(f("forall x. forall y. R(x, y)"), f("forall y. forall x. R(y, x)")));
    EXPECT_FALSE(alpha_eq(f("forall x. forall y. R(x, y)"), f("forall x. forall y. R(y, x)")));
    EXPECT_FALSE(alpha_eq(f("forall x. R(x, y)"), f("forall y. R(y, y)")));
}

TEST(AlphaEq, FreeReservedNamesStayApart) {
    EXPECT_FALSE(alpha_eq(f("forall x. R(x, _h0)"), f("forall x. R(x, _h1)")));
    EXPECT_TRUE(alpha_eq(f("forall _h0. R(_h0, _h1)"), f("forall x. R(x, _h1)")));
}

TEST(FreeVars, Formulas) {
    EXPECT_EQ(free_vars(f("forall x. R(x, y)")), (VariableSet{v("y")}));
    EXPECT_EQ(free_vars(f("P(x) | ~P(x)")), (VariableSet{v("x")}));
    EXPECT_TRUE(free_vars(f("true")).empty());
}

TEST(FormulaMetrics, DepthAndBinders) {
    Formula p = f("forall x. (P(x) & forall y. R(x, y))");
    EXPECT_EQ(quantifier_depth(p), 2u);
    EXPECT_EQ(binder_count(p), 2u);
    EXPECT_EQ(quantifier_depth(f("P(c)")), 0u);
}

TEST(CheckFormula, RejectsEqualityWithoutEqualityAndBadArity) {
    Signature no_eq = parse_signature("rel P/1\n");
    EXPECT_THROW(check_formula(Formula::eq(Term::var("x"), Term::var("y")), no_eq), SignatureError);
    EXPECT_THROW(check_formula(Formula::atom("P", {}), no_eq), SignatureError);
    EXPECT_THROW(check_formula(Formula::atom("Z", {Term::var("x")}), no_eq), SignatureError);
}

TEST(Printer, RoundTripsThroughTheParser) {
    for (const char* text : {"forall x. P(x) & Q(y)", "(forall x. P(x)) & Q(y)", "~(x = y)", "P(x) | Q(x) & P(c)",
                             "(P(x) | Q(x)) & P(c)", "P(x) -> Q(x) -> P(c)", "~forall x. ~R(x, f(x))",
                             "forall x y. R(x, y) | x = g(y, c)", "(P(x) | Q(x)) | P(c)", "P(x) | (Q(x) | P(c))"}) {
        Formula p = f(text);
        EXPECT_EQ(f(to_string(p)), p) << text << " printed as " << to_string(p);
    }
}

TEST(Printer, ParenthesizesQuantifiersUnderOperators) {
    EXPECT_EQ(to_string(f("(forall x. P(x)) & Q(y)")), "(forall x. P(x)) & Q(y)");
    EXPECT_EQ(to_string(f("forall x. P(x) & Q(y)")), "forall x. P(x) & Q(y)");
    EXPECT_EQ(to_string(f("exists x. P(x)")), "~(forall x. ~P(x))");
}

TEST(CloneLawsProperty, FormulasUpToAlpha) {
    GeneratorConfig config;
    config.max_depth = 4;
    config.max_binders = 3;
    FormulaGenerator gen(formula_sig(), config, 11);
    for (int i = 0; i < 300; ++i) {
        Formula p = gen.formula();
        Substitution s = gen.substitution(3);
        Substitution u = gen.substitution(3);
        ASSERT_TRUE(alpha_eq(subst_formula(p, {}), p)) << to_string(p);
        Formula lhs = subst_formula(subst_formula(p, s), u);
        Formula rhs = subst_formula(p, compose_subst(s, u));
        ASSERT_TRUE(alpha_eq(lhs, rhs)) << to_string(p) << " / " << to_string(s) << " / " << to_string(u);
        ASSERT_TRUE(oracle::alpha_equivalent(lhs, rhs));
    }
}

TEST(AlphaEqProperty, AgreesWithDeBruijnOracle) {
    FormulaGenerator gen(formula_sig(), GeneratorConfig{}, 12);
    for (int i = 0; i < 400; ++i) {
        Formula p = gen.formula();
        Formula q = i % 3 == 0 ? subst_formula(p, gen.substitution(1)) : gen.formula();
        ASSERT_EQ(alpha_eq(p, q), oracle::alpha_equivalent(p, q)) << to_string(p) << " vs " << to_string(q);
        ASSERT_EQ(alpha_key(p) == alpha_key(q), alpha_eq(p, q));
        ASSERT_TRUE(oracle::alpha_equivalent(alpha_normal_form(p), p));
    }
}

TEST(FreeVarsProperty, SubstitutionImage) {
    FormulaGenerator gen(formula_sig(), GeneratorConfig{}, 13);
    for (int i = 0; i < 400; ++i) {
        Formula p = gen.formula();
        Substitution s = gen.substitution(3);
        VariableSet expected;
        for (const auto& x : free_vars(p)) collect_free_vars(s(x), expected);
        ASSERT_EQ(free_vars(subst_formula(p, s)), expected) << to_string(p) << " / " << to_string(s);
    }
}

TEST(FreeVarsProperty, InjectiveRenamingPreservesFreeVariableCount) {
    FormulaGenerator gen(formula_sig(), GeneratorConfig{}, 14);
    Substitution rename{{v("x"), t("y")}, {v("y"), t("z")}, {v("z"), t("x")}};
    for (int i = 0; i < 200; ++i) {
        Formula p = gen.formula();
        ASSERT_EQ(free_vars(subst_formula(p, rename)).size(), free_vars(p).size());
    }
}
