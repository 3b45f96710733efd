#include <gtest/gtest.h>

#include <random>

#include "oracle/oracles.hpp"
#include "qlogic/error.hpp"
#include "qlogic/generator.hpp"
#include "qlogic/model.hpp"
#include "qlogic/parser.hpp"
#include "qlogic/semantics.hpp"
#include "support.hpp"

using namespace qlogic;

namespace {

const char* kModel = R"(# two elements, P true at a only
domain a b
algebra atoms=1
equality on
fun f: a->a, b->b
fun g: a,a->a, a,b->b, b,a->b, b,b->a
fun c: ->b
rel P: a=1, b=0
rel R/2: a,b=1
)";

FunctionalModel model() { return parse_model(kModel); }

Formula f(const std::string& text) { return parse_formula(text, model().signature()); }

Term t(const std::string& text) { return parse_term(text, model().signature()); }

Valuation val(std::initializer_list<std::pair<const char*, std::size_t>> entries) {
    Valuation xi;
    for (const auto& [name, e] : entries) xi.set(Variable(name), e);
    return xi;
}

}  // namespace

TEST(ModelFormat, ParsesTablesAndDefaults) {
    FunctionalModel m = model();
    EXPECT_EQ(m.size(), 2u);
    EXPECT_TRUE(m.is_two_valued());
    std::vector<std::size_t> ab{0, 1};
    std::vector<std::size_t> ba{1, 0};
    EXPECT_EQ(m.holds("R", ab), m.algebra().top());
    EXPECT_EQ(m.holds("R", ba), m.algebra().bottom());
    EXPECT_EQ(m.apply("g", ab), 1u);
    EXPECT_EQ(parse_model(to_model_text(m)).domain(), m.domain());
    EXPECT_EQ(to_model_text(parse_model(to_model_text(m))), to_model_text(m));
}

TEST(ModelFormat, SpacedArrowsAndAtomSets) {
    FunctionalModel m = parse_model("domain a b\nalgebra atoms=2\nfun h: a -> b, b -> a\nrel P: a=[0], b=[0,1]\n");
    std::vector<std::size_t> a{0};
    EXPECT_EQ(m.apply("h", a), 1u);
    EXPECT_EQ(to_string(m.holds("P", a)), "[0]");
}

TEST(ModelFormat, Errors) {
    EXPECT_THROW(parse_model("algebra atoms=1\n"), Error);
    EXPECT_THROW(parse_model("domain a a\n"), Error);
    EXPECT_THROW(parse_model("domain a b\nfun f: a->b\n"), Error);
    EXPECT_THROW(parse_model("domain a\nfun f: a->z\n"), Error);
    EXPECT_THROW(parse_model("domain a\nrel P: a=[3]\n"), Error);
    EXPECT_THROW(parse_model("domain a\nbogus line\n"), ParseError);
}

TEST(EvalTerm, Examples) {
    FunctionalModel m = model();
    EXPECT_EQ(eval_term(t("x"), val({{"x", 0}}), m), 0u);
    EXPECT_EQ(eval_term(t("c"), {}, m), 1u);
    EXPECT_EQ(eval_term(t("f(x)"), val({{"x", 1}}), m), 1u);
    EXPECT_EQ(eval_term(t("g(c, f(x))"), val({{"x", 1}}), m), 0u);
}

TEST(EvalFormula, Examples) {
    FunctionalModel m = model();
    EXPECT_EQ(eval_formula(f("forall x. P(x)"), {}, m), m.algebra().bottom());
    EXPECT_EQ(eval_formula(f("forall x. P(x) | ~P(x)"), {}, m), m.algebra().top());
    EXPECT_EQ(eval_formula(f("x = y"), val({{"x", 1}, {"y", 1}}), m), m.algebra().top());
    EXPECT_EQ(eval_formula(f("x = y"), val({{"x", 0}, {"y", 1}}), m), m.algebra().bottom());
    EXPECT_EQ(eval_formula(f("exists x. R(x, c)"), {}, m), m.algebra().top());
}

TEST(EvalFormula, EqualityNeedsEqualitySignature) {
    FunctionalModel m = parse_model("domain a\nrel P: a=1\n");
    EXPECT_THROW(eval_formula(Formula::eq(Term::var("x"), Term::var("x")), {}, m), SignatureError);
    EXPECT_THROW(eval_formula(Formula::atom("Z", {}), {}, m), SignatureError);
}

TEST(EvalFormula, ManyValuedAlgebra) {
    FunctionalModel m = parse_model("domain a b\nalgebra atoms=2\nrel P: a=[0], b=[0,1]\n");
    Formula p = parse_formula("forall x. P(x)", m.signature());
    EXPECT_EQ(to_string(eval_formula(p, {}, m)), "[0]");
    Formula q = parse_formula("exists x. ~P(x)", m.signature());
    EXPECT_EQ(to_string(eval_formula(q, {}, m)), "[1]");
}

TEST(SemanticSubst, Examples) {
    FunctionalModel m = model();
    VariableSet xy{Variable("x"), Variable("y")};
    for_each_valuation(xy, m, [&](const Valuation& xi) {
        EXPECT_TRUE(semantic_subst_identity(f("P(x)"), {{Variable("x"), t("f(y)")}}, xi, m));
        EXPECT_TRUE(semantic_subst_identity(f("forall x. R(x, y)"), {{Variable("y"), t("x")}}, xi, m));
        EXPECT_TRUE(semantic_subst_identity(f("true"), {{Variable("y"), t("c")}}, xi, m));
    });
}

TEST(SemanticSubst, CaptureCaseAgainstOracle) {
    // (forall x. R(x, y))[x/y] must quantify a fresh variable, so it says "R(-, x) everywhere".
    FunctionalModel m = model();
    Formula substituted = subst_formula(f("forall x. R(x, y)"), {{Variable("y"), t("x")}});
    for (std::size_t a = 0; a < 2; ++a) {
        oracle::Env env{{"x", a}};
        std::uint64_t expected = oracle::eval(f("forall z. R(z, x)"), env, m);
        EXPECT_EQ(eval_formula(substituted, val({{"x", a}}), m).bits, expected);
    }
}

TEST(SupportRetraction, Examples) {
    FunctionalModel m = parse_model("domain a b\nrel P: a=1\nrel R/2: a,a=1, b,a=1\n");
    const Signature& sig = m.signature();
    VariableSet y{Variable("y")};
    EXPECT_TRUE(check_support_retraction(parse_formula("forall x. R(x, y)", sig), y, m));
    EXPECT_FALSE(check_support_retraction(parse_formula("P(x)", sig), y, m));
    EXPECT_TRUE(check_support_retraction(parse_formula("P(x) | ~P(x)", sig), y, m));
    EXPECT_THROW(check_support_retraction(parse_formula("P(x)", sig), {}, m), Error);
}

TEST(Valuation, FallbackAndValidation) {
    FunctionalModel m = model();
    Valuation xi(1);
    EXPECT_EQ(xi(Variable("anything")), 1u);
    EXPECT_EQ(eval_term(t("w"), xi, m), 1u);
    EXPECT_THROW(eval_formula(f("P(x)"), val({{"x", 5}}), m), Error);
}

TEST(EvaluatorProperty, AgreesWithOracleOnRandomModels) {
    Signature sig = parse_signature("fun f/1\nfun c/0\nrel P/1\nrel R/2\nequality on\n");
    FormulaGenerator gen(sig, GeneratorConfig{}, 21);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 150; ++i) {
        FunctionalModel m = random_model(sig, 1 + i % 3, 1 + i % 3, rng);
        Formula p = gen.formula();
        for_each_valuation(free_vars(p), m, [&](const Valuation& xi) {
            oracle::Env env;
            for (const auto& [v, a] : xi.entries()) env[v.name()] = a;
            ASSERT_EQ(eval_formula(p, xi, m).bits, oracle::eval(p, env, m)) << to_string(p);
        });
    }
}

TEST(EvaluatorProperty, FreeVariablesFormASupport) {
    Signature sig = parse_signature("fun f/1\nrel P/1\nrel R/2\nequality on\n");
    FormulaGenerator gen(sig, GeneratorConfig{}, 22);
    std::mt19937_64 rng(6);
    for (int i = 0; i < 100; ++i) {
        FunctionalModel m = random_model(sig, 2, 2, rng);
        Formula p = gen.formula();
        VariableSet all{Variable("x"), Variable("y"), Variable("z")};
        for_each_valuation(all, m, [&](const Valuation& xi) {
            Valuation other(1);
            for (const auto& v : free_vars(p)) other.set(v, xi(v));
            ASSERT_EQ(eval_formula(p, xi, m), eval_formula(p, other, m));
        });
    }
}

TEST(ForEachValuation, EnumeratesAllAssignments) {
    FunctionalModel m = model();
    std::size_t count = 0;
    for_each_valuation({Variable("x"), Variable("y"), Variable("z")}, m, [&](const Valuation&) { ++count; });
    EXPECT_EQ(count, 8u);
}

TEST(ComposeValuation, EvaluatesTheSubstitution) {
    FunctionalModel m = model();
    Valuation xi = compose_valuation({{Variable("x"), t("f(y)")}}, val({{"y", 1}}), m);
    EXPECT_EQ(xi(Variable("x")), 1u);
    EXPECT_EQ(xi(Variable("y")), 1u);
}
