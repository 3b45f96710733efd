#include <gtest/gtest.h>

#include <random>

#include "oracle/oracles.hpp"
#include "qlogic/error.hpp"
#include "qlogic/henkin.hpp"
#include "qlogic/model_search.hpp"
#include "qlogic/parser.hpp"
#include "qlogic/sat.hpp"
#include "qlogic/semantics.hpp"

using namespace qlogic;

namespace {

std::vector<Formula> parse_all(std::initializer_list<const char*> texts, Signature& sig) {
    ParseOptions opts;
    opts.mode = SymbolMode::Extend;
    std::vector<Formula> out;
    for (const char* t : texts) out.push_back(parse_formula(t, sig, opts));
    return out;
}

std::vector<std::string> printed(const std::vector<Term>& ts) {
    std::vector<std::string> out;
    for (const auto& t : ts) out.push_back(to_string(t));
    return out;
}

const PropVar* find_var(const HenkinState& st, const std::string& key) {
    auto it = st.prop_index.find(key);
    return it == st.prop_index.end() ? nullptr : &st.prop_vars[it->second];
}

bool value_of(const HenkinState& st, const std::string& key) { return (*st.valuation)[st.prop_index.at(key)]; }

}  // namespace

TEST(Dpll, EmptyAndContradictory) {
    auto empty = dpll(0, {});
    ASSERT_TRUE(empty.has_value());
    EXPECT_TRUE(empty->empty());
    EXPECT_FALSE(dpll(1, {{1}, {-1}}).has_value());
    EXPECT_FALSE(dpll(1, {{}}).has_value());
    EXPECT_THROW(dpll(1, {{2}}), Error);
}

TEST(Dpll, TrueFirstOnFreeVariables) {
    auto a = dpll(3, {{-2}});
    ASSERT_TRUE(a.has_value());
    EXPECT_EQ(*a, (std::vector<bool>{true, false, true}));
}

TEST(DpllProperty, AgreesWithEnumeration) {
    std::mt19937_64 rng(31);
    for (int round = 0; round < 400; ++round) {
        std::size_t vars = 1 + rng() % 8;
        std::size_t count = rng() % 30;
        std::vector<Clause> clauses;
        for (std::size_t c = 0; c < count; ++c) {
            Clause clause;
            std::size_t width = 1 + rng() % 3;
            for (std::size_t k = 0; k < width; ++k) {
                Literal lit = static_cast<Literal>(1 + rng() % vars);
                clause.push_back(rng() % 2 ? lit : -lit);
            }
            clauses.push_back(clause);
        }
        auto result = dpll(vars, clauses);
        ASSERT_EQ(result.has_value(), oracle::brute_force_sat(vars, clauses));
        if (result) {
            ASSERT_TRUE(satisfies(*result, clauses));
        }
    }
}

TEST(HerbrandUniverse, Examples) {
    Signature s1 = parse_signature("fun f/1\nfun c/0\n");
    EXPECT_EQ(printed(herbrand_universe(s1, {}, 1)), (std::vector<std::string>{"c", "f(c)"}));
    Signature s2 = parse_signature("fun f/1\n");
    EXPECT_EQ(printed(herbrand_universe(s2, {Variable::reserved(0)}, 2)),
              (std::vector<std::string>{"_h0", "f(_h0)", "f(f(_h0))"}));
    Signature s3 = parse_signature("fun g/2\nfun c/0\n");
    EXPECT_EQ(printed(herbrand_universe(s3, {}, 1)), (std::vector<std::string>{"c", "g(c, c)"}));
    EXPECT_EQ(printed(herbrand_universe(s3, {}, 2)),
              (std::vector<std::string>{"c", "g(c, c)", "g(c, g(c, c))", "g(g(c, c), c)", "g(g(c, c), g(c, c))"}));
}

TEST(HerbrandUniverse, NoClosedTerms) {
    Signature s = parse_signature("rel P/1\n");
    try {
        herbrand_universe(s, {}, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_STREQ(e.what(), "no closed terms");
    }
}

TEST(HenkinExpand, NegatedUniversalGetsOneWitness) {
    Signature sig;
    auto j = parse_all({"~forall x. P(x)"}, sig);
    HenkinState st = henkin_expand(j, sig);
    ASSERT_EQ(st.witnesses.size(), 1u);
    EXPECT_EQ(st.witnesses[0].witness, Variable::reserved(0));
    ASSERT_EQ(st.theta.size(), 1u);
    EXPECT_EQ(to_string(st.theta[0]), "(forall x. P(x)) | ~P(_h0)");
    ASSERT_TRUE(sat_solve(st).has_value());
    EXPECT_FALSE(value_of(st, "Q:" + alpha_key(j[0].left())));
    EXPECT_FALSE(value_of(st, "A:P(_h0)"));
}

TEST(HenkinExpand, InstantiationRefutes) {
    Signature sig;
    auto j = parse_all({"forall x. P(x)", "~P(f(c()))"}, sig);
    HenkinState st = henkin_expand(j, sig, {2, 1});
    EXPECT_NE(find_var(st, "A:P(f(c))"), nullptr);
    EXPECT_FALSE(sat_solve(st).has_value());
    EXPECT_FALSE(oracle::brute_force_sat(st.prop_vars.size(), st.clauses));
}

TEST(HenkinExpand, EmptyInputIsSatisfiable) {
    Signature sig = parse_signature("fun c/0\nrel P/1\n");
    HenkinState st = henkin_expand({}, sig);
    EXPECT_TRUE(st.theta.empty());
    ASSERT_TRUE(sat_solve(st).has_value());
    TermModel tm = build_term_model(st);
    EXPECT_EQ(tm.model.domain(), std::vector<std::string>{"c"});
    std::vector<std::size_t> c{0};
    EXPECT_EQ(tm.model.holds("P", c), tm.model.algebra().bottom());
}

TEST(HenkinExpand, ConstantFreeSignatureGetsAPlaceholder) {
    Signature sig = parse_signature("rel P/1\n");
    HenkinState st = henkin_expand({}, sig);
    EXPECT_EQ(printed(st.term_universe), std::vector<std::string>{"_h0"});
}

TEST(HenkinExpand, ThetaShapeAndWitnessFreshness) {
    Signature sig;
    auto j = parse_all({"forall x. exists y. R(x, y) & ~R(y, x)"}, sig);
    ParseOptions opts;
    opts.mode = SymbolMode::Extend;
    opts.allow_reserved = true;
    j.push_back(parse_formula("~forall _h9. P(_h9)", sig, opts));
    HenkinState st = henkin_expand(j, sig, {3, 1});
    ASSERT_EQ(st.theta.size(), st.witnesses.size());
    VariableSet earlier;
    for (const auto& p : j) {
        for (const auto& v : all_vars(p)) earlier.insert(v);
    }
    for (std::size_t i = 0; i < st.theta.size(); ++i) {
        const auto& w = st.witnesses[i];
        Formula universal = Formula::forall(w.bound, w.body);
        Formula expected = Formula::disj(universal, Formula::negation(subst_formula(w.body, single(w.bound, Term::var(w.witness)))));
        EXPECT_EQ(st.theta[i], expected);
        EXPECT_EQ(free_vars(universal).count(w.witness), 0u);
        EXPECT_EQ(earlier.count(w.witness), 0u) << w.witness.name();
        for (const auto& v : free_vars(st.theta[i])) earlier.insert(v);
        EXPECT_GT(*w.witness.reserved_index(), 9u);
    }
}

TEST(HenkinExpand, OneWitnessPerAlphaClass) {
    Signature sig;
    auto j = parse_all({"~forall x. P(x)", "~forall y. P(y)"}, sig);
    HenkinState st = henkin_expand(j, sig);
    EXPECT_EQ(st.witnesses.size(), 1u);
}

TEST(HenkinExpand, RejectsZeroRounds) {
    Signature sig;
    EXPECT_THROW(henkin_expand({}, sig, {0, 2}), Error);
}

TEST(BuildTermModel, RequiresValuation) {
    Signature sig = parse_signature("fun c/0\n");
    HenkinState st = henkin_expand({}, sig);
    EXPECT_THROW(build_term_model(st), Error);
}

TEST(BuildTermModel, NegatedUniversalModel) {
    Signature sig;
    auto j = parse_all({"~forall x. P(x)"}, sig);
    HenkinResult r = run_henkin(j, sig);
    ASSERT_EQ(r.verdict, Verdict::Sat);
    const FunctionalModel& m = r.model->model;
    EXPECT_EQ(m.domain(), std::vector<std::string>{"_h0"});
    std::vector<std::size_t> z{0};
    EXPECT_EQ(m.holds("P", z), m.algebra().bottom());
    EXPECT_EQ(eval_formula(j[0], r.model->identity, m), m.algebra().top());
    EXPECT_TRUE(r.perfect);
}

TEST(BuildTermModel, EqualityCollapsesClasses) {
    Signature sig;
    auto j = parse_all({"c() = d()", "P(c())"}, sig);
    HenkinResult r = run_henkin(j, sig);
    ASSERT_EQ(r.verdict, Verdict::Sat);
    const FunctionalModel& m = r.model->model;
    EXPECT_EQ(m.size(), 1u);
    EXPECT_TRUE(m.is_normal());
    EXPECT_EQ(r.model->element_of.at("c"), r.model->element_of.at("d"));
}

TEST(BuildTermModel, CongruenceThroughFunctions) {
    Signature sig;
    auto j = parse_all({"c() = d()", "P(f(c()))", "~P(f(d()))"}, sig);
    HenkinResult r = run_henkin(j, sig);
    EXPECT_EQ(r.verdict, Verdict::Unsat);
}

TEST(BuildTermModel, IncoherentValuationIsReported) {
    Signature sig;
    auto j = parse_all({"c() = d()"}, sig);
    HenkinState st = henkin_expand(j, sig);
    // Hand-made valuation: c = d true, P(c) true, P(d) false, with no congruence clauses consulted.
    std::size_t pc = st.prop_vars.size();
    st.prop_vars.push_back({PropKind::Atom, parse_formula("P(c)", sig, {SymbolMode::Extend, false}), "A:P(c)"});
    st.prop_vars.push_back({PropKind::Atom, parse_formula("P(d)", sig, {SymbolMode::Extend, false}), "A:P(d)"});
    st.prop_index["A:P(c)"] = pc;
    st.prop_index["A:P(d)"] = pc + 1;
    st.signature = sig;
    std::vector<bool> val(st.prop_vars.size(), true);
    val[pc + 1] = false;
    st.valuation = val;
    try {
        build_term_model(st);
        FAIL();
    } catch (const Error& e) {
        EXPECT_STREQ(e.what(), "incoherent valuation");
    }
}

TEST(RunHenkin, ForallExistsNeedsTheClosedDomain) {
    Signature sig;
    auto j = parse_all({"forall x. exists y. R(x, y)"}, sig);
    HenkinResult r = run_henkin(j, sig);
    ASSERT_EQ(r.verdict, Verdict::Sat);
    EXPECT_TRUE(r.state.domain_closed);
    EXPECT_TRUE(r.perfect);
}

TEST(RunHenkin, Deterministic) {
    Signature sig;
    auto j = parse_all({"forall x. exists y. R(x, y) & ~(x = y)", "P(c())"}, sig);
    HenkinResult a = run_henkin(j, sig);
    HenkinResult b = run_henkin(j, sig);
    EXPECT_EQ(a.state.clauses, b.state.clauses);
    EXPECT_EQ(a.state.valuation, b.state.valuation);
    ASSERT_EQ(a.model.has_value(), b.model.has_value());
    if (a.model) {
        EXPECT_EQ(to_model_text(a.model->model), to_model_text(b.model->model));
    }
}

TEST(FiniteModelSearch, Examples) {
    Signature sig;
    auto j = parse_all({"exists x. P(x)"}, sig);
    auto r = finite_model_search(j, sig, 3);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->model.size(), 1u);
    std::vector<std::size_t> m0{0};
    EXPECT_EQ(r->model.holds("P", m0), r->model.algebra().top());

    Signature sig2;
    EXPECT_FALSE(finite_model_search(parse_all({"P(c())", "~P(c())"}, sig2), sig2, 3).has_value());

    Signature sig3;
    auto r3 = finite_model_search(parse_all({"forall x. P(x)"}, sig3), sig3, 3);
    ASSERT_TRUE(r3.has_value());
    EXPECT_EQ(r3->model.domain(), std::vector<std::string>{"m0"});
}

TEST(FiniteModelSearch, NeedsTwoElementsForDistinctness) {
    Signature sig;
    auto j = parse_all({"~(x = y)", "R(x, y)", "~R(y, x)"}, sig);
    auto r = finite_model_search(j, sig, 3);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->model.size(), 2u);
    for (const auto& p : j) EXPECT_EQ(eval_formula(p, r->valuation, r->model), r->model.algebra().top());
}

TEST(FiniteModelSearch, Errors) {
    Signature sig = parse_signature("fun big/5\n");
    EXPECT_THROW(finite_model_search({}, sig, 1), Error);
    EXPECT_THROW(finite_model_search({}, Signature{}, 0), Error);
}

TEST(RunHenkin, AtomsPastTheUniverseFollowTheFallback) {
    // Instances at the deepest term mention Q(f(f(f(c)))), which the term model reads as Q at c.
    Signature sig;
    auto j = parse_all({"(forall x. P(x) -> Q(f(x))) & P(c())"}, sig);
    HenkinResult r = run_henkin(j, sig);
    ASSERT_EQ(r.verdict, Verdict::Sat) << r.note;
    EXPECT_TRUE(verify_term_model(r.state, *r.model));
}
