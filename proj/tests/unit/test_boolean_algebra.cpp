#include <gtest/gtest.h>

#include "oracle/oracles.hpp"
#include "qlogic/boolean_algebra.hpp"
#include "qlogic/error.hpp"
#include "qlogic/parser.hpp"

using namespace qlogic;

namespace {

// Atoms 0, 1, 2 stand for the points 1, 2, 3 of a three-point set.
Element set(std::initializer_list<unsigned> atoms) {
    Element e;
    for (auto a : atoms) e.bits |= std::uint64_t{1} << a;
    return e;
}

}  // namespace

TEST(BooleanAlgebra, LatticeLawsOnAllElements) {
    for (unsigned n = 1; n <= 4; ++n) {
        FiniteBooleanAlgebra b(n);
        EXPECT_NE(b.bottom(), b.top());
        for (auto p : b.elements()) {
            EXPECT_EQ(b.complement(b.complement(p)), p);
            EXPECT_EQ(b.meet(p, b.complement(p)), b.bottom());
            EXPECT_EQ(b.join(p, b.complement(p)), b.top());
            for (auto q : b.elements()) {
                EXPECT_EQ(b.complement(b.meet(p, q)), b.join(b.complement(p), b.complement(q)));
                EXPECT_EQ(b.leq(p, q), b.meet(p, q) == p);
            }
        }
    }
}

TEST(BooleanAlgebra, EmptyMeetAndJoin) {
    FiniteBooleanAlgebra b(3);
    EXPECT_EQ(b.meet_all({}), b.top());
    EXPECT_EQ(b.join_all({}), b.bottom());
    EXPECT_THROW(FiniteBooleanAlgebra(0), Error);
    EXPECT_THROW(FiniteBooleanAlgebra(65), Error);
}

TEST(BooleanAlgebra, ElementTextRoundTrip) {
    FiniteBooleanAlgebra b(3);
    EXPECT_EQ(to_string(set({0, 2})), "[0,2]");
    EXPECT_EQ(to_string(b.bottom()), "[]");
    EXPECT_EQ(parse_element("[0,2]", b), set({0, 2}));
    EXPECT_EQ(parse_element("1", b), b.top());
    EXPECT_THROW(parse_element("[3]", b), Error);
}

TEST(GeneratedFilter, SingleElementGivesUpSet) {
    FiniteBooleanAlgebra b(3);
    Filter f = generated_filter(b, {set({0, 1})});
    EXPECT_EQ(f.generator(), set({0, 1}));
    EXPECT_TRUE(f.contains(b.top()));
    EXPECT_FALSE(f.contains(set({0})));
}

TEST(GeneratedFilter, EmptySetGivesTopOnly) {
    FiniteBooleanAlgebra b(2);
    Filter f = generated_filter(b, {});
    EXPECT_EQ(f.members(), std::vector<Element>{b.top()});
}

TEST(GeneratedFilter, ThreePointExampleMatchesEnumeration) {
    FiniteBooleanAlgebra b(3);
    Filter f = generated_filter(b, {set({0, 1}), set({1, 2})});
    EXPECT_EQ(f.members(), (std::vector<Element>{set({1}), set({0, 1}), set({1, 2}), set({0, 1, 2})}));
    oracle::Family expected = oracle::generated_by_definition(3, {set({0, 1}).bits, set({1, 2}).bits});
    oracle::Family got = 0;
    for (auto e : f.members()) got |= oracle::Family{1} << e.bits;
    EXPECT_EQ(got, expected);
}

TEST(IsConsistent, Examples) {
    FiniteBooleanAlgebra b(3);
    Element p = set({0});
    EXPECT_FALSE(is_consistent(b, {p, b.complement(p)}));
    EXPECT_TRUE(is_consistent(b, {b.top()}));
    EXPECT_TRUE(is_consistent(b, {set({0, 1}), set({1, 2})}));
}

TEST(ExtendToUltrafilter, PicksLeastAtom) {
    FiniteBooleanAlgebra b(2);
    Ultrafilter u = extend_to_ultrafilter(generated_filter(b, {}));
    EXPECT_EQ(u.atom_index(), 0u);
    EXPECT_EQ(u.filter().generator(), set({0}));
}

TEST(ExtendToUltrafilter, UltrafilterIsFixedAndImproperIsRejected) {
    FiniteBooleanAlgebra b(3);
    Ultrafilter u = extend_to_ultrafilter(Filter(b, set({2})));
    EXPECT_EQ(u.atom_index(), 2u);
    try {
        extend_to_ultrafilter(Filter(b, b.bottom()));
        FAIL();
    } catch (const Error& e) {
        EXPECT_STREQ(e.what(), "inconsistent");
    }
}

TEST(Ultrafilter, DichotomyAndValidation) {
    FiniteBooleanAlgebra b(3);
    Ultrafilter u = Ultrafilter::principal(b, 1);
    for (auto p : b.elements()) EXPECT_NE(u.contains(p), u.contains(b.complement(p)));
    EXPECT_THROW(Ultrafilter(Filter(b, set({0, 1}))), Error);
    EXPECT_THROW(Ultrafilter::principal(b, 3), Error);
}

TEST(Quotient, TrivialFilterIsIsomorphism) {
    FiniteBooleanAlgebra b(3);
    Quotient q(Filter(b, b.top()));
    EXPECT_EQ(q.algebra().atom_count(), 3u);
    for (auto p : b.elements()) EXPECT_EQ(q.project(p), p);
}

TEST(Quotient, UltrafilterGivesTwo) {
    FiniteBooleanAlgebra b(3);
    Quotient q(Filter(b, set({1})));
    EXPECT_EQ(q.algebra().atom_count(), 1u);
    for (auto p : b.elements()) EXPECT_EQ(q.project(p) == q.algebra().top(), (p.bits & 2) != 0);
}

TEST(Quotient, ThreePointExampleHasTwoAtoms) {
    FiniteBooleanAlgebra b(3);
    Filter i(b, set({1, 2}));
    Quotient q(i);
    EXPECT_EQ(q.algebra().atom_count(), 2u);
    // Classes by enumeration: p ~ r iff their biconditional is in I.
    std::set<std::uint64_t> classes;
    for (auto p : b.elements()) {
        std::uint64_t cls = 0;
        for (auto r : b.elements()) {
            Element bicond = b.meet(b.join(b.complement(p), r), b.join(b.complement(r), p));
            if (i.contains(bicond)) cls |= std::uint64_t{1} << r.bits;
        }
        classes.insert(cls);
        for (auto r : b.elements()) {
            if ((cls >> r.bits) & 1) {
                EXPECT_EQ(q.project(p), q.project(r));
            }
        }
    }
    EXPECT_EQ(classes.size(), 4u);
    EXPECT_THROW(Quotient(Filter(b, b.bottom())), Error);
}

TEST(Quotient, ProjectionIsHomomorphism) {
    for (unsigned n = 1; n <= 4; ++n) {
        FiniteBooleanAlgebra b(n);
        for (auto g : b.elements()) {
            if (g == b.bottom()) continue;
            Quotient q(Filter(b, g));
            const auto& qa = q.algebra();
            EXPECT_EQ(q.project(b.top()), qa.top());
            EXPECT_EQ(q.project(b.bottom()), qa.bottom());
            EXPECT_EQ(q.project(g), qa.top());
            for (auto p : b.elements()) {
                EXPECT_EQ(q.project(b.complement(p)), qa.complement(q.project(p)));
                for (auto r : b.elements()) {
                    EXPECT_EQ(q.project(b.meet(p, r)), qa.meet(q.project(p), q.project(r)));
                    EXPECT_EQ(q.project(b.join(p, r)), qa.join(q.project(p), q.project(r)));
                }
            }
        }
    }
}

TEST(PerfectFragment, Examples) {
    FiniteBooleanAlgebra b(2);
    Ultrafilter u = Ultrafilter::principal(b, 0);
    Signature sig = parse_signature("rel P/1\nfun c/0\nfun d/0\n");
    EXPECT_TRUE(is_perfect_on_fragment(u, {}, [&](const Formula&) { return b.bottom(); }));

    // P(c) is false at atom 0, so ~P(c) lies in u and c witnesses (x, P(x)).
    auto embed = [&](const Formula& p) -> Element {
        std::function<Element(const Formula&)> go = [&](const Formula& q) -> Element {
            switch (q.kind()) {
                case FormulaKind::Atom: return to_string(q) == "P(c)" ? set({1}) : b.top();
                case FormulaKind::Forall: return b.bottom();
                case FormulaKind::Not: return b.complement(go(q.left()));
                case FormulaKind::Or: return b.join(go(q.left()), go(q.right()));
                case FormulaKind::And: return b.meet(go(q.left()), go(q.right()));
                default: return b.top();
            }
        };
        return go(p);
    };
    FragmentEntry entry{Variable("x"), parse_formula("P(x)", sig), {parse_term("d", sig), parse_term("c", sig)}};
    EXPECT_TRUE(is_perfect_on_fragment(u, {entry}, embed));
    entry.candidates = {parse_term("d", sig)};
    EXPECT_FALSE(is_perfect_on_fragment(u, {entry}, embed));
}

// Filters by definition, for every algebra with up to four atoms.
TEST(FilterProperty, ProperFiltersAreIntersectionsOfUltrafilters) {
    for (unsigned n = 1; n <= 4; ++n) {
        std::uint64_t elements = oracle::element_count(n);
        std::vector<oracle::Family> ultras;
        std::vector<oracle::Family> proper;
        for (oracle::Family fam = 1; fam < (oracle::Family{1} << elements); ++fam) {
            if (!oracle::is_filter(n, fam)) continue;
            if (oracle::is_ultrafilter(n, fam)) ultras.push_back(fam);
            if (!oracle::in(fam, 0)) proper.push_back(fam);
        }
        EXPECT_EQ(ultras.size(), n);
        for (auto fam : proper) {
            oracle::Family meet = ~oracle::Family{0};
            for (auto u : ultras) {
                if ((fam & ~u) == 0) meet &= u;
            }
            EXPECT_EQ(meet, fam);
        }
    }
}
