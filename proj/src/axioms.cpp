#include "qlogic/axioms.hpp"

#include <optional>

#include "qlogic/error.hpp"
#include "qlogic/generator.hpp"
#include "qlogic/semantics.hpp"

namespace qlogic {

void AxiomReport::record(const std::string& law, bool holds, const std::function<std::string()>& detail) {
    ++checks_[law];
    if (!holds) violations_.push_back({law, detail()});
}

void AxiomReport::merge(const AxiomReport& other) {
    for (const auto& [law, n] : other.checks_) checks_[law] += n;
    violations_.insert(violations_.end(), other.violations_.begin(), other.violations_.end());
}

std::size_t AxiomReport::total_checks() const {
    std::size_t n = 0;
    for (const auto& [law, count] : checks_) n += count;
    return n;
}

namespace {

VariableSet instance_vars(const QuantifierInstance& in) {
    VariableSet vars{in.x, in.y, Variable("z")};
    collect_free_vars(in.p, vars);
    collect_free_vars(in.q, vars);
    for (const auto& [v, t] : in.s.bindings()) {
        vars.insert(v);
        collect_free_vars(t, vars);
    }
    return vars;
}

std::string describe(const QuantifierInstance& in) {
    return "p = " + to_string(in.p) + "; q = " + to_string(in.q) + "; s = " + to_string(in.s) + "; x = " +
           in.x.name() + "; y = " + in.y.name();
}

Variable fresh_user_variable(const VariableSet& avoid) {
    for (const char* name : {"w", "v", "u", "w1", "w2", "w3"}) {
        Variable candidate(name);
        if (avoid.count(candidate) == 0) return candidate;
    }
    return least_fresh(avoid);
}

}  // namespace

AxiomReport check_quantifier_laws(const FunctionalModel& m, const QuantifierInstance& in) {
    AxiomReport report;
    const auto& b = m.algebra();
    const Formula& p = in.p;
    const Formula& q = in.q;
    const Variable& x = in.x;
    const Variable& y = in.y;
    VariableSet vars = instance_vars(in);
    auto detail = [&] { return describe(in); };
    auto equal = [&](const Formula& l, const Formula& r) { return semantically_equal(l, r, m, vars); };
    auto leq = [&](const Formula& l, const Formula& r) { return semantically_leq(l, r, m, vars); };
    Formula all_p = Formula::forall(x, p);
    Formula all_q = Formula::forall(x, q);

    report.record("forall-distributes-over-meet",
                  equal(Formula::forall(x, Formula::conj(p, q)), Formula::conj(all_p, all_q)), detail);
    report.record("forall-below", leq(all_p, p), detail);

    for (const Variable& other : {y, Variable("z")}) {
        if (other == x) continue;
        if (equal(subst_formula(p, single(x, Term::var(other))), p)) {
            report.record("forall-vacuous-rename", equal(all_p, p), detail);
        }
    }
    if (semantically_independent(p, x, m)) report.record("forall-vacuous-independent", equal(all_p, p), detail);

    // Renaming the binder through a substitution: y' must be independent of s(z) for every z in a support of p.
    {
        VariableSet support = free_vars(p);
        support.insert(x);
        VariableSet candidates = vars;
        candidates.insert(fresh_user_variable(vars));
        for (const auto& target : candidates) {
            bool independent = true;
            for (const auto& z : support) {
                if (free_vars(in.s(z)).count(target) != 0) independent = false;
            }
            if (!independent) continue;
            Formula lhs = subst_formula(all_p, in.s);
            Formula rhs = Formula::forall(target, subst_formula(p, update_subst(in.s, x, Term::var(target))));
            report.record("forall-substitution-rename", equal(lhs, rhs), [&] {
                return describe(in) + "; binder " + target.name();
            });
        }
    }

    {
        Formula upper = Formula::disj(p, q);
        report.record("forall-monotone", leq(all_p, Formula::forall(x, upper)), detail);
        if (leq(p, q)) report.record("forall-monotone", leq(all_p, all_q), detail);
    }

    {
        std::vector<Term> instances{Term::var(y), Term::var(Variable("z"))};
        for (const auto& [v, t] : in.s.bindings()) instances.push_back(t);
        for (const auto& t : instances) {
            report.record("forall-below-instance", leq(all_p, subst_formula(p, single(x, t))),
                          [&] { return describe(in) + "; t = " + to_string(t); });
        }
    }

    // Greatest x-independent lower bound, checked pointwise against every candidate value.
    {
        VariableSet rest = vars;
        rest.erase(x);
        bool holds = true;
        for_each_valuation(rest, m, [&](const Valuation& xi) {
            if (!holds) return;
            std::vector<Element> column;
            for (std::size_t a = 0; a < m.size(); ++a) column.push_back(eval_formula(p, xi.with(x, a), m));
            Element bound = eval_formula(all_p, xi.with(x, 0), m);
            for (std::size_t a = 0; a < m.size(); ++a) {
                if (eval_formula(all_p, xi.with(x, a), m) != bound) holds = false;
                if (!b.leq(bound, column[a])) holds = false;
            }
            if (b.atom_count() <= 8) {
                for (auto candidate : b.elements()) {
                    bool lower = true;
                    for (auto v : column) lower = lower && b.leq(candidate, v);
                    if (lower && !b.leq(candidate, bound)) holds = false;
                }
            }
        });
        report.record("forall-greatest-independent-lower-bound", holds, detail);
    }

    {
        VariableSet support = free_vars(p);
        support.erase(x);
        bool holds = semantically_independent(all_p, x, m);
        if (!support.empty()) holds = holds && check_support_retraction(all_p, support, m);
        else {
            std::optional<Element> constant;
            for_each_valuation(vars, m, [&](const Valuation& xi) {
                Element v = eval_formula(all_p, xi, m);
                if (!constant) constant = v;
                holds = holds && v == *constant;
            });
        }
        report.record("forall-support", holds, detail);
    }

    if (!(x == y)) {
        report.record("forall-commute",
                      equal(Formula::forall(x, Formula::forall(y, p)), Formula::forall(y, Formula::forall(x, p))),
                      detail);
    }

    // Generalization over a variable that neither side depends on.
    {
        Variable w = fresh_user_variable(vars);
        VariableSet with_w = vars;
        with_w.insert(w);
        Formula q_at_w = subst_formula(q, single(x, Term::var(w)));
        for (const Formula& lower : {p, Formula::conj(p, all_q)}) {
            if (!semantically_leq(lower, q_at_w, m, with_w)) continue;
            bool holds = leq(lower, all_q);
            for (const Variable& z : {x, y, Variable("z")}) {
                holds = holds && leq(lower, subst_formula(q, single(x, Term::var(z))));
            }
            report.record("generalization", holds, [&] { return describe(in) + "; lower = " + to_string(lower); });
        }
    }

    // (forall x. p) s equals the meet of p s[d/x] over every element d of the domain.
    {
        VariableSet avoid = vars;
        for (const auto& v : all_vars(p)) avoid.insert(v);
        Variable d = least_fresh(avoid);
        Formula lhs = subst_formula(all_p, in.s);
        Formula body = subst_formula(p, update_subst(in.s, x, Term::var(d)));
        bool holds = true;
        for_each_valuation(vars, m, [&](const Valuation& xi) {
            if (!holds) return;
            Element meet = b.top();
            for (std::size_t a = 0; a < m.size(); ++a) meet = b.meet(meet, eval_formula(body, xi.with(d, a), m));
            if (meet != eval_formula(lhs, xi, m)) holds = false;
        });
        report.record("forall-meet-of-instances", holds, detail);
    }

    {
        bool holds = true;
        for_each_valuation(vars, m, [&](const Valuation& xi) {
            holds = holds && semantic_subst_identity(p, in.s, xi, m) && semantic_subst_identity(all_p, in.s, xi, m);
        });
        report.record("substitution-bridge", holds, detail);
    }
    return report;
}

AxiomReport check_equality_laws(const FunctionalModel& m, const QuantifierInstance& in) {
    if (!m.signature().with_equality()) throw SignatureError("equality laws need a signature with equality");
    AxiomReport report;
    const auto& b = m.algebra();
    const Formula& p = in.p;
    const Variable& x = in.x;
    const Variable& y = in.y;
    VariableSet vars = instance_vars(in);
    auto detail = [&] { return describe(in); };
    auto equal = [&](const Formula& l, const Formula& r) { return semantically_equal(l, r, m, vars); };
    auto leq = [&](const Formula& l, const Formula& r) { return semantically_leq(l, r, m, vars); };
    Term tx = Term::var(x);
    Term ty = Term::var(y);
    Formula exy = Formula::eq(tx, ty);

    {
        std::vector<Term> terms{tx, ty};
        for (const auto& [v, t] : in.s.bindings()) terms.push_back(t);
        for (const auto& l : terms) {
            for (const auto& r : terms) {
                Formula substituted = subst_formula(Formula::eq(l, r), in.s);
                bool holds = substituted == Formula::eq(subst_term(l, in.s), subst_term(r, in.s));
                for_each_valuation(vars, m, [&](const Valuation& xi) {
                    holds = holds && semantic_subst_identity(Formula::eq(l, r), in.s, xi, m);
                });
                report.record("eq-substitution", holds, detail);
            }
            report.record("eq-reflexive", equal(Formula::eq(l, l), Formula::top()), detail);
        }
    }

    if (!(x == y)) {
        Formula p_xy = subst_formula(p, single(y, tx));
        report.record("eq-replacement", leq(Formula::conj(p, exy), p_xy), detail);
        report.record("eq-symmetric-replacement", equal(Formula::conj(p, exy), Formula::conj(p_xy, exy)), detail);

        report.record("eq-least-identifying", equal(subst_formula(exy, single(x, ty)), Formula::top()), detail);
        Formula identifying = Formula::disj(p, Formula::negation(subst_formula(p, single(x, ty))));
        for (const Formula& candidate : {p, identifying}) {
            if (!equal(subst_formula(candidate, single(x, ty)), Formula::top())) continue;
            report.record("eq-least-identifying", leq(exy, candidate),
                          [&] { return describe(in) + "; candidate = " + to_string(candidate); });
        }
    }

    {
        bool holds = true;
        for (std::size_t a = 0; a < m.size(); ++a) {
            for (std::size_t c = 0; c < m.size(); ++c) {
                Valuation xi;
                xi.set(x, a);
                xi.set(y, c);
                Element e = eval_formula(exy, xi, m);
                // With x and y the same variable the second binding wins, so x = x is top.
                bool same = x == y || a == c;
                if (e != (same ? b.top() : b.bottom())) holds = false;
            }
        }
        report.record("eq-diagonal", holds, detail);
    }
    return report;
}

namespace {

template <typename Check>
AxiomReport sample_instances(const FunctionalModel& m, std::size_t samples, std::uint64_t seed, Check check) {
    GeneratorConfig config;
    config.max_depth = 3;
    config.max_binders = 2;
    FormulaGenerator gen(m.signature(), config, seed);
    AxiomReport report;
    for (std::size_t i = 0; i < samples; ++i) {
        QuantifierInstance in{gen.formula(), gen.formula(), gen.substitution(2), gen.variable(), gen.variable()};
        report.merge(check(m, in));
    }
    return report;
}

}  // namespace

AxiomReport check_quantifier_axioms(const FunctionalModel& m, std::size_t samples, std::uint64_t seed) {
    return sample_instances(m, samples, seed, check_quantifier_laws);
}

AxiomReport check_equality_axioms(const FunctionalModel& m, std::size_t samples, std::uint64_t seed) {
    return sample_instances(m, samples, seed, check_equality_laws);
}

}  // namespace qlogic
