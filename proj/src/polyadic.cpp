#include "qlogic/polyadic.hpp"

#include <algorithm>

#include "qlogic/generator.hpp"
#include "qlogic/semantics.hpp"

namespace qlogic {

Formula forall_set(const VariableSet& u, const Formula& p) {
    VariableSet free = free_vars(p);
    std::vector<Variable> order;
    for (const auto& x : u) {
        if (free.count(x) != 0) order.push_back(x);
    }
    return forall_sequence(order, p);
}

Formula forall_sequence(const std::vector<Variable>& order, const Formula& p) {
    Formula out = p;
    for (auto it = order.rbegin(); it != order.rend(); ++it) out = Formula::forall(*it, std::move(out));
    return out;
}

namespace {

std::string describe(const PolyadicInstance& in) {
    auto set_text = [](const VariableSet& s) {
        std::string out = "{";
        for (const auto& x : s) out += (out.size() > 1 ? "," : "") + x.name();
        return out + "}";
    };
    return "p = " + to_string(in.p) + "; q = " + to_string(in.q) + "; s = " + to_string(in.s) + "; U = " +
           set_text(in.u) + "; V = " + set_text(in.v);
}

}  // namespace

AxiomReport check_polyadic_laws(const FunctionalModel& m, const PolyadicInstance& in) {
    AxiomReport report;
    const auto& b = m.algebra();
    const Formula& p = in.p;
    const Formula& q = in.q;
    VariableSet vars = in.u;
    vars.insert(in.v.begin(), in.v.end());
    collect_free_vars(p, vars);
    collect_free_vars(q, vars);
    for (const auto& [x, t] : in.s.bindings()) {
        vars.insert(x);
        collect_free_vars(t, vars);
    }
    auto detail = [&] { return describe(in); };
    auto equal = [&](const Formula& l, const Formula& r) { return semantically_equal(l, r, m, vars); };
    Formula all_u = forall_set(in.u, p);

    report.record("set-empty", forall_set({}, p) == p, detail);

    {
        VariableSet both = in.u;
        both.insert(in.v.begin(), in.v.end());
        report.record("set-union", equal(forall_set(both, p), forall_set(in.u, forall_set(in.v, p))), detail);
    }

    // Substitution through an injective renaming of U onto variables nothing else mentions.
    {
        VariableSet avoid = vars;
        for (const auto& x : all_vars(p)) avoid.insert(x);
        Substitution renamed = in.s;
        VariableSet targets;
        for (const auto& x : in.u) {
            Variable target = least_fresh(avoid);
            avoid.insert(target);
            targets.insert(target);
            renamed = update_subst(renamed, x, Term::var(target));
        }
        Formula lhs = subst_formula(all_u, in.s);
        Formula rhs = forall_set(targets, subst_formula(p, renamed));
        report.record("set-substitution", equal(lhs, rhs), detail);
    }

    report.record("set-distributes-over-meet",
                  equal(forall_set(in.u, Formula::conj(p, q)), Formula::conj(all_u, forall_set(in.u, q))), detail);
    report.record("set-below", semantically_leq(all_u, p, m, vars), detail);

    {
        bool independent = std::all_of(in.u.begin(), in.u.end(),
                                       [&](const Variable& x) { return semantically_independent(p, x, m); });
        if (independent) report.record("set-vacuous", equal(all_u, p), detail);
    }

    {
        std::vector<Variable> order(in.u.begin(), in.u.end());
        Formula canonical = forall_sequence(order, p);
        bool holds = true;
        do {
            holds = holds && equal(forall_sequence(order, p), canonical);
        } while (std::next_permutation(order.begin(), order.end()));
        report.record("set-order-independent", holds, detail);
    }

    // Round trip between the two presentations of the quantifier.
    for (const auto& x : in.u) {
        report.record("set-singleton-is-forall", equal(forall_set({x}, p), Formula::forall(x, p)), detail);
    }
    {
        std::vector<Variable> support;
        for (const auto& x : in.u) {
            if (free_vars(p).count(x) != 0) support.push_back(x);
        }
        std::reverse(support.begin(), support.end());
        report.record("set-iterated-forall", equal(all_u, forall_sequence(support, p)), detail);
    }

    {
        VariableSet outside = vars;
        for (const auto& x : in.u) outside.erase(x);
        bool holds = true;
        for_each_valuation(outside, m, [&](const Valuation& xi) {
            if (!holds) return;
            Element meet = b.top();
            for_each_valuation(in.u, m, xi, [&](const Valuation& tau) { meet = b.meet(meet, eval_formula(p, tau, m)); });
            holds = meet == eval_formula(all_u, xi, m);
        });
        report.record("set-meet-of-revaluations", holds, detail);
    }
    return report;
}

AxiomReport check_polyadic_axioms(const FunctionalModel& m, std::size_t samples, std::uint64_t seed) {
    GeneratorConfig config;
    config.max_depth = 3;
    config.max_binders = 2;
    FormulaGenerator gen(m.signature(), config, seed);
    AxiomReport report;
    auto random_set = [&] {
        VariableSet s;
        for (const char* name : {"x", "y", "z"}) {
            if (gen.below(2) == 0) s.insert(Variable(name));
        }
        return s;
    };
    for (std::size_t i = 0; i < samples; ++i) {
        PolyadicInstance in{gen.formula(), gen.formula(), gen.substitution(2), random_set(), random_set()};
        report.merge(check_polyadic_laws(m, in));
    }
    return report;
}

}  // namespace qlogic
