#include "qlogic/semantics.hpp"

#include "qlogic/error.hpp"

namespace qlogic {

namespace {

// Evaluation reuses one valuation, rebinding quantified variables in place.
class Evaluator {
public:
    Evaluator(const FunctionalModel& m, Valuation xi) : m_(m), xi_(std::move(xi)) {}

    std::size_t term(const Term& t) {
        if (t.is_var()) return xi_(t.variable());
        std::vector<std::size_t> args;
        args.reserve(t.args().size());
        for (const auto& a : t.args()) args.push_back(term(a));
        return m_.apply(t.symbol(), args);
    }

    Element formula(const Formula& p) {
        const auto& b = m_.algebra();
        switch (p.kind()) {
            case FormulaKind::Atom: {
                std::vector<std::size_t> args;
                args.reserve(p.terms().size());
                for (const auto& t : p.terms()) args.push_back(term(t));
                return m_.holds(p.relation(), args);
            }
            case FormulaKind::Eq:
                if (!m_.signature().with_equality()) {
                    throw SignatureError("equality used but the model's signature has equality off");
                }
                return m_.equality(term(p.terms()[0]), term(p.terms()[1]));
            case FormulaKind::Top:
                return b.top();
            case FormulaKind::Bot:
                return b.bottom();
            case FormulaKind::Not:
                return b.complement(formula(p.left()));
            case FormulaKind::And: {
                Element l = formula(p.left());
                return b.meet(l, formula(p.right()));
            }
            case FormulaKind::Or: {
                Element l = formula(p.left());
                return b.join(l, formula(p.right()));
            }
            case FormulaKind::Forall: {
                const Variable& x = p.bound();
                const auto& entries = xi_.entries();
                auto saved = entries.find(x);
                std::optional<std::size_t> previous;
                if (saved != entries.end()) previous = saved->second;
                Element acc = b.top();
                for (std::size_t a = 0; a < m_.size() && acc != b.bottom(); ++a) {
                    xi_.set(x, a);
                    acc = b.meet(acc, formula(p.body()));
                }
                restore(x, previous);
                return acc;
            }
        }
        return b.bottom();
    }

private:
    void restore(const Variable& x, std::optional<std::size_t> previous) {
        if (previous) xi_.set(x, *previous);
        else xi_.erase(x);
    }

    const FunctionalModel& m_;
    Valuation xi_;
};

void check_valuation(const Valuation& xi, const FunctionalModel& m) {
    if (xi.fallback() >= m.size()) throw ModelError("valuation fallback outside the domain");
    for (const auto& [x, a] : xi.entries()) {
        if (a >= m.size()) throw ModelError("valuation sends " + x.name() + " outside the domain");
    }
}

}  // namespace

std::size_t eval_term(const Term& t, const Valuation& xi, const FunctionalModel& m) {
    check_valuation(xi, m);
    return Evaluator(m, xi).term(t);
}

Element eval_formula(const Formula& p, const Valuation& xi, const FunctionalModel& m) {
    check_valuation(xi, m);
    return Evaluator(m, xi).formula(p);
}

void for_each_valuation(const VariableSet& vars, const FunctionalModel& m, const Valuation& base,
                        const std::function<void(const Valuation&)>& visit) {
    std::vector<Variable> order(vars.begin(), vars.end());
    std::vector<std::size_t> digits(order.size(), 0);
    while (true) {
        Valuation xi = base;
        for (std::size_t i = 0; i < order.size(); ++i) xi.set(order[i], digits[i]);
        visit(xi);
        std::size_t k = order.size();
        while (k > 0) {
            --k;
            if (++digits[k] < m.size()) break;
            digits[k] = 0;
            if (k == 0) return;
        }
        if (order.empty()) return;
    }
}

void for_each_valuation(const VariableSet& vars, const FunctionalModel& m,
                        const std::function<void(const Valuation&)>& visit) {
    for_each_valuation(vars, m, Valuation{}, visit);
}

Valuation compose_valuation(const Substitution& s, const Valuation& xi, const FunctionalModel& m) {
    Valuation out = xi;
    for (const auto& [x, t] : s.bindings()) out.set(x, eval_term(t, xi, m));
    return out;
}

bool semantic_subst_identity(const Formula& p, const Substitution& s, const Valuation& xi,
                             const FunctionalModel& m) {
    return eval_formula(subst_formula(p, s), xi, m) == eval_formula(p, compose_valuation(s, xi, m), m);
}

bool check_support_retraction(const Formula& p, const VariableSet& u, const FunctionalModel& m) {
    if (u.empty()) throw Error("support check needs a nonempty variable set");
    const Variable& least = *u.begin();
    Substitution gamma;
    for (const auto& x : free_vars(p)) {
        if (u.count(x) == 0) gamma = update_subst(gamma, x, Term::var(least));
    }
    Formula retracted = subst_formula(p, gamma);
    VariableSet vars = free_vars(p);
    vars.insert(u.begin(), u.end());
    bool agree = true;
    for_each_valuation(vars, m, [&](const Valuation& xi) {
        if (agree && eval_formula(p, xi, m) != eval_formula(retracted, xi, m)) agree = false;
    });
    return agree;
}

bool semantically_equal(const Formula& p, const Formula& q, const FunctionalModel& m, const VariableSet& extra) {
    VariableSet vars = free_vars(p);
    collect_free_vars(q, vars);
    vars.insert(extra.begin(), extra.end());
    bool equal = true;
    for_each_valuation(vars, m, [&](const Valuation& xi) {
        if (equal && eval_formula(p, xi, m) != eval_formula(q, xi, m)) equal = false;
    });
    return equal;
}

bool semantically_leq(const Formula& p, const Formula& q, const FunctionalModel& m, const VariableSet& extra) {
    VariableSet vars = free_vars(p);
    collect_free_vars(q, vars);
    vars.insert(extra.begin(), extra.end());
    bool leq = true;
    for_each_valuation(vars, m, [&](const Valuation& xi) {
        if (leq && !m.algebra().leq(eval_formula(p, xi, m), eval_formula(q, xi, m))) leq = false;
    });
    return leq;
}

bool semantically_independent(const Formula& p, const Variable& x, const FunctionalModel& m) {
    VariableSet vars = free_vars(p);
    vars.erase(x);
    bool independent = true;
    for_each_valuation(vars, m, [&](const Valuation& xi) {
        if (!independent) return;
        Element first = eval_formula(p, xi.with(x, 0), m);
        for (std::size_t a = 1; a < m.size(); ++a) {
            if (eval_formula(p, xi.with(x, a), m) != first) {
                independent = false;
                return;
            }
        }
    });
    return independent;
}

}  // namespace qlogic
