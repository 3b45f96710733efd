#include "qlogic/formula.hpp"

#include <algorithm>

#include "qlogic/error.hpp"

namespace qlogic {

Formula Formula::atom(std::string relation, std::vector<Term> args) {
    Formula p(FormulaKind::Atom);
    p.relation_ = std::move(relation);
    p.terms_ = std::move(args);
    return p;
}

Formula Formula::eq(Term lhs, Term rhs) {
    Formula p(FormulaKind::Eq);
    p.terms_ = {std::move(lhs), std::move(rhs)};
    return p;
}

Formula Formula::top() { return Formula(FormulaKind::Top); }
Formula Formula::bot() { return Formula(FormulaKind::Bot); }

Formula Formula::negation(Formula q) {
    Formula p(FormulaKind::Not);
    p.left_ = std::make_shared<const Formula>(std::move(q));
    return p;
}

Formula Formula::conj(Formula a, Formula b) {
    Formula p(FormulaKind::And);
    p.left_ = std::make_shared<const Formula>(std::move(a));
    p.right_ = std::make_shared<const Formula>(std::move(b));
    return p;
}

Formula Formula::disj(Formula a, Formula b) {
    Formula p(FormulaKind::Or);
    p.left_ = std::make_shared<const Formula>(std::move(a));
    p.right_ = std::make_shared<const Formula>(std::move(b));
    return p;
}

Formula Formula::forall(Variable x, Formula body) {
    Formula p(FormulaKind::Forall);
    p.bound_ = std::make_shared<const Variable>(std::move(x));
    p.left_ = std::make_shared<const Formula>(std::move(body));
    return p;
}

Formula Formula::exists(Variable x, Formula body) {
    return negation(forall(std::move(x), negation(std::move(body))));
}

Formula Formula::implies(Formula a, Formula b) { return disj(negation(std::move(a)), std::move(b)); }

bool Formula::operator==(const Formula& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
        case FormulaKind::Atom:
            return relation_ == other.relation_ && terms_ == other.terms_;
        case FormulaKind::Eq:
            return terms_ == other.terms_;
        case FormulaKind::Top:
        case FormulaKind::Bot:
            return true;
        case FormulaKind::Not:
            return left() == other.left();
        case FormulaKind::And:
        case FormulaKind::Or:
            return left() == other.left() && right() == other.right();
        case FormulaKind::Forall:
            return bound() == other.bound() && body() == other.body();
    }
    return false;
}

namespace {

// Binding strength used by the printer: quantifiers weakest, atoms strongest.
enum Level { kQuant = 0, kOr = 1, kAnd = 2, kNot = 3 };

std::string print(const Formula& p, int context) {
    auto wrap = [&](std::string s, int level) { return context > level ? "(" + s + ")" : s; };
    switch (p.kind()) {
        case FormulaKind::Atom: {
            if (p.terms().empty()) return p.relation();
            std::string out = p.relation() + "(";
            for (std::size_t i = 0; i < p.terms().size(); ++i) {
                if (i > 0) out += ", ";
                out += to_string(p.terms()[i]);
            }
            return out + ")";
        }
        case FormulaKind::Eq:
            return wrap(to_string(p.terms()[0]) + " = " + to_string(p.terms()[1]), kNot);
        case FormulaKind::Top:
            return "true";
        case FormulaKind::Bot:
            return "false";
        case FormulaKind::Not:
            return "~" + print(p.left(), kNot + 1);
        case FormulaKind::And:
            return wrap(print(p.left(), kAnd) + " & " + print(p.right(), kAnd + 1), kAnd);
        case FormulaKind::Or:
            return wrap(print(p.left(), kOr) + " | " + print(p.right(), kOr + 1), kOr);
        case FormulaKind::Forall:
            return wrap("forall " + p.bound().name() + ". " + print(p.body(), kQuant), kQuant);
    }
    return {};
}

}  // namespace

std::string to_string(const Formula& p) { return print(p, kQuant); }

void check_formula(const Formula& p, const Signature& sig) {
    switch (p.kind()) {
        case FormulaKind::Atom: {
            const Symbol* r = sig.find_relation(p.relation());
            if (r == nullptr) throw SignatureError("undeclared relation symbol '" + p.relation() + "'");
            if (r->arity != p.terms().size()) {
                throw SignatureError("relation '" + p.relation() + "' expects " + std::to_string(r->arity) +
                                     " arguments, got " + std::to_string(p.terms().size()));
            }
            for (const auto& t : p.terms()) check_term(t, sig);
            return;
        }
        case FormulaKind::Eq:
            if (!sig.with_equality()) throw SignatureError("equality used but the signature has equality off");
            for (const auto& t : p.terms()) check_term(t, sig);
            return;
        case FormulaKind::Top:
        case FormulaKind::Bot:
            return;
        case FormulaKind::Not:
        case FormulaKind::Forall:
            check_formula(p.left(), sig);
            return;
        case FormulaKind::And:
        case FormulaKind::Or:
            check_formula(p.left(), sig);
            check_formula(p.right(), sig);
            return;
    }
}

void collect_free_vars(const Formula& p, VariableSet& out) {
    switch (p.kind()) {
        case FormulaKind::Atom:
        case FormulaKind::Eq:
            for (const auto& t : p.terms()) collect_free_vars(t, out);
            return;
        case FormulaKind::Top:
        case FormulaKind::Bot:
            return;
        case FormulaKind::Not:
            collect_free_vars(p.left(), out);
            return;
        case FormulaKind::And:
        case FormulaKind::Or:
            collect_free_vars(p.left(), out);
            collect_free_vars(p.right(), out);
            return;
        case FormulaKind::Forall: {
            VariableSet inner;
            collect_free_vars(p.body(), inner);
            inner.erase(p.bound());
            out.insert(inner.begin(), inner.end());
            return;
        }
    }
}

VariableSet free_vars(const Formula& p) {
    VariableSet out;
    collect_free_vars(p, out);
    return out;
}

namespace {

void collect_all_vars(const Formula& p, VariableSet& out) {
    switch (p.kind()) {
        case FormulaKind::Atom:
        case FormulaKind::Eq:
            for (const auto& t : p.terms()) collect_free_vars(t, out);
            return;
        case FormulaKind::Top:
        case FormulaKind::Bot:
            return;
        case FormulaKind::Forall:
            out.insert(p.bound());
            [[fallthrough]];
        case FormulaKind::Not:
            collect_all_vars(p.left(), out);
            return;
        case FormulaKind::And:
        case FormulaKind::Or:
            collect_all_vars(p.left(), out);
            collect_all_vars(p.right(), out);
            return;
    }
}

}  // namespace

VariableSet all_vars(const Formula& p) {
    VariableSet out;
    collect_all_vars(p, out);
    return out;
}

Formula subst_formula(const Formula& p, const Substitution& s) {
    switch (p.kind()) {
        case FormulaKind::Atom: {
            std::vector<Term> args;
            args.reserve(p.terms().size());
            for (const auto& t : p.terms()) args.push_back(subst_term(t, s));
            return Formula::atom(p.relation(), std::move(args));
        }
        case FormulaKind::Eq:
            return Formula::eq(subst_term(p.terms()[0], s), subst_term(p.terms()[1], s));
        case FormulaKind::Top:
        case FormulaKind::Bot:
            return p;
        case FormulaKind::Not:
            return Formula::negation(subst_formula(p.left(), s));
        case FormulaKind::And:
            return Formula::conj(subst_formula(p.left(), s), subst_formula(p.right(), s));
        case FormulaKind::Or:
            return Formula::disj(subst_formula(p.left(), s), subst_formula(p.right(), s));
        case FormulaKind::Forall: {
            VariableSet used = free_vars(p.body());
            for (const auto& z : free_vars(p)) collect_free_vars(s(z), used);
            Variable y = least_fresh(used);
            return Formula::forall(y, subst_formula(p.body(), update_subst(s, p.bound(), Term::var(y))));
        }
    }
    return p;
}

namespace {

class AlphaNormalizer {
public:
    explicit AlphaNormalizer(const Formula& p) : avoid_(free_vars(p)) {}

    Formula run(const Formula& p, const Substitution& env) {
        switch (p.kind()) {
            case FormulaKind::Atom:
            case FormulaKind::Eq:
                return subst_formula(p, env);
            case FormulaKind::Top:
            case FormulaKind::Bot:
                return p;
            case FormulaKind::Not:
                return Formula::negation(run(p.left(), env));
            case FormulaKind::And: {
                Formula l = run(p.left(), env);
                return Formula::conj(std::move(l), run(p.right(), env));
            }
            case FormulaKind::Or: {
                Formula l = run(p.left(), env);
                return Formula::disj(std::move(l), run(p.right(), env));
            }
            case FormulaKind::Forall: {
                Variable y = next_name();
                return Formula::forall(y, run(p.body(), update_subst(env, p.bound(), Term::var(y))));
            }
        }
        return p;
    }

private:
    Variable next_name() {
        while (avoid_.count(Variable::reserved(next_)) != 0) ++next_;
        return Variable::reserved(next_++);
    }

    VariableSet avoid_;
    std::size_t next_ = 0;
};

}  // namespace

Formula alpha_normal_form(const Formula& p) {
    AlphaNormalizer normalizer(p);
    return normalizer.run(p, {});
}

bool alpha_eq(const Formula& p, const Formula& q) { return alpha_normal_form(p) == alpha_normal_form(q); }

std::string alpha_key(const Formula& p) { return to_string(alpha_normal_form(p)); }

std::size_t quantifier_depth(const Formula& p) {
    switch (p.kind()) {
        case FormulaKind::Not:
            return quantifier_depth(p.left());
        case FormulaKind::And:
        case FormulaKind::Or:
            return std::max(quantifier_depth(p.left()), quantifier_depth(p.right()));
        case FormulaKind::Forall:
            return 1 + quantifier_depth(p.body());
        default:
            return 0;
    }
}

std::size_t binder_count(const Formula& p) {
    switch (p.kind()) {
        case FormulaKind::Not:
            return binder_count(p.left());
        case FormulaKind::And:
        case FormulaKind::Or:
            return binder_count(p.left()) + binder_count(p.right());
        case FormulaKind::Forall:
            return 1 + binder_count(p.body());
        default:
            return 0;
    }
}

std::size_t formula_depth(const Formula& p) {
    switch (p.kind()) {
        case FormulaKind::Not:
        case FormulaKind::Forall:
            return 1 + formula_depth(p.left());
        case FormulaKind::And:
        case FormulaKind::Or:
            return 1 + std::max(formula_depth(p.left()), formula_depth(p.right()));
        default:
            return 0;
    }
}

}  // namespace qlogic
