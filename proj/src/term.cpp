#include "qlogic/term.hpp"

#include <algorithm>

#include "qlogic/error.hpp"

namespace qlogic {

Term Term::var(Variable v) {
    Term t;
    t.var_ = std::move(v);
    return t;
}

Term Term::app(std::string symbol, std::vector<Term> args) {
    Term t;
    t.symbol_ = std::move(symbol);
    t.args_ = std::move(args);
    return t;
}

std::size_t Term::depth() const {
    std::size_t d = 0;
    for (const auto& a : args_) d = std::max(d, a.depth() + 1);
    return d;
}

bool Term::operator==(const Term& other) const {
    if (is_var() != other.is_var()) return false;
    if (is_var()) return *var_ == *other.var_;
    return symbol_ == other.symbol_ && args_ == other.args_;
}

bool Term::operator<(const Term& other) const {
    if (is_var() != other.is_var()) return is_var();
    if (is_var()) return *var_ < *other.var_;
    if (symbol_ != other.symbol_) return symbol_ < other.symbol_;
    return std::lexicographical_compare(args_.begin(), args_.end(), other.args_.begin(), other.args_.end());
}

std::string to_string(const Term& t) {
    if (t.is_var()) return t.variable().name();
    if (t.args().empty()) return t.symbol();
    std::string out = t.symbol() + "(";
    for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (i > 0) out += ", ";
        out += to_string(t.args()[i]);
    }
    return out + ")";
}

void check_term(const Term& t, const Signature& sig) {
    if (t.is_var()) return;
    const Symbol* f = sig.find_function(t.symbol());
    if (f == nullptr) throw SignatureError("undeclared function symbol '" + t.symbol() + "'");
    if (f->arity != t.args().size()) {
        throw SignatureError("function '" + t.symbol() + "' expects " + std::to_string(f->arity) + " arguments, got " +
                             std::to_string(t.args().size()));
    }
    for (const auto& a : t.args()) check_term(a, sig);
}

Substitution::Substitution(std::initializer_list<std::pair<Variable, Term>> bindings) {
    for (const auto& [x, t] : bindings) *this = update_subst(*this, x, t);
}

Term Substitution::operator()(const Variable& x) const {
    if (const Term* t = find(x)) return *t;
    return Term::var(x);
}

const Term* Substitution::find(const Variable& x) const {
    auto it = bindings_.find(x);
    return it == bindings_.end() ? nullptr : &it->second;
}

std::string to_string(const Substitution& s) {
    std::string out = "[";
    bool first = true;
    for (const auto& [x, t] : s.bindings()) {
        if (!first) out += ", ";
        first = false;
        out += x.name() + " := " + to_string(t);
    }
    return out + "]";
}

Term subst_term(const Term& t, const Substitution& s) {
    if (t.is_var()) return s(t.variable());
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const auto& a : t.args()) args.push_back(subst_term(a, s));
    return Term::app(t.symbol(), std::move(args));
}

Substitution compose_subst(const Substitution& s, const Substitution& u) {
    Substitution r;
    for (const auto& [x, t] : s.bindings()) r = update_subst(r, x, subst_term(t, u));
    for (const auto& [x, t] : u.bindings()) {
        if (s.find(x) == nullptr) r = update_subst(r, x, t);
    }
    return r;
}

void collect_free_vars(const Term& t, VariableSet& out) {
    if (t.is_var()) {
        out.insert(t.variable());
        return;
    }
    for (const auto& a : t.args()) collect_free_vars(a, out);
}

VariableSet free_vars(const Term& t) {
    VariableSet out;
    collect_free_vars(t, out);
    return out;
}

Substitution update_subst(const Substitution& s, const Variable& x, Term t) {
    Substitution r = s;
    if (t.is_var() && t.variable() == x) {
        r.bindings_.erase(x);
    } else {
        r.bindings_.insert_or_assign(x, std::move(t));
    }
    return r;
}

}  // namespace qlogic
