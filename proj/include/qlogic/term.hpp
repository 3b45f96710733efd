#pragma once

#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlogic/signature.hpp"
#include "qlogic/variable.hpp"

namespace qlogic {

/// A first-order term: a variable or a function symbol applied to arguments.
/// Constants are applications with no arguments.
class Term {
public:
    static Term var(Variable v);
    static Term var(std::string name) { return var(Variable(std::move(name))); }
    static Term app(std::string symbol, std::vector<Term> args = {});

    bool is_var() const noexcept { return var_.has_value(); }
    const Variable& variable() const { return *var_; }
    const std::string& symbol() const noexcept { return symbol_; }
    const std::vector<Term>& args() const noexcept { return args_; }
    std::size_t depth() const;

    bool operator==(const Term& other) const;
    bool operator<(const Term& other) const;

private:
    Term() = default;

    std::optional<Variable> var_;
    std::string symbol_;
    std::vector<Term> args_;
};

std::string to_string(const Term& t);

/// Throws SignatureError unless every symbol in `t` is a declared function of matching arity.
void check_term(const Term& t, const Signature& sig);

/// Finite-support map from variables to terms, identity elsewhere.
/// Bindings of the form x -> x are never stored.
class Substitution {
public:
    Substitution() = default;
    Substitution(std::initializer_list<std::pair<Variable, Term>> bindings);

    Term operator()(const Variable& x) const;
    const Term* find(const Variable& x) const;
    const std::map<Variable, Term>& bindings() const noexcept { return bindings_; }
    bool is_identity() const noexcept { return bindings_.empty(); }

    bool operator==(const Substitution&) const = default;

private:
    friend Substitution update_subst(const Substitution&, const Variable&, Term);

    std::map<Variable, Term> bindings_;
};

std::string to_string(const Substitution& s);

Term subst_term(const Term& t, const Substitution& s);

/// The composite s;u with subst_term(t, s;u) == subst_term(subst_term(t, s), u).
Substitution compose_subst(const Substitution& s, const Substitution& u);

VariableSet free_vars(const Term& t);
void collect_free_vars(const Term& t, VariableSet& out);

/// s with x rebound to t; the binding is dropped when t is x itself.
Substitution update_subst(const Substitution& s, const Variable& x, Term t);

/// The single-variable renaming [t/x].
inline Substitution single(const Variable& x, Term t) { return update_subst({}, x, std::move(t)); }

}  // namespace qlogic
