#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qlogic/signature.hpp"
#include "qlogic/term.hpp"
#include "qlogic/variable.hpp"

namespace qlogic {

enum class FormulaKind { Atom, Eq, Top, Bot, Not, And, Or, Forall };

/// Immutable first-order formula. Children are shared, so copies are cheap.
///
/// Existential quantification and implication are not primitive: `exists`
/// builds ~forall~ and `implies` builds ~p | q.
class Formula {
public:
    static Formula atom(std::string relation, std::vector<Term> args = {});
    static Formula eq(Term lhs, Term rhs);
    static Formula top();
    static Formula bot();
    static Formula negation(Formula p);
    static Formula conj(Formula p, Formula q);
    static Formula disj(Formula p, Formula q);
    static Formula forall(Variable x, Formula body);
    static Formula exists(Variable x, Formula body);
    static Formula implies(Formula p, Formula q);

    FormulaKind kind() const noexcept { return kind_; }
    /// Relation symbol of an Atom.
    const std::string& relation() const noexcept { return relation_; }
    /// Arguments of an Atom, or the two sides of an Eq.
    const std::vector<Term>& terms() const noexcept { return terms_; }
    /// Operand of Not, left operand of And/Or, body of Forall.
    const Formula& left() const { return *left_; }
    const Formula& right() const { return *right_; }
    const Formula& body() const { return *left_; }
    const Variable& bound() const { return *bound_; }

    bool is_atomic() const noexcept {
        return kind_ == FormulaKind::Atom || kind_ == FormulaKind::Eq || kind_ == FormulaKind::Top ||
               kind_ == FormulaKind::Bot;
    }

    /// Plain tree equality; bound variable names matter.
    bool operator==(const Formula& other) const;

private:
    explicit Formula(FormulaKind kind) : kind_(kind) {}

    FormulaKind kind_;
    std::string relation_;
    std::vector<Term> terms_;
    std::shared_ptr<const Formula> left_;
    std::shared_ptr<const Formula> right_;
    std::shared_ptr<const Variable> bound_;
};

std::string to_string(const Formula& p);

/// Throws SignatureError on undeclared symbols, wrong arities, or equality in
/// a signature without it.
void check_formula(const Formula& p, const Signature& sig);

VariableSet free_vars(const Formula& p);
void collect_free_vars(const Formula& p, VariableSet& out);

/// Every variable that occurs free or bound, or in a binder position.
VariableSet all_vars(const Formula& p);

/// Simultaneous capture-avoiding substitution.
///
/// Each binder forall x. q becomes forall y. q s[y/x] where y is the least
/// reserved variable that is neither free in q nor free in s(z) for any z free
/// in forall x. q. The choice is deterministic, so outputs are reproducible.
Formula subst_formula(const Formula& p, const Substitution& s);

/// Renames the k-th binder in preorder to the k-th reserved variable that is
/// not free in p. Alpha-equivalent formulas have identical normal forms.
Formula alpha_normal_form(const Formula& p);
bool alpha_eq(const Formula& p, const Formula& q);
/// Printed normal form; a map key for alpha classes.
std::string alpha_key(const Formula& p);

std::size_t quantifier_depth(const Formula& p);
std::size_t binder_count(const Formula& p);
std::size_t formula_depth(const Formula& p);

}  // namespace qlogic
