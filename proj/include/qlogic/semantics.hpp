#pragma once

#include <functional>
#include <vector>

#include "qlogic/formula.hpp"
#include "qlogic/model.hpp"
#include "qlogic/term.hpp"

namespace qlogic {

std::size_t eval_term(const Term& t, const Valuation& xi, const FunctionalModel& m);

/// Value of p in the model's algebra at xi. Connectives act pointwise,
/// `forall x. q` is the meet over all a in M of q at xi[a/x], and equality is
/// the diagonal (top when both sides denote the same element, bottom otherwise).
Element eval_formula(const Formula& p, const Valuation& xi, const FunctionalModel& m);

/// Calls `visit` with every valuation that assigns an element to each of
/// `vars`; variables outside `vars` take `base`'s values.
void for_each_valuation(const VariableSet& vars, const FunctionalModel& m, const Valuation& base,
                        const std::function<void(const Valuation&)>& visit);
void for_each_valuation(const VariableSet& vars, const FunctionalModel& m,
                        const std::function<void(const Valuation&)>& visit);

/// The valuation x |-> eval_term(s(x), xi).
Valuation compose_valuation(const Substitution& s, const Valuation& xi, const FunctionalModel& m);

/// (p s)(xi) == p(s xi): the value of the substituted formula equals the value
/// of p at the composed valuation. Always true; exposed as a checkable property.
bool semantic_subst_identity(const Formula& p, const Substitution& s, const Valuation& xi,
                             const FunctionalModel& m);

/// True iff the variables of `u` form a support for p in m, tested through the
/// idempotent retraction gamma onto `u` that sends every other free variable
/// of p to the least element of `u`. Throws Error on an empty `u`.
bool check_support_retraction(const Formula& p, const VariableSet& u, const FunctionalModel& m);

/// Semantic equality of p and q over every valuation of their free variables and `extra`.
bool semantically_equal(const Formula& p, const Formula& q, const FunctionalModel& m, const VariableSet& extra = {});
/// p <= q at every such valuation.
bool semantically_leq(const Formula& p, const Formula& q, const FunctionalModel& m, const VariableSet& extra = {});
/// The value of p does not change when x is reassigned.
bool semantically_independent(const Formula& p, const Variable& x, const FunctionalModel& m);

}  // namespace qlogic
