#pragma once

#include <cstdint>

#include "qlogic/axioms.hpp"
#include "qlogic/formula.hpp"
#include "qlogic/model.hpp"

namespace qlogic {

/// Quantifies p over the variables of `u` that occur free in p, outermost
/// first in the global variable order. forall_set({}, p) is p itself.
Formula forall_set(const VariableSet& u, const Formula& p);

/// forall x1 ... xn. p over an explicit binding order; no variables are dropped.
Formula forall_sequence(const std::vector<Variable>& order, const Formula& p);

struct PolyadicInstance {
    Formula p;
    Formula q;
    Substitution s;
    VariableSet u;
    VariableSet v;
};

/// Checks the set-quantifier laws on one instance: the empty set binds nothing,
/// unions iterate, substitution passes through an injective renaming onto
/// fresh variables, meets distribute, the quantified formula lies below its
/// body and leaves independent formulas alone; also every binding order agrees,
/// single-variable sets coincide with forall, and the value is the meet over
/// all revaluations of the bound set.
AxiomReport check_polyadic_laws(const FunctionalModel& m, const PolyadicInstance& instance);

AxiomReport check_polyadic_axioms(const FunctionalModel& m, std::size_t samples, std::uint64_t seed = 1);

}  // namespace qlogic
