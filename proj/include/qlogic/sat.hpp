#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace qlogic {

/// Propositional literal: +(v+1) for variable v, -(v+1) for its negation.
using Literal = int;

inline Literal positive(std::size_t var) { return static_cast<Literal>(var) + 1; }
inline Literal negative(std::size_t var) { return -positive(var); }
inline std::size_t variable_of(Literal lit) { return static_cast<std::size_t>(lit < 0 ? -lit : lit) - 1; }

using Clause = std::vector<Literal>;

/// Deterministic DPLL: unit propagation, branching on the first unassigned
/// variable, true before false. Returns a total assignment satisfying every
/// clause, or nullopt when the clauses are unsatisfiable.
std::optional<std::vector<bool>> dpll(std::size_t var_count, const std::vector<Clause>& clauses);

bool satisfies(const std::vector<bool>& assignment, const std::vector<Clause>& clauses);

}  // namespace qlogic
