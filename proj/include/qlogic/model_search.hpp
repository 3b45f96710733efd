#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qlogic/formula.hpp"
#include "qlogic/model.hpp"
#include "qlogic/signature.hpp"

namespace qlogic {

struct SearchResult {
    FunctionalModel model;
    Valuation valuation;
};

/// First 2-valued model, with a valuation of the free variables of J, that
/// satisfies every member of J. Sizes run from 1 to max_size with domain
/// m0, m1, ...; within a size the function tables, then the relation tables,
/// then the valuation are counted up as one odometer whose last digit moves
/// fastest. Equality is the diagonal. nullopt means no model up to max_size.
/// Throws Error on max_size == 0 or a function of arity above 4.
std::optional<SearchResult> finite_model_search(const std::vector<Formula>& j, const Signature& sig,
                                                std::size_t max_size);

}  // namespace qlogic
