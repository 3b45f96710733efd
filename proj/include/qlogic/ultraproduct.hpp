#pragma once

#include <cstddef>
#include <vector>

#include "qlogic/boolean_algebra.hpp"
#include "qlogic/formula.hpp"
#include "qlogic/model.hpp"

namespace qlogic {

/// Product of finitely many 2-valued factors over one signature. The product's
/// algebra has one atom per factor; element k of the domain is the tuple
/// coordinates[k], ordered with the first factor most significant. Functions
/// act coordinatewise, a relation holds on the set of factors where it holds,
/// and `=` holds on the set of coordinates where the tuples agree.
struct ProductModel {
    std::vector<FunctionalModel> factors;
    FunctionalModel model;
    std::vector<std::vector<std::size_t>> coordinates;

    /// Product element with the given coordinates.
    std::size_t element(const std::vector<std::size_t>& coords) const;
};

/// Throws Error on an empty factor list, a factor that is not 2-valued,
/// differing signatures, or a product domain larger than `max_cardinality`.
ProductModel product_model(const std::vector<FunctionalModel>& factors, std::size_t max_cardinality = 256);

/// The i-th coordinate of a product valuation.
Valuation coordinate_valuation(const ProductModel& pm, const Valuation& xi, std::size_t i);

/// The product taken through an ultrafilter on the index algebra: a formula
/// holds when its value lies in the ultrafilter. With equality, elements a, b
/// are identified when `a = b` has a value in the ultrafilter, giving a normal
/// model.
struct UltraproductQuotient {
    FunctionalModel model;
    /// Quotient element of each product element.
    std::vector<std::size_t> element_of;

    Valuation project(const Valuation& xi) const;
};

/// Throws Error when the ultrafilter lives on a different algebra.
UltraproductQuotient quotient_to_2model(const ProductModel& pm, const Ultrafilter& ultrafilter);
/// Throws Error unless `filter` is an ultrafilter.
UltraproductQuotient quotient_to_2model(const ProductModel& pm, const Filter& filter);

/// The value of p in the product at xi is the set of factors where p holds at
/// the matching coordinate valuation.
bool coordinatewise_check(const ProductModel& pm, const Formula& p, const Valuation& xi);

/// p holds in the quotient at xi exactly when the set of factors where p holds
/// belongs to the ultrafilter.
bool los_check(const ProductModel& pm, const Ultrafilter& ultrafilter, const Formula& p, const Valuation& xi);
bool los_check(const ProductModel& pm, const UltraproductQuotient& q, const Ultrafilter& ultrafilter,
               const Formula& p, const Valuation& xi);

}  // namespace qlogic
