#include "qlogic/ultraproduct.hpp"

#include <string>

#include "qlogic/error.hpp"
#include "qlogic/semantics.hpp"

namespace qlogic {

std::size_t ProductModel::element(const std::vector<std::size_t>& coords) const {
    if (coords.size() != factors.size()) throw Error("coordinate count does not match the factor count");
    std::size_t k = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (coords[i] >= factors[i].size()) throw Error("coordinate outside the factor domain");
        k = k * factors[i].size() + coords[i];
    }
    return k;
}

namespace {

std::vector<std::vector<std::size_t>> enumerate_tuples(const std::vector<FunctionalModel>& factors) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> digits(factors.size(), 0);
    while (true) {
        out.push_back(digits);
        std::size_t pos = digits.size();
        while (pos > 0 && ++digits[pos - 1] == factors[pos - 1].size()) digits[--pos] = 0;
        if (pos == 0) break;
    }
    return out;
}

std::vector<std::string> tuple_names(const std::vector<FunctionalModel>& factors,
                                     const std::vector<std::vector<std::size_t>>& tuples) {
    std::vector<std::string> names;
    for (const auto& t : tuples) {
        std::string name = "(";
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i > 0) name += ",";
            name += factors[i].domain()[t[i]];
        }
        names.push_back(name + ")");
    }
    return names;
}

}  // namespace

ProductModel product_model(const std::vector<FunctionalModel>& factors, std::size_t max_cardinality) {
    if (factors.empty()) throw Error("product of no factors");
    if (factors.size() > 64) throw Error("at most 64 factors are supported");
    std::size_t cardinality = 1;
    for (const auto& f : factors) {
        if (!f.is_two_valued()) throw Error("product factors must be 2-valued");
        if (!f.is_normal()) throw Error("product factors must interpret equality as the diagonal");
        if (!(f.signature() == factors.front().signature())) throw SignatureError("product factors have different signatures");
        cardinality *= f.size();
        if (cardinality > max_cardinality) {
            throw Error("product domain exceeds the cap of " + std::to_string(max_cardinality) + " elements");
        }
    }
    const Signature& sig = factors.front().signature();
    auto tuples = enumerate_tuples(factors);
    FiniteBooleanAlgebra algebra(static_cast<unsigned>(factors.size()));
    ProductModel pm{factors, FunctionalModel(sig, tuple_names(factors, tuples), algebra), tuples};

    auto coords_of = [&](const std::vector<std::size_t>& args, std::size_t i) {
        std::vector<std::size_t> out;
        for (auto a : args) out.push_back(tuples[a][i]);
        return out;
    };
    for (std::size_t f = 0; f < sig.functions().size(); ++f) {
        const auto& sym = sig.functions()[f];
        auto& table = pm.model.function_table(f);
        for (std::size_t t = 0; t < table.size(); ++t) {
            auto args = pm.model.tuple_at(t, sym.arity);
            std::vector<std::size_t> result;
            for (std::size_t i = 0; i < factors.size(); ++i) result.push_back(factors[i].apply(sym.name, coords_of(args, i)));
            table[t] = pm.element(result);
        }
    }
    for (std::size_t r = 0; r < sig.relations().size(); ++r) {
        const auto& sym = sig.relations()[r];
        auto& table = pm.model.relation_table(r);
        for (std::size_t t = 0; t < table.size(); ++t) {
            auto args = pm.model.tuple_at(t, sym.arity);
            Element value;
            for (std::size_t i = 0; i < factors.size(); ++i) {
                if (factors[i].holds(sym.name, coords_of(args, i)) == factors[i].algebra().top()) value.bits |= std::uint64_t{1} << i;
            }
            table[t] = value;
        }
    }
    if (sig.with_equality()) {
        std::size_t n = tuples.size();
        std::vector<Element> eq(n * n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                for (std::size_t i = 0; i < factors.size(); ++i) {
                    if (tuples[a][i] == tuples[b][i]) eq[a * n + b].bits |= std::uint64_t{1} << i;
                }
            }
        }
        pm.model.set_equality_table(std::move(eq));
    }
    return pm;
}

Valuation coordinate_valuation(const ProductModel& pm, const Valuation& xi, std::size_t i) {
    Valuation out(pm.coordinates.at(xi.fallback())[i]);
    for (const auto& [v, e] : xi.entries()) out.set(v, pm.coordinates.at(e)[i]);
    return out;
}

Valuation UltraproductQuotient::project(const Valuation& xi) const {
    Valuation out(element_of.at(xi.fallback()));
    for (const auto& [v, e] : xi.entries()) out.set(v, element_of.at(e));
    return out;
}

UltraproductQuotient quotient_to_2model(const ProductModel& pm, const Ultrafilter& ultrafilter) {
    if (!(ultrafilter.filter().algebra() == pm.model.algebra())) {
        throw Error("ultrafilter is not on the index algebra of the product");
    }
    const FunctionalModel& m = pm.model;
    const Signature& sig = m.signature();
    std::size_t n = m.size();

    std::vector<std::size_t> rep(n);
    for (std::size_t a = 0; a < n; ++a) {
        rep[a] = a;
        if (!sig.with_equality()) continue;
        for (std::size_t b = 0; b < a; ++b) {
            if (rep[b] == b && ultrafilter.contains(m.equality(a, b))) {
                rep[a] = b;
                break;
            }
        }
    }
    std::vector<std::size_t> element_of(n);
    std::vector<std::size_t> reps;
    std::vector<std::string> names;
    for (std::size_t a = 0; a < n; ++a) {
        if (rep[a] == a) {
            element_of[a] = reps.size();
            reps.push_back(a);
            names.push_back(m.domain()[a]);
        }
    }
    for (std::size_t a = 0; a < n; ++a) element_of[a] = element_of[rep[a]];

    UltraproductQuotient q{FunctionalModel(sig, names, FiniteBooleanAlgebra::two()), element_of};
    const auto& two = q.model.algebra();
    auto lift = [&](const std::vector<std::size_t>& args) {
        std::vector<std::size_t> out;
        for (auto a : args) out.push_back(reps[a]);
        return out;
    };
    for (std::size_t f = 0; f < sig.functions().size(); ++f) {
        const auto& sym = sig.functions()[f];
        auto& table = q.model.function_table(f);
        for (std::size_t t = 0; t < table.size(); ++t) {
            table[t] = element_of[m.apply(sym.name, lift(q.model.tuple_at(t, sym.arity)))];
        }
    }
    for (std::size_t r = 0; r < sig.relations().size(); ++r) {
        const auto& sym = sig.relations()[r];
        auto& table = q.model.relation_table(r);
        for (std::size_t t = 0; t < table.size(); ++t) {
            bool holds = ultrafilter.contains(m.holds(sym.name, lift(q.model.tuple_at(t, sym.arity))));
            table[t] = holds ? two.top() : two.bottom();
        }
    }
    return q;
}

UltraproductQuotient quotient_to_2model(const ProductModel& pm, const Filter& filter) {
    return quotient_to_2model(pm, Ultrafilter(filter));
}

namespace {

Element factor_truth_set(const ProductModel& pm, const Formula& p, const Valuation& xi) {
    Element s;
    for (std::size_t i = 0; i < pm.factors.size(); ++i) {
        const auto& f = pm.factors[i];
        if (eval_formula(p, coordinate_valuation(pm, xi, i), f) == f.algebra().top()) s.bits |= std::uint64_t{1} << i;
    }
    return s;
}

}  // namespace

bool coordinatewise_check(const ProductModel& pm, const Formula& p, const Valuation& xi) {
    return eval_formula(p, xi, pm.model) == factor_truth_set(pm, p, xi);
}

bool los_check(const ProductModel& pm, const UltraproductQuotient& q, const Ultrafilter& ultrafilter,
               const Formula& p, const Valuation& xi) {
    bool in_quotient = eval_formula(p, q.project(xi), q.model) == q.model.algebra().top();
    bool large = ultrafilter.contains(factor_truth_set(pm, p, xi));
    return in_quotient == large;
}

bool los_check(const ProductModel& pm, const Ultrafilter& ultrafilter, const Formula& p, const Valuation& xi) {
    return los_check(pm, quotient_to_2model(pm, ultrafilter), ultrafilter, p, xi);
}

}  // namespace qlogic
