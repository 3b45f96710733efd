#include "qlogic/model_search.hpp"

#include "qlogic/error.hpp"
#include "qlogic/semantics.hpp"

namespace qlogic {

namespace {

// One digit per table cell or free variable: (pointer to the cell, radix).
struct Digit {
    std::size_t* fun_cell = nullptr;
    Element* rel_cell = nullptr;
    std::size_t var = 0;
    std::size_t radix = 0;
    std::size_t value = 0;
};

bool satisfies_all(const std::vector<Formula>& j, const Valuation& xi, const FunctionalModel& m) {
    for (const auto& p : j) {
        if (eval_formula(p, xi, m) != m.algebra().top()) return false;
    }
    return true;
}

}  // namespace

std::optional<SearchResult> finite_model_search(const std::vector<Formula>& j, const Signature& sig,
                                                std::size_t max_size) {
    if (max_size == 0) throw Error("model search needs max_size >= 1");
    for (const auto& f : sig.functions()) {
        if (f.arity > 4) throw Error("model search supports function arity up to 4");
    }
    VariableSet free;
    for (const auto& p : j) {
        check_formula(p, sig);
        collect_free_vars(p, free);
    }
    std::vector<Variable> vars(free.begin(), free.end());

    for (std::size_t n = 1; n <= max_size; ++n) {
        std::vector<std::string> domain;
        for (std::size_t i = 0; i < n; ++i) domain.push_back("m" + std::to_string(i));
        FunctionalModel m(sig, domain, FiniteBooleanAlgebra::two());
        Element one = m.algebra().top();

        std::vector<Digit> digits;
        for (std::size_t f = 0; f < sig.functions().size(); ++f) {
            for (auto& cell : m.function_table(f)) digits.push_back({&cell, nullptr, 0, n, 0});
        }
        for (std::size_t r = 0; r < sig.relations().size(); ++r) {
            for (auto& cell : m.relation_table(r)) digits.push_back({nullptr, &cell, 0, 2, 0});
        }
        for (std::size_t v = 0; v < vars.size(); ++v) digits.push_back({nullptr, nullptr, v, n, 0});

        Valuation xi;
        auto write = [&](const Digit& d) {
            if (d.fun_cell != nullptr) *d.fun_cell = d.value;
            else if (d.rel_cell != nullptr) *d.rel_cell = d.value == 0 ? Element{} : one;
            else xi.set(vars[d.var], d.value);
        };
        for (const auto& d : digits) write(d);

        while (true) {
            if (satisfies_all(j, xi, m)) return SearchResult{m, xi};
            std::size_t pos = digits.size();
            while (pos > 0) {
                Digit& d = digits[pos - 1];
                d.value = (d.value + 1) % d.radix;
                write(d);
                if (d.value != 0) break;
                --pos;
            }
            if (pos == 0) break;
        }
    }
    return std::nullopt;
}

}  // namespace qlogic
