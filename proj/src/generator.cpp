#include "qlogic/generator.hpp"

#include <algorithm>

namespace qlogic {

FormulaGenerator::FormulaGenerator(Signature sig, GeneratorConfig config, std::uint64_t seed)
    : sig_(std::move(sig)), config_(std::move(config)), rng_(seed) {
    if (!sig_.with_equality()) config_.use_equality = false;
}

std::size_t FormulaGenerator::below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

Variable FormulaGenerator::variable() { return config_.variables[below(config_.variables.size())]; }

Term FormulaGenerator::term(std::size_t max_depth) {
    const auto& funs = sig_.functions();
    bool has_constant = std::any_of(funs.begin(), funs.end(), [](const Symbol& f) { return f.arity == 0; });
    std::size_t roll = below(4);
    if (max_depth > 0 && !funs.empty() && roll == 0) {
        const Symbol& f = funs[below(funs.size())];
        std::vector<Term> args;
        for (std::size_t i = 0; i < f.arity; ++i) args.push_back(term(max_depth - 1));
        return Term::app(f.name, std::move(args));
    }
    if (has_constant && roll == 1) {
        std::vector<const Symbol*> constants;
        for (const auto& f : funs) {
            if (f.arity == 0) constants.push_back(&f);
        }
        return Term::app(constants[below(constants.size())]->name);
    }
    return Term::var(variable());
}

Formula FormulaGenerator::atomic() {
    const auto& rels = sig_.relations();
    std::size_t choices = rels.size() + (config_.use_equality ? 1 : 0);
    if (choices == 0 || below(12) == 0) return below(2) == 0 ? Formula::top() : Formula::bot();
    std::size_t pick = below(choices);
    if (pick == rels.size()) return Formula::eq(term(config_.max_term_depth), term(config_.max_term_depth));
    const Symbol& r = rels[pick];
    std::vector<Term> args;
    for (std::size_t i = 0; i < r.arity; ++i) args.push_back(term(config_.max_term_depth));
    return Formula::atom(r.name, std::move(args));
}

Formula FormulaGenerator::build(std::size_t depth, std::size_t& binders) {
    if (depth == 0 || below(5) == 0) return atomic();
    std::size_t roll = below(binders > 0 ? 5 : 4);
    switch (roll) {
        case 0:
            return Formula::negation(build(depth - 1, binders));
        case 1: {
            Formula l = build(depth - 1, binders);
            return Formula::conj(std::move(l), build(depth - 1, binders));
        }
        case 2: {
            Formula l = build(depth - 1, binders);
            return Formula::disj(std::move(l), build(depth - 1, binders));
        }
        case 3:
            return atomic();
        default: {
            --binders;
            Variable x = variable();
            return Formula::forall(x, build(depth - 1, binders));
        }
    }
}

Formula FormulaGenerator::formula() { return formula(config_.max_depth, config_.max_binders); }

Formula FormulaGenerator::formula(std::size_t max_depth, std::size_t max_binders) {
    std::size_t binders = max_binders;
    return build(max_depth, binders);
}

Substitution FormulaGenerator::substitution(std::size_t max_bindings) {
    Substitution s;
    std::size_t n = below(max_bindings + 1);
    for (std::size_t i = 0; i < n; ++i) s = update_subst(s, variable(), term(config_.max_term_depth));
    return s;
}

FunctionalModel random_model(const Signature& sig, std::size_t size, unsigned atoms, std::mt19937_64& rng) {
    std::vector<std::string> domain;
    for (std::size_t i = 0; i < size; ++i) domain.push_back("m" + std::to_string(i));
    FunctionalModel m(sig, domain, FiniteBooleanAlgebra(atoms));
    std::uniform_int_distribution<std::size_t> element(0, size - 1);
    std::uniform_int_distribution<std::uint64_t> value(0, m.algebra().top().bits);
    for (std::size_t k = 0; k < sig.functions().size(); ++k) {
        for (auto& v : m.function_table(k)) v = element(rng);
    }
    for (std::size_t k = 0; k < sig.relations().size(); ++k) {
        for (auto& v : m.relation_table(k)) v = Element{value(rng)};
    }
    return m;
}

}  // namespace qlogic
