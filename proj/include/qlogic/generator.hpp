#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qlogic/formula.hpp"
#include "qlogic/model.hpp"
#include "qlogic/signature.hpp"

namespace qlogic {

struct GeneratorConfig {
    std::vector<Variable> variables{Variable("x"), Variable("y"), Variable("z")};
    std::size_t max_depth = 4;
    std::size_t max_binders = 3;
    std::size_t max_term_depth = 1;
    bool use_equality = true;
};

/// Seeded source of random terms, formulas, substitutions and models.
class FormulaGenerator {
public:
    FormulaGenerator(Signature sig, GeneratorConfig config, std::uint64_t seed);

    Term term(std::size_t max_depth);
    Formula formula();
    Formula formula(std::size_t max_depth, std::size_t max_binders);
    Substitution substitution(std::size_t max_bindings);
    Variable variable();
    std::size_t below(std::size_t n);

    std::mt19937_64& rng() noexcept { return rng_; }
    const Signature& signature() const noexcept { return sig_; }

private:
    Formula build(std::size_t depth, std::size_t& binders);
    Formula atomic();

    Signature sig_;
    GeneratorConfig config_;
    std::mt19937_64 rng_;
};

/// A model with random tables over `sig`, domain `m0 .. m(size-1)`.
FunctionalModel random_model(const Signature& sig, std::size_t size, unsigned atoms, std::mt19937_64& rng);

}  // namespace qlogic
