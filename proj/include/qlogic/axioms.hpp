#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qlogic/formula.hpp"
#include "qlogic/model.hpp"

namespace qlogic {

struct Violation {
    std::string law;
    std::string detail;
};

/// Outcome of a batch of law checks: how often each law was exercised and
/// every counterexample found.
class AxiomReport {
public:
    void record(const std::string& law, bool holds, const std::function<std::string()>& detail);
    void merge(const AxiomReport& other);

    bool ok() const noexcept { return violations_.empty(); }
    std::size_t total_checks() const;
    const std::map<std::string, std::size_t>& checks() const noexcept { return checks_; }
    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::map<std::string, std::size_t> checks_;
    std::vector<Violation> violations_;
};

/// One instance for the quantifier laws: formulas p and q, a substitution s,
/// and the variables x and y the laws quantify and rename.
struct QuantifierInstance {
    Formula p;
    Formula q;
    Substitution s;
    Variable x{"x"};
    Variable y{"y"};
};

/// Checks, at every valuation of the variables involved:
///   forall x distributes over meets, lies below its body, is the identity on
///   formulas that do not depend on x, commutes with substitution through a
///   fresh binder, is monotone, lies below every instance, is the greatest
///   x-independent lower bound, drops x from the support, commutes with
///   forall y, satisfies generalization over a fresh variable, equals the meet
///   of its instances over the domain, and (p s)(xi) = p(s xi).
AxiomReport check_quantifier_laws(const FunctionalModel& m, const QuantifierInstance& instance);

/// Equality laws: substitution commutes with e, e(t,t) = 1,
/// p & e(x,y) <= p[x/y], p & e(x,y) = p[x/y] & e(x,y), e(x,y) is the least p
/// with p[y/x] = 1, and e is the diagonal on the domain.
/// The model's signature must have equality.
AxiomReport check_equality_laws(const FunctionalModel& m, const QuantifierInstance& instance);

/// Random instances over the model's signature with the variables x, y, z.
AxiomReport check_quantifier_axioms(const FunctionalModel& m, std::size_t samples, std::uint64_t seed = 1);
AxiomReport check_equality_axioms(const FunctionalModel& m, std::size_t samples, std::uint64_t seed = 1);

}  // namespace qlogic
