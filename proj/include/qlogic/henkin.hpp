#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qlogic/formula.hpp"
#include "qlogic/model.hpp"
#include "qlogic/sat.hpp"
#include "qlogic/signature.hpp"
#include "qlogic/term.hpp"

namespace qlogic {

/// All terms over `seeds` and the function symbols of `sig` with nesting depth
/// at most `depth`. Level 0 lists the seeds then the constants; each further
/// level lists, per function symbol in declaration order, the argument tuples
/// that use at least one term of the previous level, lexicographically by
/// position in the universe. Throws Error("no closed terms") when there are no
/// seeds and no constants.
std::vector<Term> herbrand_universe(const Signature& sig, const std::vector<Variable>& seeds, std::size_t depth);

struct HenkinOptions {
    std::size_t rounds = 2;
    std::size_t depth = 2;
};

enum class PropKind { Truth, Atom, Equality, Quantified, Auxiliary };

/// A propositional variable of the abstraction. Atoms and equalities are
/// ground over seeds and witnesses; quantified entries stand for `forall y. p`
/// up to alpha; auxiliary entries name a connective node of the encoding.
struct PropVar {
    PropKind kind;
    Formula formula;
    std::string key;
};

/// A witness z for the class of `forall y. p`.
struct Witness {
    Variable witness;
    Variable bound;
    Formula body;
};

struct HenkinState {
    Signature signature;
    std::vector<Formula> input;
    /// Free variables of the input, in variable order; they act as constants.
    std::vector<Variable> seeds;
    std::vector<Witness> witnesses;
    /// theta[i] = forall y. p | ~p[z/y] for witnesses[i].
    std::vector<Formula> theta;
    std::vector<Term> term_universe;

    std::vector<PropVar> prop_vars;
    std::map<std::string, std::size_t> prop_index;
    /// Quantified prop vars in discovery order.
    std::vector<std::size_t> quantified;
    /// Quantified entries before this position have a witness.
    std::size_t witnessed = 0;
    /// (quantified prop var, printed term) pairs already instantiated.
    std::set<std::pair<std::size_t, std::string>> instantiated;
    std::size_t next_witness = 0;
    /// Set once domain-closure clauses restrict quantifiers to the universe.
    bool domain_closed = false;

    std::vector<Clause> clauses;
    std::set<Clause> clause_set;
    std::optional<std::vector<bool>> valuation;
};

/// Runs `options.rounds` witness and instantiation rounds over J. Clauses
/// assert the skeleton of every member of J, one theta per witness, universal
/// instantiation over the term universe and, when equality atoms occur, the
/// equality axioms over the universe. Throws Error on rounds == 0 or depth
/// too small to contain a seed.
HenkinState henkin_expand(const std::vector<Formula>& j, const Signature& sig, const HenkinOptions& options = {});

/// Adds, for every quantified prop var, the clause that some universe instance
/// is false whenever it is false, unfolding nested quantifiers until none is
/// new. Models of the result are models whose domain is the universe, so an
/// UNSAT answer after this step says nothing about J.
void close_domain(HenkinState& state);

/// DPLL over the state's clauses; stores and returns the valuation.
std::optional<std::vector<bool>> sat_solve(HenkinState& state);

/// Truth of a formula under the state's valuation through its propositional
/// skeleton; atoms and quantified formulas without a prop var are false.
bool skeleton_value(const HenkinState& state, const std::vector<bool>& valuation, const Formula& p);

struct TermModel {
    FunctionalModel model;
    /// Element of each universe term, keyed by its printed form.
    std::map<std::string, std::size_t> element_of;
    /// Seeds and witnesses mapped to their own elements.
    Valuation identity;
};

/// Domain: the universe modulo the congruence closure of the equalities the
/// valuation makes true. Applications leaving the universe go to element 0.
/// Throws Error without a valuation and Error("incoherent valuation") when
/// two atoms identified by the congruence get different values.
TermModel build_term_model(const HenkinState& state);

/// Every member of the input evaluates to 1 in the term model.
bool verify_term_model(const HenkinState& state, const TermModel& tm);

/// The ultrafilter picked out by the valuation, on the algebra of the
/// valuation and its single-variable flips, contains every theta.
bool check_perfectness(const HenkinState& state);

enum class Verdict { Sat, Unsat, Unknown };

std::string to_string(Verdict v);

struct HenkinResult {
    Verdict verdict;
    HenkinState state;
    std::optional<TermModel> model;
    bool perfect = false;
    std::string note;
};

/// Expansion, SAT and extraction. UNSAT from the instantiation clauses is
/// final; when the first model fails verification the domain is closed and
/// solved once more before answering Unknown.
HenkinResult run_henkin(const std::vector<Formula>& j, const Signature& sig, const HenkinOptions& options = {});

}  // namespace qlogic
