#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qlogic/boolean_algebra.hpp"
#include "qlogic/signature.hpp"
#include "qlogic/variable.hpp"

namespace qlogic {

/// A finite B-valued structure (B, M): a nonempty domain M, a finite powerset
/// algebra B, total function tables M^n -> M and relation tables M^n -> B.
///
/// Tables are indexed by argument tuples in lexicographic order with the first
/// argument most significant. Fresh tables map everything to element 0 and to
/// the bottom of B.
class FunctionalModel {
public:
    FunctionalModel(Signature sig, std::vector<std::string> domain, FiniteBooleanAlgebra algebra);

    const Signature& signature() const noexcept { return sig_; }
    const std::vector<std::string>& domain() const noexcept { return domain_; }
    std::size_t size() const noexcept { return domain_.size(); }
    const FiniteBooleanAlgebra& algebra() const noexcept { return algebra_; }
    bool is_two_valued() const noexcept { return algebra_.atom_count() == 1; }

    std::optional<std::size_t> find_element(std::string_view name) const;

    std::size_t apply(const std::string& function, std::span<const std::size_t> args) const;
    Element holds(const std::string& relation, std::span<const std::size_t> args) const;

    void set_function(const std::string& function, std::span<const std::size_t> args, std::size_t value);
    void set_relation(const std::string& relation, std::span<const std::size_t> args, Element value);

    /// Raw tables, parallel to signature().functions() / relations().
    std::vector<std::size_t>& function_table(std::size_t index) { return fun_tables_[index]; }
    std::vector<Element>& relation_table(std::size_t index) { return rel_tables_[index]; }
    const std::vector<std::size_t>& function_table(std::size_t index) const { return fun_tables_[index]; }
    const std::vector<Element>& relation_table(std::size_t index) const { return rel_tables_[index]; }

    /// Value of `a = b`: the diagonal unless an equality table was installed.
    Element equality(std::size_t a, std::size_t b) const;
    /// Installs a non-diagonal interpretation of `=`, indexed like a binary
    /// relation table. Throws ModelError on a size mismatch.
    void set_equality_table(std::vector<Element> table);
    bool is_normal() const noexcept { return eq_table_.empty(); }

    std::size_t tuple_index(std::span<const std::size_t> args) const;
    std::vector<std::size_t> tuple_at(std::size_t index, std::size_t arity) const;
    std::size_t tuple_count(std::size_t arity) const;

private:
    std::size_t function_slot(const std::string& name) const;
    std::size_t relation_slot(const std::string& name) const;

    Signature sig_;
    std::vector<std::string> domain_;
    FiniteBooleanAlgebra algebra_;
    std::unordered_map<std::string, std::size_t> fun_index_;
    std::unordered_map<std::string, std::size_t> rel_index_;
    std::vector<std::vector<std::size_t>> fun_tables_;
    std::vector<std::vector<Element>> rel_tables_;
    std::vector<Element> eq_table_;
};

/// Total map from the variable pool to domain elements: explicit entries plus
/// a fallback element for everything else.
class Valuation {
public:
    Valuation() = default;
    explicit Valuation(std::size_t fallback) : fallback_(fallback) {}

    std::size_t operator()(const Variable& x) const;
    void set(const Variable& x, std::size_t element) { values_.insert_or_assign(x, element); }
    void erase(const Variable& x) { values_.erase(x); }
    Valuation with(const Variable& x, std::size_t element) const;

    std::size_t fallback() const noexcept { return fallback_; }
    const std::map<Variable, std::size_t>& entries() const noexcept { return values_; }

private:
    std::map<Variable, std::size_t> values_;
    std::size_t fallback_ = 0;
};

std::string to_string(const Valuation& xi, const FunctionalModel& m);

/// Text format, one declaration per line, `#` comments:
///
///     domain a b c
///     algebra atoms=1
///     equality on
///     fun f: a->b, b->a, c->c
///     fun g: a,b->c, ...
///     fun k: ->a
///     rel P: a=[0], b=[]
///     rel R/2: a,b=1
///
/// Function tables must be total. Relation entries default to the bottom
/// element; `0` and `1` abbreviate bottom and top.
FunctionalModel parse_model(std::string_view text);
std::string to_model_text(const FunctionalModel& m);

}  // namespace qlogic
