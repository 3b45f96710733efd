#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace qlogic {

/// A variable drawn from one ambient countable pool.
///
/// The pool is ordered: user names come first in lexicographic order, then the
/// reserved names `_h0, _h1, ...` ordered by their numeric suffix. Reserved
/// names are produced by the fresh-variable policy and never typed by users.
class Variable {
public:
    explicit Variable(std::string name);

    static Variable reserved(std::size_t index);
    static bool is_reserved_name(std::string_view name);

    const std::string& name() const noexcept { return name_; }
    std::optional<std::size_t> reserved_index() const noexcept { return reserved_; }
    bool is_reserved() const noexcept { return reserved_.has_value(); }

    std::strong_ordering operator<=>(const Variable& other) const;
    bool operator==(const Variable& other) const { return name_ == other.name_; }

private:
    std::string name_;
    std::optional<std::size_t> reserved_;
};

using VariableSet = std::set<Variable>;

/// Least reserved variable outside `used`.
Variable least_fresh(const VariableSet& used);

}  // namespace qlogic
