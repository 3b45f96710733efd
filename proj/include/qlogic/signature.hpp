#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qlogic {

struct Symbol {
    std::string name;
    std::size_t arity = 0;

    bool operator==(const Symbol&) const = default;
};

/// Function and relation symbols of a first-order language, in declaration order.
class Signature {
public:
    void add_function(std::string name, std::size_t arity);
    void add_relation(std::string name, std::size_t arity);
    void set_equality(bool on) { with_equality_ = on; }

    const std::vector<Symbol>& functions() const noexcept { return functions_; }
    const std::vector<Symbol>& relations() const noexcept { return relations_; }
    bool with_equality() const noexcept { return with_equality_; }

    const Symbol* find_function(std::string_view name) const;
    const Symbol* find_relation(std::string_view name) const;
    bool declares(std::string_view name) const;
    bool is_constant(std::string_view name) const;

    /// Checks that every symbol of `other` is declared here with the same arity.
    bool contains(const Signature& other) const;
    /// Adds the symbols of `other` not yet declared; throws on an arity clash.
    void merge(const Signature& other);

    bool operator==(const Signature&) const = default;

private:
    std::vector<Symbol> functions_;
    std::vector<Symbol> relations_;
    bool with_equality_ = false;
};

/// Reads the `fun f/2`, `rel P/1`, `equality on|off` format; `#` starts a comment.
Signature parse_signature(std::string_view text);
std::string to_string(const Signature& sig);

}  // namespace qlogic
