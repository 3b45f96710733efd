#include "qlogic/variable.hpp"

#include <cctype>

namespace qlogic {

namespace {

constexpr std::string_view kReservedPrefix = "_h";

std::optional<std::size_t> parse_reserved(std::string_view name) {
    if (name.size() <= kReservedPrefix.size() || name.substr(0, kReservedPrefix.size()) != kReservedPrefix) {
        return std::nullopt;
    }
    auto digits = name.substr(kReservedPrefix.size());
    if (digits.size() > 1 && digits.front() == '0') return std::nullopt;
    std::size_t value = 0;
    for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        value = value * 10 + static_cast<std::size_t>(c - '0');
    }
    return value;
}

}  // namespace

Variable::Variable(std::string name) : name_(std::move(name)), reserved_(parse_reserved(name_)) {}

Variable Variable::reserved(std::size_t index) {
    return Variable(std::string(kReservedPrefix) + std::to_string(index));
}

bool Variable::is_reserved_name(std::string_view name) {
    return name.substr(0, kReservedPrefix.size()) == kReservedPrefix;
}

std::strong_ordering Variable::operator<=>(const Variable& other) const {
    if (reserved_.has_value() != other.reserved_.has_value()) {
        return reserved_.has_value() ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (reserved_) return *reserved_ <=> *other.reserved_;
    return name_ <=> other.name_;
}

Variable least_fresh(const VariableSet& used) {
    std::size_t index = 0;
    while (used.count(Variable::reserved(index)) != 0) ++index;
    return Variable::reserved(index);
}

}  // namespace qlogic
