#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qlogic {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by every text reader; line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class SignatureError : public Error {
public:
    using Error::Error;
};

class ModelError : public Error {
public:
    using Error::Error;
};

}  // namespace qlogic
