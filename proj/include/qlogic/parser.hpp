#pragma once

#include <string_view>
#include <vector>

#include "qlogic/formula.hpp"
#include "qlogic/signature.hpp"
#include "qlogic/term.hpp"

namespace qlogic {

enum class SymbolMode {
    /// Every symbol must already be declared in the signature.
    Fixed,
    /// Undeclared symbols are added to the signature as they are met.
    Extend,
};

struct ParseOptions {
    SymbolMode mode = SymbolMode::Fixed;
    /// Accept `_h<n>` identifiers, which normally belong to the fresh-variable pool.
    bool allow_reserved = false;
};

/// Formula syntax:
///
///     forall x. p    exists x y. p    forall {x,y}. p
///     p -> q    p | q    p & q    ~p    (p)    true    false
///     P(t1, ..., tn)    Q    t1 = t2
///
/// Precedence from tightest: ~, &, |, -> (right associative). Quantifiers
/// extend as far to the right as possible. A bare identifier in term position
/// is a constant when the signature declares it as a 0-ary function and a
/// variable otherwise; `c()` is always a constant.
Formula parse_formula(std::string_view text, Signature& sig, const ParseOptions& options);
Formula parse_formula(std::string_view text, const Signature& sig);

Term parse_term(std::string_view text, Signature& sig, const ParseOptions& options);
Term parse_term(std::string_view text, const Signature& sig);

/// One formula per non-empty line; `#` starts a comment. Errors carry the line number.
std::vector<Formula> parse_formula_list(std::string_view text, Signature& sig, const ParseOptions& options);

}  // namespace qlogic
