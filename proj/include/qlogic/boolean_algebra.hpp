#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "qlogic/formula.hpp"

namespace qlogic {

/// An element of a finite powerset algebra: the set of atoms below it.
struct Element {
    std::uint64_t bits = 0;

    bool operator==(const Element&) const = default;
    auto operator<=>(const Element&) const = default;
};

/// The powerset algebra on `atom_count` atoms (1 to 64). Atom count 1 is the
/// two-element algebra 2 = {0, 1}.
class FiniteBooleanAlgebra {
public:
    explicit FiniteBooleanAlgebra(unsigned atom_count);

    static FiniteBooleanAlgebra two() { return FiniteBooleanAlgebra(1); }

    unsigned atom_count() const noexcept { return atoms_; }
    Element bottom() const noexcept { return {0}; }
    Element top() const noexcept { return {mask_}; }
    Element atom(unsigned i) const;

    Element meet(Element a, Element b) const noexcept { return {a.bits & b.bits}; }
    Element join(Element a, Element b) const noexcept { return {a.bits | b.bits}; }
    Element complement(Element a) const noexcept { return {~a.bits & mask_}; }
    bool leq(Element a, Element b) const noexcept { return (a.bits & ~b.bits) == 0; }
    bool contains(Element a) const noexcept { return (a.bits & ~mask_) == 0; }

    Element meet_all(const std::vector<Element>& xs) const;
    Element join_all(const std::vector<Element>& xs) const;

    /// Number of elements, 2^atom_count; only meaningful below 64 atoms.
    std::uint64_t size() const noexcept { return mask_ + 1; }
    /// All elements in increasing bit order; intended for small algebras.
    std::vector<Element> elements() const;

    bool operator==(const FiniteBooleanAlgebra& other) const { return atoms_ == other.atoms_; }

private:
    unsigned atoms_;
    std::uint64_t mask_;
};

/// Sorted atom-index list, e.g. `[0,2]`.
std::string to_string(Element e);
/// Accepts the list form or a bare `0`/`1` for bottom/top.
Element parse_element(std::string_view text, const FiniteBooleanAlgebra& algebra);

/// A filter of a finite algebra. Every filter of a finite algebra is principal,
/// so it is stored as its least member; members are the up-set of it.
class Filter {
public:
    Filter(FiniteBooleanAlgebra algebra, Element generator);

    const FiniteBooleanAlgebra& algebra() const noexcept { return algebra_; }
    Element generator() const noexcept { return generator_; }

    bool contains(Element p) const noexcept { return algebra_.leq(generator_, p); }
    bool is_proper() const noexcept { return generator_.bits != 0; }
    /// Exactly one of p, ~p is a member for every p.
    bool is_ultrafilter() const noexcept;
    std::vector<Element> members() const;

    bool operator==(const Filter&) const = default;

private:
    FiniteBooleanAlgebra algebra_;
    Element generator_;
};

/// A filter that decides every element.
class Ultrafilter {
public:
    /// Throws Error unless `filter` is an ultrafilter.
    explicit Ultrafilter(Filter filter);
    static Ultrafilter principal(const FiniteBooleanAlgebra& algebra, unsigned atom);

    const Filter& filter() const noexcept { return filter_; }
    bool contains(Element p) const noexcept { return filter_.contains(p); }
    /// Index of the atom the ultrafilter is generated by.
    unsigned atom_index() const noexcept;

private:
    Filter filter_;
};

/// Smallest filter containing J: the up-set of meet(J); meet of no elements is 1.
Filter generated_filter(const FiniteBooleanAlgebra& algebra, const std::vector<Element>& j);

/// Finite meet property: meet(J) != 0.
bool is_consistent(const FiniteBooleanAlgebra& algebra, const std::vector<Element>& j);

/// The ultrafilter of the least-indexed atom below the filter's generator.
/// Throws Error("inconsistent") on an improper filter.
Ultrafilter extend_to_ultrafilter(const Filter& f);

/// B/I together with its projection. Two elements are identified when their
/// biconditional lies in I, i.e. when they agree below the generator of I.
class Quotient {
public:
    /// Throws Error on an improper filter.
    explicit Quotient(const Filter& filter);

    const FiniteBooleanAlgebra& algebra() const noexcept { return quotient_; }
    Element project(Element p) const;

private:
    Filter filter_;
    FiniteBooleanAlgebra quotient_;
    std::vector<unsigned> kept_atoms_;
};

Quotient quotient(const Filter& filter);

/// One fragment entry: a variable z, a formula q and the candidate witnesses d.
struct FragmentEntry {
    Variable variable;
    Formula formula;
    std::vector<Term> candidates;
};

using Embedding = std::function<Element(const Formula&)>;

/// True iff for every (z, q) some candidate d puts `forall z. q | ~q[d/z]` into I.
bool is_perfect_on_fragment(const Ultrafilter& ultrafilter, const std::vector<FragmentEntry>& fragment,
                            const Embedding& embed);

}  // namespace qlogic
