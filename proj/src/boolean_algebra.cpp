#include "qlogic/boolean_algebra.hpp"

#include <bit>
#include <cctype>

#include "qlogic/error.hpp"

namespace qlogic {

FiniteBooleanAlgebra::FiniteBooleanAlgebra(unsigned atom_count) : atoms_(atom_count) {
    if (atom_count == 0 || atom_count > 64) {
        throw Error("a finite Boolean algebra needs between 1 and 64 atoms, got " + std::to_string(atom_count));
    }
    mask_ = atom_count == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << atom_count) - 1;
}

Element FiniteBooleanAlgebra::atom(unsigned i) const {
    if (i >= atoms_) throw Error("atom index " + std::to_string(i) + " out of range");
    return {std::uint64_t{1} << i};
}

Element FiniteBooleanAlgebra::meet_all(const std::vector<Element>& xs) const {
    Element acc = top();
    for (auto x : xs) acc = meet(acc, x);
    return acc;
}

Element FiniteBooleanAlgebra::join_all(const std::vector<Element>& xs) const {
    Element acc = bottom();
    for (auto x : xs) acc = join(acc, x);
    return acc;
}

std::vector<Element> FiniteBooleanAlgebra::elements() const {
    if (atoms_ > 24) throw Error("refusing to enumerate an algebra with " + std::to_string(atoms_) + " atoms");
    std::vector<Element> out;
    out.reserve(size());
    for (std::uint64_t b = 0; b <= mask_; ++b) out.push_back({b});
    return out;
}

std::string to_string(Element e) {
    std::string out = "[";
    bool first = true;
    for (unsigned i = 0; i < 64; ++i) {
        if ((e.bits >> i & 1U) == 0) continue;
        if (!first) out += ",";
        first = false;
        out += std::to_string(i);
    }
    return out + "]";
}

Element parse_element(std::string_view text, const FiniteBooleanAlgebra& algebra) {
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    // Bare 0 and 1 name bottom and top in any algebra.
    std::size_t end = text.find_last_not_of(" \t\r\n");
    if (end != std::string_view::npos && end == i && (text[i] == '0' || text[i] == '1')) {
        return text[i] == '1' ? algebra.top() : algebra.bottom();
    }
    if (i >= text.size() || text[i] != '[') throw Error("expected '[' in element '" + std::string(text) + "'");
    ++i;
    Element e;
    skip();
    if (i < text.size() && text[i] == ']') {
        ++i;
    } else {
        while (true) {
            skip();
            std::size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (start == i) throw Error("expected atom index in element '" + std::string(text) + "'");
            unsigned index = static_cast<unsigned>(std::stoul(std::string(text.substr(start, i - start))));
            e = algebra.join(e, algebra.atom(index));
            skip();
            if (i < text.size() && text[i] == ',') {
                ++i;
                continue;
            }
            if (i < text.size() && text[i] == ']') {
                ++i;
                break;
            }
            throw Error("expected ',' or ']' in element '" + std::string(text) + "'");
        }
    }
    skip();
    if (i != text.size()) throw Error("trailing characters in element '" + std::string(text) + "'");
    return e;
}

Filter::Filter(FiniteBooleanAlgebra algebra, Element generator) : algebra_(algebra), generator_(generator) {
    if (!algebra_.contains(generator)) throw Error("filter generator outside the algebra");
}

bool Filter::is_ultrafilter() const noexcept { return std::popcount(generator_.bits) == 1; }

std::vector<Element> Filter::members() const {
    std::vector<Element> out;
    for (auto e : algebra_.elements()) {
        if (contains(e)) out.push_back(e);
    }
    return out;
}

Ultrafilter::Ultrafilter(Filter filter) : filter_(std::move(filter)) {
    if (!filter_.is_ultrafilter()) throw Error("filter " + to_string(filter_.generator()) + " is not an ultrafilter");
}

Ultrafilter Ultrafilter::principal(const FiniteBooleanAlgebra& algebra, unsigned atom) {
    return Ultrafilter(Filter(algebra, algebra.atom(atom)));
}

unsigned Ultrafilter::atom_index() const noexcept {
    return static_cast<unsigned>(std::countr_zero(filter_.generator().bits));
}

Filter generated_filter(const FiniteBooleanAlgebra& algebra, const std::vector<Element>& j) {
    return Filter(algebra, algebra.meet_all(j));
}

bool is_consistent(const FiniteBooleanAlgebra& algebra, const std::vector<Element>& j) {
    return algebra.meet_all(j) != algebra.bottom();
}

Ultrafilter extend_to_ultrafilter(const Filter& f) {
    if (!f.is_proper()) throw Error("inconsistent");
    unsigned least = static_cast<unsigned>(std::countr_zero(f.generator().bits));
    return Ultrafilter::principal(f.algebra(), least);
}

Quotient::Quotient(const Filter& filter)
    : filter_(filter),
      quotient_(filter.is_proper() ? static_cast<unsigned>(std::popcount(filter.generator().bits)) : 1) {
    if (!filter.is_proper()) throw Error("cannot take the quotient by an improper filter");
    for (unsigned i = 0; i < filter.algebra().atom_count(); ++i) {
        if (filter.generator().bits >> i & 1U) kept_atoms_.push_back(i);
    }
}

Element Quotient::project(Element p) const {
    Element out;
    for (unsigned k = 0; k < kept_atoms_.size(); ++k) {
        if (p.bits >> kept_atoms_[k] & 1U) out.bits |= std::uint64_t{1} << k;
    }
    return out;
}

Quotient quotient(const Filter& filter) { return Quotient(filter); }

bool is_perfect_on_fragment(const Ultrafilter& ultrafilter, const std::vector<FragmentEntry>& fragment,
                            const Embedding& embed) {
    for (const auto& entry : fragment) {
        Formula universal = Formula::forall(entry.variable, entry.formula);
        bool witnessed = false;
        for (const auto& d : entry.candidates) {
            Formula instance = subst_formula(entry.formula, single(entry.variable, d));
            if (ultrafilter.contains(embed(Formula::disj(universal, Formula::negation(instance))))) {
                witnessed = true;
                break;
            }
        }
        if (!witnessed) return false;
    }
    return true;
}

}  // namespace qlogic
