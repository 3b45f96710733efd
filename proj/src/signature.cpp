#include "qlogic/signature.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "qlogic/error.hpp"

namespace qlogic {

namespace {

const Symbol* find_in(const std::vector<Symbol>& symbols, std::string_view name) {
    auto it = std::find_if(symbols.begin(), symbols.end(), [&](const Symbol& s) { return s.name == name; });
    return it == symbols.end() ? nullptr : &*it;
}

bool valid_identifier(std::string_view name) {
    if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
    return std::all_of(name.begin(), name.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    });
}

}  // namespace

void Signature::add_function(std::string name, std::size_t arity) {
    if (declares(name)) throw SignatureError("symbol '" + name + "' declared twice");
    functions_.push_back({std::move(name), arity});
}

void Signature::add_relation(std::string name, std::size_t arity) {
    if (declares(name)) throw SignatureError("symbol '" + name + "' declared twice");
    relations_.push_back({std::move(name), arity});
}

const Symbol* Signature::find_function(std::string_view name) const { return find_in(functions_, name); }
const Symbol* Signature::find_relation(std::string_view name) const { return find_in(relations_, name); }

bool Signature::declares(std::string_view name) const {
    return find_function(name) != nullptr || find_relation(name) != nullptr;
}

bool Signature::is_constant(std::string_view name) const {
    const Symbol* f = find_function(name);
    return f != nullptr && f->arity == 0;
}

bool Signature::contains(const Signature& other) const {
    if (other.with_equality_ && !with_equality_) return false;
    for (const auto& f : other.functions_) {
        const Symbol* mine = find_function(f.name);
        if (mine == nullptr || mine->arity != f.arity) return false;
    }
    for (const auto& r : other.relations_) {
        const Symbol* mine = find_relation(r.name);
        if (mine == nullptr || mine->arity != r.arity) return false;
    }
    return true;
}

void Signature::merge(const Signature& other) {
    for (const auto& f : other.functions_) {
        if (const Symbol* mine = find_function(f.name)) {
            if (mine->arity != f.arity) throw SignatureError("function '" + f.name + "' used with two arities");
        } else {
            add_function(f.name, f.arity);
        }
    }
    for (const auto& r : other.relations_) {
        if (const Symbol* mine = find_relation(r.name)) {
            if (mine->arity != r.arity) throw SignatureError("relation '" + r.name + "' used with two arities");
        } else {
            add_relation(r.name, r.arity);
        }
    }
    with_equality_ = with_equality_ || other.with_equality_;
}

Signature parse_signature(std::string_view text) {
    Signature sig;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream words(line);
        std::string keyword;
        if (!(words >> keyword)) continue;
        std::string rest;
        words >> rest;
        std::string extra;
        if (words >> extra) throw ParseError("unexpected '" + extra + "'", line_no, line.find(extra) + 1);
        auto column = line.find(keyword) + 1;
        if (keyword == "equality") {
            if (rest == "on") sig.set_equality(true);
            else if (rest == "off") sig.set_equality(false);
            else throw ParseError("expected 'on' or 'off'", line_no, column);
            continue;
        }
        if (keyword != "fun" && keyword != "rel") throw ParseError("unknown declaration '" + keyword + "'", line_no, column);
        auto slash = rest.find('/');
        if (slash == std::string::npos) throw ParseError("expected name/arity", line_no, column);
        std::string name = rest.substr(0, slash);
        std::string arity_text = rest.substr(slash + 1);
        if (!valid_identifier(name)) throw ParseError("invalid symbol name '" + name + "'", line_no, column);
        if (arity_text.empty() || !std::all_of(arity_text.begin(), arity_text.end(), ::isdigit)) {
            throw ParseError("invalid arity '" + arity_text + "'", line_no, column);
        }
        std::size_t arity = std::stoul(arity_text);
        try {
            if (keyword == "fun") sig.add_function(name, arity);
            else sig.add_relation(name, arity);
        } catch (const SignatureError& e) {
            throw ParseError(e.what(), line_no, column);
        }
    }
    return sig;
}

std::string to_string(const Signature& sig) {
    std::ostringstream out;
    for (const auto& f : sig.functions()) out << "fun " << f.name << "/" << f.arity << "\n";
    for (const auto& r : sig.relations()) out << "rel " << r.name << "/" << r.arity << "\n";
    out << "equality " << (sig.with_equality() ? "on" : "off") << "\n";
    return out.str();
}

}  // namespace qlogic
