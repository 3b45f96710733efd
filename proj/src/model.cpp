#include "qlogic/model.hpp"

#include <cctype>
#include <sstream>

#include "qlogic/error.hpp"

namespace qlogic {

FunctionalModel::FunctionalModel(Signature sig, std::vector<std::string> domain, FiniteBooleanAlgebra algebra)
    : sig_(std::move(sig)), domain_(std::move(domain)), algebra_(algebra) {
    if (domain_.empty()) throw ModelError("model domain must be nonempty");
    for (std::size_t i = 0; i < domain_.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (domain_[i] == domain_[j]) throw ModelError("domain element '" + domain_[i] + "' listed twice");
        }
    }
    for (std::size_t i = 0; i < sig_.functions().size(); ++i) {
        const auto& f = sig_.functions()[i];
        fun_index_.emplace(f.name, i);
        fun_tables_.emplace_back(tuple_count(f.arity), 0);
    }
    for (std::size_t i = 0; i < sig_.relations().size(); ++i) {
        const auto& r = sig_.relations()[i];
        rel_index_.emplace(r.name, i);
        rel_tables_.emplace_back(tuple_count(r.arity), algebra_.bottom());
    }
}

Element FunctionalModel::equality(std::size_t a, std::size_t b) const {
    if (!eq_table_.empty()) return eq_table_[a * domain_.size() + b];
    return a == b ? algebra_.top() : algebra_.bottom();
}

void FunctionalModel::set_equality_table(std::vector<Element> table) {
    if (table.size() != domain_.size() * domain_.size()) throw ModelError("equality table has the wrong size");
    eq_table_ = std::move(table);
}

std::optional<std::size_t> FunctionalModel::find_element(std::string_view name) const {
    for (std::size_t i = 0; i < domain_.size(); ++i) {
        if (domain_[i] == name) return i;
    }
    return std::nullopt;
}

std::size_t FunctionalModel::tuple_count(std::size_t arity) const {
    std::size_t n = 1;
    for (std::size_t i = 0; i < arity; ++i) {
        if (n > (std::size_t{1} << 24) / domain_.size()) throw ModelError("table too large");
        n *= domain_.size();
    }
    return n;
}

std::size_t FunctionalModel::tuple_index(std::span<const std::size_t> args) const {
    std::size_t index = 0;
    for (auto a : args) index = index * domain_.size() + a;
    return index;
}

std::vector<std::size_t> FunctionalModel::tuple_at(std::size_t index, std::size_t arity) const {
    std::vector<std::size_t> out(arity);
    for (std::size_t k = arity; k-- > 0;) {
        out[k] = index % domain_.size();
        index /= domain_.size();
    }
    return out;
}

std::size_t FunctionalModel::function_slot(const std::string& name) const {
    auto it = fun_index_.find(name);
    if (it == fun_index_.end()) throw SignatureError("undeclared function symbol '" + name + "'");
    return it->second;
}

std::size_t FunctionalModel::relation_slot(const std::string& name) const {
    auto it = rel_index_.find(name);
    if (it == rel_index_.end()) throw SignatureError("undeclared relation symbol '" + name + "'");
    return it->second;
}

std::size_t FunctionalModel::apply(const std::string& function, std::span<const std::size_t> args) const {
    std::size_t slot = function_slot(function);
    if (args.size() != sig_.functions()[slot].arity) {
        throw SignatureError("function '" + function + "' expects " + std::to_string(sig_.functions()[slot].arity) +
                             " arguments in the model");
    }
    return fun_tables_[slot][tuple_index(args)];
}

Element FunctionalModel::holds(const std::string& relation, std::span<const std::size_t> args) const {
    std::size_t slot = relation_slot(relation);
    if (args.size() != sig_.relations()[slot].arity) {
        throw SignatureError("relation '" + relation + "' expects " + std::to_string(sig_.relations()[slot].arity) +
                             " arguments in the model");
    }
    return rel_tables_[slot][tuple_index(args)];
}

void FunctionalModel::set_function(const std::string& function, std::span<const std::size_t> args,
                                   std::size_t value) {
    std::size_t slot = function_slot(function);
    if (args.size() != sig_.functions()[slot].arity) throw ModelError("arity mismatch for '" + function + "'");
    if (value >= domain_.size()) throw ModelError("function value outside the domain");
    fun_tables_[slot][tuple_index(args)] = value;
}

void FunctionalModel::set_relation(const std::string& relation, std::span<const std::size_t> args, Element value) {
    std::size_t slot = relation_slot(relation);
    if (args.size() != sig_.relations()[slot].arity) throw ModelError("arity mismatch for '" + relation + "'");
    if (!algebra_.contains(value)) throw ModelError("relation value outside the algebra");
    rel_tables_[slot][tuple_index(args)] = value;
}

std::size_t Valuation::operator()(const Variable& x) const {
    auto it = values_.find(x);
    return it == values_.end() ? fallback_ : it->second;
}

Valuation Valuation::with(const Variable& x, std::size_t element) const {
    Valuation out = *this;
    out.set(x, element);
    return out;
}

std::string to_string(const Valuation& xi, const FunctionalModel& m) {
    std::string out = "{";
    bool first = true;
    for (const auto& [x, a] : xi.entries()) {
        if (!first) out += ", ";
        first = false;
        out += x.name() + " := " + m.domain()[a];
    }
    return out + "}";
}

namespace {

struct RawEntry {
    std::vector<std::string> tuple;
    std::string value;
};

struct RawTable {
    bool is_function = false;
    std::string name;
    std::optional<std::size_t> declared_arity;
    std::vector<RawEntry> entries;
    std::size_t line = 0;
};

std::vector<std::string> tokenize_entries(const std::string& text, std::size_t line_no, std::size_t offset) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == ',' || c == '=') {
            out.emplace_back(1, c);
            ++i;
        } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            out.emplace_back("->");
            i += 2;
        } else if (c == '[') {
            auto close = text.find(']', i);
            if (close == std::string::npos) throw ParseError("unterminated '['", line_no, offset + i + 1);
            out.push_back(text.substr(i, close - i + 1));
            i = close + 1;
        } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' || text[j] == '\'')) {
                ++j;
            }
            out.push_back(text.substr(i, j - i));
            i = j;
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", line_no, offset + i + 1);
        }
    }
    return out;
}

bool is_word(const std::string& s) {
    return !s.empty() && s != "," && s != "=" && s != "->" && s.front() != '[';
}

// entries := entry (',' entry)*;  entry := [word (',' word)*] sep value
std::vector<RawEntry> parse_entries(const std::vector<std::string>& toks, const std::string& sep, std::size_t line_no) {
    std::vector<RawEntry> out;
    std::size_t i = 0;
    auto fail = [&](const std::string& msg) -> void { throw ParseError(msg, line_no, 1); };
    while (i < toks.size()) {
        RawEntry entry;
        if (toks[i] != sep) {
            while (true) {
                if (i >= toks.size() || !is_word(toks[i])) fail("expected domain element in table entry");
                entry.tuple.push_back(toks[i++]);
                if (i < toks.size() && toks[i] == ",") {
                    ++i;
                    continue;
                }
                break;
            }
        }
        if (i >= toks.size() || toks[i] != sep) fail("expected '" + sep + "' in table entry");
        ++i;
        if (i >= toks.size() || toks[i] == "," || toks[i] == "=" || toks[i] == "->") fail("expected table value");
        entry.value = toks[i++];
        out.push_back(std::move(entry));
        if (i < toks.size()) {
            if (toks[i] != ",") fail("expected ',' between table entries");
            ++i;
            if (i >= toks.size()) fail("trailing ',' in table");
        }
    }
    return out;
}

}  // namespace

FunctionalModel parse_model(std::string_view text) {
    std::vector<std::string> domain;
    std::optional<unsigned> atoms;
    bool equality = false;
    std::vector<RawTable> tables;

    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream words(line);
        std::string keyword;
        if (!(words >> keyword)) continue;
        std::size_t column = line.find(keyword) + 1;
        if (keyword == "domain") {
            if (!domain.empty()) throw ParseError("domain declared twice", line_no, column);
            std::string name;
            while (words >> name) domain.push_back(name);
            if (domain.empty()) throw ParseError("domain must be nonempty", line_no, column);
        } else if (keyword == "algebra") {
            std::string setting;
            words >> setting;
            if (setting.rfind("atoms=", 0) != 0) throw ParseError("expected 'atoms=N'", line_no, column);
            try {
                atoms = static_cast<unsigned>(std::stoul(setting.substr(6)));
            } catch (const std::exception&) {
                throw ParseError("invalid atom count '" + setting.substr(6) + "'", line_no, column);
            }
        } else if (keyword == "equality") {
            std::string flag;
            words >> flag;
            if (flag != "on" && flag != "off") throw ParseError("expected 'on' or 'off'", line_no, column);
            equality = flag == "on";
        } else if (keyword == "fun" || keyword == "rel") {
            auto colon = line.find(':');
            if (colon == std::string::npos) throw ParseError("expected ':' after symbol", line_no, column);
            std::string head = line.substr(column - 1 + keyword.size(), colon - (column - 1 + keyword.size()));
            std::istringstream head_words(head);
            std::string name;
            head_words >> name;
            RawTable table;
            table.is_function = keyword == "fun";
            table.line = line_no;
            if (auto slash = name.find('/'); slash != std::string::npos) {
                try {
                    table.declared_arity = std::stoul(name.substr(slash + 1));
                } catch (const std::exception&) {
                    throw ParseError("invalid arity in '" + name + "'", line_no, column);
                }
                name = name.substr(0, slash);
            }
            if (name.empty()) throw ParseError("missing symbol name", line_no, column);
            table.name = name;
            auto toks = tokenize_entries(line.substr(colon + 1), line_no, colon + 1);
            table.entries = parse_entries(toks, table.is_function ? "->" : "=", line_no);
            tables.push_back(std::move(table));
        } else {
            throw ParseError("unknown declaration '" + keyword + "'", line_no, column);
        }
    }
    if (domain.empty()) throw ParseError("missing 'domain' line", line_no == 0 ? 1 : line_no, 1);

    Signature sig;
    sig.set_equality(equality);
    for (const auto& table : tables) {
        std::optional<std::size_t> arity = table.declared_arity;
        for (const auto& entry : table.entries) {
            if (arity && *arity != entry.tuple.size()) {
                throw ParseError("inconsistent arity for '" + table.name + "'", table.line, 1);
            }
            arity = entry.tuple.size();
        }
        if (!arity) throw ParseError("cannot infer the arity of '" + table.name + "'", table.line, 1);
        try {
            if (table.is_function) sig.add_function(table.name, *arity);
            else sig.add_relation(table.name, *arity);
        } catch (const SignatureError& e) {
            throw ParseError(e.what(), table.line, 1);
        }
    }

    FunctionalModel m(sig, domain, FiniteBooleanAlgebra(atoms.value_or(1)));
    for (const auto& table : tables) {
        std::size_t arity = table.is_function ? sig.find_function(table.name)->arity : sig.find_relation(table.name)->arity;
        std::vector<bool> seen(m.tuple_count(arity));
        for (const auto& entry : table.entries) {
            std::vector<std::size_t> args;
            for (const auto& name : entry.tuple) {
                auto e = m.find_element(name);
                if (!e) throw ParseError("unknown domain element '" + name + "'", table.line, 1);
                args.push_back(*e);
            }
            std::size_t index = m.tuple_index(args);
            if (seen[index]) throw ParseError("duplicate entry in table of '" + table.name + "'", table.line, 1);
            seen[index] = true;
            if (table.is_function) {
                auto value = m.find_element(entry.value);
                if (!value) throw ParseError("unknown domain element '" + entry.value + "'", table.line, 1);
                m.set_function(table.name, args, *value);
            } else {
                Element value;
                try {
                    value = parse_element(entry.value, m.algebra());
                } catch (const Error& e) {
                    throw ParseError(e.what(), table.line, 1);
                }
                m.set_relation(table.name, args, value);
            }
        }
        if (table.is_function) {
            for (std::size_t i = 0; i < seen.size(); ++i) {
                if (seen[i]) continue;
                std::string tuple;
                for (auto a : m.tuple_at(i, arity)) tuple += (tuple.empty() ? "" : ",") + m.domain()[a];
                throw ParseError("function '" + table.name + "' has no entry for (" + tuple + ")", table.line, 1);
            }
        }
    }
    return m;
}

std::string to_model_text(const FunctionalModel& m) {
    std::ostringstream out;
    out << "domain";
    for (const auto& d : m.domain()) out << " " << d;
    out << "\nalgebra atoms=" << m.algebra().atom_count() << "\n";
    out << "equality " << (m.signature().with_equality() ? "on" : "off") << "\n";
    auto tuple_text = [&](std::size_t index, std::size_t arity) {
        std::string s;
        for (auto a : m.tuple_at(index, arity)) s += (s.empty() ? "" : ",") + m.domain()[a];
        return s;
    };
    for (std::size_t k = 0; k < m.signature().functions().size(); ++k) {
        const auto& f = m.signature().functions()[k];
        out << "fun " << f.name << ":";
        const auto& table = m.function_table(k);
        for (std::size_t i = 0; i < table.size(); ++i) {
            out << (i == 0 ? " " : ", ") << tuple_text(i, f.arity) << "->" << m.domain()[table[i]];
        }
        out << "\n";
    }
    for (std::size_t k = 0; k < m.signature().relations().size(); ++k) {
        const auto& r = m.signature().relations()[k];
        out << "rel " << r.name << "/" << r.arity << ":";
        const auto& table = m.relation_table(k);
        for (std::size_t i = 0; i < table.size(); ++i) {
            out << (i == 0 ? " " : ", ") << tuple_text(i, r.arity) << "=";
            if (m.is_two_valued()) out << (table[i] == m.algebra().top() ? "1" : "0");
            else out << to_string(table[i]);
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace qlogic
