#include "qlogic/parser.hpp"

#include <cctype>
#include <optional>
#include <sstream>
#include <string>

#include "qlogic/error.hpp"
#include "qlogic/polyadic.hpp"

namespace qlogic {

namespace {

enum class Tok { Ident, LParen, RParen, Comma, Dot, Tilde, Amp, Bar, Arrow, Equals, LBrace, RBrace, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view text, std::size_t first_line) {
    std::vector<Token> out;
    std::size_t line = first_line;
    std::size_t column = 1;
    std::size_t i = 0;
    auto push = [&](Tok kind, std::string s, std::size_t width) {
        out.push_back({kind, std::move(s), line, column});
        i += width;
        column += width;
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            ++line;
            column = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            ++column;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' || text[j] == '\'')) {
                ++j;
            }
            push(Tok::Ident, std::string(text.substr(i, j - i)), j - i);
            continue;
        }
        switch (c) {
            case '(': push(Tok::LParen, "(", 1); break;
            case ')': push(Tok::RParen, ")", 1); break;
            case ',': push(Tok::Comma, ",", 1); break;
            case '.': push(Tok::Dot, ".", 1); break;
            case '~': push(Tok::Tilde, "~", 1); break;
            case '&': push(Tok::Amp, "&", 1); break;
            case '|': push(Tok::Bar, "|", 1); break;
            case '=': push(Tok::Equals, "=", 1); break;
            case '{': push(Tok::LBrace, "{", 1); break;
            case '}': push(Tok::RBrace, "}", 1); break;
            case '-':
                if (i + 1 < text.size() && text[i + 1] == '>') {
                    push(Tok::Arrow, "->", 2);
                    break;
                }
                [[fallthrough]];
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", line, column);
        }
    }
    out.push_back({Tok::End, "", line, column});
    return out;
}

bool is_keyword(const std::string& s) { return s == "forall" || s == "exists" || s == "true" || s == "false"; }

// Identifier application before we know whether it is a term or an atom.
struct RawTerm {
    std::string name;
    bool has_parens = false;
    std::vector<RawTerm> args;
    std::size_t line = 0;
    std::size_t column = 0;
};

class Parser {
public:
    Parser(std::vector<Token> tokens, Signature& sig, const ParseOptions& options)
        : tokens_(std::move(tokens)), sig_(sig), options_(options) {}

    Formula formula_to_end() {
        Formula p = implication();
        expect(Tok::End, "end of input");
        return p;
    }

    Term term_to_end() {
        Term t = to_term(raw_term());
        expect(Tok::End, "end of input");
        return t;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& advance() { return tokens_[pos_++]; }
    bool accept(Tok kind) {
        if (peek().kind != kind) return false;
        ++pos_;
        return true;
    }
    const Token& expect(Tok kind, const std::string& what) {
        if (peek().kind != kind) fail("expected " + what, peek());
        return advance();
    }
    [[noreturn]] void fail(const std::string& message, const Token& at) const {
        std::string found = at.kind == Tok::End ? "end of input" : "'" + at.text + "'";
        throw ParseError(message + ", found " + found, at.line, at.column);
    }
    [[noreturn]] void fail_at(const std::string& message, std::size_t line, std::size_t column) const {
        throw ParseError(message, line, column);
    }

    bool extending() const { return options_.mode == SymbolMode::Extend; }

    Formula implication() {
        Formula lhs = disjunction();
        if (accept(Tok::Arrow)) return Formula::implies(std::move(lhs), implication());
        return lhs;
    }

    Formula disjunction() {
        Formula lhs = conjunction();
        while (accept(Tok::Bar)) lhs = Formula::disj(std::move(lhs), conjunction());
        return lhs;
    }

    Formula conjunction() {
        Formula lhs = unary();
        while (accept(Tok::Amp)) lhs = Formula::conj(std::move(lhs), unary());
        return lhs;
    }

    Formula unary() {
        if (accept(Tok::Tilde)) return Formula::negation(unary());
        if (peek().kind == Tok::Ident && (peek().text == "forall" || peek().text == "exists")) return quantifier();
        return primary();
    }

    Variable binder_variable() {
        const Token& tok = expect(Tok::Ident, "variable");
        check_variable_name(tok.text, tok.line, tok.column);
        return Variable(tok.text);
    }

    Formula quantifier() {
        const Token& keyword = advance();
        bool universal = keyword.text == "forall";
        if (accept(Tok::LBrace)) {
            if (!universal) fail_at("variable sets are only allowed after 'forall'", keyword.line, keyword.column);
            VariableSet set;
            if (!accept(Tok::RBrace)) {
                do {
                    set.insert(binder_variable());
                } while (accept(Tok::Comma));
                expect(Tok::RBrace, "'}'");
            }
            expect(Tok::Dot, "'.'");
            return forall_set(set, implication());
        }
        std::vector<Variable> vars;
        vars.push_back(binder_variable());
        while (peek().kind == Tok::Ident) vars.push_back(binder_variable());
        expect(Tok::Dot, "'.'");
        Formula body = implication();
        for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
            body = universal ? Formula::forall(*it, std::move(body)) : Formula::exists(*it, std::move(body));
        }
        return body;
    }

    Formula primary() {
        if (accept(Tok::LParen)) {
            Formula p = implication();
            expect(Tok::RParen, "')'");
            return p;
        }
        if (peek().kind == Tok::Ident && peek().text == "true") {
            advance();
            return Formula::top();
        }
        if (peek().kind == Tok::Ident && peek().text == "false") {
            advance();
            return Formula::bot();
        }
        if (peek().kind != Tok::Ident) fail("expected formula", peek());
        RawTerm head = raw_term();
        if (peek().kind == Tok::Equals) {
            const Token& eq = advance();
            if (!sig_.with_equality()) {
                if (!extending()) fail_at("equality used but the signature has equality off", eq.line, eq.column);
                sig_.set_equality(true);
            }
            Term lhs = to_term(head);
            return Formula::eq(std::move(lhs), to_term(raw_term()));
        }
        return to_atom(head);
    }

    RawTerm raw_term() {
        const Token& tok = expect(Tok::Ident, "term");
        if (is_keyword(tok.text)) fail_at("unexpected keyword '" + tok.text + "'", tok.line, tok.column);
        RawTerm raw{tok.text, false, {}, tok.line, tok.column};
        if (accept(Tok::LParen)) {
            raw.has_parens = true;
            if (!accept(Tok::RParen)) {
                do {
                    raw.args.push_back(raw_term());
                } while (accept(Tok::Comma));
                expect(Tok::RParen, "')'");
            }
        }
        return raw;
    }

    void check_variable_name(const std::string& name, std::size_t line, std::size_t column) const {
        if (is_keyword(name)) fail_at("unexpected keyword '" + name + "'", line, column);
        if (!options_.allow_reserved && Variable::is_reserved_name(name)) {
            fail_at("identifiers starting with '_h' are reserved", line, column);
        }
        if (sig_.declares(name)) fail_at("symbol '" + name + "' used as a variable", line, column);
    }

    Term to_term(const RawTerm& raw) {
        if (!raw.has_parens) {
            if (sig_.is_constant(raw.name)) return Term::app(raw.name);
            check_variable_name(raw.name, raw.line, raw.column);
            return Term::var(raw.name);
        }
        const Symbol* f = sig_.find_function(raw.name);
        if (f == nullptr) {
            if (!extending() || sig_.declares(raw.name)) {
                fail_at("undeclared function symbol '" + raw.name + "'", raw.line, raw.column);
            }
            if (Variable::is_reserved_name(raw.name)) {
                fail_at("identifiers starting with '_h' are reserved", raw.line, raw.column);
            }
            sig_.add_function(raw.name, raw.args.size());
            f = sig_.find_function(raw.name);
        }
        if (f->arity != raw.args.size()) {
            fail_at("function '" + raw.name + "' expects " + std::to_string(f->arity) + " arguments, got " +
                        std::to_string(raw.args.size()),
                    raw.line, raw.column);
        }
        std::vector<Term> args;
        for (const auto& a : raw.args) args.push_back(to_term(a));
        return Term::app(raw.name, std::move(args));
    }

    Formula to_atom(const RawTerm& raw) {
        const Symbol* r = sig_.find_relation(raw.name);
        if (r == nullptr) {
            if (!extending() || sig_.declares(raw.name)) {
                fail_at("undeclared relation symbol '" + raw.name + "'", raw.line, raw.column);
            }
            if (Variable::is_reserved_name(raw.name)) {
                fail_at("identifiers starting with '_h' are reserved", raw.line, raw.column);
            }
            sig_.add_relation(raw.name, raw.args.size());
            r = sig_.find_relation(raw.name);
        }
        if (r->arity != raw.args.size()) {
            fail_at("relation '" + raw.name + "' expects " + std::to_string(r->arity) + " arguments, got " +
                        std::to_string(raw.args.size()),
                    raw.line, raw.column);
        }
        std::vector<Term> args;
        for (const auto& a : raw.args) args.push_back(to_term(a));
        return Formula::atom(raw.name, std::move(args));
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    Signature& sig_;
    const ParseOptions& options_;
};

}  // namespace

Formula parse_formula(std::string_view text, Signature& sig, const ParseOptions& options) {
    Parser parser(tokenize(text, 1), sig, options);
    return parser.formula_to_end();
}

Formula parse_formula(std::string_view text, const Signature& sig) {
    Signature copy = sig;
    return parse_formula(text, copy, ParseOptions{});
}

Term parse_term(std::string_view text, Signature& sig, const ParseOptions& options) {
    Parser parser(tokenize(text, 1), sig, options);
    return parser.term_to_end();
}

Term parse_term(std::string_view text, const Signature& sig) {
    Signature copy = sig;
    return parse_term(text, copy, ParseOptions{});
}

std::vector<Formula> parse_formula_list(std::string_view text, Signature& sig, const ParseOptions& options) {
    std::vector<Formula> out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        Parser parser(tokenize(line, line_no), sig, options);
        out.push_back(parser.formula_to_end());
    }
    return out;
}

}  // namespace qlogic
