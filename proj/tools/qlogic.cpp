// Command-line front end for the qlogic library.
//
// Exit codes: 0 success or SAT, 1 UNSAT or refuted, 2 unknown within the
// budget, 3 usage or input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "qlogic/axioms.hpp"
#include "qlogic/error.hpp"
#include "qlogic/formula.hpp"
#include "qlogic/henkin.hpp"
#include "qlogic/model.hpp"
#include "qlogic/model_search.hpp"
#include "qlogic/parser.hpp"
#include "qlogic/polyadic.hpp"
#include "qlogic/semantics.hpp"
#include "qlogic/ultraproduct.hpp"

namespace {

using namespace qlogic;
using Json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kRefuted = 1;
constexpr int kUnknown = 2;
constexpr int kUsage = 3;

struct Options {
    std::string format = "text";
    std::string sig_file;
    bool allow_reserved = false;
};

std::string read_text(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Starting signature and parse mode: fixed when --sig is given, inferred otherwise.
std::pair<Signature, ParseOptions> signature_setup(const Options& opt) {
    ParseOptions po;
    po.allow_reserved = opt.allow_reserved;
    if (opt.sig_file.empty()) {
        po.mode = SymbolMode::Extend;
        return {Signature{}, po};
    }
    po.mode = SymbolMode::Fixed;
    return {parse_signature(read_text(opt.sig_file)), po};
}

// Formulas from literal arguments; "-" reads a formula list from stdin.
std::vector<Formula> read_formulas(const std::vector<std::string>& texts, const std::string& file, Signature& sig,
                                   const ParseOptions& po) {
    std::vector<Formula> out;
    for (const auto& t : texts) {
        if (t == "-") {
            auto more = parse_formula_list(read_text("-"), sig, po);
            out.insert(out.end(), more.begin(), more.end());
        } else {
            out.push_back(parse_formula(t, sig, po));
        }
    }
    if (!file.empty()) {
        auto more = parse_formula_list(read_text(file), sig, po);
        out.insert(out.end(), more.begin(), more.end());
    }
    return out;
}

FunctionalModel load_model(const std::string& path, const Options& opt) {
    FunctionalModel m = parse_model(read_text(path));
    if (!opt.sig_file.empty()) {
        Signature sig = parse_signature(read_text(opt.sig_file));
        if (!(sig == m.signature())) throw SignatureError("model '" + path + "' does not match the signature file");
    }
    return m;
}

ParseOptions fixed_options(const Options& opt) {
    ParseOptions po;
    po.mode = SymbolMode::Fixed;
    po.allow_reserved = opt.allow_reserved;
    return po;
}

// Splits "a:=s, b:=t" at top-level commas.
std::vector<std::pair<std::string, std::string>> parse_bindings(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t");
        auto e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    for (const auto& part : parts) {
        if (trim(part).empty()) continue;
        auto pos = part.find(":=");
        if (pos == std::string::npos) throw ParseError("expected 'name:=value' in '" + trim(part) + "'", 1, 1);
        out.emplace_back(trim(part.substr(0, pos)), trim(part.substr(pos + 2)));
    }
    return out;
}

Json variables_json(const VariableSet& vars) {
    Json a = Json::array();
    for (const auto& v : vars) a.push_back(v.name());
    return a;
}

std::string variables_text(const VariableSet& vars) {
    std::string s = "{";
    for (const auto& v : vars) s += (s.size() > 1 ? ", " : "") + v.name();
    return s + "}";
}

std::string value_text(Element e, const FunctionalModel& m) {
    if (m.is_two_valued()) return e == m.algebra().top() ? "1" : "0";
    return to_string(e);
}

Json model_json(const FunctionalModel& m) {
    Json j;
    j["domain"] = m.domain();
    j["algebra_atoms"] = m.algebra().atom_count();
    j["equality"] = m.signature().with_equality();
    Json funs = Json::object();
    for (std::size_t k = 0; k < m.signature().functions().size(); ++k) {
        const auto& f = m.signature().functions()[k];
        Json rows = Json::array();
        for (std::size_t i = 0; i < m.function_table(k).size(); ++i) {
            Json args = Json::array();
            for (auto a : m.tuple_at(i, f.arity)) args.push_back(m.domain()[a]);
            rows.push_back({{"args", args}, {"value", m.domain()[m.function_table(k)[i]]}});
        }
        funs[f.name] = rows;
    }
    j["functions"] = funs;
    Json rels = Json::object();
    for (std::size_t k = 0; k < m.signature().relations().size(); ++k) {
        const auto& r = m.signature().relations()[k];
        Json rows = Json::array();
        for (std::size_t i = 0; i < m.relation_table(k).size(); ++i) {
            Json args = Json::array();
            for (auto a : m.tuple_at(i, r.arity)) args.push_back(m.domain()[a]);
            rows.push_back({{"args", args}, {"value", value_text(m.relation_table(k)[i], m)}});
        }
        rels[r.name] = rows;
    }
    j["relations"] = rels;
    return j;
}

Json valuation_json(const Valuation& xi, const FunctionalModel& m) {
    Json j = Json::object();
    for (const auto& [v, a] : xi.entries()) j[v.name()] = m.domain()[a];
    return j;
}

// Copy of m with elements renamed e0, e1, ... so the text format can read it back.
FunctionalModel with_plain_names(const FunctionalModel& m) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < m.size(); ++i) names.push_back("e" + std::to_string(i));
    FunctionalModel out(m.signature(), names, m.algebra());
    for (std::size_t k = 0; k < m.signature().functions().size(); ++k) out.function_table(k) = m.function_table(k);
    for (std::size_t k = 0; k < m.signature().relations().size(); ++k) out.relation_table(k) = m.relation_table(k);
    return out;
}

int cmd_parse(const Options& opt, const std::vector<std::string>& texts) {
    auto [sig, po] = signature_setup(opt);
    auto formulas = read_formulas(texts, "", sig, po);
    Json out = Json::array();
    for (const auto& p : formulas) {
        if (opt.format == "json") {
            out.push_back({{"formula", to_string(p)},
                           {"alpha_normal_form", to_string(alpha_normal_form(p))},
                           {"free", variables_json(free_vars(p))},
                           {"quantifier_depth", quantifier_depth(p)}});
        } else {
            std::cout << "formula: " << to_string(p) << "\n"
                      << "free: " << variables_text(free_vars(p)) << "\n";
        }
    }
    if (opt.format == "json") std::cout << Json{{"signature", to_string(sig)}, {"formulas", out}}.dump(2) << "\n";
    return kOk;
}

int cmd_subst(const Options& opt, const std::string& text, const std::string& map) {
    auto [sig, po] = signature_setup(opt);
    Formula p = parse_formula(text, sig, po);
    Substitution s;
    for (const auto& [name, term] : parse_bindings(map)) {
        Term t = parse_term(term, sig, po);
        if (Variable::is_reserved_name(name) && !opt.allow_reserved) {
            throw ParseError("identifiers starting with '_h' are reserved", 1, 1);
        }
        s = update_subst(s, Variable(name), t);
    }
    Formula r = subst_formula(p, s);
    if (opt.format == "json") {
        std::cout << Json{{"formula", to_string(p)}, {"substitution", to_string(s)}, {"result", to_string(r)},
                          {"free", variables_json(free_vars(r))}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << to_string(r) << "\n";
    }
    return kOk;
}

Valuation parse_valuation(const std::string& text, const FunctionalModel& m) {
    Valuation xi;
    for (const auto& [name, element] : parse_bindings(text)) {
        auto e = m.find_element(element);
        if (!e) throw ModelError("unknown domain element '" + element + "'");
        xi.set(Variable(name), *e);
    }
    return xi;
}

int cmd_eval(const Options& opt, const std::vector<std::string>& texts, const std::string& model_path,
             const std::string& val) {
    FunctionalModel m = load_model(model_path, opt);
    Signature sig = m.signature();
    auto formulas = read_formulas(texts, "", sig, fixed_options(opt));
    Valuation xi = parse_valuation(val, m);
    Json out = Json::array();
    for (const auto& p : formulas) {
        VariableSet unbound;
        for (const auto& v : free_vars(p)) {
            if (xi.entries().count(v) == 0) unbound.insert(v);
        }
        if (!unbound.empty()) throw ModelError("no value for free variables " + variables_text(unbound));
        Element e = eval_formula(p, xi, m);
        if (opt.format == "json") {
            out.push_back({{"formula", to_string(p)}, {"value", value_text(e, m)}});
        } else {
            std::cout << to_string(p) << " = " << value_text(e, m) << "\n";
        }
    }
    if (opt.format == "json") std::cout << out.dump(2) << "\n";
    return kOk;
}

int cmd_axioms(const Options& opt, const std::string& model_path, std::size_t samples, std::uint64_t seed) {
    FunctionalModel m = load_model(model_path, opt);
    std::vector<std::pair<std::string, AxiomReport>> suites;
    suites.emplace_back("quantifier", check_quantifier_axioms(m, samples, seed));
    suites.emplace_back("polyadic", check_polyadic_axioms(m, samples, seed));
    if (m.signature().with_equality()) suites.emplace_back("equality", check_equality_axioms(m, samples, seed));
    std::size_t violations = 0;
    Json out = Json::object();
    for (const auto& [name, report] : suites) {
        violations += report.violations().size();
        if (opt.format == "json") {
            Json v = Json::array();
            for (const auto& x : report.violations()) v.push_back({{"law", x.law}, {"detail", x.detail}});
            out[name] = {{"checks", report.checks()}, {"violations", v}};
        } else {
            std::cout << name << ": " << report.total_checks() << " checks, " << report.violations().size()
                      << " violations\n";
            for (const auto& x : report.violations()) std::cout << "  " << x.law << ": " << x.detail << "\n";
        }
    }
    if (opt.format == "json") {
        out["violations"] = violations;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << violations << " violations\n";
    }
    return violations == 0 ? kOk : kRefuted;
}

int cmd_henkin(const Options& opt, const std::vector<std::string>& texts, const std::string& file,
               const HenkinOptions& budget, std::size_t max_size) {
    auto [sig, po] = signature_setup(opt);
    auto formulas = read_formulas(texts, file, sig, po);
    HenkinResult r = run_henkin(formulas, sig, budget);
    const HenkinState& st = r.state;

    std::optional<std::optional<SearchResult>> oracle;
    if (max_size > 0) oracle = finite_model_search(formulas, sig, max_size);
    std::string agreement;
    if (oracle) {
        bool found = oracle->has_value();
        if (r.verdict == Verdict::Unsat) agreement = found ? "conflict: oracle found a model" : "agrees";
        else if (r.verdict == Verdict::Sat) agreement = found ? "agrees" : "oracle found no model up to the size bound";
        else agreement = found ? "oracle found a model" : "oracle found no model up to the size bound";
    }

    std::optional<FunctionalModel> shown;
    if (r.model) shown = with_plain_names(r.model->model);

    if (opt.format == "json") {
        Json j;
        j["verdict"] = to_string(r.verdict);
        j["rounds"] = budget.rounds;
        j["depth"] = budget.depth;
        Json in = Json::array();
        for (const auto& p : formulas) in.push_back(to_string(p));
        j["input"] = in;
        Json ws = Json::array();
        for (std::size_t i = 0; i < st.witnesses.size(); ++i) {
            const auto& w = st.witnesses[i];
            ws.push_back({{"witness", w.witness.name()},
                          {"for", to_string(Formula::forall(w.bound, w.body))},
                          {"theta", to_string(st.theta[i])}});
        }
        j["witnesses"] = ws;
        j["universe_size"] = st.term_universe.size();
        j["prop_vars"] = st.prop_vars.size();
        j["clauses"] = st.clauses.size();
        j["domain_closed"] = st.domain_closed;
        if (!r.note.empty()) j["note"] = r.note;
        if (r.model) {
            Json classes = Json::array();
            for (std::size_t e = 0; e < shown->size(); ++e) {
                Json members = Json::array();
                for (const auto& t : st.term_universe) {
                    if (r.model->element_of.at(to_string(t)) == e) members.push_back(to_string(t));
                }
                classes.push_back({{"element", shown->domain()[e]}, {"terms", members}});
            }
            j["perfect"] = r.perfect;
            j["model"] = model_json(*shown);
            j["elements"] = classes;
            j["valuation"] = valuation_json(r.model->identity, *shown);
        }
        if (oracle) {
            j["oracle"] = oracle->has_value() ? Json{{"size", (*oracle)->model.size()}} : Json(nullptr);
            j["agreement"] = agreement;
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "verdict: " << to_string(r.verdict) << "\n";
        if (!r.note.empty()) std::cout << "note: " << r.note << "\n";
        std::cout << "witnesses: " << st.witnesses.size() << "\n";
        for (std::size_t i = 0; i < st.witnesses.size(); ++i) {
            std::cout << "  " << st.witnesses[i].witness.name() << ": " << to_string(st.theta[i]) << "\n";
        }
        std::cout << "universe: " << st.term_universe.size() << " terms\n"
                  << "prop vars: " << st.prop_vars.size() << "\n"
                  << "clauses: " << st.clauses.size() << "\n";
        if (r.model) {
            std::cout << "perfect: " << (r.perfect ? "yes" : "no") << "\n"
                      << "model size: " << shown->size() << "\n";
            for (std::size_t e = 0; e < shown->size(); ++e) {
                std::cout << "  " << shown->domain()[e] << " =";
                for (const auto& t : st.term_universe) {
                    if (r.model->element_of.at(to_string(t)) == e) std::cout << " " << to_string(t);
                }
                std::cout << "\n";
            }
            std::cout << to_model_text(*shown) << "valuation: " << to_string(r.model->identity, *shown) << "\n";
        }
        if (oracle) {
            if (oracle->has_value()) std::cout << "oracle: model of size " << (*oracle)->model.size() << "\n";
            else std::cout << "oracle: no model up to size " << max_size << "\n";
            std::cout << "agreement: " << agreement << "\n";
        }
    }
    switch (r.verdict) {
        case Verdict::Sat: return kOk;
        case Verdict::Unsat: return kRefuted;
        case Verdict::Unknown: return kUnknown;
    }
    return kUnknown;
}

int cmd_search(const Options& opt, const std::vector<std::string>& texts, const std::string& file,
               std::size_t max_size) {
    auto [sig, po] = signature_setup(opt);
    auto formulas = read_formulas(texts, file, sig, po);
    auto found = finite_model_search(formulas, sig, max_size);
    if (opt.format == "json") {
        Json j;
        j["found"] = found.has_value();
        j["max_size"] = max_size;
        if (found) {
            j["model"] = model_json(found->model);
            j["valuation"] = valuation_json(found->valuation, found->model);
        }
        std::cout << j.dump(2) << "\n";
    } else if (found) {
        std::cout << "model of size " << found->model.size() << "\n"
                  << to_model_text(found->model) << "valuation: " << to_string(found->valuation, found->model)
                  << "\n";
    } else {
        std::cout << "no model up to size " << max_size << "\n";
    }
    return found ? kOk : kUnknown;
}

int cmd_ultraproduct(const Options& opt, const std::vector<std::string>& paths, std::size_t at,
                     const std::string& check_file, std::size_t cap) {
    std::vector<FunctionalModel> factors;
    for (const auto& p : paths) factors.push_back(load_model(p, opt));
    ProductModel pm = product_model(factors, cap);
    if (at >= factors.size()) throw Error("--at must name a factor index below " + std::to_string(factors.size()));
    Ultrafilter ultra = Ultrafilter::principal(pm.model.algebra(), static_cast<unsigned>(at));
    UltraproductQuotient q = quotient_to_2model(pm, ultra);

    std::vector<Formula> formulas;
    if (!check_file.empty()) {
        Signature sig = pm.model.signature();
        formulas = parse_formula_list(read_text(check_file), sig, fixed_options(opt));
    }
    std::size_t failures = 0;
    Json rows = Json::array();
    for (const auto& p : formulas) {
        std::size_t valuations = 0;
        std::size_t bad = 0;
        for_each_valuation(free_vars(p), pm.model, [&](const Valuation& xi) {
            ++valuations;
            if (!los_check(pm, q, ultra, p, xi) || !coordinatewise_check(pm, p, xi)) ++bad;
        });
        failures += bad;
        if (opt.format == "json") {
            rows.push_back({{"formula", to_string(p)}, {"valuations", valuations}, {"failures", bad}});
        } else {
            std::cout << (bad == 0 ? "ok   " : "FAIL ") << to_string(p) << " (" << valuations << " valuations)\n";
        }
    }
    if (opt.format == "json") {
        std::cout << Json{{"factors", factors.size()},
                          {"product_size", pm.model.size()},
                          {"ultrafilter_at", at},
                          {"quotient_size", q.model.size()},
                          {"checks", rows},
                          {"failures", failures}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "factors: " << factors.size() << "\n"
                  << "product size: " << pm.model.size() << "\n"
                  << "quotient size: " << q.model.size() << "\n"
                  << failures << " failures\n";
    }
    return failures == 0 ? kOk : kRefuted;
}

int cmd_support(const Options& opt, const std::string& text, const std::string& vars, const std::string& model_path) {
    FunctionalModel m = load_model(model_path, opt);
    Signature sig = m.signature();
    Formula p = parse_formula(text, sig, fixed_options(opt));
    VariableSet u;
    std::stringstream in(vars);
    std::string name;
    while (std::getline(in, name, ',')) {
        auto b = name.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        u.insert(Variable(name.substr(b, name.find_last_not_of(" \t") - b + 1)));
    }
    bool holds = check_support_retraction(p, u, m);
    if (opt.format == "json") {
        std::cout << Json{{"formula", to_string(p)}, {"vars", variables_json(u)}, {"support", holds}}.dump(2) << "\n";
    } else {
        std::cout << variables_text(u) << (holds ? " is" : " is not") << " a support of " << to_string(p) << "\n";
    }
    return holds ? kOk : kRefuted;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "qlogic: quantifier theories over finite Boolean-valued models.\n"
        "Formula syntax: ~p, p & q, p | q, p -> q, forall x y. p, exists x. p, forall {x,y}. p, s = t,\n"
        "true, false. Binding from tightest: ~, &, |, -> (right associative); quantifier bodies\n"
        "extend as far right as possible. Parentheses are always accepted."};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--sig", opt.sig_file, "Signature file; without it symbols are inferred from use");
    app.add_flag("--allow-reserved", opt.allow_reserved, "Accept reserved _h variable names in input");

    int status = kOk;
    std::vector<std::string> texts;
    std::string file;
    std::string model_path;

    auto* parse = app.add_subcommand("parse", "Print the normalized formula and its free variables");
    parse->add_option("formulas", texts, "Formulas, or - to read a list from stdin")->required();
    parse->callback([&] { status = cmd_parse(opt, texts); });

    std::string formula_text;
    std::string map;
    auto* subst = app.add_subcommand("subst", "Apply a capture-avoiding substitution");
    subst->add_option("formula", formula_text)->required();
    subst->add_option("--map", map, "Bindings such as \"x:=f(y), y:=z\"")->required();
    subst->callback([&] { status = cmd_subst(opt, formula_text, map); });

    std::string val;
    auto* eval = app.add_subcommand("eval", "Evaluate formulas in a model");
    eval->add_option("formulas", texts)->required();
    eval->add_option("--model", model_path, "Model file")->required();
    eval->add_option("--val", val, "Valuation such as \"x:=a, y:=b\"");
    eval->callback([&] { status = cmd_eval(opt, texts, model_path, val); });

    std::size_t samples = 200;
    std::uint64_t seed = 1;
    auto* axioms = app.add_subcommand("axioms", "Check the quantifier, polyadic and equality laws on sampled instances");
    axioms->add_option("--model", model_path, "Model file")->required();
    axioms->add_option("--samples", samples, "Instances per suite")->capture_default_str();
    axioms->add_option("--seed", seed, "Generator seed")->capture_default_str();
    axioms->callback([&] { status = cmd_axioms(opt, model_path, samples, seed); });

    HenkinOptions budget;
    std::size_t max_size = 0;
    auto* henkin = app.add_subcommand("henkin", "Bounded witness construction, SAT and term-model extraction");
    henkin->add_option("formulas,--formulas", texts, "Formulas, or - for a list on stdin");
    henkin->add_option("--file", file, "File with one formula per line");
    henkin->add_option("--rounds", budget.rounds, "Witness rounds")->capture_default_str()->check(CLI::PositiveNumber);
    henkin->add_option("--depth", budget.depth, "Term depth of the instantiation universe")->capture_default_str();
    henkin->add_option("--max-size", max_size, "Cross-check with model search up to this size");
    henkin->callback([&] { status = cmd_henkin(opt, texts, file, budget, max_size); });

    std::size_t search_size = 3;
    auto* search = app.add_subcommand("search", "Brute-force search for a finite 2-valued model");
    search->add_option("formulas,--formulas", texts, "Formulas, or - for a list on stdin");
    search->add_option("--file", file, "File with one formula per line");
    search->add_option("--max-size", search_size, "Largest domain size")->capture_default_str()->check(CLI::PositiveNumber);
    search->callback([&] { status = cmd_search(opt, texts, file, search_size); });

    std::vector<std::string> model_paths;
    std::size_t at = 0;
    std::string check_file;
    std::size_t cap = 256;
    auto* ultra = app.add_subcommand("ultraproduct", "Product of models, quotient at a factor, and the ultraproduct check");
    ultra->add_option("--models", model_paths, "Factor model files")->required();
    ultra->add_option("--at", at, "Index of the factor generating the ultrafilter")->capture_default_str();
    ultra->add_option("--check", check_file, "File of formulas to check, one per line");
    ultra->add_option("--cap", cap, "Largest product domain")->capture_default_str();
    ultra->callback([&] { status = cmd_ultraproduct(opt, model_paths, at, check_file, cap); });

    std::string vars;
    auto* support = app.add_subcommand("support", "Test whether a variable set supports a formula in a model");
    support->add_option("formula", formula_text)->required();
    support->add_option("--vars", vars, "Comma-separated variables")->required();
    support->add_option("--model", model_path, "Model file")->required();
    support->callback([&] { status = cmd_support(opt, formula_text, vars, model_path); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return status;
}
