#include "qlogic/henkin.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "qlogic/boolean_algebra.hpp"
#include "qlogic/error.hpp"
#include "qlogic/semantics.hpp"

namespace qlogic {

namespace {

constexpr std::size_t kMaxUniverse = 4096;

}  // namespace

std::vector<Term> herbrand_universe(const Signature& sig, const std::vector<Variable>& seeds, std::size_t depth) {
    std::vector<Term> out;
    for (const auto& v : seeds) {
        Term t = Term::var(v);
        if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(std::move(t));
    }
    for (const auto& f : sig.functions()) {
        if (f.arity == 0) out.push_back(Term::app(f.name));
    }
    if (out.empty()) throw Error("no closed terms");

    std::size_t prev_begin = 0;
    for (std::size_t level = 1; level <= depth; ++level) {
        std::size_t prev_end = out.size();
        for (const auto& f : sig.functions()) {
            if (f.arity == 0) continue;
            std::vector<std::size_t> idx(f.arity, 0);
            while (true) {
                bool fresh = std::any_of(idx.begin(), idx.end(), [&](std::size_t i) { return i >= prev_begin; });
                if (fresh) {
                    std::vector<Term> args;
                    for (auto i : idx) args.push_back(out[i]);
                    out.push_back(Term::app(f.name, std::move(args)));
                    if (out.size() > kMaxUniverse) throw Error("term universe exceeds " + std::to_string(kMaxUniverse) + " terms");
                }
                std::size_t pos = f.arity;
                while (pos > 0 && ++idx[pos - 1] == prev_end) idx[--pos] = 0;
                if (pos == 0) break;
            }
        }
        prev_begin = prev_end;
        if (out.size() == prev_end) break;
    }
    return out;
}

namespace {

std::size_t add_var(HenkinState& st, PropKind kind, Formula formula, const std::string& key) {
    if (auto it = st.prop_index.find(key); it != st.prop_index.end()) return it->second;
    std::size_t id = st.prop_vars.size();
    st.prop_vars.push_back({kind, std::move(formula), key});
    st.prop_index.emplace(key, id);
    if (kind == PropKind::Quantified) st.quantified.push_back(id);
    return id;
}

void add_clause(HenkinState& st, Clause clause) {
    Clause sorted = clause;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (st.clause_set.insert(sorted).second) st.clauses.push_back(std::move(clause));
}

Literal truth(HenkinState& st) {
    bool fresh = st.prop_index.count("T") == 0;
    std::size_t id = add_var(st, PropKind::Truth, Formula::top(), "T");
    if (fresh) add_clause(st, {positive(id)});
    return positive(id);
}

// Eq with sides in printed order; nullopt when both sides are the same term.
std::optional<Formula> canonical_eq(const Formula& p) {
    std::string l = to_string(p.terms()[0]);
    std::string r = to_string(p.terms()[1]);
    if (l == r) return std::nullopt;
    if (r < l) return Formula::eq(p.terms()[1], p.terms()[0]);
    return p;
}

std::string atom_key(const Formula& p) { return "A:" + to_string(p); }
std::string eq_key(const Formula& canonical) { return "E:" + to_string(canonical); }
std::string quantified_key(const Formula& p) { return "Q:" + alpha_key(p); }

// Tseitin encoding with full equivalences for connective nodes.
Literal encode(HenkinState& st, const Formula& p) {
    switch (p.kind()) {
        case FormulaKind::Top: return truth(st);
        case FormulaKind::Bot: return -truth(st);
        case FormulaKind::Atom: return positive(add_var(st, PropKind::Atom, p, atom_key(p)));
        case FormulaKind::Eq: {
            auto c = canonical_eq(p);
            if (!c) return truth(st);
            return positive(add_var(st, PropKind::Equality, *c, eq_key(*c)));
        }
        case FormulaKind::Not: return -encode(st, p.left());
        case FormulaKind::And:
        case FormulaKind::Or: {
            bool is_and = p.kind() == FormulaKind::And;
            Literal a = encode(st, p.left());
            Literal b = encode(st, p.right());
            std::string key = std::string(is_and ? "N:&" : "N:|") + std::to_string(a) + "," + std::to_string(b);
            bool fresh = st.prop_index.count(key) == 0;
            Literal n = positive(add_var(st, PropKind::Auxiliary, p, key));
            if (fresh) {
                if (is_and) {
                    add_clause(st, {-n, a});
                    add_clause(st, {-n, b});
                    add_clause(st, {n, -a, -b});
                } else {
                    add_clause(st, {-n, a, b});
                    add_clause(st, {n, -a});
                    add_clause(st, {n, -b});
                }
            }
            return n;
        }
        case FormulaKind::Forall: return positive(add_var(st, PropKind::Quantified, p, quantified_key(p)));
    }
    throw Error("unknown formula kind");
}

Formula instance(const PropVar& q, const Term& t) {
    return subst_formula(q.formula.body(), single(q.formula.bound(), t));
}

void refresh_universe(HenkinState& st, std::size_t depth) {
    std::vector<Variable> seeds = st.seeds;
    for (const auto& w : st.witnesses) seeds.push_back(w.witness);
    bool has_constant = std::any_of(st.signature.functions().begin(), st.signature.functions().end(),
                                    [](const Symbol& f) { return f.arity == 0; });
    if (seeds.empty() && !has_constant) {
        // Nothing names an element yet; a placeholder keeps the domain nonempty.
        Variable placeholder = Variable::reserved(st.next_witness++);
        st.seeds.push_back(placeholder);
        seeds.push_back(placeholder);
    }
    st.term_universe = herbrand_universe(st.signature, seeds, depth);
}

void instantiate(HenkinState& st, std::size_t q) {
    for (const auto& t : st.term_universe) {
        if (!st.instantiated.insert({q, to_string(t)}).second) continue;
        Literal inst = encode(st, instance(st.prop_vars[q], t));
        add_clause(st, {negative(q), inst});
    }
}

void add_equality_axioms(HenkinState& st) {
    if (!st.signature.with_equality()) return;
    bool uses_eq = std::any_of(st.prop_vars.begin(), st.prop_vars.end(),
                               [](const PropVar& v) { return v.kind == PropKind::Equality; });
    if (!uses_eq) return;
    const auto& u = st.term_universe;
    auto eq = [&](const Term& a, const Term& b) { return encode(st, Formula::eq(a, b)); };
    // Literals asserting the argument lists agree, skipping syntactically equal pairs.
    auto premises = [&](const std::vector<Term>& xs, const std::vector<Term>& ys) {
        Clause c;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (!(xs[i] == ys[i])) c.push_back(-eq(xs[i], ys[i]));
        }
        return c;
    };

    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = 0; j < u.size(); ++j) {
            if (i == j) continue;
            for (std::size_t k = 0; k < u.size(); ++k) {
                if (k == i || k == j) continue;
                add_clause(st, {-eq(u[i], u[j]), -eq(u[j], u[k]), eq(u[i], u[k])});
            }
        }
    }
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = i + 1; j < u.size(); ++j) {
            if (u[i].is_var() || u[j].is_var() || u[i].symbol() != u[j].symbol() || u[i].args().empty()) continue;
            Clause c = premises(u[i].args(), u[j].args());
            c.push_back(eq(u[i], u[j]));
            add_clause(st, std::move(c));
        }
    }
    std::vector<std::size_t> atoms;
    for (std::size_t v = 0; v < st.prop_vars.size(); ++v) {
        if (st.prop_vars[v].kind == PropKind::Atom) atoms.push_back(v);
    }
    for (auto a : atoms) {
        for (auto b : atoms) {
            const Formula& fa = st.prop_vars[a].formula;
            const Formula& fb = st.prop_vars[b].formula;
            if (a == b || fa.relation() != fb.relation() || fa.terms().empty()) continue;
            Clause c = premises(fa.terms(), fb.terms());
            c.push_back(negative(a));
            c.push_back(positive(b));
            add_clause(st, std::move(c));
        }
    }
}

std::size_t first_free_reserved(const std::vector<Formula>& j) {
    std::size_t next = 0;
    for (const auto& p : j) {
        for (const auto& v : all_vars(p)) {
            if (auto i = v.reserved_index()) next = std::max(next, *i + 1);
        }
    }
    return next;
}

}  // namespace

HenkinState henkin_expand(const std::vector<Formula>& j, const Signature& sig, const HenkinOptions& options) {
    if (options.rounds == 0) throw Error("henkin expansion needs at least one round");
    HenkinState st;
    st.signature = sig;
    st.input = j;
    VariableSet free;
    for (const auto& p : j) {
        check_formula(p, sig);
        collect_free_vars(p, free);
    }
    st.seeds.assign(free.begin(), free.end());
    st.next_witness = first_free_reserved(j);
    truth(st);
    for (const auto& p : j) add_clause(st, {encode(st, p)});

    for (std::size_t round = 0; round < options.rounds; ++round) {
        std::size_t pending = st.quantified.size();
        for (std::size_t i = st.witnessed; i < pending; ++i) {
            std::size_t q = st.quantified[i];
            Formula universal = st.prop_vars[q].formula;
            // Also skip names bound inside, so theta never reuses a binder name.
            st.next_witness = std::max(st.next_witness, first_free_reserved({universal}));
            Variable z = Variable::reserved(st.next_witness++);
            Formula inst = subst_formula(universal.body(), single(universal.bound(), Term::var(z)));
            st.witnesses.push_back({z, universal.bound(), universal.body()});
            st.theta.push_back(Formula::disj(universal, Formula::negation(inst)));
            add_clause(st, {positive(q), -encode(st, inst)});
        }
        st.witnessed = pending;
        refresh_universe(st, options.depth);
        std::size_t known = st.quantified.size();
        for (std::size_t i = 0; i < known; ++i) instantiate(st, st.quantified[i]);
    }
    if (st.term_universe.empty()) refresh_universe(st, options.depth);
    add_equality_axioms(st);
    return st;
}

namespace {

// Rewrites applications outside the universe to its first term, which is
// where the term model sends them.
Term clamp(const Term& t, const std::set<std::string>& universe, const Term& fallback) {
    if (t.is_var()) return t;
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back(clamp(a, universe, fallback));
    Term out = Term::app(t.symbol(), std::move(args));
    return universe.count(to_string(out)) ? out : fallback;
}

}  // namespace

void close_domain(HenkinState& st) {
    st.domain_closed = true;
    for (std::size_t i = 0; i < st.quantified.size(); ++i) {
        std::size_t q = st.quantified[i];
        instantiate(st, q);
        Clause c{positive(q)};
        for (const auto& t : st.term_universe) c.push_back(-encode(st, instance(st.prop_vars[q], t)));
        add_clause(st, std::move(c));
    }
    // Tie atoms over terms outside the universe to the atoms the term model reads.
    std::set<std::string> universe;
    for (const auto& t : st.term_universe) universe.insert(to_string(t));
    const Term fallback = st.term_universe.front();
    std::size_t known = st.prop_vars.size();
    for (std::size_t v = 0; v < known; ++v) {
        const PropVar pv = st.prop_vars[v];
        if (pv.kind != PropKind::Atom && pv.kind != PropKind::Equality) continue;
        std::vector<Term> terms;
        for (const auto& t : pv.formula.terms()) terms.push_back(clamp(t, universe, fallback));
        if (terms == pv.formula.terms()) continue;
        Formula clamped = pv.kind == PropKind::Atom ? Formula::atom(pv.formula.relation(), std::move(terms))
                                                    : Formula::eq(terms[0], terms[1]);
        Literal target = encode(st, clamped);
        add_clause(st, {negative(v), target});
        add_clause(st, {positive(v), -target});
    }
    add_equality_axioms(st);
}

std::optional<std::vector<bool>> sat_solve(HenkinState& st) {
    st.valuation = dpll(st.prop_vars.size(), st.clauses);
    return st.valuation;
}

bool skeleton_value(const HenkinState& st, const std::vector<bool>& valuation, const Formula& p) {
    auto lookup = [&](const std::string& key) {
        auto it = st.prop_index.find(key);
        return it != st.prop_index.end() && valuation[it->second];
    };
    switch (p.kind()) {
        case FormulaKind::Top: return true;
        case FormulaKind::Bot: return false;
        case FormulaKind::Atom: return lookup(atom_key(p));
        case FormulaKind::Eq: {
            auto c = canonical_eq(p);
            return !c || lookup(eq_key(*c));
        }
        case FormulaKind::Not: return !skeleton_value(st, valuation, p.left());
        case FormulaKind::And:
            return skeleton_value(st, valuation, p.left()) && skeleton_value(st, valuation, p.right());
        case FormulaKind::Or:
            return skeleton_value(st, valuation, p.left()) || skeleton_value(st, valuation, p.right());
        case FormulaKind::Forall: return lookup(quantified_key(p));
    }
    return false;
}

TermModel build_term_model(const HenkinState& st) {
    if (!st.valuation) throw Error("term model needs a satisfying valuation");
    const auto& val = *st.valuation;
    const auto& u = st.term_universe;
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < u.size(); ++i) index.emplace(to_string(u[i]), i);

    std::vector<std::size_t> parent(u.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    auto unite = [&](std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent[b] = a;
        return true;
    };
    auto position = [&](const Term& t) -> std::optional<std::size_t> {
        auto it = index.find(to_string(t));
        if (it == index.end()) return std::nullopt;
        return it->second;
    };

    if (st.signature.with_equality()) {
        for (std::size_t v = 0; v < st.prop_vars.size(); ++v) {
            const auto& pv = st.prop_vars[v];
            if (pv.kind != PropKind::Equality || !val[v]) continue;
            auto a = position(pv.formula.terms()[0]);
            auto b = position(pv.formula.terms()[1]);
            if (a && b) unite(*a, *b);
        }
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < u.size(); ++i) {
                if (u[i].is_var() || u[i].args().empty()) continue;
                for (std::size_t j = i + 1; j < u.size(); ++j) {
                    if (u[j].is_var() || u[j].symbol() != u[i].symbol() || find(i) == find(j)) continue;
                    bool congruent = true;
                    for (std::size_t k = 0; k < u[i].args().size() && congruent; ++k) {
                        congruent = find(*position(u[i].args()[k])) == find(*position(u[j].args()[k]));
                    }
                    if (congruent && unite(i, j)) changed = true;
                }
            }
        }
    }

    std::vector<std::size_t> element(u.size());
    std::vector<std::string> names;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (find(i) == i) {
            element[i] = names.size();
            names.push_back(to_string(u[i]));
        }
    }
    for (std::size_t i = 0; i < u.size(); ++i) element[i] = element[find(i)];

    TermModel tm{FunctionalModel(st.signature, names, FiniteBooleanAlgebra::two()), {}, Valuation()};
    for (std::size_t i = 0; i < u.size(); ++i) {
        tm.element_of.emplace(to_string(u[i]), element[i]);
        if (u[i].is_var()) {
            tm.identity.set(u[i].variable(), element[i]);
            continue;
        }
        std::vector<std::size_t> args;
        for (const auto& a : u[i].args()) args.push_back(element[*position(a)]);
        tm.model.set_function(u[i].symbol(), args, element[i]);
    }

    const auto& two = tm.model.algebra();
    std::map<std::pair<std::string, std::vector<std::size_t>>, bool> decided;
    for (std::size_t v = 0; v < st.prop_vars.size(); ++v) {
        const auto& pv = st.prop_vars[v];
        if (pv.kind != PropKind::Atom) continue;
        std::vector<std::size_t> args;
        bool inside = true;
        for (const auto& t : pv.formula.terms()) {
            auto pos = position(t);
            if (!pos) {
                inside = false;
                break;
            }
            args.push_back(element[*pos]);
        }
        if (!inside) continue;
        auto [it, fresh] = decided.emplace(std::make_pair(pv.formula.relation(), args), val[v]);
        if (!fresh && it->second != val[v]) throw Error("incoherent valuation");
        tm.model.set_relation(pv.formula.relation(), args, val[v] ? two.top() : two.bottom());
    }
    return tm;
}

bool verify_term_model(const HenkinState& st, const TermModel& tm) {
    for (const auto& p : st.input) {
        if (eval_formula(p, tm.identity, tm.model) != tm.model.algebra().top()) return false;
    }
    return true;
}

bool check_perfectness(const HenkinState& st) {
    if (!st.valuation) return false;
    std::set<std::size_t> touched;
    std::function<void(const Formula&)> collect = [&](const Formula& p) {
        switch (p.kind()) {
            case FormulaKind::Atom:
            case FormulaKind::Eq:
            case FormulaKind::Forall: {
                std::string key = p.kind() == FormulaKind::Atom   ? atom_key(p)
                                  : p.kind() == FormulaKind::Forall ? quantified_key(p)
                                                                    : "";
                if (p.kind() == FormulaKind::Eq) {
                    if (auto c = canonical_eq(p)) key = eq_key(*c);
                }
                if (auto it = st.prop_index.find(key); it != st.prop_index.end()) touched.insert(it->second);
                break;
            }
            case FormulaKind::Not: collect(p.left()); break;
            case FormulaKind::And:
            case FormulaKind::Or:
                collect(p.left());
                collect(p.right());
                break;
            default: break;
        }
    };
    for (const auto& theta : st.theta) collect(theta);

    std::vector<std::vector<bool>> points{*st.valuation};
    for (auto v : touched) {
        if (points.size() == 64) break;
        auto flipped = *st.valuation;
        flipped[v] = !flipped[v];
        points.push_back(std::move(flipped));
    }
    FiniteBooleanAlgebra algebra(static_cast<unsigned>(points.size()));
    Embedding embed = [&](const Formula& p) {
        Element e;
        for (std::size_t k = 0; k < points.size(); ++k) {
            if (skeleton_value(st, points[k], p)) e.bits |= std::uint64_t{1} << k;
        }
        return e;
    };
    std::vector<FragmentEntry> fragment;
    for (const auto& w : st.witnesses) fragment.push_back({w.bound, w.body, {Term::var(w.witness)}});
    return is_perfect_on_fragment(Ultrafilter::principal(algebra, 0), fragment, embed);
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Sat: return "SAT";
        case Verdict::Unsat: return "UNSAT";
        case Verdict::Unknown: return "UNKNOWN";
    }
    return "UNKNOWN";
}

namespace {

// A verified term model, or nullopt with the reason in `note`.
std::optional<TermModel> extract(const HenkinState& st, std::string& note) {
    try {
        TermModel tm = build_term_model(st);
        if (verify_term_model(st, tm)) return tm;
        note = "term model does not satisfy the input";
    } catch (const Error& e) {
        note = e.what();
    }
    return std::nullopt;
}

}  // namespace

HenkinResult run_henkin(const std::vector<Formula>& j, const Signature& sig, const HenkinOptions& options) {
    HenkinResult result{Verdict::Unknown, henkin_expand(j, sig, options), std::nullopt, false, ""};
    HenkinState& st = result.state;
    if (!sat_solve(st)) {
        result.verdict = Verdict::Unsat;
        result.note = "instantiation clauses are unsatisfiable";
        return result;
    }
    result.model = extract(st, result.note);
    if (!result.model) {
        close_domain(st);
        if (sat_solve(st)) {
            result.model = extract(st, result.note);
        } else {
            result.note = "no model over the term universe";
        }
    }
    if (result.model) {
        result.verdict = Verdict::Sat;
        result.note = st.domain_closed ? "model found after closing the domain" : "";
        result.perfect = check_perfectness(st);
    }
    return result;
}

}  // namespace qlogic
