#include "qlogic/sat.hpp"

#include <cstdint>

#include "qlogic/error.hpp"

namespace qlogic {

namespace {

enum : std::int8_t { kFalse = 0, kTrue = 1, kUnassigned = -1 };

std::size_t slot(Literal lit) { return 2 * variable_of(lit) + (lit < 0 ? 1 : 0); }

class Solver {
public:
    Solver(std::size_t var_count, const std::vector<Clause>& clauses)
        : clauses_(clauses), values_(var_count, kUnassigned), occurs_(2 * var_count) {
        for (std::size_t c = 0; c < clauses.size(); ++c) {
            for (auto lit : clauses[c]) {
                if (lit == 0 || variable_of(lit) >= var_count) throw Error("clause mentions an undeclared variable");
                occurs_[slot(lit)].push_back(c);
            }
        }
    }

    std::optional<std::vector<bool>> run() {
        if (!initial_units()) return std::nullopt;
        std::size_t next_var = 0;
        while (true) {
            if (!propagate()) {
                if (!backtrack()) return std::nullopt;
                next_var = 0;
                continue;
            }
            while (next_var < values_.size() && values_[next_var] != kUnassigned) ++next_var;
            if (next_var == values_.size()) break;
            decisions_.push_back({trail_.size(), next_var, false});
            assign(positive(next_var));
        }
        std::vector<bool> out(values_.size());
        for (std::size_t v = 0; v < values_.size(); ++v) out[v] = values_[v] == kTrue;
        return out;
    }

private:
    struct Decision {
        std::size_t trail_size;
        std::size_t var;
        bool flipped;
    };

    std::int8_t value(Literal lit) const {
        std::int8_t v = values_[variable_of(lit)];
        if (v == kUnassigned) return v;
        return lit > 0 ? v : static_cast<std::int8_t>(1 - v);
    }

    void assign(Literal lit) {
        values_[variable_of(lit)] = lit > 0 ? kTrue : kFalse;
        trail_.push_back(lit);
    }

    // Level-zero facts: empty clauses and unit clauses.
    bool initial_units() {
        for (const auto& clause : clauses_) {
            if (clause.empty()) return false;
            if (clause.size() != 1) continue;
            std::int8_t v = value(clause[0]);
            if (v == kFalse) return false;
            if (v == kUnassigned) assign(clause[0]);
        }
        return true;
    }

    // Visits the clauses in which a literal just became false.
    bool propagate() {
        while (head_ < trail_.size()) {
            Literal falsified = -trail_[head_++];
            for (std::size_t c : occurs_[slot(falsified)]) {
                Literal open = 0;
                std::size_t open_count = 0;
                bool satisfied = false;
                for (auto lit : clauses_[c]) {
                    std::int8_t v = value(lit);
                    if (v == kTrue) {
                        satisfied = true;
                        break;
                    }
                    if (v == kUnassigned) {
                        open = lit;
                        ++open_count;
                    }
                }
                if (satisfied) continue;
                if (open_count == 0) return false;
                if (open_count == 1) assign(open);
            }
        }
        return true;
    }

    void undo_to(std::size_t trail_size) {
        while (trail_.size() > trail_size) {
            values_[variable_of(trail_.back())] = kUnassigned;
            trail_.pop_back();
        }
        if (head_ > trail_size) head_ = trail_size;
    }

    bool backtrack() {
        while (!decisions_.empty()) {
            Decision d = decisions_.back();
            decisions_.pop_back();
            undo_to(d.trail_size);
            if (!d.flipped) {
                decisions_.push_back({d.trail_size, d.var, true});
                assign(negative(d.var));
                return true;
            }
        }
        return false;
    }

    const std::vector<Clause>& clauses_;
    std::vector<std::int8_t> values_;
    std::vector<std::vector<std::size_t>> occurs_;
    std::vector<Literal> trail_;
    std::size_t head_ = 0;
    std::vector<Decision> decisions_;
};

}  // namespace

std::optional<std::vector<bool>> dpll(std::size_t var_count, const std::vector<Clause>& clauses) {
    return Solver(var_count, clauses).run();
}

bool satisfies(const std::vector<bool>& assignment, const std::vector<Clause>& clauses) {
    for (const auto& clause : clauses) {
        bool sat = false;
        for (auto lit : clause) {
            if (assignment[variable_of(lit)] == (lit > 0)) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

}  // namespace qlogic
