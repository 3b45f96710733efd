#pragma once

#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qlogic/model.hpp"
#include "qlogic/signature.hpp"

namespace testing_support {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::string data_path(const std::string& name) { return std::string(QLOGIC_TEST_DATA) + "/" + name; }

/// Calls `visit` with every 2-valued model of `sig` on domain m0 .. m(size-1).
inline void for_each_two_model(const qlogic::Signature& sig, std::size_t size,
                               const std::function<void(const qlogic::FunctionalModel&)>& visit) {
    std::vector<std::string> domain;
    for (std::size_t i = 0; i < size; ++i) domain.push_back("m" + std::to_string(i));
    qlogic::FunctionalModel m(sig, domain, qlogic::FiniteBooleanAlgebra::two());
    std::vector<std::size_t*> fun_cells;
    std::vector<qlogic::Element*> rel_cells;
    for (std::size_t k = 0; k < sig.functions().size(); ++k) {
        for (auto& c : m.function_table(k)) fun_cells.push_back(&c);
    }
    for (std::size_t k = 0; k < sig.relations().size(); ++k) {
        for (auto& c : m.relation_table(k)) rel_cells.push_back(&c);
    }
    const qlogic::Element one = m.algebra().top();
    while (true) {
        visit(m);
        bool carried = true;
        for (std::size_t i = rel_cells.size(); i > 0 && carried; --i) {
            auto* c = rel_cells[i - 1];
            carried = *c == one;
            *c = carried ? qlogic::Element{} : one;
        }
        for (std::size_t i = fun_cells.size(); i > 0 && carried; --i) {
            auto* c = fun_cells[i - 1];
            *c = (*c + 1) % size;
            carried = *c == 0;
        }
        if (carried) return;
    }
}

inline std::vector<qlogic::FunctionalModel> all_two_models(const qlogic::Signature& sig, std::size_t max_size) {
    std::vector<qlogic::FunctionalModel> out;
    for (std::size_t n = 1; n <= max_size; ++n) {
        for_each_two_model(sig, n, [&](const qlogic::FunctionalModel& m) { out.push_back(m); });
    }
    return out;
}

}  // namespace testing_support
