#pragma once

#include <fstream>
#include <string>

#include "peria/presentation.hpp"

#ifndef PERIA_FIXTURE_DIR
#define PERIA_FIXTURE_DIR "fixtures"
#endif

namespace fx {

inline std::string fixture_path(const std::string& name) {
    return std::string(PERIA_FIXTURE_DIR) + "/" + name;
}

inline peria::PeriagroupSpec load(const std::string& name) {
    std::ifstream in(fixture_path(name));
    if (!in) throw std::runtime_error("cannot open fixture " + name);
    return peria::parse_presentation(in);
}

// The same five specs built in code, for parse cross-checks and for tests
// that do not want file IO.
inline peria::PeriagroupSpec f1() {
    peria::PeriagroupSpec s;
    s.add_vertex("u", peria::FiniteGroupTable::cyclic(2), true);
    s.add_vertex("v", peria::FiniteGroupTable::cyclic(2), true);
    s.add_edge(0, 1, 3);
    return s;
}

inline peria::PeriagroupSpec f2() {
    peria::PeriagroupSpec s;
    s.add_vertex("u", peria::FiniteGroupTable::cyclic(2), true);
    s.add_vertex("v", peria::FiniteGroupTable::cyclic(3), true);
    s.add_edge(0, 1, 2);
    return s;
}

inline peria::PeriagroupSpec f3() {
    peria::PeriagroupSpec s;
    s.add_vertex("u", peria::FiniteGroupTable::cyclic(3), true);
    s.add_vertex("v", peria::FiniteGroupTable::cyclic(3), true);
    return s;
}

inline peria::PeriagroupSpec f4() {
    peria::PeriagroupSpec s;
    s.add_vertex("u", peria::FiniteGroupTable::cyclic(3), true);
    s.add_vertex("v", peria::FiniteGroupTable::cyclic(2), true);
    s.add_vertex("w", peria::FiniteGroupTable::cyclic(2), true);
    s.add_edge(0, 1, 2);
    s.add_edge(1, 2, 3);
    return s;
}

inline peria::PeriagroupSpec f5() {
    peria::PeriagroupSpec s;
    s.add_vertex("u", peria::FiniteGroupTable::cyclic(2), true);
    s.add_vertex("v", peria::FiniteGroupTable::cyclic(2), true);
    s.add_vertex("w", peria::FiniteGroupTable::cyclic(2), true);
    s.add_edge(0, 1, 3);
    s.add_edge(0, 2, 3);
    s.add_edge(1, 2, 3);
    return s;
}

} // namespace fx
