// Exact rational linear programming (two-phase dense simplex, Bland's rule).
#pragma once

#include "cgras/rational.hpp"

#include <vector>

namespace cgras {

enum class RowSense { LessEq, Equal, GreaterEq };

// minimize c·x subject to A x (sense) b and x >= 0.
struct LpProblem {
    std::size_t n_vars = 0;
    std::vector<std::vector<Rational>> a;
    std::vector<RowSense> sense;
    std::vector<Rational> b;
    std::vector<Rational> c;  // empty means a pure feasibility problem

    void add_row(std::vector<Rational> row, RowSense s, Rational rhs);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    std::vector<Rational> x;
    Rational value = 0;
};

LpResult solve_lp(const LpProblem& p);

}  // namespace cgras
