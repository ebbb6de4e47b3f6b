#pragma once

#include <utility>
#include <vector>

#include "upsets/rational.hpp"

namespace upsets {

// Covering-form linear program:
//     minimize    costs . x
//     subject to  sum_j terms[j] * x_j >= rhs   (one row per constraint)
//                 x >= 0
// with every rhs >= 0. Solved exactly over the rationals by a dense
// two-phase tableau simplex. Deterministic: Dantzig entering rule with
// lowest-index tie-breaks, switching permanently to Bland's rule if the
// objective stalls, so cycling is impossible and reruns give identical
// vertices.
struct CoveringLp {
    int num_vars = 0;
    std::vector<Rational> costs;
    struct Row {
        std::vector<std::pair<int, Rational>> terms;  // (variable index, coefficient)
        Rational rhs;
    };
    std::vector<Row> rows;
};

struct LpSolution {
    enum class Status { optimal, infeasible, unbounded };
    Status status = Status::optimal;
    std::vector<Rational> x;  // primal values, size num_vars
    std::vector<Rational> y;  // dual multiplier per input row, y >= 0
    Rational value;           // costs . x (== rhs . y at optimality)
    int pivots = 0;
};

LpSolution solve_covering_lp(const CoveringLp& lp);

}  // namespace upsets
