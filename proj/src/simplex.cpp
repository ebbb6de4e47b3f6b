#include "upsets/simplex.hpp"

#include <algorithm>

#include "upsets/errors.hpp"

namespace upsets {

namespace {

// Dense tableau with columns [vars | surplus | artificial | rhs].
struct Tableau {
    int nv, nr;                  // original variables, rows
    int width;                   // columns incl. rhs
    std::vector<std::vector<Rational>> t;
    std::vector<Rational> rc;    // reduced-cost row (size width-1)
    std::vector<int> basis;      // basis[r] = column basic in row r
    std::vector<char> active;    // rows not dropped as redundant
    std::vector<char> allowed;   // columns eligible to enter
    int pivots = 0;
    bool bland = false;
    int stall = 0;

    int surplus(int r) const { return nv + r; }
    int artificial(int r) const { return nv + nr + r; }
    Rational& rhs(int r) { return t[r][width - 1]; }

    void pivot(int r, int col) {
        Rational inv = t[r][col];
        for (auto& v : t[r])
            if (v != 0) v /= inv;
        t[r][col] = 1;  // avoid drift from the division loop
        for (int r2 = 0; r2 < nr; ++r2) {
            if (r2 == r || !active[r2]) continue;
            Rational f = t[r2][col];
            if (f == 0) continue;
            auto& row = t[r2];
            const auto& prow = t[r];
            for (int j = 0; j < width; ++j)
                if (prow[j] != 0) row[j] -= f * prow[j];
            row[col] = 0;
        }
        Rational f = rc[col];
        if (f != 0) {
            const auto& prow = t[r];
            for (int j = 0; j < width - 1; ++j)
                if (prow[j] != 0) rc[j] -= f * prow[j];
            rc[col] = 0;
        }
        basis[r] = col;
        ++pivots;
    }

    // Entering column, or -1 at optimality.
    int pick_entering() const {
        int best = -1;
        for (int j = 0; j < width - 1; ++j) {
            if (!allowed[j] || rc[j] >= 0) continue;
            if (bland) return j;
            if (best == -1 || rc[j] < rc[best]) best = j;
        }
        return best;
    }

    // Leaving row by the ratio test, or -1 if the column is unbounded.
    int pick_leaving(int col) const {
        int best = -1;
        Rational best_ratio;
        for (int r = 0; r < nr; ++r) {
            if (!active[r]) continue;
            const Rational& a = t[r][col];
            if (a <= 0) continue;
            Rational ratio = t[r][width - 1] / a;
            if (best == -1 || ratio < best_ratio ||
                (ratio == best_ratio && basis[r] < basis[best])) {
                best = r;
                best_ratio = ratio;
            }
        }
        return best;
    }

    // Runs simplex iterations until optimal/unbounded. Returns false on unbounded.
    bool iterate() {
        while (true) {
            int col = pick_entering();
            if (col == -1) return true;
            int row = pick_leaving(col);
            if (row == -1) return false;
            if (t[row][width - 1] == 0) {
                if (!bland && ++stall > 2 * (nr + width)) bland = true;
            } else {
                stall = 0;
            }
            pivot(row, col);
        }
    }

    void compute_reduced_costs(const std::vector<Rational>& cost) {
        for (int j = 0; j < width - 1; ++j) {
            Rational z = 0;
            for (int r = 0; r < nr; ++r)
                if (active[r] && cost[basis[r]] != 0 && t[r][j] != 0)
                    z += cost[basis[r]] * t[r][j];
            rc[j] = cost[j] - z;
        }
    }
};

}  // namespace

LpSolution solve_covering_lp(const CoveringLp& lp) {
    int nv = lp.num_vars;
    int nr = static_cast<int>(lp.rows.size());
    LpSolution sol;
    sol.x.assign(nv, Rational(0));
    sol.y.assign(nr, Rational(0));
    sol.value = 0;
    if (nr == 0) return sol;  // x = 0 is optimal: all costs are >= 0 in our use

    for (const auto& row : lp.rows)
        if (row.rhs < 0) throw PreconditionError("covering LP wants nonnegative right-hand sides");
    if (static_cast<long long>(nv + 2 * nr + 1) * nr > 60'000'000)
        throw CapacityError("LP tableau too large for the dense exact solver");

    Tableau tab;
    tab.nv = nv;
    tab.nr = nr;
    tab.width = nv + 2 * nr + 1;
    tab.t.assign(nr, std::vector<Rational>(tab.width, Rational(0)));
    tab.rc.assign(tab.width - 1, Rational(0));
    tab.basis.resize(nr);
    tab.active.assign(nr, 1);
    tab.allowed.assign(tab.width - 1, 1);

    for (int r = 0; r < nr; ++r) {
        for (const auto& [j, coeff] : lp.rows[r].terms) tab.t[r][j] += coeff;
        tab.t[r][tab.surplus(r)] = -1;
        tab.t[r][tab.artificial(r)] = 1;
        tab.rhs(r) = lp.rows[r].rhs;
        tab.basis[r] = tab.artificial(r);
    }

    // Phase 1: minimize the artificial total, starting from the artificial basis.
    std::vector<Rational> phase1_cost(tab.width - 1, Rational(0));
    for (int r = 0; r < nr; ++r) phase1_cost[tab.artificial(r)] = 1;
    tab.compute_reduced_costs(phase1_cost);
    if (!tab.iterate())
        throw InternalConsistencyError("phase-1 objective cannot be unbounded");

    Rational infeasibility = 0;
    for (int r = 0; r < nr; ++r)
        if (tab.basis[r] >= nv + nr) infeasibility += tab.rhs(r);
    if (infeasibility != 0) {
        sol.status = LpSolution::Status::infeasible;
        return sol;
    }

    // Drive leftover artificials out of the basis; a row with no real pivot
    // entry is redundant and gets dropped (its dual multiplier stays 0).
    for (int r = 0; r < nr; ++r) {
        if (tab.basis[r] < nv + nr) continue;
        int col = -1;
        for (int j = 0; j < nv + nr; ++j)
            if (tab.t[r][j] != 0) {
                col = j;
                break;
            }
        if (col == -1)
            tab.active[r] = 0;
        else
            tab.pivot(r, col);
    }
    for (int r = 0; r < nr; ++r) tab.allowed[tab.artificial(r)] = 0;

    // Phase 2 on the real objective.
    std::vector<Rational> cost(tab.width - 1, Rational(0));
    for (int j = 0; j < nv; ++j) cost[j] = lp.costs[j];
    tab.bland = false;
    tab.stall = 0;
    tab.compute_reduced_costs(cost);
    if (!tab.iterate()) {
        sol.status = LpSolution::Status::unbounded;
        return sol;
    }

    for (int r = 0; r < nr; ++r) {
        if (!tab.active[r]) continue;
        if (tab.basis[r] < nv) sol.x[tab.basis[r]] = tab.rhs(r);
    }
    // Duals read off the surplus columns: y_r = reduced cost of surplus r.
    for (int r = 0; r < nr; ++r)
        sol.y[r] = tab.active[r] ? tab.rc[tab.surplus(r)] : Rational(0);

    sol.value = 0;
    for (int j = 0; j < nv; ++j)
        if (sol.x[j] != 0) sol.value += lp.costs[j] * sol.x[j];
    sol.pivots = tab.pivots;
    return sol;
}

}  // namespace upsets
