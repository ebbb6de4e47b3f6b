// Brute-force reference implementations for the tests. These deliberately
// share no code with the library: membership is a direct minterm scan, the
// measure a full 2^n sweep, and the LP reference an exhaustive vertex
// enumeration. Slow and obviously correct.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "upsets/family.hpp"
#include "upsets/rational.hpp"
#include "upsets/simplex.hpp"

namespace oracles {

using upsets::ElementSet;
using upsets::MintermFamily;
using upsets::Rational;

inline bool contains(const MintermFamily& fam, std::uint32_t mask) {
    for (const ElementSet& mt : fam.minterms()) {
        const auto need = static_cast<std::uint32_t>(mt.bits());
        if ((mask & need) == need) return true;
    }
    return false;
}

inline Rational point_weight(const Rational& p, int size, int n) {
    return upsets::rational_pow(p, size) * upsets::rational_pow(1 - p, n - size);
}

inline Rational measure(const MintermFamily& fam, const Rational& p) {
    const int n = fam.n();
    Rational total = 0;
    for (std::uint32_t a = 0; a < (std::uint32_t(1) << n); ++a)
        if (contains(fam, a)) total += point_weight(p, std::popcount(a), n);
    return total;
}

// Expected number of elements of the random set whose removal leaves the
// family: sum over members A of Pr[A] * #{i in A : A \ {i} not a member}.
inline Rational pivotal_expectation(const MintermFamily& fam, const Rational& p) {
    const int n = fam.n();
    Rational total = 0;
    for (std::uint32_t a = 0; a < (std::uint32_t(1) << n); ++a) {
        if (!contains(fam, a)) continue;
        int piv = 0;
        for (int i = 0; i < n; ++i)
            if ((a >> i) & 1 && !contains(fam, a & ~(std::uint32_t(1) << i))) ++piv;
        total += Rational(piv) * point_weight(p, std::popcount(a), n);
    }
    return total;
}

// X(A) = number of minterms inside A; first and second moments by full sweep.
inline std::pair<Rational, Rational> moments(const MintermFamily& fam, const Rational& p) {
    const int n = fam.n();
    Rational first = 0, second = 0;
    for (std::uint32_t a = 0; a < (std::uint32_t(1) << n); ++a) {
        int x = 0;
        for (const ElementSet& mt : fam.minterms()) {
            const auto need = static_cast<std::uint32_t>(mt.bits());
            if ((a & need) == need) ++x;
        }
        if (x == 0) continue;
        const Rational w = point_weight(p, std::popcount(a), n);
        first += Rational(x) * w;
        second += Rational(x) * Rational(x) * w;
    }
    return {first, second};
}

// Central finite difference of the measure polynomial.
inline double derivative_fd(const MintermFamily& fam, double p, double h = 1e-6) {
    // Rational(double) is exact, so the only error here is the h^2 truncation.
    const auto at = [&](double t) { return upsets::to_double(measure(fam, Rational(t))); };
    return (at(p + h) - at(p - h)) / (2 * h);
}

// Exhaustive minimum of a small covering LP (minimize c.x, Mx >= b, x >= 0):
// tries every choice of tight rows T and support S with |S| = |T|, solves the
// square system by rational Gaussian elimination, and keeps the best feasible
// point. Exact; exponential; fine for a handful of rows and columns.
inline std::optional<Rational> lp_minimum(const upsets::CoveringLp& lp) {
    const int rows = static_cast<int>(lp.rows.size());
    const int cols = lp.num_vars;
    std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols, 0));
    for (int r = 0; r < rows; ++r)
        for (const auto& [j, c] : lp.rows[r].terms) m[r][j] += c;

    const auto feasible = [&](const std::vector<Rational>& x) {
        for (const Rational& v : x)
            if (v < 0) return false;
        for (int r = 0; r < rows; ++r) {
            Rational lhs = 0;
            for (int j = 0; j < cols; ++j) lhs += m[r][j] * x[j];
            if (lhs < lp.rows[r].rhs) return false;
        }
        return true;
    };

    std::optional<Rational> best;
    const auto consider = [&](const std::vector<Rational>& x) {
        if (!feasible(x)) return;
        Rational v = 0;
        for (int j = 0; j < cols; ++j) v += lp.costs[j] * x[j];
        if (!best || v < *best) best = v;
    };

    consider(std::vector<Rational>(cols, 0));
    for (std::uint32_t tset = 1; tset < (std::uint32_t(1) << rows); ++tset) {
        std::vector<int> tight;
        for (int r = 0; r < rows; ++r)
            if ((tset >> r) & 1) tight.push_back(r);
        const int d = static_cast<int>(tight.size());
        if (d > cols) continue;
        std::vector<int> support(d);
        const auto try_support = [&](const auto& self, int pos, int from) -> void {
            if (pos == d) {
                // solve m[tight][support] * xs = rhs[tight]
                std::vector<std::vector<Rational>> a(d, std::vector<Rational>(d + 1, 0));
                for (int r = 0; r < d; ++r) {
                    for (int c = 0; c < d; ++c) a[r][c] = m[tight[r]][support[c]];
                    a[r][d] = lp.rows[tight[r]].rhs;
                }
                for (int c = 0; c < d; ++c) {  // elimination with partial pivoting by nonzero
                    int piv = -1;
                    for (int r = c; r < d; ++r)
                        if (a[r][c] != 0) { piv = r; break; }
                    if (piv < 0) return;  // singular: no unique vertex here
                    std::swap(a[c], a[piv]);
                    for (int r = 0; r < d; ++r) {
                        if (r == c || a[r][c] == 0) continue;
                        const Rational f = a[r][c] / a[c][c];
                        for (int cc = c; cc <= d; ++cc) a[r][cc] -= f * a[c][cc];
                    }
                }
                std::vector<Rational> x(cols, 0);
                for (int c = 0; c < d; ++c) x[support[c]] = a[c][d] / a[c][c];
                consider(x);
                return;
            }
            for (int j = from; j < cols; ++j) {
                support[pos] = j;
                self(self, pos + 1, j + 1);
            }
        };
        try_support(try_support, 0, 0);
    }
    return best;
}

}  // namespace oracles
