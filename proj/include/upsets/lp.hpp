#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "upsets/family.hpp"
#include "upsets/measure.hpp"
#include "upsets/rational.hpp"

namespace upsets {

struct LpLimits {
    int max_support = 200000;  // cap on the number of cover-weight variables
};

// Nonnegative weights on subsets of minterms (the LP variables); only nonzero
// entries are kept, canonical order.
struct CoverWeighting {
    std::vector<std::pair<ElementSet, Rational>> weights;
    Rational objective;
};

// Nonnegative weights on the minterms themselves (the dual variables).
struct DualWeighting {
    std::vector<std::pair<ElementSet, Rational>> weights;
    Rational value;
};

// The fractional expectation at q:
//   E*_q = min sum_B beta(B) q^|B|  over beta >= 0 supported on subsets of
//          minterms (the empty set included), subject to
//          sum_{B subset of A} beta(B) >= 1 for every minterm A.
// Its LP dual maximizes sum nu(A) over minterm weights nu >= 0 with
//   sum_{A containing B} nu(A) <= q^|B| for every B.
// Both optima are computed exactly and always agree; the pair of certificates
// is re-verified against the raw constraints before being returned.
struct FractionalExpectation {
    Rational q;
    Rational value;  // common optimum of both programs
    CoverWeighting primal;
    DualWeighting dual;
    int support_size = 0;
    int pivots = 0;
};

FractionalExpectation fractional_expectation(const MintermFamily& fam, const Rational& q,
                                             const LpLimits& limits = {});

DualWeighting dual_value(const MintermFamily& fam, const Rational& q,
                         const LpLimits& limits = {});

// Independent certificate check (shares no state with the solver): primal
// feasible, dual feasible, objectives equal. Returns an explanation on failure.
std::optional<std::string> certificate_error(const MintermFamily& fam,
                                             const FractionalExpectation& fe);

// Smallest q with E*_q = x, by bisection to interval width 2^-40; the returned
// point satisfies E*_q >= x. Requires a nontrivial family and 0 < x <= 1
// (values above E*_1 = 1 are unreachable).
double expectation_threshold_inverse(const MintermFamily& fam, double x,
                                     const LpLimits& limits = {});

// Moments of the dual-weighted witness g(X) = sum_A nu(A) p^-|A| [A subset X]:
//   mean   = E_p(g)   = L*_q            (exact, by construction)
//   second = E_p(g^2) = sum_{A,B} nu(A) nu(B) p^-|A cap B|
//   bound  = L*_q (1 + q/p)^k
// and the chain second <= bound verified exactly.
struct WitnessMoments {
    Rational p, q, alpha;
    Rational mean, second, bound;
    bool chain_holds = false;
};

WitnessMoments weighted_witness_moments(const MintermFamily& fam, const Rational& p,
                                        const Rational& q, const LpLimits& limits = {});
// Same, reusing an already-solved program for q = fe.q.
WitnessMoments weighted_witness_moments(const MintermFamily& fam, const Rational& p,
                                        const FractionalExpectation& fe);

// Two-sided bracket on the measure from fractional expectations:
//   E*_{alpha p} (1+alpha)^-k  <=  mu_p  <=  E*_p.
// Requires alpha > 0 and alpha * p <= 1.
struct MeasureBracket {
    Rational p, alpha;
    Rational lower, upper, mu;
    bool holds = false;
};

MeasureBracket measure_bracket(const MintermFamily& fam, const Rational& p,
                               const Rational& alpha, int limit = default_enumeration_limit,
                               const LpLimits& limits = {});

// Finds the smallest q1 with E*_{q1} = 1 and checks that the measure at
// min(k*q1, 1) exceeds 1/e. Not applicable to trivial families.
struct ExpectationThresholdCheck {
    bool applicable = false;
    double q1 = 0;
    double eval_p = 0;   // min(k*q1, 1)
    bool clamped = false;
    double mu = 0;
    bool holds = false;
};

ExpectationThresholdCheck expectation_threshold_check(const MintermFamily& fam,
                                                      int limit = default_enumeration_limit,
                                                      const LpLimits& limits = {});

// Both-sided bound on the ratio of two threshold points:
//   (a/b)^(1/k) - 1  <=  p_a / p_b  <=  C_k * (a/b),
// with C_k = k^k/(k-1)^(k-1) for k >= 2. For k = 1 the constant degenerates;
// the conventional limit value C_1 = 1 is reported and flagged
// (limit_convention), since real k = 1 families can exceed it.
struct ThresholdRatioBounds {
    double a = 0, b = 0;
    double p_a = 0, p_b = 0, ratio = 0;
    double lower = 0, upper = 0;
    bool lower_holds = false, upper_holds = false;
    bool limit_convention = false;  // k == 1
};

ThresholdRatioBounds threshold_ratio_bounds(const MintermFamily& fam, double a, double b,
                                            int limit = default_enumeration_limit);

// Upper bound on the threshold width: delta_eps <= 1 - 2 eps (k-1)^(k-1)/k^k
// (with 0^0 = 1). The k = 1 case uses the same degenerate constant and is
// flagged, as above.
struct WidthUpperCheck {
    double eps = 0, delta = 0, bound = 0;
    bool holds = false;
    bool limit_convention = false;
};

WidthUpperCheck width_upper_check(const MintermFamily& fam, double eps,
                                  int limit = default_enumeration_limit);

// k^k/(k-1)^(k-1) for k >= 2; 1 for k = 1 (degenerate limit convention).
double ratio_upper_constant(int k);

}  // namespace upsets
