#include "upsets/lp.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "upsets/errors.hpp"
#include "upsets/simplex.hpp"

namespace upsets {

namespace {

// All subsets of minterms, deduplicated, canonical order, capped.
std::vector<ElementSet> support_sets(const MintermFamily& fam, int max_support) {
    std::unordered_set<ElementSet, ElementSetHash> seen;
    for (ElementSet mt : fam.minterms()) {
        ElementSet::Mask full = mt.bits();
        ElementSet::Mask sub = full;
        while (true) {
            seen.insert(ElementSet(sub));
            if (static_cast<int>(seen.size()) > max_support)
                throw CapacityError("cover-weight support exceeds the limit of " +
                                    std::to_string(max_support) + " subsets");
            if (sub == 0) break;
            sub = (sub - 1) & full;
        }
    }
    std::vector<ElementSet> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

void require_q(const Rational& q) {
    if (!(q > 0 && q <= 1)) throw PreconditionError("LP parameter q must lie in (0, 1]");
}

}  // namespace

FractionalExpectation fractional_expectation(const MintermFamily& fam, const Rational& q,
                                             const LpLimits& limits) {
    require_q(q);
    FractionalExpectation fe;
    fe.q = q;
    if (fam.is_empty_family()) {
        fe.value = 0;
        fe.primal.objective = 0;
        fe.dual.value = 0;
        return fe;  // nothing to cover
    }

    std::vector<ElementSet> support = support_sets(fam, limits.max_support);
    fe.support_size = static_cast<int>(support.size());
    std::unordered_map<ElementSet, int, ElementSetHash> index;
    index.reserve(support.size());
    for (std::size_t i = 0; i < support.size(); ++i) index[support[i]] = static_cast<int>(i);

    CoveringLp lp;
    lp.num_vars = static_cast<int>(support.size());
    lp.costs.resize(support.size());
    {
        std::vector<Rational> qpow(fam.k() + 1);
        qpow[0] = 1;
        for (int t = 1; t <= fam.k(); ++t) qpow[t] = qpow[t - 1] * q;
        for (std::size_t i = 0; i < support.size(); ++i) lp.costs[i] = qpow[support[i].size()];
    }
    lp.rows.reserve(fam.minterm_count());
    for (ElementSet mt : fam.minterms()) {
        CoveringLp::Row row;
        row.rhs = 1;
        ElementSet::Mask full = mt.bits();
        ElementSet::Mask sub = full;
        while (true) {
            row.terms.emplace_back(index.at(ElementSet(sub)), Rational(1));
            if (sub == 0) break;
            sub = (sub - 1) & full;
        }
        lp.rows.push_back(std::move(row));
    }

    LpSolution sol = solve_covering_lp(lp);
    if (sol.status != LpSolution::Status::optimal)
        throw InternalConsistencyError("cover LP must be feasible and bounded");

    fe.value = sol.value;
    fe.primal.objective = sol.value;
    for (std::size_t i = 0; i < support.size(); ++i)
        if (sol.x[i] != 0) fe.primal.weights.emplace_back(support[i], sol.x[i]);
    fe.dual.value = 0;
    for (int r = 0; r < fam.minterm_count(); ++r) {
        if (sol.y[r] != 0) fe.dual.weights.emplace_back(fam.minterms()[r], sol.y[r]);
        fe.dual.value += sol.y[r];
    }
    fe.pivots = sol.pivots;

    if (auto err = certificate_error(fam, fe))
        throw InternalConsistencyError("LP certificates failed re-verification: " + *err);
    return fe;
}

DualWeighting dual_value(const MintermFamily& fam, const Rational& q, const LpLimits& limits) {
    return fractional_expectation(fam, q, limits).dual;
}

std::optional<std::string> certificate_error(const MintermFamily& fam,
                                             const FractionalExpectation& fe) {
    // Primal: weights nonnegative, supported on minterm subsets, covering each
    // minterm with total weight >= 1, objective recomputed from scratch.
    Rational primal_obj = 0;
    for (const auto& [set, w] : fe.primal.weights) {
        if (w < 0) return "negative cover weight on " + set.to_string();
        bool inside = false;
        for (ElementSet mt : fam.minterms())
            if (set.subset_of(mt)) {
                inside = true;
                break;
            }
        if (!inside) return "cover weight on " + set.to_string() + " which is not below a minterm";
        primal_obj += w * rational_pow(fe.q, set.size());
    }
    for (ElementSet mt : fam.minterms()) {
        Rational covered = 0;
        for (const auto& [set, w] : fe.primal.weights)
            if (set.subset_of(mt)) covered += w;
        if (covered < 1) return "minterm " + mt.to_string() + " covered only " + format_rational(covered);
    }
    if (primal_obj != fe.value) return "primal objective mismatch";

    // Dual: weights nonnegative on minterms; for every subset B of a minterm
    // (other B have zero left side) the mass above B is at most q^|B|.
    Rational dual_obj = 0;
    for (const auto& [set, w] : fe.dual.weights) {
        if (w < 0) return "negative minterm weight on " + set.to_string();
        bool is_minterm = false;
        for (ElementSet mt : fam.minterms())
            if (mt == set) {
                is_minterm = true;
                break;
            }
        if (!is_minterm) return "dual weight on non-minterm " + set.to_string();
        dual_obj += w;
    }
    if (dual_obj != fe.value) return "dual objective mismatch";
    for (ElementSet b : fam.minterm_subsets()) {
        Rational above = 0;
        for (const auto& [set, w] : fe.dual.weights)
            if (b.subset_of(set)) above += w;
        if (above > rational_pow(fe.q, b.size()))
            return "dual constraint violated at " + b.to_string();
    }
    return std::nullopt;
}

double expectation_threshold_inverse(const MintermFamily& fam, double x, const LpLimits& limits) {
    if (fam.is_trivial())
        throw UndefinedThresholdError("fractional expectation of a trivial family is constant");
    if (!(x > 0)) throw PreconditionError("target for the inverse must be positive");
    if (x > 1) throw UnreachableValueError("fractional expectation never exceeds 1");

    Rational target(parse_rational(format_double(x)));  // exact value of the double
    Rational lo = 0, hi = 1;
    // E*_1 = 1 >= target, E*_0+ -> 0: bisect for the left edge of {E* >= target}.
    for (int iter = 0; iter < 40; ++iter) {
        Rational mid = (lo + hi) / 2;
        Rational value = fractional_expectation(fam, mid, limits).value;
        if (value >= target)
            hi = mid;
        else
            lo = mid;
    }
    return to_double(hi);
}

WitnessMoments weighted_witness_moments(const MintermFamily& fam, const Rational& p,
                                        const Rational& q, const LpLimits& limits) {
    return weighted_witness_moments(fam, p, fractional_expectation(fam, q, limits));
}

WitnessMoments weighted_witness_moments(const MintermFamily& fam, const Rational& p,
                                        const FractionalExpectation& fe) {
    if (!(p > 0 && p <= 1)) throw PreconditionError("witness moments need p in (0, 1]");
    const Rational& q = fe.q;
    require_q(q);

    WitnessMoments wm;
    wm.p = p;
    wm.q = q;
    wm.alpha = q / p;
    wm.mean = fe.dual.value;

    Rational inv_p = 1 / p;
    std::vector<Rational> ip(fam.k() + 1);
    ip[0] = 1;
    for (int t = 1; t <= fam.k(); ++t) ip[t] = ip[t - 1] * inv_p;

    wm.second = 0;
    const auto& nu = fe.dual.weights;
    for (std::size_t i = 0; i < nu.size(); ++i)
        for (std::size_t j = 0; j < nu.size(); ++j)
            wm.second += nu[i].second * nu[j].second * ip[(nu[i].first & nu[j].first).size()];

    wm.bound = wm.mean * rational_pow(1 + wm.alpha, fam.k());
    wm.chain_holds = wm.second <= wm.bound;
    return wm;
}

MeasureBracket measure_bracket(const MintermFamily& fam, const Rational& p,
                               const Rational& alpha, int limit, const LpLimits& limits) {
    if (!(p > 0 && p < 1)) throw PreconditionError("bracket needs p in (0, 1)");
    if (!(alpha > 0)) throw PreconditionError("bracket needs alpha > 0");
    if (alpha * p > 1) throw PreconditionError("alpha * p exceeds 1; that point is out of range");

    MeasureBracket mb;
    mb.p = p;
    mb.alpha = alpha;
    mb.lower = fractional_expectation(fam, alpha * p, limits).value /
               rational_pow(1 + alpha, fam.k());
    mb.upper = fractional_expectation(fam, p, limits).value;
    mb.mu = measure(fam, p, limit);
    mb.holds = mb.lower <= mb.mu && mb.mu <= mb.upper;
    return mb;
}

ExpectationThresholdCheck expectation_threshold_check(const MintermFamily& fam, int limit,
                                                      const LpLimits& limits) {
    ExpectationThresholdCheck out;
    if (fam.is_trivial()) return out;  // not applicable
    out.applicable = true;

    Rational lo = 0, hi = 1;
    for (int iter = 0; iter < 40; ++iter) {
        Rational mid = (lo + hi) / 2;
        if (fractional_expectation(fam, mid, limits).value >= 1)
            hi = mid;
        else
            lo = mid;
    }
    // hi always kept E* = 1, so the evaluation point is honest.
    out.q1 = to_double(hi);
    Rational eval = Rational(fam.k()) * hi;
    if (eval > 1) {
        eval = 1;
        out.clamped = true;
    }
    out.eval_p = to_double(eval);
    out.mu = to_double(measure(fam, eval, limit));
    out.holds = out.mu > 1 / std::exp(1.0);
    return out;
}

double ratio_upper_constant(int k) {
    if (k <= 1) return 1.0;  // degenerate limit convention, flagged by callers
    return std::pow(k, k) / std::pow(k - 1, k - 1);
}

ThresholdRatioBounds threshold_ratio_bounds(const MintermFamily& fam, double a, double b,
                                            int limit) {
    if (!(0 < b && b < a && a < 1))
        throw PreconditionError("ratio bounds need 0 < b < a < 1");
    MeasurePolynomial poly = layer_counts(fam, limit);
    if (fam.is_trivial())
        throw UndefinedThresholdError("thresholds of a trivial family are undefined");

    ThresholdRatioBounds out;
    out.a = a;
    out.b = b;
    out.p_a = threshold_point(poly, a);
    out.p_b = threshold_point(poly, b);
    out.ratio = out.p_a / out.p_b;
    int k = fam.k();
    out.lower = std::pow(a / b, 1.0 / k) - 1;
    out.upper = ratio_upper_constant(k) * (a / b);
    out.limit_convention = k == 1;
    constexpr double slack = 1e-9;
    out.lower_holds = out.lower <= out.ratio + slack;
    out.upper_holds = out.ratio <= out.upper + slack;
    return out;
}

WidthUpperCheck width_upper_check(const MintermFamily& fam, double eps, int limit) {
    if (fam.is_trivial())
        throw UndefinedThresholdError("thresholds of a trivial family are undefined");
    WidthUpperCheck out;
    out.eps = eps;
    out.delta = threshold_width(fam, eps, limit);
    int k = fam.k();
    // (k-1)^(k-1)/k^k, reading 0^0 = 1 at k = 1.
    double factor = k == 1 ? 1.0 : std::pow(k - 1, k - 1) / std::pow(k, k);
    out.bound = 1 - 2 * eps * factor;
    out.limit_convention = k == 1;
    out.holds = out.delta <= out.bound + 1e-9;
    return out;
}

}  // namespace upsets
