#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "upsets/family.hpp"
#include "upsets/rational.hpp"

namespace upsets {

// Exact full-enumeration operations refuse ground sets above this by default;
// callers can raise it (memory/time grow as 2^n).
inline constexpr int default_enumeration_limit = 24;
inline constexpr int hard_enumeration_limit = 30;

// Membership table for every subset of {0..n-1}, packed 64 subsets per word.
// Built once per family by a sum-over-subsets sweep, then queried in O(1).
class UpsetTable {
  public:
    UpsetTable(const MintermFamily& fam, int limit = default_enumeration_limit);

    int n() const { return n_; }
    bool contains(std::uint32_t mask) const {
        return (words_[mask >> 6] >> (mask & 63)) & 1;
    }

  private:
    int n_;
    std::vector<std::uint64_t> words_;
};

// The measure of a monotone family under the product measure with parameter p
// is a polynomial determined by the layer counts a_t = #(members of size t):
//     mu(p) = sum_t a_t p^t (1-p)^(n-t).
struct MeasurePolynomial {
    int n = 0;
    std::vector<Int> layer_counts;  // size n+1

    Rational value_at(const Rational& p) const;
    double value_at(double p) const;
    Rational derivative_at(const Rational& p) const;
    double derivative_at(double p) const;
};

MeasurePolynomial layer_counts(const MintermFamily& fam, int limit = default_enumeration_limit);

Rational measure(const MintermFamily& fam, const Rational& p, int limit = default_enumeration_limit);
double measure(const MintermFamily& fam, double p, int limit = default_enumeration_limit);
Rational measure_derivative(const MintermFamily& fam, const Rational& p,
                            int limit = default_enumeration_limit);

// counts[i][t] = number of family members A of size t in which element i is
// pivotal (A in the family, A minus i not). Drives the per-element boundary
// probabilities b_i exactly at any p.
struct PivotalCounts {
    int n = 0;
    std::vector<std::vector<Int>> counts;  // n rows, each size n+1

    // b_i(p) = sum_t counts[i][t] p^(t-1) (1-p)^(n-t)
    Rational element_rate(int i, const Rational& p) const;
};

PivotalCounts pivotal_counts(const MintermFamily& fam, int limit = default_enumeration_limit);

// Per-element rates b_i plus the expected number of pivotal elements,
//     E[Piv] = p * sum_i b_i,
// which equals p * d/dp mu(p) exactly.
struct InfluenceProfile {
    Rational p;
    std::vector<Rational> element_rates;
    Rational expected_pivotal;
};

InfluenceProfile pivotal_expectation(const MintermFamily& fam, const Rational& p,
                                     int limit = default_enumeration_limit);

// Smallest p with mu(p) = x, found by bisection on [0,1]; |mu(result) - x|
// <= 1e-12. Requires a nontrivial family and 0 < x < 1.
double threshold_point(const MintermFamily& fam, double x, int limit = default_enumeration_limit);
double threshold_point(const MeasurePolynomial& poly, double x);

// Relative threshold width: (p_{1/2} - p_eps) / p_{1/2}, for 0 < eps < 1/2.
double threshold_width(const MintermFamily& fam, double eps, int limit = default_enumeration_limit);
double threshold_width(const MeasurePolynomial& poly, double eps);

// Checks that mu(p)/p^k is nonincreasing across the given grid (ascending
// p values in (0,1]); exact rational comparisons. On failure reports the
// first adjacent violating pair.
struct RatioCheck {
    bool nonincreasing = true;
    std::optional<std::pair<Rational, Rational>> violation;  // (p_i, p_{i+1})
};

RatioCheck monotone_ratio_check(const MintermFamily& fam, std::span<const Rational> grid,
                                int limit = default_enumeration_limit);

// Monte Carlo estimate of mu(p): `samples` independent draws of a random
// subset (each element kept with probability p), deterministic in (seed,
// sample index) regardless of `threads`. 99% central-limit interval.
struct SampleEstimate {
    double estimate = 0;
    double ci_low = 0;
    double ci_high = 0;
    std::uint64_t successes = 0;
    std::uint64_t samples = 0;
};

SampleEstimate estimate_measure(const MintermFamily& fam, double p, std::uint64_t samples,
                                std::uint64_t seed, int threads = 1);

}  // namespace upsets
