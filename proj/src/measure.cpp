#include "upsets/measure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <thread>

#include "upsets/errors.hpp"
#include "upsets/rng.hpp"

namespace upsets {

namespace {

void require_enumerable(int n, int limit) {
    int eff = std::min(limit, hard_enumeration_limit);
    if (n > eff)
        throw CapacityError("ground set size " + std::to_string(n) +
                            " exceeds the exact enumeration limit " + std::to_string(eff) +
                            "; use Monte Carlo sampling or raise the limit");
}

void require_nontrivial(const MintermFamily& fam) {
    if (fam.is_trivial())
        throw UndefinedThresholdError(
            "family measure is constant 0 or 1; thresholds are undefined");
}

}  // namespace

UpsetTable::UpsetTable(const MintermFamily& fam, int limit) : n_(fam.n()) {
    require_enumerable(n_, limit);
    std::size_t size = std::size_t(1) << n_;
    words_.assign((size + 63) / 64, 0);
    for (ElementSet m : fam.minterms()) {
        auto mask = static_cast<std::uint64_t>(m.bits());
        words_[mask >> 6] |= std::uint64_t(1) << (mask & 63);
    }
    // Sum-over-subsets sweep: after pass i, a subset's bit is on iff some
    // minterm lies inside it using only decisions on elements 0..i.
    static constexpr std::uint64_t low_clear[6] = {
        0x5555555555555555ull, 0x3333333333333333ull, 0x0F0F0F0F0F0F0F0Full,
        0x00FF00FF00FF00FFull, 0x0000FFFF0000FFFFull, 0x00000000FFFFFFFFull,
    };
    for (int i = 0; i < n_; ++i) {
        if (i < 6) {
            int shift = 1 << i;
            for (auto& w : words_) w |= (w & low_clear[i]) << shift;
        } else {
            std::size_t stride = std::size_t(1) << (i - 6);
            for (std::size_t j = 0; j < words_.size(); ++j)
                if (!((j >> (i - 6)) & 1)) words_[j + stride] |= words_[j];
        }
    }
}

MeasurePolynomial layer_counts(const MintermFamily& fam, int limit) {
    UpsetTable table(fam, limit);
    int n = fam.n();
    std::vector<std::uint64_t> raw(n + 1, 0);
    std::uint32_t size = std::uint32_t(1) << n;
    for (std::uint32_t mask = 0; mask < size; ++mask)
        if (table.contains(mask)) ++raw[std::popcount(mask)];
    MeasurePolynomial poly;
    poly.n = n;
    poly.layer_counts.assign(raw.begin(), raw.end());
    return poly;
}

Rational MeasurePolynomial::value_at(const Rational& p) const {
    Rational q = 1 - p;
    std::vector<Rational> pp(n + 1), qq(n + 1);
    pp[0] = 1;
    qq[0] = 1;
    for (int t = 1; t <= n; ++t) {
        pp[t] = pp[t - 1] * p;
        qq[t] = qq[t - 1] * q;
    }
    Rational sum = 0;
    for (int t = 0; t <= n; ++t)
        if (layer_counts[t] != 0) sum += Rational(layer_counts[t]) * pp[t] * qq[n - t];
    return sum;
}

double MeasurePolynomial::value_at(double p) const {
    // All terms nonnegative, so plain summation is well conditioned.
    double sum = 0;
    double q = 1 - p;
    for (int t = 0; t <= n; ++t) {
        if (layer_counts[t] == 0) continue;
        sum += layer_counts[t].convert_to<double>() * std::pow(p, t) * std::pow(q, n - t);
    }
    return sum;
}

Rational MeasurePolynomial::derivative_at(const Rational& p) const {
    Rational q = 1 - p;
    std::vector<Rational> pp(n + 1), qq(n + 1);
    pp[0] = 1;
    qq[0] = 1;
    for (int t = 1; t <= n; ++t) {
        pp[t] = pp[t - 1] * p;
        qq[t] = qq[t - 1] * q;
    }
    Rational sum = 0;
    for (int t = 0; t <= n; ++t) {
        if (layer_counts[t] == 0) continue;
        Rational a(layer_counts[t]);
        if (t > 0) sum += a * t * pp[t - 1] * qq[n - t];
        if (n - t > 0) sum -= a * (n - t) * pp[t] * qq[n - t - 1];
    }
    return sum;
}

double MeasurePolynomial::derivative_at(double p) const {
    double q = 1 - p;
    double sum = 0;
    for (int t = 0; t <= n; ++t) {
        if (layer_counts[t] == 0) continue;
        double a = layer_counts[t].convert_to<double>();
        if (t > 0) sum += a * t * std::pow(p, t - 1) * std::pow(q, n - t);
        if (n - t > 0) sum -= a * (n - t) * std::pow(p, t) * std::pow(q, n - t - 1);
    }
    return sum;
}

Rational measure(const MintermFamily& fam, const Rational& p, int limit) {
    return layer_counts(fam, limit).value_at(p);
}

double measure(const MintermFamily& fam, double p, int limit) {
    return layer_counts(fam, limit).value_at(p);
}

Rational measure_derivative(const MintermFamily& fam, const Rational& p, int limit) {
    return layer_counts(fam, limit).derivative_at(p);
}

PivotalCounts pivotal_counts(const MintermFamily& fam, int limit) {
    UpsetTable table(fam, limit);
    int n = fam.n();
    PivotalCounts pc;
    pc.n = n;
    std::vector<std::vector<std::uint64_t>> raw(n, std::vector<std::uint64_t>(n + 1, 0));
    std::uint32_t size = std::uint32_t(1) << n;
    for (std::uint32_t mask = 0; mask < size; ++mask) {
        if (!table.contains(mask)) continue;
        int pop = std::popcount(mask);
        std::uint32_t rest = mask;
        while (rest) {
            int i = std::countr_zero(rest);
            rest &= rest - 1;
            if (!table.contains(mask ^ (std::uint32_t(1) << i))) ++raw[i][pop];
        }
    }
    pc.counts.resize(n);
    for (int i = 0; i < n; ++i) pc.counts[i].assign(raw[i].begin(), raw[i].end());
    return pc;
}

Rational PivotalCounts::element_rate(int i, const Rational& p) const {
    // b_i = sum over members A of size t with i pivotal of p^(t-1) (1-p)^(n-t):
    // the event ignores the coordinate i itself.
    Rational q = 1 - p;
    Rational sum = 0;
    Rational pw = 1;  // p^(t-1) built incrementally from t=1
    std::vector<Rational> qq(n + 1);
    qq[0] = 1;
    for (int t = 1; t <= n; ++t) qq[t] = qq[t - 1] * q;
    for (int t = 1; t <= n; ++t) {
        if (counts[i][t] != 0) sum += Rational(counts[i][t]) * pw * qq[n - t];
        pw *= p;
    }
    return sum;
}

InfluenceProfile pivotal_expectation(const MintermFamily& fam, const Rational& p, int limit) {
    PivotalCounts pc = pivotal_counts(fam, limit);
    InfluenceProfile prof;
    prof.p = p;
    prof.element_rates.reserve(fam.n());
    Rational total = 0;
    for (int i = 0; i < fam.n(); ++i) {
        Rational b = pc.element_rate(i, p);
        total += b;
        prof.element_rates.push_back(std::move(b));
    }
    prof.expected_pivotal = p * total;
    return prof;
}

double threshold_point(const MeasurePolynomial& poly, double x) {
    if (!(x > 0 && x < 1)) throw PreconditionError("threshold target must lie in (0,1)");
    double lo = 0, hi = 1;
    double best = 0.5, best_err = 2;
    for (int iter = 0; iter < 200; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket below double resolution
        double f = poly.value_at(mid);
        double err = std::fabs(f - x);
        if (err < best_err) {
            best = mid;
            best_err = err;
        }
        if (err <= 1e-15) break;
        if (f < x)
            lo = mid;
        else
            hi = mid;
    }
    return best;
}

double threshold_point(const MintermFamily& fam, double x, int limit) {
    require_nontrivial(fam);
    return threshold_point(layer_counts(fam, limit), x);
}

double threshold_width(const MeasurePolynomial& poly, double eps) {
    if (!(eps > 0 && eps < 0.5))
        throw PreconditionError("width parameter eps must lie in (0, 1/2)");
    double p_half = threshold_point(poly, 0.5);
    double p_eps = threshold_point(poly, eps);
    return (p_half - p_eps) / p_half;
}

double threshold_width(const MintermFamily& fam, double eps, int limit) {
    require_nontrivial(fam);
    return threshold_width(layer_counts(fam, limit), eps);
}

RatioCheck monotone_ratio_check(const MintermFamily& fam, std::span<const Rational> grid,
                                int limit) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0 && grid[i] <= 1))
            throw PreconditionError("ratio grid points must lie in (0,1]");
        if (i > 0 && !(grid[i - 1] < grid[i]))
            throw PreconditionError("ratio grid must be strictly ascending");
    }
    MeasurePolynomial poly = layer_counts(fam, limit);
    int k = fam.k();
    RatioCheck out;
    Rational prev_mu, prev_pk;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        Rational mu = poly.value_at(grid[i]);
        Rational pk = rational_pow(grid[i], k);
        if (i > 0) {
            // prev_mu/prev_pk >= mu/pk, cross-multiplied (denominators > 0)
            if (prev_mu * pk < mu * prev_pk) {
                out.nonincreasing = false;
                out.violation = {grid[i - 1], grid[i]};
                return out;
            }
        }
        prev_mu = mu;
        prev_pk = pk;
    }
    return out;
}

SampleEstimate estimate_measure(const MintermFamily& fam, double p, std::uint64_t samples,
                                std::uint64_t seed, int threads) {
    if (!(p >= 0 && p <= 1)) throw PreconditionError("sampling probability must lie in [0,1]");
    if (samples < 100) throw PreconditionError("need at least 100 samples");
    if (threads < 1) threads = 1;

    int n = fam.n();
    std::optional<UpsetTable> table;
    if (n <= default_enumeration_limit) table.emplace(fam, default_enumeration_limit);

    auto run_range = [&](std::uint64_t begin, std::uint64_t end) -> std::uint64_t {
        std::uint64_t hits = 0;
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            CounterRng rng(seed, idx);
            if (table) {
                std::uint32_t mask = 0;
                for (int j = 0; j < n; ++j)
                    if (rng.next_unit() < p) mask |= std::uint32_t(1) << j;
                if (table->contains(mask)) ++hits;
            } else {
                ElementSet::Mask mask = 0;
                for (int j = 0; j < n; ++j)
                    if (rng.next_unit() < p) mask |= ElementSet::Mask(1) << j;
                if (fam.contains(ElementSet(mask))) ++hits;
            }
        }
        return hits;
    };

    std::uint64_t hits = 0;
    if (threads == 1 || samples < 1024) {
        hits = run_range(0, samples);
    } else {
        std::vector<std::uint64_t> partial(threads, 0);
        std::vector<std::thread> workers;
        std::uint64_t chunk = samples / threads;
        for (int t = 0; t < threads; ++t) {
            std::uint64_t begin = chunk * t;
            std::uint64_t end = t + 1 == threads ? samples : begin + chunk;
            workers.emplace_back([&, t, begin, end] { partial[t] = run_range(begin, end); });
        }
        for (auto& w : workers) w.join();
        for (std::uint64_t h : partial) hits += h;  // integer sum: order-independent
    }

    SampleEstimate est;
    est.successes = hits;
    est.samples = samples;
    est.estimate = static_cast<double>(hits) / static_cast<double>(samples);
    double half = 2.5758293035489004 *
                  std::sqrt(est.estimate * (1 - est.estimate) / static_cast<double>(samples));
    est.ci_low = std::max(0.0, est.estimate - half);
    est.ci_high = std::min(1.0, est.estimate + half);
    return est;
}

}  // namespace upsets
