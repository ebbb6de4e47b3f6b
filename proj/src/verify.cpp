#include "upsets/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <json.hpp>

#include "upsets/errors.hpp"
#include "upsets/generators.hpp"
#include "upsets/lp.hpp"
#include "upsets/moments.hpp"
#include "upsets/structure.hpp"

namespace upsets {

namespace {

std::string fr(const Rational& r) { return format_rational(r); }
std::string fd(double d) { return format_double(d); }

const char* kFlagK1 = "k1-limit-constant";

std::vector<Rational> quarter_grid() { return {Rational(1, 4), Rational(1, 2), Rational(3, 4)}; }

std::vector<Rational> tenths_grid() {
    std::vector<Rational> g;
    for (int j = 1; j <= 9; ++j) g.emplace_back(j, 10);
    return g;
}

}  // namespace

std::size_t VerificationLedger::gating_failures() const {
    std::size_t c = 0;
    for (const CheckRecord& r : records)
        if (!r.pass && r.flag.empty()) ++c;
    return c;
}

std::size_t VerificationLedger::flagged_failures() const {
    std::size_t c = 0;
    for (const CheckRecord& r : records)
        if (!r.pass && !r.flag.empty()) ++c;
    return c;
}

bool VerificationLedger::has_check(const std::string& id) const {
    return std::any_of(records.begin(), records.end(),
                       [&](const CheckRecord& r) { return r.check == id; });
}

const std::vector<std::string>& required_check_ids() {
    static const std::vector<std::string> ids = {
        "russo_identity",    "ratio_monotone", "ratio_constant_single",
        "width_lower",       "width_lower_tight", "width_upper",
        "lp_duality",        "lp_sandwich",    "lp_bracket",
        "witness_chain",     "witness_pz",     "kk_threshold",
        "ratio_bounds_lower", "ratio_bounds_upper",
        "tame_floor",        "decompose_certified",
        "halving_weak",      "halving_strong",
        "mc_accuracy",       "mc_threads",
        "graph_first_moment", "graph_containment",
        "pinned_value",
    };
    return ids;
}

std::vector<std::string> VerificationLedger::missing_required() const {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const CheckRecord& r : records) seen.insert(r.check);
    for (const std::string& id : required_check_ids())
        if (!seen.count(id)) out.push_back(id);
    return out;
}

std::string VerificationLedger::to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = "verification-ledger/1";
    j["checks"] = nlohmann::ordered_json::array();
    for (const CheckRecord& r : records) {
        nlohmann::ordered_json rec;
        rec["check"] = r.check;
        rec["instance"] = r.instance;
        rec["params"] = r.params;
        rec["statement"] = r.statement;
        rec["lhs"] = r.lhs;
        rec["rhs"] = r.rhs;
        rec["margin"] = r.margin;
        rec["pass"] = r.pass;
        rec["flag"] = r.flag;
        j["checks"].push_back(std::move(rec));
    }
    j["summary"] = {
        {"records", records.size()},
        {"failures", gating_failures()},
        {"flagged_failures", flagged_failures()},
        {"pass", all_pass()},
    };
    return j.dump(2) + "\n";
}

namespace {

// --- per-family check blocks -------------------------------------------

void check_derivative_identity(VerificationLedger& led, const std::string& name,
                               const MintermFamily& fam, const MeasurePolynomial& poly,
                               const SuiteOptions& opts) {
    for (const Rational& p : quarter_grid()) {
        const Rational lhs = p * poly.derivative_at(p);
        const InfluenceProfile prof = pivotal_expectation(fam, p, opts.limit);
        led.add({"russo_identity", name, "p=" + fr(p),
                 "p * dmu/dp equals the expected pivotal count, exactly", fr(lhs),
                 fr(prof.expected_pivotal), fr(lhs - prof.expected_pivotal),
                 lhs == prof.expected_pivotal, ""});

        const Rational mu = poly.value_at(p);
        const Rational cap = Rational(fam.k()) * mu;
        led.add({"pivotal_upper", name, "p=" + fr(p),
                 "expected pivotal count is at most k times the measure",
                 fr(prof.expected_pivotal), fr(cap), fr(cap - prof.expected_pivotal),
                 prof.expected_pivotal <= cap, ""});
    }

    bool density_ok = true;
    std::string where;
    for (int t = 0; t < poly.n && density_ok; ++t) {
        if (poly.layer_counts[t] * binomial(poly.n, t + 1) >
            poly.layer_counts[t + 1] * binomial(poly.n, t)) {
            density_ok = false;
            where = "t=" + std::to_string(t);
        }
    }
    led.add({"layer_density", name, where, "upset layer densities a_t/C(n,t) never decrease",
             "", "", "", density_ok, ""});
}

void check_ratio_and_width(VerificationLedger& led, const std::string& name,
                           const MintermFamily& fam, const MeasurePolynomial& poly,
                           const SuiteOptions& opts) {
    const int k = fam.k();
    std::vector<Rational> grid;
    for (int j = 1; j <= 17; ++j) grid.emplace_back(j, 18);

    const RatioCheck rc = monotone_ratio_check(fam, grid, opts.limit);
    led.add({"ratio_monotone", name, "17-point grid j/18",
             "mu_p / p^k never increases along the grid",
             rc.violation ? fr(rc.violation->first) : "", rc.violation ? fr(rc.violation->second) : "",
             "", rc.nonincreasing, ""});

    if (fam.minterm_count() == 1) {
        const Rational r0 = poly.value_at(grid.front()) / rational_pow(grid.front(), k);
        bool constant = true;
        for (const Rational& p : grid)
            constant = constant && poly.value_at(p) == rational_pow(p, k) * r0;
        led.add({"ratio_constant_single", name, "17-point grid j/18",
                 "one-minterm families keep mu_p / p^k exactly constant", fr(r0), fr(r0), "0",
                 constant, ""});
    }

    if (fam.is_trivial()) return;
    for (const double eps : {0.01, 0.05, 0.1}) {
        const double delta = threshold_width(poly, eps);
        const double lower = 1 - std::pow(2 * eps, 1.0 / k);
        led.add({"width_lower", name, "eps=" + fd(eps),
                 "threshold width is at least 1-(2 eps)^(1/k)", fd(delta), fd(lower),
                 fd(delta - lower), delta >= lower - 1e-9, ""});
        if (fam.minterm_count() == 1) {
            led.add({"width_lower_tight", name, "eps=" + fd(eps),
                     "one-minterm families meet the width lower bound exactly", fd(delta),
                     fd(lower), fd(std::abs(delta - lower)), std::abs(delta - lower) <= 1e-9, ""});
        }
        const WidthUpperCheck wu = width_upper_check(fam, eps, opts.limit);
        led.add({"width_upper", name, "eps=" + fd(eps),
                 "threshold width is at most 1 - 2 eps (k-1)^(k-1)/k^k", fd(wu.delta),
                 fd(wu.bound), fd(wu.bound - wu.delta), wu.holds,
                 wu.limit_convention ? kFlagK1 : ""});
    }

    for (const auto& [a, b] : {std::pair{0.5, 0.1}, std::pair{0.5, 0.25}}) {
        const ThresholdRatioBounds rb = threshold_ratio_bounds(fam, a, b, opts.limit);
        const std::string params = "a=" + fd(a) + ",b=" + fd(b);
        led.add({"ratio_bounds_lower", name, params,
                 "threshold-point ratio p_a/p_b is at least (a/b)^(1/k)-1", fd(rb.ratio),
                 fd(rb.lower), fd(rb.ratio - rb.lower), rb.lower_holds, ""});
        led.add({"ratio_bounds_upper", name, params,
                 "threshold-point ratio p_a/p_b is at most k^k/(k-1)^(k-1) * a/b", fd(rb.ratio),
                 fd(rb.upper), fd(rb.upper - rb.ratio), rb.upper_holds,
                 rb.limit_convention ? kFlagK1 : ""});
    }
}

void check_lp_family(VerificationLedger& led, const std::string& name, const MintermFamily& fam,
                     const MeasurePolynomial& poly, const SuiteOptions& opts) {
    if (fam.is_empty_family()) return;
    const int k = fam.k();

    std::map<Rational, FractionalExpectation> cache;
    auto lp = [&](const Rational& q) -> const FractionalExpectation& {
        auto it = cache.find(q);
        if (it == cache.end()) it = cache.emplace(q, fractional_expectation(fam, q)).first;
        return it->second;
    };
    try {
        lp(Rational(1, 2));
    } catch (const CapacityError&) {
        return;  // support too large for exact LP; nothing asserted
    }

    for (const Rational& q : quarter_grid()) {
        const FractionalExpectation& fe = lp(q);
        Rational primal = 0;
        for (const auto& [set, w] : fe.primal.weights) primal += w * rational_pow(q, set.size());
        Rational dual = 0;
        for (const auto& [set, w] : fe.dual.weights) dual += w;
        led.add({"lp_duality", name, "q=" + fr(q),
                 "cover and packing optima coincide, certificates re-verified", fr(primal),
                 fr(dual), fr(primal - dual), primal == dual && primal == fe.value, ""});

        const Rational mu = poly.value_at(q);
        Rational expect = first_moment(fam, q);
        if (expect > 1) expect = 1;
        const Rational low_slack = fe.value - mu;
        const Rational high_slack = expect - fe.value;
        led.add({"lp_sandwich", name, "q=" + fr(q),
                 "mu_q <= fractional expectation <= min(1, E_q[X])", fr(mu), fr(expect),
                 fr(low_slack < high_slack ? low_slack : high_slack),
                 mu <= fe.value && fe.value <= expect, ""});
    }

    std::vector<Rational> alphas = {Rational(1, 2), Rational(1), Rational(2)};
    if (k >= 2 && std::find(alphas.begin(), alphas.end(), Rational(1, k - 1)) == alphas.end())
        alphas.push_back(Rational(1, k - 1));
    for (const Rational& p : quarter_grid()) {
        for (const Rational& alpha : alphas) {
            if (alpha * p > 1) continue;
            const Rational lower = lp(alpha * p).value / rational_pow(1 + alpha, k);
            const Rational upper = lp(p).value;
            const Rational mu = poly.value_at(p);
            led.add({"lp_bracket", name, "p=" + fr(p) + ",alpha=" + fr(alpha),
                     "scaled fractional expectations bracket the measure", fr(lower), fr(upper),
                     fr(mu - lower), lower <= mu && mu <= upper, ""});
        }
    }

    for (const Rational& p : quarter_grid()) {
        const Rational qs[2] = {p, Rational(p / 2)};
        for (const Rational& q : qs) {
            const WitnessMoments wm = weighted_witness_moments(fam, p, lp(q));
            const std::string params = "p=" + fr(p) + ",q=" + fr(q);
            led.add({"witness_chain", name, params,
                     "witness mean equals the packing optimum and its second moment obeys the "
                     "(1+alpha)^k bound",
                     fr(wm.second), fr(wm.bound), fr(wm.bound - wm.second),
                     wm.chain_holds && wm.mean == lp(q).value, ""});
            const Rational mu = poly.value_at(p);
            const Rational pz = wm.mean * wm.mean / wm.second;
            led.add({"witness_pz", name, params,
                     "witness second-moment ratio lower-bounds the measure", fr(pz), fr(mu),
                     fr(mu - pz), pz <= mu, ""});
        }
    }

    if (!fam.is_trivial()) {
        const ExpectationThresholdCheck etc = expectation_threshold_check(fam, opts.limit);
        led.add({"kk_threshold", name, "q1=" + fd(etc.q1) + (etc.clamped ? " (clamped)" : ""),
                 "measure at min(k q1, 1) exceeds 1/e", fd(etc.mu), fd(std::exp(-1.0)),
                 fd(etc.mu - std::exp(-1.0)), etc.applicable && etc.holds, ""});
    }
}

void check_structure_family(VerificationLedger& led, const std::string& name,
                            const MintermFamily& fam, const MeasurePolynomial& poly,
                            const SuiteOptions& opts) {
    const int k = fam.k();

    for (const Rational& p : tenths_grid()) {
        if (fam.is_trivial()) break;
        const TamenessReport rep = is_tame(fam, p);
        if (!rep.tame) continue;
        const Rational floor = tame_lower_bound(fam, p);
        const Rational mu = poly.value_at(p);
        led.add({"tame_floor", name, "p=" + fr(p),
                 "tame family measure is at least min(E[X],1)/(k 2^k)", fr(mu), fr(floor),
                 fr(mu - floor), mu >= floor, ""});

        const MomentReport mom = second_moment(fam, p);
        const Rational cap =
            (Rational(k - 1) * rational_pow(Rational(2), k) + 1) * mom.first +
            mom.first * mom.first;
        led.add({"tame_second_moment", name, "p=" + fr(p),
                 "tame family second moment is at most ((k-1)2^k+1)E[X] + E[X]^2", fr(mom.second),
                 fr(cap), fr(cap - mom.second), mom.second <= cap, ""});
    }

    for (const Rational& p : quarter_grid()) {
        const Decomposition d = decompose(fam, p, opts.limit);
        bool certified;
        std::string case_tag;
        if (d.kind == Decomposition::Kind::tame_subfamily) {
            case_tag = "tame-subfamily";
            certified = 2 * d.subfamily_measure >= d.family_measure &&
                        is_tame(d.chain.back(), p / 2).tame;
        } else {
            case_tag = "tame-approximation";
            const Rational need = d.family_measure / rational_pow(Rational(2), d.m + 1);
            const ApproximationCheck ac =
                verify_tame_approximation(fam, d.approximation, d.m, p / 2, d.witness_family);
            certified = d.approximation_measure >= need && ac.pass;
        }
        led.add({"decompose_certified", name, "p=" + fr(p) + " case=" + case_tag,
                 "splitting iteration lands in a re-verified case of the dichotomy", "", "", "",
                 certified, ""});

        if (is_tame(fam, p / 2).tame && !fam.is_trivial()) {
            const Rational mu = poly.value_at(p);
            const Rational mu_half = poly.value_at(p / 2);
            const Rational floor = mu / (Rational(k) * rational_pow(Rational(2), 2 * k));
            led.add({"transfer_halved", name, "p=" + fr(p),
                     "tame at p/2 keeps mu_{p/2} at least mu_p/(k 2^(2k))", fr(mu_half), fr(floor),
                     fr(mu_half - floor), mu_half >= floor, ""});
        }
        if (d.kind == Decomposition::Kind::tame_approximation) {
            const Rational floor =
                d.approximation_measure / (Rational(d.m) * rational_pow(Rational(2), d.m));
            led.add({"transfer_approx", name, "p=" + fr(p) + ",m=" + std::to_string(d.m),
                     "approximating family transfers measure: mu_p >= mu_p(B)/(m 2^m)",
                     fr(d.family_measure), fr(floor), fr(d.family_measure - floor),
                     d.family_measure >= floor, ""});
        }
    }

    for (const Rational& p : tenths_grid()) {
        const HalvingCheck hc = halving_check(fam, p, opts.limit);
        led.add({"halving_weak", name, "p=" + fr(p),
                 "mu_{p/2} is at least mu_p/(k 2^(3k-1))", fr(hc.mu_half), fr(hc.weak_floor),
                 fr(hc.mu_half - hc.weak_floor), hc.weak_holds, ""});
        led.add({"halving_strong", name, "p=" + fr(p), "mu_{p/2} is at least mu_p/2^k",
                 fr(hc.mu_half), fr(hc.strong_floor), fr(hc.mu_half - hc.strong_floor),
                 hc.strong_holds, ""});
    }
}

void check_sampling_family(VerificationLedger& led, const std::string& name,
                           const MintermFamily& fam, const MeasurePolynomial& poly,
                           const SuiteOptions& opts) {
    if (fam.n() > 15 || opts.mc_samples < 100) return;
    const double p = 0.3;
    const SampleEstimate one = estimate_measure(fam, p, opts.mc_samples, opts.mc_seed, 1);
    const SampleEstimate many =
        estimate_measure(fam, p, opts.mc_samples, opts.mc_seed, std::max(2, opts.threads));
    led.add({"mc_threads", name, "threads=1 vs " + std::to_string(std::max(2, opts.threads)),
             "sampled estimate is byte-identical across thread counts",
             std::to_string(one.successes), std::to_string(many.successes), "0",
             one.successes == many.successes && one.estimate == many.estimate, ""});

    const double mu = to_double(poly.value_at(Rational(3, 10)));
    const double tol = 4 * std::sqrt(mu * (1 - mu) / static_cast<double>(opts.mc_samples));
    const double err = std::abs(one.estimate - mu);
    led.add({"mc_accuracy", name, "p=0.3,samples=" + std::to_string(opts.mc_samples),
             "sampled estimate is within 4 sigma of the exact measure", fd(one.estimate), fd(mu),
             fd(tol - err), err <= tol, ""});
}

}  // namespace

void run_family_checks(VerificationLedger& led, const std::string& name,
                       const MintermFamily& fam, const SuiteOptions& opts) {
    const MeasurePolynomial poly = layer_counts(fam, opts.limit);
    check_derivative_identity(led, name, fam, poly, opts);
    check_ratio_and_width(led, name, fam, poly, opts);
    check_lp_family(led, name, fam, poly, opts);
    check_structure_family(led, name, fam, poly, opts);
    check_sampling_family(led, name, fam, poly, opts);
}

namespace {

MintermFamily chain3() {
    return MintermFamily::from_sets(
        3, {ElementSet::from_indices({0, 1}, 3), ElementSet::from_indices({1, 2}, 3)});
}

void pin(VerificationLedger& led, const std::string& instance, const std::string& params,
         const std::string& statement, const std::string& lhs, const std::string& rhs,
         bool pass) {
    led.add({"pinned_value", instance, params, statement, lhs, rhs, "", pass, ""});
}

void add_pinned_checks(VerificationLedger& led, const SuiteOptions& opts) {
    // -- chain3: two overlapping pairs on three elements, every value by hand
    {
        const MintermFamily f = chain3();
        const MeasurePolynomial poly = layer_counts(f, opts.limit);
        const std::vector<Int> expect_layers = {0, 0, 2, 1};
        pin(led, "chain3", "layers", "layer counts are (0,0,2,1)", "", "",
            poly.layer_counts == expect_layers);
        pin(led, "chain3", "p=1/2", "measure is 3/8", fr(poly.value_at(Rational(1, 2))), "3/8",
            poly.value_at(Rational(1, 2)) == Rational(3, 8));

        const InfluenceProfile prof = pivotal_expectation(f, Rational(1, 2), opts.limit);
        const std::vector<Rational> expect_rates = {Rational(1, 4), Rational(3, 4), Rational(1, 4)};
        pin(led, "chain3", "p=1/2", "pivotal rates are (1/4,3/4,1/4) with expectation 5/8",
            fr(prof.expected_pivotal), "5/8",
            prof.element_rates == expect_rates && prof.expected_pivotal == Rational(5, 8));
        pin(led, "chain3", "p=1/2", "measure derivative is 5/4",
            fr(measure_derivative(f, Rational(1, 2), opts.limit)), "5/4",
            measure_derivative(f, Rational(1, 2), opts.limit) == Rational(5, 4));

        const double ph = threshold_point(poly, 0.5);
        const double pl = threshold_point(poly, 0.1);
        pin(led, "chain3", "x=1/2", "half-measure point is near 0.596968", fd(ph), "0.596968",
            std::abs(ph - 0.596968) <= 1e-4 && std::abs(poly.value_at(ph) - 0.5) <= 1e-12);
        pin(led, "chain3", "x=0.1", "low threshold point is near 0.238245", fd(pl), "0.238245",
            std::abs(pl - 0.238245) <= 1e-4);
        const double delta = threshold_width(poly, 0.1);
        pin(led, "chain3", "eps=0.1", "threshold width is near 0.600908", fd(delta), "0.600908",
            std::abs(delta - 0.600908) <= 1e-4);

        const MomentReport mom = second_moment(f, Rational(1, 2));
        pin(led, "chain3", "p=1/2", "moments: first 1/2, second 3/4 = 1/2 + 1/4 + 0",
            fr(mom.second), "3/4",
            mom.first == Rational(1, 2) && mom.second == Rational(3, 4) &&
                mom.diagonal == Rational(1, 2) && mom.overlapping == Rational(1, 4) &&
                mom.disjoint == 0);
        pin(led, "chain3", "p=1/2", "second-moment lower bound 1/3 stays below measure 3/8",
            fr(paley_zygmund_bound(f, Rational(1, 2))), "1/3",
            paley_zygmund_bound(f, Rational(1, 2)) == Rational(1, 3));
        pin(led, "chain3", "p=1/4", "second-moment lower bound 1/10 stays below measure 7/64",
            fr(paley_zygmund_bound(f, Rational(1, 4))), "1/10",
            paley_zygmund_bound(f, Rational(1, 4)) == Rational(1, 10) &&
                poly.value_at(Rational(1, 4)) == Rational(7, 64));

        const FractionalExpectation fe = fractional_expectation(f, Rational(1, 4));
        pin(led, "chain3", "q=1/4", "fractional expectation is 1/8 with zero gap", fr(fe.value),
            "1/8", fe.value == Rational(1, 8) && fe.dual.value == Rational(1, 8));
        const double qx = expectation_threshold_inverse(f, 0.125);
        pin(led, "chain3", "x=1/8", "fractional-expectation inverse is 1/4", fd(qx), "0.25",
            std::abs(qx - 0.25) <= 1e-9);

        const WitnessMoments wm = weighted_witness_moments(f, Rational(1, 4), Rational(1, 4));
        pin(led, "chain3", "p=q=1/4", "witness moments are (1/8, 5/32) with chain bound 1/2",
            fr(wm.second), "5/32",
            wm.mean == Rational(1, 8) && wm.second == Rational(5, 32) &&
                wm.bound == Rational(1, 2) && wm.chain_holds);

        const ExpectationThresholdCheck etc = expectation_threshold_check(f, opts.limit);
        pin(led, "chain3", "", "unit expectation threshold clamps to measure 1", fd(etc.mu), "1",
            etc.applicable && etc.clamped && std::abs(etc.q1 - 1) <= 1e-9 &&
                etc.mu >= 1 - 1e-12 && etc.holds);

        const TamenessReport t4 = is_tame(f, Rational(1, 4));
        const TamenessReport t2 = is_tame(f, Rational(1, 2));
        pin(led, "chain3", "p=1/4 and p=1/2",
            "tame at 1/4 with floor 1/64; not tame at 1/2 with witness ({1},1,2)", "", "",
            t4.tame && tame_lower_bound(f, Rational(1, 4)) == Rational(1, 64) && !t2.tame &&
                t2.witness->v == ElementSet::from_indices({1}, 3) && t2.witness->m == 1 &&
                t2.witness->count == 2);

        const ApproximationCheck bad = verify_tame_approximation(
            f, MintermFamily::from_sets(3, {ElementSet::from_indices({1}, 3)}), 1, Rational(2, 5),
            f);
        pin(led, "chain3", "m=1,p=2/5", "sparse candidate fails the approximation check", "", "",
            !bad.pass && bad.violations.size() == 1);

        const Decomposition d = decompose(f, Rational(1, 4), opts.limit);
        pin(led, "chain3", "p=1/4", "splitting keeps the whole family (subfamily case)", "", "",
            d.kind == Decomposition::Kind::tame_subfamily &&
                d.chain.back().minterm_count() == f.minterm_count());

        const HalvingCheck hc = halving_check(f, Rational(1, 2), opts.limit);
        pin(led, "chain3", "p=1/2", "halving: 7/64 >= 3/512", fr(hc.mu_half), fr(hc.weak_floor),
            hc.mu_half == Rational(7, 64) && hc.weak_floor == Rational(3, 512) && hc.weak_holds);

        const TameTransferCheck tt = tame_transfer_check(f, Rational(1, 2), opts.limit);
        pin(led, "chain3", "p=1/2", "tame-at-half transfer: 7/64 >= 3/256", fr(tt.halved.mu_half),
            fr(tt.halved.floor),
            tt.halved.applicable && tt.halved.floor == Rational(3, 256) && tt.halved.holds);

        const ThresholdRatioBounds rb = threshold_ratio_bounds(f, 0.5, 0.1, opts.limit);
        pin(led, "chain3", "a=1/2,b=0.1",
            "threshold ratio near 2.5057 sits between sqrt(5)-1 and 20", fd(rb.ratio), "2.505686",
            std::abs(rb.ratio - 2.505686) <= 1e-3 &&
                std::abs(rb.lower - (std::sqrt(5.0) - 1)) <= 1e-9 &&
                std::abs(rb.upper - 20.0) <= 1e-9 && rb.lower_holds && rb.upper_holds);
    }

    // -- star(9): the decomposition walk-through
    {
        const MintermFamily s9 = gen_star(9);
        const MeasurePolynomial poly = layer_counts(s9, opts.limit);
        pin(led, "star(9)", "p=1/2", "measure is 255/512", fr(poly.value_at(Rational(1, 2))),
            "255/512", poly.value_at(Rational(1, 2)) == Rational(255, 512));
        pin(led, "star(9)", "layers", "eight two-element sets in the upset",
            poly.layer_counts[2].str(), "8", poly.layer_counts[2] == 8);

        const Decomposition d = decompose(s9, Rational(1, 2), opts.limit);
        const bool case2 = d.kind == Decomposition::Kind::tame_approximation;
        const bool selector_ok =
            case2 && d.m == 1 && d.approximation.minterm_count() == 1 &&
            d.approximation.minterms()[0] == ElementSet::from_indices({0}, 9);
        pin(led, "star(9)", "p=1/2",
            "splitting returns the approximation case with m=1 and selector {{0}}", "", "",
            selector_ok);
        pin(led, "star(9)", "p=1/2", "approximating family holds half the space",
            fr(d.approximation_measure), "1/2",
            case2 && d.approximation_measure == Rational(1, 2) &&
                4 * d.approximation_measure >= d.family_measure);

        const TameTransferCheck tt = tame_transfer_check(s9, Rational(1, 2), opts.limit);
        pin(led, "star(9)", "p=1/2", "approximation transfer: 255/512 >= 1/4", fr(tt.approx.mu),
            fr(tt.approx.floor),
            tt.approx.applicable && tt.approx.m == 1 && tt.approx.floor == Rational(1, 4) &&
                tt.approx.holds);
    }

    // -- twenty/ten/five singletons: closed forms for the cover program
    {
        const MintermFamily sing10 = gen_all_k_subsets(10, 1);
        const MeasurePolynomial poly = layer_counts(sing10, opts.limit);
        const Rational frozen(Int("4108933742199"), Int("10240000000000"));
        pin(led, "allk(10,1)", "p=1/20", "measure equals 1-(19/20)^10 exactly",
            fr(poly.value_at(Rational(1, 20))), fr(frozen),
            poly.value_at(Rational(1, 20)) == frozen);

        bool closed = true;
        for (const Rational& q :
             {Rational(1, 20), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)}) {
            Rational expect = 10 * q;
            if (expect > 1) expect = 1;
            closed = closed && fractional_expectation(sing10, q).value == expect;
        }
        pin(led, "allk(10,1)", "q grid", "fractional expectation is min(10q, 1)", "", "", closed);

        const DualWeighting dual = dual_value(sing10, Rational(1, 20));
        bool uniform = dual.value == Rational(1, 2) && dual.weights.size() == 10;
        for (const auto& [set, w] : dual.weights) uniform = uniform && w == Rational(1, 20);
        pin(led, "allk(10,1)", "q=1/20", "packing certificate is uniform 1/20 with value 1/2",
            fr(dual.value), "1/2", uniform);

        const ExpectationThresholdCheck etc = expectation_threshold_check(sing10, opts.limit);
        pin(led, "allk(10,1)", "", "unit expectation threshold is 1/10", fd(etc.q1), "0.1",
            etc.applicable && std::abs(etc.q1 - 0.1) <= 1e-9);
        pin(led, "allk(10,1)", "", "measure at the unit threshold is 0.6513215599", fd(etc.mu),
            "0.6513215599", etc.applicable && std::abs(etc.mu - 0.6513215599) <= 1e-9 && etc.holds);

        const ThresholdRatioBounds rb = threshold_ratio_bounds(sing10, 0.5, 0.25, opts.limit);
        pin(led, "allk(10,1)", "a=1/2,b=1/4",
            "ratio near 2.3615 exceeds the k=1 limit constant bound of 2 (flagged convention)",
            fd(rb.ratio), fd(rb.upper),
            rb.limit_convention && rb.lower_holds && std::abs(rb.ratio - 2.361476) <= 2e-3 &&
                rb.ratio > rb.upper && !rb.upper_holds);
    }

    pin(led, "allk(4,2)", "p=1/2", "measure is 11/16",
        fr(measure(gen_all_k_subsets(4, 2), Rational(1, 2), opts.limit)), "11/16",
        measure(gen_all_k_subsets(4, 2), Rational(1, 2), opts.limit) == Rational(11, 16));

    pin(led, "single(5,3)", "p=1/2", "measure is p^3 = 1/8",
        fr(measure(gen_single(5, 3), Rational(1, 2), opts.limit)), "1/8",
        measure(gen_single(5, 3), Rational(1, 2), opts.limit) == Rational(1, 8));
}

void add_graph_checks(VerificationLedger& led) {
    for (int m = 4; m <= 8; ++m) {
        const MintermFamily tri = gen_graph({m, GraphSpec::Pattern::triangle, 0, {}});
        led.add({"graph_copy_count", "tri@K" + std::to_string(m), "",
                 "triangle copies number C(m,3)", std::to_string(tri.minterm_count()),
                 binomial(m, 3).str(), "", Int(tri.minterm_count()) == binomial(m, 3), ""});
        const MintermFamily k4 = gen_graph({m, GraphSpec::Pattern::k4, 0, {}});
        led.add({"graph_copy_count", "k4@K" + std::to_string(m), "", "K4 copies number C(m,4)",
                 std::to_string(k4.minterm_count()), binomial(m, 4).str(), "",
                 Int(k4.minterm_count()) == binomial(m, 4), ""});
    }

    for (int m = 6; m <= 12; ++m) {
        const MintermFamily k4 = gen_graph({m, GraphSpec::Pattern::k4, 0, {}});
        bool sizes_ok = true;
        for (const ElementSet& mt : k4.minterms()) sizes_ok = sizes_ok && mt.size() == 6;
        // At p = m^(-2/3) each 6-edge copy appears with probability exactly m^-4.
        const Rational expect(binomial(m, 4), int_pow(Int(m), 4));
        const double numeric = first_moment(k4, std::pow(static_cast<double>(m), -2.0 / 3.0));
        const bool in_window = Rational(1, 1000) <= expect && expect <= Rational(1, 24);
        led.add({"graph_first_moment", "k4@K" + std::to_string(m), "p=m^(-2/3)",
                 "expected K4-copy count C(m,4)/m^4 stays within [1/1000, 1/24]", fr(expect),
                 "[1/1000, 1/24]", "",
                 sizes_ok && Int(k4.minterm_count()) == binomial(m, 4) && in_window &&
                     std::abs(numeric - to_double(expect)) <= 1e-9, ""});
    }

    const MintermFamily k4k6 = gen_graph({6, GraphSpec::Pattern::k4, 0, {}});
    const MintermFamily tail = gen_graph({6, GraphSpec::Pattern::k4_tail, 0, {}});
    bool tail_above = tail.minterm_count() == 120;
    for (const ElementSet& mt : tail.minterms()) tail_above = tail_above && k4k6.contains(mt);
    led.add({"graph_containment", "k4tail@K6", "",
             "every tailed copy contains a plain K4 copy (upset containment)",
             std::to_string(tail.minterm_count()), "120", "", tail_above, ""});
    bool covered = true;
    for (const ElementSet& a : k4k6.minterms()) {
        bool below = false;
        for (const ElementSet& b : tail.minterms()) below = below || a.subset_of(b);
        covered = covered && below;
    }
    led.add({"graph_containment", "k4@K6", "",
             "every K4 copy lies below some tailed copy", std::to_string(k4k6.minterm_count()),
             "15", "", covered, ""});
}

}  // namespace

std::vector<SuiteInstance> builtin_suite_instances() {
    std::vector<SuiteInstance> out;
    auto add = [&](std::string name, MintermFamily fam) {
        out.push_back({std::move(name), std::move(fam)});
    };

    const std::pair<int, int> singles[] = {{1, 1}, {2, 1},  {3, 2},  {4, 2},  {5, 3},
                                           {6, 3}, {8, 4}, {10, 5}, {12, 6}, {12, 1}};
    for (auto [n, k] : singles)
        add("single(" + std::to_string(n) + "," + std::to_string(k) + ")", gen_single(n, k));

    for (int n = 3; n <= 12; ++n) add("star(" + std::to_string(n) + ")", gen_star(n));

    for (int n : {2, 5, 10, 12})
        add("allk(" + std::to_string(n) + ",1)", gen_all_k_subsets(n, 1));

    const std::pair<int, int> blocks[] = {{4, 2}, {5, 2}, {5, 3}, {6, 2},
                                          {6, 3}, {6, 4}, {7, 3}, {8, 2}};
    for (auto [n, k] : blocks)
        add("allk(" + std::to_string(n) + "," + std::to_string(k) + ")", gen_all_k_subsets(n, k));

    add("chain3", chain3());

    add("tri@K4", gen_graph({4, GraphSpec::Pattern::triangle, 0, {}}));
    add("tri@K5", gen_graph({5, GraphSpec::Pattern::triangle, 0, {}}));
    add("path2@K4", gen_graph({4, GraphSpec::Pattern::path, 2, {}}));
    add("path3@K4", gen_graph({4, GraphSpec::Pattern::path, 3, {}}));
    add("path2@K5", gen_graph({5, GraphSpec::Pattern::path, 2, {}}));
    add("k4@K4", gen_graph({4, GraphSpec::Pattern::k4, 0, {}}));
    add("k4@K5", gen_graph({5, GraphSpec::Pattern::k4, 0, {}}));
    add("c4@K5", gen_graph({5, GraphSpec::Pattern::custom, 0, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}}));

    struct RandomSpec {
        int n, k, count;
        std::uint64_t seed;
    };
    const RandomSpec randoms[] = {{6, 2, 4, 1},  {8, 3, 5, 2},  {10, 4, 6, 3}, {12, 4, 8, 4},
                                  {12, 3, 10, 5}, {10, 2, 5, 6}, {9, 3, 7, 7},  {11, 5, 6, 8},
                                  {7, 2, 6, 9},  {12, 6, 5, 10}};
    for (const RandomSpec& r : randoms) {
        add("random(" + std::to_string(r.n) + "," + std::to_string(r.k) + "," +
                std::to_string(r.count) + ",s" + std::to_string(r.seed) + ")",
            gen_random(r.n, r.k, r.count, r.seed));
    }

    add("allk(20,1)", gen_all_k_subsets(20, 1));
    add("tri@K6", gen_graph({6, GraphSpec::Pattern::triangle, 0, {}}));
    add("k4@K6", gen_graph({6, GraphSpec::Pattern::k4, 0, {}}));
    return out;
}

VerificationLedger run_builtin_suite(const SuiteOptions& opts) {
    VerificationLedger led;
    for (const SuiteInstance& inst : builtin_suite_instances())
        run_family_checks(led, inst.name, inst.family, opts);
    add_pinned_checks(led, opts);
    add_graph_checks(led);
    for (const std::string& id : led.missing_required())
        led.add({"suite_coverage", "builtin", id, "required check id never ran", "", "", "",
                 false, ""});
    return led;
}

}  // namespace upsets
