#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "upsets/errors.hpp"
#include "upsets/generators.hpp"
#include "upsets/lp.hpp"
#include "upsets/measure.hpp"
#include "upsets/moments.hpp"

using namespace upsets;

namespace {

MintermFamily chain3() {
    return MintermFamily::from_sets(
        3, {ElementSet::from_indices({0, 1}, 3), ElementSet::from_indices({1, 2}, 3)});
}

Rational min_q_2q2(const Rational& q) { return std::min(q, Rational(2) * q * q); }

const std::vector<Rational> qgrid = {Rational(1, 10), Rational(1, 4), Rational(1, 2),
                                     Rational(3, 4), Rational(1)};

}  // namespace

TEST_CASE("closed forms of the fractional expectation") {
    for (const Rational& q : qgrid) {
        // one minterm of size k: only that minterm needs covering
        CHECK(fractional_expectation(gen_single(5, 3), q).value == q * q * q);
        // two overlapping pairs: weight on the shared point vs one unit each
        CHECK(fractional_expectation(chain3(), q).value == min_q_2q2(q));
        // all singletons: unit weight everywhere vs weight on the empty set
        CHECK(fractional_expectation(gen_all_k_subsets(6, 1), q).value ==
              std::min(Rational(1), Rational(6) * q));
    }
    // nonempty family at q = 1: every feasible weighting costs exactly its cover
    CHECK(fractional_expectation(gen_star(5), Rational(1)).value == 1);
    CHECK(fractional_expectation(gen_all_k_subsets(4, 2), Rational(1)).value == 1);
}

TEST_CASE("strong duality and certificate verification across a zoo") {
    const std::vector<MintermFamily> zoo = {
        chain3(),         gen_star(5),
        gen_single(4, 2), gen_all_k_subsets(5, 2),
        gen_all_k_subsets(5, 3), gen_random(8, 3, 5, 42),
    };
    const std::vector<Rational> qs = {Rational(1, 10), Rational(1, 2), Rational(1)};
    for (const MintermFamily& fam : zoo) {
        for (const Rational& q : qs) {
            const FractionalExpectation fe = fractional_expectation(fam, q);
            CHECK(!certificate_error(fam, fe).has_value());
            CHECK(fe.q == q);

            // recompute both objectives from the raw certificates
            Rational primal = 0;
            for (const auto& [set, w] : fe.primal.weights) {
                CHECK(w >= 0);
                Rational term = 1;
                for (int i = 0; i < set.size(); ++i) term *= q;
                primal += w * term;
            }
            CHECK(primal == fe.value);
            CHECK(fe.primal.objective == fe.value);

            Rational dual = 0;
            for (const auto& [set, w] : fe.dual.weights) {
                CHECK(w >= 0);
                dual += w;
            }
            CHECK(dual == fe.value);
            CHECK(fe.dual.value == fe.value);

            // primal feasibility, checked directly against each minterm
            for (const ElementSet& m : fam.minterms()) {
                Rational covered = 0;
                for (const auto& [set, w] : fe.primal.weights)
                    if (set.subset_of(m)) covered += w;
                CHECK(covered >= 1);
            }

            // the standalone dual solver agrees
            CHECK(dual_value(fam, q).value == fe.value);
        }
    }
}

TEST_CASE("unique optimal certificates of the two-pair family") {
    const FractionalExpectation fe = fractional_expectation(chain3(), Rational(1, 4));
    CHECK(fe.value == Rational(1, 8));
    REQUIRE(fe.dual.weights.size() == 2);
    CHECK(fe.dual.weights[0].second == Rational(1, 16));
    CHECK(fe.dual.weights[1].second == Rational(1, 16));
    // the cheap cover puts unit weight on each minterm
    Rational total = 0;
    for (const auto& [set, w] : fe.primal.weights) {
        CHECK(set.size() == 2);
        total += w;
    }
    CHECK(total == 2);
}

TEST_CASE("tampered certificates are rejected by the independent checker") {
    const MintermFamily fam = chain3();
    const FractionalExpectation fe = fractional_expectation(fam, Rational(1, 4));
    REQUIRE(!certificate_error(fam, fe).has_value());

    FractionalExpectation wrong_value = fe;
    wrong_value.value += 1;
    CHECK(certificate_error(fam, wrong_value).has_value());

    FractionalExpectation starved = fe;
    REQUIRE(!starved.primal.weights.empty());
    starved.primal.weights[0].second = 0;
    CHECK(certificate_error(fam, starved).has_value());

    FractionalExpectation negative = fe;
    negative.primal.weights[0].second = Rational(-1);
    CHECK(certificate_error(fam, negative).has_value());

    FractionalExpectation greedy_dual = fe;
    REQUIRE(!greedy_dual.dual.weights.empty());
    greedy_dual.dual.weights[0].second += 1;
    CHECK(certificate_error(fam, greedy_dual).has_value());
}

TEST_CASE("value is sandwiched between the measure and the first moment") {
    const std::vector<MintermFamily> zoo = {
        chain3(), gen_star(6), gen_all_k_subsets(6, 3), gen_random(7, 2, 6, 7),
    };
    for (const MintermFamily& fam : zoo) {
        for (const Rational& q : qgrid) {
            const Rational value = fractional_expectation(fam, q).value;
            CHECK(measure(fam, q) <= value);
            CHECK(value <= std::min(Rational(1), first_moment(fam, q)));
        }
    }
}

TEST_CASE("value is nondecreasing in q") {
    const std::vector<MintermFamily> zoo = {chain3(), gen_single(4, 2), gen_star(5),
                                            gen_all_k_subsets(10, 1)};
    for (const MintermFamily& fam : zoo) {
        Rational prev = 0;
        for (int j = 1; j <= 8; ++j) {
            const Rational value = fractional_expectation(fam, Rational(j, 8)).value;
            CHECK(value >= prev);
            prev = value;
        }
    }
}

TEST_CASE("inverse of the fractional expectation") {
    CHECK(expectation_threshold_inverse(chain3(), 0.125) == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(expectation_threshold_inverse(gen_single(4, 2), 0.25) ==
          doctest::Approx(0.5).epsilon(1e-9));
    CHECK(expectation_threshold_inverse(gen_all_k_subsets(10, 1), 1.0) ==
          doctest::Approx(0.1).epsilon(1e-9));
    // the returned point reaches the target from above
    const double q = expectation_threshold_inverse(gen_star(5), 0.3);
    CHECK(fractional_expectation(gen_star(5), Rational(q)).value >= Rational(3, 10));
}

TEST_CASE("inverse scaling: the point for x grows at most linearly in the target") {
    const std::vector<MintermFamily> zoo = {chain3(), gen_all_k_subsets(5, 1),
                                            gen_single(4, 2), gen_star(5)};
    const std::vector<std::pair<double, double>> targets = {
        {0.25, 0.5}, {0.1, 0.75}, {0.5, 1.0}};  // (y, x) with y <= x
    for (const MintermFamily& fam : zoo) {
        for (const auto& [y, x] : targets) {
            const double qx = expectation_threshold_inverse(fam, x);
            const double qy = expectation_threshold_inverse(fam, y);
            CHECK(qx <= qy * (x / y) + 1e-9);
            CHECK(qy <= qx + 1e-12);  // monotone as well
        }
    }
}

TEST_CASE("inverse point never exceeds the threshold point of the measure") {
    const std::vector<MintermFamily> zoo = {chain3(), gen_star(5), gen_single(4, 2),
                                            gen_all_k_subsets(6, 2)};
    for (const MintermFamily& fam : zoo) {
        for (double x : {0.1, 0.5, 0.9}) {
            const double q = expectation_threshold_inverse(fam, x);
            const double p = threshold_point(fam, x);
            CHECK(q <= p + 1e-9);
        }
    }
}

TEST_CASE("inverse error paths") {
    CHECK_THROWS_AS(expectation_threshold_inverse(MintermFamily::from_sets(3, {}), 0.5),
                    UndefinedThresholdError);
    CHECK_THROWS_AS(expectation_threshold_inverse(gen_single(3, 0), 0.5),
                    UndefinedThresholdError);
    CHECK_THROWS_AS(expectation_threshold_inverse(chain3(), 1.5), UnreachableValueError);
    CHECK_THROWS_AS(expectation_threshold_inverse(chain3(), 0.0), PreconditionError);
    CHECK_THROWS_AS(expectation_threshold_inverse(chain3(), -0.25), PreconditionError);
}

TEST_CASE("solver parameter validation and capacity limit") {
    CHECK_THROWS_AS(fractional_expectation(chain3(), Rational(0)), PreconditionError);
    CHECK_THROWS_AS(fractional_expectation(chain3(), Rational(3, 2)), PreconditionError);
    // all 3-subsets of a 6-point ground set span 42 cover variables
    CHECK_THROWS_AS(fractional_expectation(gen_all_k_subsets(6, 3), Rational(1, 2), LpLimits{4}),
                    CapacityError);
}

TEST_CASE("witness moments of the dual-weighted indicator sum") {
    const MintermFamily fam = chain3();
    const WitnessMoments wm = weighted_witness_moments(fam, Rational(1, 4), Rational(1, 4));
    CHECK(wm.alpha == 1);
    CHECK(wm.mean == Rational(1, 8));
    CHECK(wm.second == Rational(5, 32));
    CHECK(wm.bound == Rational(1, 2));
    CHECK(wm.chain_holds);
    // the witness gives a valid second-moment lower bound on the measure
    const Rational pz = wm.mean * wm.mean / wm.second;
    CHECK(pz == Rational(1, 10));
    CHECK(pz <= measure(fam, Rational(1, 4)));

    // one minterm of size 3: a single term, everything in closed form
    const MintermFamily single = gen_single(5, 3);
    const WitnessMoments sm = weighted_witness_moments(single, Rational(1, 2), Rational(1, 2));
    CHECK(sm.mean == Rational(1, 8));
    CHECK(sm.second == Rational(1, 8));    // q^{2k} / p^k
    CHECK(sm.bound == Rational(1));        // q^k (1+1)^k
    CHECK(sm.chain_holds);

    // reusing a solved program gives the identical report
    const FractionalExpectation fe = fractional_expectation(fam, Rational(1, 4));
    const WitnessMoments again = weighted_witness_moments(fam, Rational(1, 4), fe);
    CHECK(again.mean == wm.mean);
    CHECK(again.second == wm.second);
    CHECK(again.bound == wm.bound);

    CHECK_THROWS_AS(weighted_witness_moments(fam, Rational(0), Rational(1, 4)),
                    PreconditionError);
}

TEST_CASE("witness chain holds across p and q on mixed instances") {
    const std::vector<MintermFamily> zoo = {chain3(), gen_star(5), gen_all_k_subsets(5, 2),
                                            gen_random(7, 3, 4, 3)};
    for (const MintermFamily& fam : zoo) {
        for (const Rational& p : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
            const Rational qs[2] = {p, Rational(p / 2)};
            for (const Rational& q : qs) {
                const WitnessMoments wm = weighted_witness_moments(fam, p, q);
                CHECK(wm.chain_holds);
                CHECK(wm.second <= wm.bound);
                CHECK(wm.mean == fractional_expectation(fam, q).value);
                if (wm.second > 0) CHECK(wm.mean * wm.mean / wm.second <= measure(fam, p));
            }
        }
    }
}

TEST_CASE("two-sided bracket on the measure") {
    const MeasureBracket mb = measure_bracket(chain3(), Rational(1, 2), Rational(1));
    CHECK(mb.lower == Rational(1, 8));
    CHECK(mb.mu == Rational(3, 8));
    CHECK(mb.upper == Rational(1, 2));
    CHECK(mb.holds);

    // single minterm with alpha = 1: the upper side is met with equality
    const MeasureBracket sb = measure_bracket(gen_single(4, 2), Rational(1, 2), Rational(1));
    CHECK(sb.lower == Rational(1, 16));
    CHECK(sb.mu == Rational(1, 4));
    CHECK(sb.upper == Rational(1, 4));
    CHECK(sb.holds);

    // all singletons on ten points at p = 1/20
    const MeasureBracket gb =
        measure_bracket(gen_all_k_subsets(10, 1), Rational(1, 20), Rational(1));
    CHECK(gb.lower == Rational(1, 4));
    CHECK(gb.upper == Rational(1, 2));
    CHECK(gb.holds);

    // a fractional alpha stays exact
    const MeasureBracket qb = measure_bracket(chain3(), Rational(1, 2), Rational(3, 2));
    CHECK(qb.holds);
    CHECK(qb.lower <= qb.mu);
    CHECK(qb.mu <= qb.upper);

    CHECK_THROWS_AS(measure_bracket(chain3(), Rational(1, 2), Rational(3)), PreconditionError);
    CHECK_THROWS_AS(measure_bracket(chain3(), Rational(1, 2), Rational(0)), PreconditionError);
    CHECK_THROWS_AS(measure_bracket(chain3(), Rational(1), Rational(1)), PreconditionError);
}

TEST_CASE("unit-threshold check evaluates the measure at k times the crossing") {
    const ExpectationThresholdCheck sing = expectation_threshold_check(gen_all_k_subsets(10, 1));
    CHECK(sing.applicable);
    CHECK(sing.q1 == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(!sing.clamped);
    CHECK(sing.eval_p == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(sing.mu == doctest::Approx(1 - std::pow(0.9, 10)).epsilon(1e-6));
    CHECK(sing.holds);

    const ExpectationThresholdCheck two = expectation_threshold_check(chain3());
    CHECK(two.applicable);
    CHECK(two.q1 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(two.clamped);
    CHECK(two.eval_p == 1.0);
    CHECK(two.mu >= 1 - 1e-12);
    CHECK(two.holds);

    CHECK(!expectation_threshold_check(MintermFamily::from_sets(3, {})).applicable);
    CHECK(!expectation_threshold_check(gen_single(3, 0)).applicable);
}

TEST_CASE("threshold-ratio bounds") {
    const ThresholdRatioBounds tb = threshold_ratio_bounds(chain3(), 0.5, 0.1);
    CHECK(tb.ratio == doctest::Approx(2.505686).epsilon(1e-3));
    CHECK(tb.lower == doctest::Approx(std::sqrt(5.0) - 1).epsilon(1e-9));
    CHECK(tb.upper == doctest::Approx(20.0).epsilon(1e-9));
    CHECK(tb.lower_holds);
    CHECK(tb.upper_holds);
    CHECK(!tb.limit_convention);

    // single minterm: the ratio exceeds the lower bound by exactly one
    const ThresholdRatioBounds sb = threshold_ratio_bounds(gen_single(6, 2), 0.5, 0.1);
    CHECK(sb.ratio == doctest::Approx(std::sqrt(5.0)).epsilon(1e-6));
    CHECK(sb.ratio - sb.lower == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(sb.lower_holds);
    CHECK(sb.upper_holds);

    // all singletons violate the degenerate upper constant; flagged, not hidden
    const ThresholdRatioBounds gb = threshold_ratio_bounds(gen_all_k_subsets(10, 1), 0.5, 0.25);
    CHECK(gb.limit_convention);
    CHECK(gb.lower_holds);
    CHECK(!gb.upper_holds);
    CHECK(gb.upper == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(gb.ratio > gb.upper);

    CHECK(ratio_upper_constant(1) == 1.0);
    CHECK(ratio_upper_constant(2) == doctest::Approx(4.0));
    CHECK(ratio_upper_constant(3) == doctest::Approx(27.0 / 4.0));

    CHECK_THROWS_AS(threshold_ratio_bounds(chain3(), 0.1, 0.5), PreconditionError);
    CHECK_THROWS_AS(threshold_ratio_bounds(chain3(), 0.5, 0.0), PreconditionError);
    CHECK_THROWS_AS(threshold_ratio_bounds(MintermFamily::from_sets(3, {}), 0.5, 0.1),
                    UndefinedThresholdError);
}

TEST_CASE("width upper check") {
    const WidthUpperCheck wc = width_upper_check(gen_single(6, 2), 0.1);
    CHECK(wc.delta == doctest::Approx(1 - std::sqrt(0.2)).epsilon(1e-6));
    CHECK(wc.bound == doctest::Approx(0.95).epsilon(1e-12));
    CHECK(wc.holds);
    CHECK(!wc.limit_convention);

    // one point, one singleton: equality at the degenerate constant
    const WidthUpperCheck ec = width_upper_check(gen_all_k_subsets(1, 1), 0.1);
    CHECK(ec.delta == doctest::Approx(0.8).epsilon(1e-9));
    CHECK(ec.bound == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(ec.holds);
    CHECK(ec.limit_convention);

    // ten singletons: wider than the degenerate bound allows; flagged
    const WidthUpperCheck vc = width_upper_check(gen_all_k_subsets(10, 1), 0.1);
    CHECK(vc.delta == doctest::Approx(0.843487).epsilon(1e-4));
    CHECK(vc.bound == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(!vc.holds);
    CHECK(vc.limit_convention);

    CHECK_THROWS_AS(width_upper_check(MintermFamily::from_sets(3, {}), 0.1),
                    UndefinedThresholdError);
    CHECK_THROWS_AS(width_upper_check(chain3(), 0.0), PreconditionError);
    CHECK_THROWS_AS(width_upper_check(chain3(), 0.5), PreconditionError);
}
