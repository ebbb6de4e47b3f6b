#include "upsets/structure.hpp"

#include <algorithm>
#include <sstream>

#include "upsets/errors.hpp"
#include "upsets/moments.hpp"

namespace upsets {

namespace {

void require_open_unit(const Rational& p, const char* what) {
    if (p <= 0 || p >= 1) {
        std::ostringstream os;
        os << what << " requires 0 < p < 1, got p = " << format_rational(p);
        throw PreconditionError(os.str());
    }
}

// |N^m(v)| >= p^-m, compared exactly as count * p^m >= 1.
bool completion_count_heavy(int count, const Rational& p, int m) {
    return Rational(count) * rational_pow(p, m) >= 1;
}

}  // namespace

TamenessReport is_tame(const MintermFamily& fam, const Rational& p) {
    require_open_unit(p, "is_tame");
    TamenessReport rep;
    rep.p = p;
    rep.tame = true;
    if (fam.k() <= 1) return rep;  // no m in 1..k-1
    const std::vector<ElementSet> candidates = fam.minterm_subsets();
    for (int m = 1; m <= fam.k() - 1; ++m) {
        for (const ElementSet& v : candidates) {
            const int count = fam.supplement_count(v, m);
            if (count > 0 && completion_count_heavy(count, p, m)) {
                rep.tame = false;
                rep.witness = TamenessWitness{v, m, count};
                return rep;
            }
        }
    }
    return rep;
}

Rational tame_lower_bound(const MintermFamily& fam, const Rational& p) {
    require_open_unit(p, "tame_lower_bound");
    if (fam.is_trivial()) {
        throw PreconditionError("tame_lower_bound requires a nontrivial family (k >= 1)");
    }
    const TamenessReport rep = is_tame(fam, p);
    if (!rep.tame) {
        std::ostringstream os;
        os << "tame_lower_bound requires a family tame at p = " << format_rational(p)
           << "; set " << rep.witness->v.to_string() << " has " << rep.witness->count
           << " completions of size " << rep.witness->m << " (>= p^-" << rep.witness->m << ")";
        throw PreconditionError(os.str());
    }
    Rational expectation = first_moment(fam, p);
    if (expectation > 1) expectation = 1;
    const int k = fam.k();
    return expectation / (Rational(k) * rational_pow(Rational(2), k));
}

Decomposition decompose(const MintermFamily& fam, const Rational& p, int limit) {
    require_open_unit(p, "decompose");
    const int n = fam.n();
    const int k = fam.k();
    const Rational half = p / 2;

    Decomposition d;
    d.p = p;
    d.family_measure = measure(fam, p, limit);
    d.chain.push_back(fam);

    for (int m = 1; m <= k - 1; ++m) {
        const MintermFamily& am = d.chain.back();
        std::vector<ElementSet> picked;
        for (const ElementSet& v : am.minterm_subsets()) {
            const int count = am.supplement_count(v, m);
            if (count > 0 && completion_count_heavy(count, half, m)) picked.push_back(v);
        }
        const MintermFamily selector = MintermFamily::from_sets(n, std::move(picked));
        std::vector<ElementSet> kept;
        for (const ElementSet& mt : am.minterms()) {
            if (!selector.contains(mt)) kept.push_back(mt);
        }
        d.selectors.push_back(selector);
        d.chain.push_back(MintermFamily::from_sets(n, std::move(kept)));
    }

    std::vector<Rational> stage_mu;
    stage_mu.reserve(d.chain.size());
    for (const MintermFamily& stage : d.chain) stage_mu.push_back(measure(stage, p, limit));

    if (2 * stage_mu.back() >= d.family_measure) {
        d.kind = Decomposition::Kind::tame_subfamily;
        d.subfamily_measure = stage_mu.back();
        if (!is_tame(d.chain.back(), half).tame) {
            throw InternalConsistencyError(
                "decompose: final stage retained half the measure but is not tame at p/2");
        }
        return d;
    }

    for (int m = 1; m <= k - 1; ++m) {
        const Rational gap = stage_mu[m - 1] - stage_mu[m];
        if (gap * rational_pow(Rational(2), m + 1) >= d.family_measure) {
            d.kind = Decomposition::Kind::tame_approximation;
            d.m = m;
            d.witness_family = d.chain[m - 1];
            d.approximation = d.selectors[m - 1];
            d.approximation_measure = measure(d.approximation, p, limit);
            d.stage_gap = gap;
            if (d.approximation_measure < gap) {
                throw InternalConsistencyError(
                    "decompose: selector family lighter than the measure it absorbed");
            }
            const ApproximationCheck check =
                verify_tame_approximation(fam, d.approximation, m, half, d.witness_family);
            if (!check.pass) {
                throw InternalConsistencyError(
                    "decompose: stage selector failed its approximation certificate at p/2");
            }
            return d;
        }
    }
    // Stage losses telescope to more than half the measure, so some stage
    // must carry at least mu/2^(m+1); reaching here means a bug above.
    throw InternalConsistencyError("decompose: no stage satisfied either dichotomy case");
}

ApproximationCheck verify_tame_approximation(const MintermFamily& fam,
                                             const MintermFamily& approx, int m,
                                             const Rational& p, const MintermFamily& witness) {
    require_open_unit(p, "verify_tame_approximation");
    if (m < 1 || m > fam.k() - 1) {
        std::ostringstream os;
        os << "verify_tame_approximation: stage m = " << m << " out of range 1.." << fam.k() - 1;
        throw PreconditionError(os.str());
    }
    if (approx.n() != fam.n() || witness.n() != fam.n()) {
        throw PreconditionError(
            "verify_tame_approximation: families live on different ground sets");
    }
    for (const ElementSet& mt : witness.minterms()) {
        if (!std::count(fam.minterms().begin(), fam.minterms().end(), mt)) {
            throw PreconditionError("verify_tame_approximation: witness has a minterm " +
                                    mt.to_string() + " that the base family lacks");
        }
    }

    ApproximationCheck check;
    check.p = p;
    check.m = m;
    for (const ElementSet& b : approx.minterms()) {
        const int count = witness.supplement_count(b, m);
        if (!completion_count_heavy(count, p, m)) {
            std::ostringstream os;
            os << "only " << count << " completions of size " << m << ", below p^-" << m;
            check.violations.push_back({b, count, os.str()});
            continue;
        }
        const MintermFamily span = MintermFamily::from_sets(fam.n(), witness.supplements(b, m));
        const TamenessReport rep = is_tame(span, p);
        if (!rep.tame) {
            std::ostringstream os;
            os << "completion family not tame: " << rep.witness->v.to_string() << " has "
               << rep.witness->count << " completions of size " << rep.witness->m;
            check.violations.push_back({b, count, os.str()});
        }
    }
    check.pass = check.violations.empty();
    return check;
}

HalvingCheck halving_check(const MintermFamily& fam, const Rational& p, int limit) {
    require_open_unit(p, "halving_check");
    HalvingCheck check;
    check.p = p;
    check.mu = measure(fam, p, limit);
    check.mu_half = measure(fam, p / 2, limit);
    const int k = std::max(fam.k(), 1);
    check.weak_floor = check.mu / (Rational(k) * rational_pow(Rational(2), 3 * k - 1));
    check.strong_floor = check.mu / rational_pow(Rational(2), k);
    check.weak_holds = check.mu_half >= check.weak_floor;
    check.strong_holds = check.mu_half >= check.strong_floor;
    return check;
}

TameTransferCheck tame_transfer_check(const MintermFamily& fam, const Rational& p, int limit) {
    require_open_unit(p, "tame_transfer_check");
    TameTransferCheck check;
    check.p = p;

    const Rational mu = measure(fam, p, limit);
    if (is_tame(fam, p / 2).tame) {
        check.halved.applicable = true;
        check.halved.mu = mu;
        check.halved.mu_half = measure(fam, p / 2, limit);
        const int k = std::max(fam.k(), 1);
        check.halved.floor = mu / (Rational(k) * rational_pow(Rational(2), 2 * k));
        check.halved.holds = check.halved.mu_half >= check.halved.floor;
    }

    const Decomposition d = decompose(fam, p, limit);
    if (d.kind == Decomposition::Kind::tame_approximation) {
        check.approx.applicable = true;
        check.approx.m = d.m;
        check.approx.mu = mu;
        check.approx.approx_mu = d.approximation_measure;
        check.approx.floor =
            d.approximation_measure / (Rational(d.m) * rational_pow(Rational(2), d.m));
        check.approx.holds = mu >= check.approx.floor;
    }
    return check;
}

}  // namespace upsets
