#pragma once

#include <optional>
#include <string>
#include <vector>

#include "upsets/family.hpp"
#include "upsets/measure.hpp"
#include "upsets/rational.hpp"

namespace upsets {

// A family is tame at p when no set V has p^-m or more ways to be completed
// to a minterm by adding m fresh elements, for any 1 <= m <= k-1:
//     |N^m(V)| < p^-m  for all V, all m in 1..k-1.
// Only subsets of minterms can have completions, so the scan is finite.
// Families with k <= 1 are vacuously tame.
struct TamenessWitness {
    ElementSet v;
    int m = 0;
    int count = 0;  // |N^m(v)|, which reached p^-m
};

struct TamenessReport {
    Rational p;
    bool tame = false;
    std::optional<TamenessWitness> witness;  // first violation in canonical order
};

TamenessReport is_tame(const MintermFamily& fam, const Rational& p);

// The guaranteed measure floor min(E_p[X], 1) / (k 2^k) for a family tame
// at p. Throws PreconditionError (with the witness) when not tame, or when
// the family is trivial (k = 0 has no meaningful floor).
Rational tame_lower_bound(const MintermFamily& fam, const Rational& p);

// Splitting iteration: A_1 = fam; at stage m the selector collects every V
// with |N^m(V)| >= (p/2)^-m completions inside A_m, and A_{m+1} drops the
// minterms above any selected V. After k-1 stages either
//   - case tame_subfamily: mu_p(A_k) >= mu_p(fam)/2, and A_k is tame at p/2, or
//   - case tame_approximation: some first stage m lost measure
//     mu_p(A_m) - mu_p(A_{m+1}) >= mu_p(fam)/2^(m+1); the family spanned by
//     that stage's selector (each member richly completable inside A_m, with
//     a tame completion family) captures at least the lost measure.
// Every certificate is re-verified before returning; a failed dichotomy
// raises InternalConsistencyError (it cannot happen if the code is right).
struct Decomposition {
    enum class Kind { tame_subfamily, tame_approximation };
    Kind kind = Kind::tame_subfamily;
    Rational p;
    Rational family_measure;                 // mu_p(fam)
    std::vector<MintermFamily> chain;        // A_1 .. A_k
    std::vector<MintermFamily> selectors;    // selector families per stage (minimalized)

    // case tame_subfamily
    Rational subfamily_measure;              // mu_p(A_k)

    // case tame_approximation
    int m = 0;                               // the first heavy stage
    MintermFamily approximation;             // family spanned by the stage-m selector
    MintermFamily witness_family;            // A_m
    Rational approximation_measure;          // mu_p(approximation)
    Rational stage_gap;                      // mu_p(A_m) - mu_p(A_{m+1})
};

Decomposition decompose(const MintermFamily& fam, const Rational& p,
                        int limit = default_enumeration_limit);

// Checks that `approx` is a tame m-approximation of `fam` at p, witnessed by
// the subfamily `witness` (whose minterms must all be minterms of fam):
// every minterm B of approx has |N^m_witness(B)| >= p^-m, and the family
// spanned by those completions is tame at p. Requires 1 <= m <= k-1.
struct ApproximationViolation {
    ElementSet b;
    int count = 0;
    std::string reason;
};

struct ApproximationCheck {
    bool pass = false;
    Rational p;
    int m = 0;
    std::vector<ApproximationViolation> violations;
};

ApproximationCheck verify_tame_approximation(const MintermFamily& fam,
                                             const MintermFamily& approx, int m,
                                             const Rational& p, const MintermFamily& witness);

// Measure retained when p is halved:
//   weak floor    mu_{p/2} >= mu_p / (k 2^(3k-1))
//   strong floor  mu_{p/2} >= mu_p / 2^k
// (k is replaced by 1 for trivial families, where both sides coincide.)
struct HalvingCheck {
    Rational p, mu, mu_half;
    Rational weak_floor, strong_floor;
    bool weak_holds = false, strong_holds = false;
};

HalvingCheck halving_check(const MintermFamily& fam, const Rational& p,
                           int limit = default_enumeration_limit);

// Two consequences of tameness for the measure:
//   clause halved: if fam is tame at p/2 then mu_{p/2} >= mu_p / (k 2^(2k));
//   clause approx: if decompose(fam, p) lands in the approximation case with
//     stage m and family B, then mu_p(fam) >= mu_p(B) / (m 2^m).
// Each clause reports not-applicable when its hypothesis fails.
struct TameTransferCheck {
    Rational p;
    struct Halved {
        bool applicable = false;
        Rational mu, mu_half, floor;
        bool holds = false;
    } halved;
    struct Approx {
        bool applicable = false;
        int m = 0;
        Rational mu, approx_mu, floor;
        bool holds = false;
    } approx;
};

TameTransferCheck tame_transfer_check(const MintermFamily& fam, const Rational& p,
                                      int limit = default_enumeration_limit);

}  // namespace upsets
