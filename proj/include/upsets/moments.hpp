#pragma once

#include <vector>

#include "upsets/family.hpp"
#include "upsets/rational.hpp"

namespace upsets {

// X = number of minterms contained in a p-random subset. First and second
// moments are exact polynomials in p over the minterm list alone (no
// enumeration), so these work at any ground-set size.

// E[X] = sum over minterms M of p^|M|.
Rational first_moment(const MintermFamily& fam, const Rational& p);
double first_moment(const MintermFamily& fam, double p);

struct MomentReport {
    Rational first;        // E[X]
    Rational second;       // E[X^2]
    Rational diagonal;     // pairs (i,i)
    Rational overlapping;  // pairs i != j with intersecting minterms
    Rational disjoint;     // pairs i != j with disjoint minterms
    std::vector<Int> size_histogram;  // count of minterms per size 0..k
};

// E[X^2] = sum over ordered pairs (i,j) of p^|Mi union Mj|, split by pair type.
MomentReport second_moment(const MintermFamily& fam, const Rational& p);

// E[X]^2 / E[X^2]; a lower bound on the measure at p (second-moment method).
// Throws PreconditionError when E[X] = 0 (empty family or p = 0).
Rational paley_zygmund_bound(const MintermFamily& fam, const Rational& p);

}  // namespace upsets
