#include "upsets/moments.hpp"

#include <cmath>

#include "upsets/errors.hpp"

namespace upsets {

Rational first_moment(const MintermFamily& fam, const Rational& p) {
    // Group by size so p^m is computed once per layer.
    std::vector<Int> hist(fam.k() + 1, 0);
    for (ElementSet m : fam.minterms()) ++hist[m.size()];
    Rational sum = 0;
    Rational pw = 1;
    for (int m = 0; m <= fam.k(); ++m) {
        if (hist[m] != 0) sum += Rational(hist[m]) * pw;
        pw *= p;
    }
    return sum;
}

double first_moment(const MintermFamily& fam, double p) {
    double sum = 0;
    for (ElementSet m : fam.minterms()) sum += std::pow(p, m.size());
    return sum;
}

MomentReport second_moment(const MintermFamily& fam, const Rational& p) {
    const auto& mts = fam.minterms();
    int top = 2 * fam.k();
    std::vector<Rational> pw(top + 1);
    pw[0] = 1;
    for (int t = 1; t <= top; ++t) pw[t] = pw[t - 1] * p;

    MomentReport rep;
    rep.size_histogram.assign(fam.k() + 1, 0);
    for (ElementSet m : mts) ++rep.size_histogram[m.size()];

    rep.first = 0;
    for (int m = 0; m <= fam.k(); ++m)
        if (rep.size_histogram[m] != 0) rep.first += Rational(rep.size_histogram[m]) * pw[m];

    rep.diagonal = rep.first;  // (i,i) contributes p^|Mi|
    rep.overlapping = 0;
    rep.disjoint = 0;
    for (std::size_t i = 0; i < mts.size(); ++i) {
        for (std::size_t j = i + 1; j < mts.size(); ++j) {
            int u = (mts[i] | mts[j]).size();
            if (mts[i].intersects(mts[j]))
                rep.overlapping += 2 * pw[u];  // ordered pairs (i,j) and (j,i)
            else
                rep.disjoint += 2 * pw[u];
        }
    }
    rep.second = rep.diagonal + rep.overlapping + rep.disjoint;
    return rep;
}

Rational paley_zygmund_bound(const MintermFamily& fam, const Rational& p) {
    MomentReport rep = second_moment(fam, p);
    if (rep.first == 0)
        throw PreconditionError("first moment is zero; the second-moment bound is undefined");
    return rep.first * rep.first / rep.second;
}

}  // namespace upsets
