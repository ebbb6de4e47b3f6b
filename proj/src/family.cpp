#include "upsets/family.hpp"

#include <algorithm>
#include <unordered_set>

#include "upsets/errors.hpp"

namespace upsets {

std::vector<ElementSet> minimal_antichain(std::vector<ElementSet> sets) {
    std::sort(sets.begin(), sets.end(), canonical_less);
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    // Size-sorted, so a set can only be a superset of earlier entries.
    std::vector<ElementSet> keep;
    for (ElementSet s : sets) {
        bool minimal = true;
        for (ElementSet m : keep) {
            if (m.subset_of(s)) {
                minimal = false;
                break;
            }
        }
        if (minimal) keep.push_back(s);
    }
    return keep;
}

MintermFamily MintermFamily::from_sets(int n, std::vector<ElementSet> sets) {
    if (n < 0 || n > ElementSet::max_elements)
        throw MalformedInputError("ground set size " + std::to_string(n) + " outside [0, " +
                                  std::to_string(ElementSet::max_elements) + "]");
    ElementSet ground = ElementSet::full(n);
    for (ElementSet s : sets) {
        if (!s.subset_of(ground))
            throw MalformedInputError("minterm " + s.to_string() +
                                      " has elements outside ground set of size " + std::to_string(n));
    }
    MintermFamily fam;
    fam.n_ = n;
    fam.minterms_ = minimal_antichain(std::move(sets));
    fam.k_ = 0;
    for (ElementSet m : fam.minterms_) fam.k_ = std::max(fam.k_, m.size());
    return fam;
}

bool MintermFamily::contains(ElementSet a) const {
    for (ElementSet m : minterms_)
        if (m.subset_of(a)) return true;
    return false;
}

std::vector<ElementSet> MintermFamily::supplements(ElementSet v, int m) const {
    if (m < 1) throw PreconditionError("supplement size m must be >= 1");
    std::vector<ElementSet> out;
    int want = v.size() + m;
    for (ElementSet mt : minterms_) {
        if (mt.size() == want && v.subset_of(mt)) out.push_back(mt - v);
    }
    // Distinct minterms over the same v give distinct supplements, so no dedup.
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

int MintermFamily::supplement_count(ElementSet v, int m) const {
    if (m < 1) throw PreconditionError("supplement size m must be >= 1");
    int count = 0;
    int want = v.size() + m;
    for (ElementSet mt : minterms_)
        if (mt.size() == want && v.subset_of(mt)) ++count;
    return count;
}

std::vector<ElementSet> MintermFamily::minterm_subsets() const {
    std::unordered_set<ElementSet, ElementSetHash> seen;
    for (ElementSet mt : minterms_) {
        // Standard subset-mask walk, done on the low 128 bits directly.
        ElementSet::Mask full = mt.bits();
        ElementSet::Mask sub = full;
        while (true) {
            seen.insert(ElementSet(sub));
            if (sub == 0) break;
            sub = (sub - 1) & full;
        }
    }
    std::vector<ElementSet> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

}  // namespace upsets
