#pragma once

#include <optional>
#include <vector>

#include "upsets/element_set.hpp"

namespace upsets {

// A monotone (upward-closed) family over {0,...,n-1}, represented by its
// antichain of minimal sets ("minterms"). A set belongs to the family exactly
// when it contains some minterm.
//
// Degenerate cases: no minterms = the empty family (nothing belongs);
// the single minterm {} = the full family (everything belongs).
class MintermFamily {
  public:
    // Builds the family spanned by `sets`: removes duplicates and supersets,
    // keeps the minimal antichain, sorted canonically. Indices are validated
    // against n by the ElementSet factory used upstream; here we validate n
    // and that sets fit inside the ground set.
    static MintermFamily from_sets(int n, std::vector<ElementSet> sets);

    MintermFamily() : n_(0), k_(0) {}

    int n() const { return n_; }
    // Largest minterm size (0 for the empty and full families).
    int k() const { return k_; }
    int minterm_count() const { return static_cast<int>(minterms_.size()); }
    const std::vector<ElementSet>& minterms() const { return minterms_; }

    bool is_empty_family() const { return minterms_.empty(); }
    bool is_full_family() const { return minterms_.size() == 1 && minterms_[0].empty(); }
    // Trivial = measure identically 0 or identically 1.
    bool is_trivial() const { return is_empty_family() || is_full_family(); }

    // Membership of `a` in the monotone family: does some minterm lie inside a?
    bool contains(ElementSet a) const;

    // All W with |W| = m, W disjoint from v, and (v union W) a minterm.
    // Sorted canonically. m >= 1 required; m past k just yields nothing.
    std::vector<ElementSet> supplements(ElementSet v, int m) const;

    // Count-only variant (the common case in tameness scans).
    int supplement_count(ElementSet v, int m) const;

    // Every subset of every minterm (including the empty set), deduplicated,
    // canonical order. These are the only sets that can have supplements, and
    // the only candidate LP support.
    std::vector<ElementSet> minterm_subsets() const;

    friend bool operator==(const MintermFamily&, const MintermFamily&) = default;

  private:
    int n_;
    int k_;
    std::vector<ElementSet> minterms_;
};

// Keeps only the minimal sets (drops duplicates and supersets).
std::vector<ElementSet> minimal_antichain(std::vector<ElementSet> sets);

}  // namespace upsets
