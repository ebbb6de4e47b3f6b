#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "upsets/errors.hpp"

namespace upsets {

// A subset of a ground set {0, ..., n-1}, n <= 128, stored as a bitmask.
// The ground-set size itself lives on MintermFamily; an ElementSet is just bits.
class ElementSet {
  public:
    using Mask = unsigned __int128;
    static constexpr int max_elements = 128;

    constexpr ElementSet() : bits_(0) {}
    constexpr explicit ElementSet(Mask bits) : bits_(bits) {}

    static ElementSet single(int i) { return ElementSet(Mask(1) << i); }

    // Validates 0 <= i < n for every index. Duplicates collapse.
    static ElementSet from_indices(std::span<const int> indices, int n) {
        ElementSet s;
        for (int i : indices) {
            if (i < 0 || i >= n)
                throw MalformedInputError("element " + std::to_string(i) +
                                          " outside ground set of size " + std::to_string(n));
            s.bits_ |= Mask(1) << i;
        }
        return s;
    }

    static ElementSet from_indices(std::initializer_list<int> indices, int n) {
        return from_indices(std::span<const int>(indices.begin(), indices.size()), n);
    }

    static ElementSet full(int n) {
        if (n <= 0) return ElementSet();
        Mask all = n >= max_elements ? ~Mask(0) : ((Mask(1) << n) - 1);
        return ElementSet(all);
    }

    Mask bits() const { return bits_; }
    bool empty() const { return bits_ == 0; }

    int size() const {
        return std::popcount(static_cast<std::uint64_t>(bits_)) +
               std::popcount(static_cast<std::uint64_t>(bits_ >> 64));
    }

    bool contains(int i) const { return (bits_ >> i) & 1; }
    bool subset_of(ElementSet other) const { return (bits_ & ~other.bits_) == 0; }
    bool intersects(ElementSet other) const { return (bits_ & other.bits_) != 0; }

    friend ElementSet operator|(ElementSet a, ElementSet b) { return ElementSet(a.bits_ | b.bits_); }
    friend ElementSet operator&(ElementSet a, ElementSet b) { return ElementSet(a.bits_ & b.bits_); }
    // set difference
    friend ElementSet operator-(ElementSet a, ElementSet b) { return ElementSet(a.bits_ & ~b.bits_); }
    friend bool operator==(ElementSet a, ElementSet b) { return a.bits_ == b.bits_; }

    ElementSet& operator|=(ElementSet b) { bits_ |= b.bits_; return *this; }

    int lowest() const {  // -1 when empty
        auto lo = static_cast<std::uint64_t>(bits_);
        if (lo) return std::countr_zero(lo);
        auto hi = static_cast<std::uint64_t>(bits_ >> 64);
        if (hi) return 64 + std::countr_zero(hi);
        return -1;
    }

    // Strictly increasing element indices.
    std::vector<int> indices() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(size()));
        Mask m = bits_;
        while (m) {
            ElementSet rest(m);
            int i = rest.lowest();
            out.push_back(i);
            m &= m - 1;
        }
        return out;
    }

    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (int i : indices()) {
            if (!first) s += ",";
            s += std::to_string(i);
            first = false;
        }
        return s + "}";
    }

  private:
    Mask bits_;
};

// Canonical order: by size, then lexicographically by the increasing index
// sequence. For equal sizes the sequence comparison reduces to: whichever set
// contains the lowest element where they differ comes first.
inline bool canonical_less(ElementSet a, ElementSet b) {
    if (a.size() != b.size()) return a.size() < b.size();
    if (a == b) return false;
    ElementSet diff(a.bits() ^ b.bits());
    return a.contains(diff.lowest());
}

struct ElementSetHash {
    std::size_t operator()(ElementSet s) const {
        auto lo = static_cast<std::uint64_t>(s.bits());
        auto hi = static_cast<std::uint64_t>(s.bits() >> 64);
        std::uint64_t x = lo * 0x9E3779B97F4A7C15ull ^ (hi + 0xD1B54A32D192ED03ull);
        x ^= x >> 32;
        return static_cast<std::size_t>(x * 0xBF58476D1CE4E5B9ull);
    }
};

}  // namespace upsets
