#pragma once

#include <iosfwd>
#include <string>

#include "upsets/family.hpp"

namespace upsets {

// On-disk format:
//   { "n": 6, "minterms": [[0, 1], [0, 2]] }
// Elements are 0-based indices below n. Input need not be a minimal
// antichain; it is minimalized on load and `was_minimal` says whether
// that changed anything (callers may want to warn).
struct LoadedFamily {
    MintermFamily family;
    bool was_minimal = true;
};

// Throw MalformedInputError with a position on unparseable or invalid input.
LoadedFamily read_family_json(std::istream& in, const std::string& origin = "<stream>");
LoadedFamily read_family_file(const std::string& path);

// Canonical text: fixed key order, one minterm per line, minterms in
// canonical order with increasing indices. Byte-stable for a given family.
std::string family_to_json(const MintermFamily& fam);
void write_family_file(const std::string& path, const MintermFamily& fam);

}  // namespace upsets
