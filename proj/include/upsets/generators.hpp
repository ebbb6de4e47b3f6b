#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "upsets/family.hpp"

namespace upsets {

// One minterm {0, .., k-1} on n elements. k = 0 gives the full family.
MintermFamily gen_single(int n, int k);

// Star: minterms {0, i} for i = 1 .. n-1. Requires n >= 3.
MintermFamily gen_star(int n);

// Every k-subset of {0, .., n-1} is a minterm. Requires 0 <= k <= n.
MintermFamily gen_all_k_subsets(int n, int k);

// Ground set = edges of the complete graph K_m, numbered lexicographically:
// edge {i, j} with i < j gets index i*m - i*(i+1)/2 + (j - i - 1).
int edge_index(int m, int i, int j);

// Minterms are the edge sets of all copies of a pattern graph inside K_m.
// Built-in patterns: triangle, k4, k4 with a pendant edge, a path with
// path_edges edges. A custom pattern lists its edges over vertices 0..t-1.
struct GraphSpec {
    enum class Pattern { triangle, k4, k4_tail, path, custom };
    int host = 0;  // m: number of vertices of the host complete graph
    Pattern pattern = Pattern::triangle;
    int path_edges = 0;
    std::vector<std::pair<int, int>> custom_edges;
};

MintermFamily gen_graph(const GraphSpec& spec);

// `count` minterms of size k drawn uniformly (with a counter-based generator,
// so the family depends only on the arguments). Duplicates collapse, so the
// result may have fewer than `count` minterms.
MintermFamily gen_random(int n, int k, int count, std::uint64_t seed);

}  // namespace upsets
