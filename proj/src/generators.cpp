#include "upsets/generators.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "upsets/errors.hpp"
#include "upsets/rng.hpp"

namespace upsets {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw PreconditionError(msg);
}

// All injective placements of a pattern graph (edges over vertices 0..t-1)
// into K_m; equal edge sets collapse when the family minimalizes.
std::vector<ElementSet> embed_copies(int m, int t,
                                     const std::vector<std::pair<int, int>>& pattern) {
    std::vector<ElementSet> out;
    std::vector<int> image(t, -1);
    std::vector<bool> used(m, false);
    auto place = [&](auto&& self, int v) -> void {
        if (v == t) {
            ElementSet edges;
            for (auto [a, b] : pattern) {
                auto [lo, hi] = std::minmax(image[a], image[b]);
                edges |= ElementSet::single(edge_index(m, lo, hi));
            }
            out.push_back(edges);
            return;
        }
        for (int w = 0; w < m; ++w) {
            if (used[w]) continue;
            used[w] = true;
            image[v] = w;
            self(self, v + 1);
            used[w] = false;
        }
    };
    place(place, 0);
    return out;
}

}  // namespace

MintermFamily gen_single(int n, int k) {
    require(n >= 0 && k >= 0 && k <= n, "gen_single needs 0 <= k <= n");
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    return MintermFamily::from_sets(n, {ElementSet::from_indices(idx, n)});
}

MintermFamily gen_star(int n) {
    require(n >= 3, "gen_star needs n >= 3");
    std::vector<ElementSet> sets;
    for (int i = 1; i < n; ++i) sets.push_back(ElementSet::from_indices({0, i}, n));
    return MintermFamily::from_sets(n, std::move(sets));
}

MintermFamily gen_all_k_subsets(int n, int k) {
    require(n >= 0 && k >= 0 && k <= n, "gen_all_k_subsets needs 0 <= k <= n");
    std::vector<ElementSet> sets;
    std::vector<int> pick(k);
    auto build = [&](auto&& self, int pos, int from) -> void {
        if (pos == k) {
            sets.push_back(ElementSet::from_indices(pick, n));
            return;
        }
        for (int i = from; i <= n - (k - pos); ++i) {
            pick[pos] = i;
            self(self, pos + 1, i + 1);
        }
    };
    build(build, 0, 0);
    return MintermFamily::from_sets(n, std::move(sets));
}

int edge_index(int m, int i, int j) {
    require(0 <= i && i < j && j < m, "edge_index needs 0 <= i < j < m");
    return i * m - i * (i + 1) / 2 + (j - i - 1);
}

MintermFamily gen_graph(const GraphSpec& spec) {
    const int m = spec.host;
    require(m >= 2, "gen_graph needs a host K_m with m >= 2");
    const int n = m * (m - 1) / 2;

    std::vector<std::pair<int, int>> pattern;
    int t = 0;
    switch (spec.pattern) {
        case GraphSpec::Pattern::triangle:
            pattern = {{0, 1}, {0, 2}, {1, 2}};
            t = 3;
            break;
        case GraphSpec::Pattern::k4:
            pattern = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
            t = 4;
            break;
        case GraphSpec::Pattern::k4_tail:
            pattern = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 4}};
            t = 5;
            break;
        case GraphSpec::Pattern::path:
            require(spec.path_edges >= 1, "path pattern needs at least one edge");
            for (int i = 0; i < spec.path_edges; ++i) pattern.emplace_back(i, i + 1);
            t = spec.path_edges + 1;
            break;
        case GraphSpec::Pattern::custom: {
            require(!spec.custom_edges.empty(), "custom pattern needs at least one edge");
            for (auto [a, b] : spec.custom_edges) {
                require(a >= 0 && b >= 0 && a != b, "custom pattern edges need distinct vertices >= 0");
                pattern.emplace_back(std::min(a, b), std::max(a, b));
                t = std::max(t, std::max(a, b) + 1);
            }
            break;
        }
    }
    if (t > m) {
        std::ostringstream os;
        os << "pattern has " << t << " vertices but the host K_" << m << " has only " << m;
        throw PreconditionError(os.str());
    }
    return MintermFamily::from_sets(n, embed_copies(m, t, pattern));
}

MintermFamily gen_random(int n, int k, int count, std::uint64_t seed) {
    require(n >= 1 && k >= 1 && k <= n, "gen_random needs 1 <= k <= n");
    require(count >= 1, "gen_random needs count >= 1");
    std::vector<ElementSet> sets;
    std::vector<int> pool(n);
    for (int c = 0; c < count; ++c) {
        CounterRng rng(seed, static_cast<std::uint64_t>(c));
        std::iota(pool.begin(), pool.end(), 0);
        ElementSet s;
        for (int i = 0; i < k; ++i) {  // partial Fisher-Yates: k distinct picks
            const int j = i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - i)));
            std::swap(pool[i], pool[j]);
            s |= ElementSet::single(pool[i]);
        }
        sets.push_back(s);
    }
    return MintermFamily::from_sets(n, std::move(sets));
}

}  // namespace upsets
