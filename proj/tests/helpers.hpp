#pragma once

#include <random>
#include <vector>

#include "ramseyforge/structures.hpp"

namespace testutil {

// Fixed-seed generator so property runs are reproducible.
inline std::mt19937& rng() {
    static std::mt19937 gen(0x5eed5u);
    return gen;
}

inline ramseyforge::OrderedStructure random_graph(int max_size) {
    std::uniform_int_distribution<int> size_dist(0, max_size);
    int n = size_dist(rng());
    std::bernoulli_distribution edge(0.5);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (edge(rng())) edges.emplace_back(i, j);
    return ramseyforge::OrderedStructure::ordered_graph(n, edges);
}

// Independent full scan: every subset of matching size whose restriction
// equals the pattern.
inline std::vector<std::vector<int>> scan_copies(const ramseyforge::OrderedStructure& a,
                                                 const ramseyforge::OrderedStructure& b) {
    std::vector<std::vector<int>> found;
    for (const auto& idx : ramseyforge::all_subsets(b.size(), a.size()))
        if (ramseyforge::restrict_to(b, idx) == a) found.push_back(idx);
    return found;
}

}  // namespace testutil
