#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ramseyforge/fraisse.hpp"
#include "ramseyforge/structures.hpp"

namespace ramseyforge {

class GeneratingSequence;  // genseq.hpp

// A partition-arrow query over a finite product of coordinates: does every
// k-coloring of the product A-copies inside (C_j) admit (B'_j) with all its
// A-copies monochromatic?
struct ArrowQuery {
    std::vector<OrderedStructure> a, b, c;  // per coordinate, A_j <= B_j <= C_j
    int colors = 2;

    void validate() const;  // embeddability chain per coordinate
};

struct ArrowCost {
    uint64_t product_copies = 0;  // N
    double colorings_log2 = 0;    // log2 of k^N
};

ArrowCost arrow_cost(const ArrowQuery& q);

// Exact exhaustive check. Throws BudgetError when k^N exceeds the budget.
bool arrow_check(const ArrowQuery& q, uint64_t coloring_budget);

// Searches class members per coordinate in a diagonal schedule (increasing
// total size, then lexicographic size vectors, then member order) for the
// first sequence (C_j) passing arrow_check. nullopt when the size cap is
// reached without a witness.
std::optional<std::vector<OrderedStructure>> find_witness(
    const std::vector<FraisseClass>& classes, const std::vector<OrderedStructure>& a,
    const std::vector<OrderedStructure>& b, int colors, int size_cap, uint64_t coloring_budget);

// Clause check for generating sequences: with 2 colors,
// levels (n over m over k) restricted to the level-k coordinate window.
bool pigeonhole_check(const GeneratingSequence& seq, int k, int m, int n, uint64_t coloring_budget);

}  // namespace ramseyforge
