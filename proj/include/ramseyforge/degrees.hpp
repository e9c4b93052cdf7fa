#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ramseyforge/fraisse.hpp"
#include "ramseyforge/genseq.hpp"

namespace ramseyforge {

// All compositions of m (ordered sequences of positive parts), lexicographic.
std::vector<std::vector<int>> compositions(int m);

// Single-class degree: sum over compositions of the products of per-part
// isomorphism-class counts.
uint64_t degree_formula_j1(const FraisseClass& cls, int m, uint64_t candidate_budget);

// Two-class degree for pairs:
// 1 + Iso(K0,2) + Iso(K1,2) + 2*Iso(K0,2)*Iso(K1,2).
uint64_t degree_formula_j2(const FraisseClass& k0, const FraisseClass& k1,
                           uint64_t candidate_budget);

// Distinct same-block q-subset types at a level: q distinct point vectors of
// the level structures, typed by per-coordinate rank pattern plus the induced
// substructure on the distinct points, with elements in lexicographic
// vector order.
uint64_t block_type_count(const GeneratingSequence& seq, int level, int q);

struct OracleResult {
    uint64_t value = 0;
    int stabilized_at = 0;  // prefix depth where the count settled
};

// Counts distinct m-subset types of the one-block approximations within the
// prefix: a type is the composition of m over blocks in depth order together
// with each part's same-block type. The count must be unchanged across two
// successive depth increments before it is reported; otherwise
// StabilizationError. Finite J only.
OracleResult degree_oracle(const GeneratingSequence& seq, int m, int depth_cap);

struct DegreeReport {
    std::string space;
    int m = 0;
    std::optional<uint64_t> formula;
    uint64_t oracle = 0;
    int oracle_depth = 0;
    std::optional<uint64_t> reference;
    bool agreement = false;    // formula == oracle, when a formula exists
    bool discrepancy = false;  // reference present and != oracle
    std::string note;
};

// "H^n" when all coordinates are linear orders, else class names joined by x.
std::string space_name(const std::vector<FraisseClass>& classes);

// Values reported in the literature for these spaces, where stated.
std::optional<uint64_t> reference_degree(const std::vector<FraisseClass>& classes, int m);

DegreeReport degree_report(const std::vector<FraisseClass>& classes, int m, int depth_cap,
                           uint64_t candidate_budget);

struct ConjectureRow {
    int n = 0;
    uint64_t predicted = 0;  // (3^n - 1)/2 + 1
    uint64_t oracle = 0;
    bool match = false;
};

// Pair-degree prediction against the oracle on the n-fold linear-order
// product spaces, n = 1..n_max.
std::vector<ConjectureRow> conjecture_table(int n_max, int depth_cap);

}  // namespace ramseyforge
