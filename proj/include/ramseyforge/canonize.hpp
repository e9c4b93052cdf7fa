#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ramseyforge/genseq.hpp"
#include "ramseyforge/structures.hpp"

namespace ramseyforge {

// A materialized equivalence relation: one class id per domain element, the
// domain being an explicit enumerated list held by the caller.
struct EquivalenceRelationTable {
    std::vector<int> class_of;

    int domain_size() const { return static_cast<int>(class_of.size()); }
    bool same(int a, int b) const { return class_of[a] == class_of[b]; }
    void validate(int expected_domain) const;
};

// All subsets of {0..n-1} as sorted lists, in list-lexicographic order.
std::vector<std::vector<int>> subsets_lex(int n);

struct ErCanonization {
    std::vector<int> s;          // l-subset of {0..m-1}
    std::vector<int> index_set;  // I subset of {0..n-1}
};

// Least (s, I) with E agreeing with the index-equality relation E_I on all
// n-subsets of s; domain order is all_subsets(m, n). nullopt when m is below
// the threshold for (n, l).
std::optional<ErCanonization> er_canonize(const EquivalenceRelationTable& e, int m, int n, int l);

// Independent pairwise re-verification of a canonization.
bool er_canonization_holds(const EquivalenceRelationTable& e, int m, int n,
                           const std::vector<int>& s, const std::vector<int>& index_set);

// Least m in (l, m_cap] such that every equivalence relation on the n-subsets
// of m admits a canonizing (s, I); exhaustive over set partitions via
// restricted growth strings. Throws BudgetError when the partition count
// exceeds the budget.
std::optional<int> er_threshold(int n, int l, int m_cap, uint64_t partition_budget);

struct ProductCanonization {
    std::vector<std::vector<int>> b_prime;     // per coordinate, points of the chosen B' copy
    std::vector<std::vector<int>> index_sets;  // per coordinate, I_j
};

// Least ((B'_j), (I_j)) with E restricted to the product A-copies inside the
// B' copies equal to the per-coordinate index-equality relation. Domain order
// is the lexicographic product of per-coordinate copy lists of (C_j choose A_j).
std::optional<ProductCanonization> product_canonize(const std::vector<OrderedStructure>& a,
                                                    const std::vector<OrderedStructure>& b,
                                                    const std::vector<OrderedStructure>& c,
                                                    const EquivalenceRelationTable& e);

bool product_canonization_holds(const std::vector<OrderedStructure>& a,
                                const std::vector<OrderedStructure>& c,
                                const EquivalenceRelationTable& e,
                                const ProductCanonization& canon);

// A canonical relation on blocks at one position: the total relation, or
// agreement of index-selected points per coordinate (all-empty selections
// compare depth only).
struct BlockRelation {
    bool total = false;                        // the single-class relation
    std::vector<std::vector<int>> index_sets;  // per coordinate, when !total

    friend bool operator==(const BlockRelation&, const BlockRelation&) = default;
};

bool block_related(const BlockRelation& rel, const Block& x, const Block& y);

// All canonical relations available at a block position of the sequence.
std::vector<BlockRelation> canonical_block_relations(const GeneratingSequence& seq, int position);

struct BlockCanonization {
    Approximation c_prefix;
    std::vector<BlockRelation> relations;  // one per block position < n
};

// Searches sub-prefixes C of the given prefix (longest first, then
// enumeration order) and per-position canonical relations representing E on
// the n-block approximations below C. E is indexed by enumerate_AR_n order
// over the full prefix.
std::optional<BlockCanonization> block_canonize(const GeneratingSequence& seq,
                                                const Approximation& prefix, int n,
                                                const EquivalenceRelationTable& e,
                                                uint64_t budget);

enum class FrontMode { NashWilliams, Sperner };

struct FrontReport {
    bool antichain = true;
    std::optional<std::pair<Approximation, Approximation>> antichain_witness;
    bool coverage = true;
    std::optional<Approximation> uncovered_path;
    bool pass() const { return antichain && coverage; }
};

// Antichain condition per mode, plus finite-surrogate coverage: every maximal
// block path through the truncated prefix has an initial segment in F.
FrontReport validate_front(const std::vector<Approximation>& front, const GeneratingSequence& seq,
                           const Approximation& prefix, FrontMode mode);

// One projection per block position: either the empty projection (forgets the
// block) or index selections per coordinate (all-empty keeps depth only).
struct CanonicalProjection {
    enum class Kind { Empty, Select };
    Kind kind = Kind::Empty;
    std::vector<std::vector<int>> index_sets;

    friend bool operator==(const CanonicalProjection&, const CanonicalProjection&) = default;
};

struct ProjectedBlock {
    int depth = 0;
    std::vector<std::vector<int>> selected_points;

    friend bool operator==(const ProjectedBlock&, const ProjectedBlock&) = default;
};

// Image of one front element: the projected blocks of the positions kept.
std::vector<ProjectedBlock> apply_projections(const std::vector<CanonicalProjection>& projections,
                                               const Approximation& a);

// Per front element (aligned by index), one projection per block position.
struct InnerMap {
    std::vector<std::vector<CanonicalProjection>> per_element;
};

struct InnerNwReport {
    bool inner = true;
    std::string inner_detail;
    bool nash_williams = true;
    std::optional<std::pair<int, int>> nw_witness;  // indices into the front
    bool pass() const { return inner && nash_williams; }
};

// Innerness is structural (projections well-formed against the sequence);
// the Nash-Williams condition compares images pairwise: distinct images must
// not be proper initial segments of one another.
InnerNwReport validate_inner_nw(const InnerMap& phi, const std::vector<Approximation>& front,
                                const GeneratingSequence& seq);

}  // namespace ramseyforge
