#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ramseyforge/fraisse.hpp"
#include "ramseyforge/structures.hpp"

namespace ramseyforge {

// One block of an approximation: a depth index into the generating sequence
// plus, per coordinate, the points of the level structure spanning the copy.
struct Block {
    int depth = 0;
    std::vector<std::vector<int>> points;  // per coordinate, sorted

    friend bool operator==(const Block&, const Block&) = default;
    friend auto operator<=>(const Block&, const Block&) = default;
};

// A finite approximation: blocks with strictly increasing depths, where the
// k-th block spans a copy of the level-k shape.
struct Approximation {
    std::vector<Block> blocks;

    int length() const { return static_cast<int>(blocks.size()); }
    Approximation prefix(int n) const;  // first n blocks
    std::string to_line() const;        // e.g. "0:0;2:1,3|0,2"
    static Approximation from_line(const std::string& line);

    friend bool operator==(const Approximation&, const Approximation&) = default;
    friend auto operator<=>(const Approximation&, const Approximation&) = default;
};

// A finite prefix of a generating sequence: per level k, one structure per
// coordinate in the window J_k, with the embedding of each level into the
// next recorded. Levels are built so each structure is an initial-segment
// substructure of its successor.
class GeneratingSequence {
public:
    struct AbsorptionRecord {
        int coordinate = 0;
        int member_size = 0;
        int member_index = 0;  // index within the canonical enumeration of that size
        int level = 0;         // first level whose structure contains the member
    };

    // Builds levels 0..k_max. With omega=true a single class template is
    // replicated: level k carries k+1 coordinates.
    static GeneratingSequence build(std::vector<FraisseClass> classes, int k_max,
                                    uint64_t candidate_budget, bool omega = false);

    bool omega() const { return omega_; }
    int depth() const { return static_cast<int>(levels_.size()); }  // built levels
    int coords_at(int k) const;                                      // |J_k|
    int class_count() const { return static_cast<int>(classes_.size()); }
    const FraisseClass& class_of(int coordinate) const;
    const OrderedStructure& level(int k, int coordinate) const;
    // Embedding of level k into level k+1 at the coordinate (identity prefix).
    const Embedding& step_embedding(int k, int coordinate) const;
    const std::vector<AbsorptionRecord>& absorption_ledger() const { return ledger_; }

    // Verifies the cofinality clause on the built prefix: every member of
    // size <= size_cap embeds into some recorded level. Returns the first
    // missing member's line, or nullopt when covered.
    std::optional<std::string> cofinality_gap(int size_cap, uint64_t candidate_budget) const;

    // The full prefix r_depth of the maximal member: block k at depth k with
    // all points.
    Approximation full_prefix(int depth) const;

    std::string to_manifest() const;
    static GeneratingSequence from_manifest(const std::string& text);

    // Throws DomainError unless every block of `a` spans a copy of its
    // level shape.
    void validate_approximation(const Approximation& a) const;

private:
    GeneratingSequence() = default;

    std::vector<FraisseClass> classes_;
    bool omega_ = false;
    // levels_[k][j]; embeddings_[k][j] maps level k into level k+1.
    std::vector<std::vector<OrderedStructure>> levels_;
    std::vector<std::vector<Embedding>> embeddings_;
    std::vector<AbsorptionRecord> ledger_;
};

// c <=_fin b: every block of c refines a block of b with the same depth
// value, preserving block order.
bool le_fin(const Approximation& c, const Approximation& b);

// Least d with a <=_fin prefix.prefix(d); nullopt marks infinity.
std::optional<int> depth_in(const Approximation& a, const Approximation& prefix);

// All n-block approximations <=_fin the prefix, ordered by block-position
// vector and then per-block lexicographic copy order.
std::vector<Approximation> enumerate_AR_n(const GeneratingSequence& seq,
                                          const Approximation& prefix, int n, uint64_t budget);
uint64_t count_AR_n(const GeneratingSequence& seq, const Approximation& prefix, int n);

// Copies of the level-`shape_level` tuple inside the prefix's block at
// `position`, as blocks with absolute point sets, lexicographic copy order.
std::vector<Block> block_candidates(const GeneratingSequence& seq, const Approximation& prefix,
                                    int shape_level, int position);

enum class CheckStatus { Pass, Fail, Skipped };

struct AxiomClauseResult {
    std::string clause;
    CheckStatus status = CheckStatus::Pass;
    std::string detail;
    uint64_t cost = 0;
};

struct AxiomCheckReport {
    std::vector<AxiomClauseResult> clauses;
    bool pass() const {
        for (const auto& c : clauses)
            if (c.status == CheckStatus::Fail) return false;
        return true;
    }
};

// Finite-truncation axiom checks on the prefix of given depth: the
// approximation-structure clauses exhaustively, extension clauses on sampled
// data, and the pigeonhole clause for one-block extensions.
AxiomCheckReport check_axioms(const GeneratingSequence& seq, int depth, uint64_t budget);

}  // namespace ramseyforge
