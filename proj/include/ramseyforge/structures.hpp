#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ramseyforge/errors.hpp"

namespace ramseyforge {

// A relation symbol with its arity. The linear order on the universe is
// implicit in every structure and never appears in a signature.
struct Relation {
    std::string name;
    int arity = 1;

    friend bool operator==(const Relation&, const Relation&) = default;
    friend auto operator<=>(const Relation&, const Relation&) = default;
};

struct Signature {
    std::vector<Relation> relations;

    // Throws DomainError if names repeat or an arity is < 1.
    void validate() const;
    int index_of(const std::string& name) const;  // -1 when absent

    friend bool operator==(const Signature&, const Signature&) = default;
    friend auto operator<=>(const Signature&, const Signature&) = default;

    static Signature empty() { return Signature{}; }
    static Signature graph() { return Signature{{Relation{"E", 2}}}; }
};

using Tuple = std::vector<int>;

// A finite relational structure on universe {0..size-1}, ordered by the
// natural order on indices. Two structures over the same signature are
// ordered-isomorphic exactly when they are equal field by field, because
// the order-preserving bijection between equal-size ordered sets is unique.
class OrderedStructure {
public:
    OrderedStructure() = default;
    OrderedStructure(Signature sig, int size);

    const Signature& signature() const { return sig_; }
    int size() const { return size_; }
    int relation_count() const { return static_cast<int>(tables_.size()); }

    // Tables are kept sorted and duplicate-free.
    const std::vector<Tuple>& table(int rel) const { return tables_[rel]; }
    void add_tuple(int rel, Tuple t);
    bool has_tuple(int rel, const Tuple& t) const;

    friend bool operator==(const OrderedStructure&, const OrderedStructure&) = default;
    // Deterministic total order: size, then tables lexicographically.
    // Signatures must match; used for canonical enumeration order.
    static bool table_less(const OrderedStructure& a, const OrderedStructure& b);

    std::string to_text() const;            // multi-line canonical format
    std::string to_line() const;            // one-line form used in manifests
    static OrderedStructure from_text(const std::string& text);
    static OrderedStructure from_line(const std::string& line);

    static OrderedStructure linear_order(int n);
    // Inserts both orientations of every edge; rejects loops.
    static OrderedStructure ordered_graph(int n, const std::vector<std::pair<int, int>>& edges);
    static OrderedStructure complete_graph(int n);

    // True when the single binary relation `rel` holds of (i, j).
    bool related(int rel, int i, int j) const;
    // Row-major adjacency bitsets for a binary relation; words per row is
    // ceil(size/64). Only valid for arity-2 relations.
    std::vector<uint64_t> adjacency_bits(int rel) const;

private:
    Signature sig_;
    int size_ = 0;
    std::vector<std::vector<Tuple>> tables_;
};

// A strictly increasing index map, one target index per source element.
struct Embedding {
    std::vector<int> map;

    int size() const { return static_cast<int>(map.size()); }
    int operator()(int i) const { return map[i]; }

    static Embedding identity(int n);
    friend bool operator==(const Embedding&, const Embedding&) = default;
};

// outer after inner: source of `inner` to target of `outer`.
Embedding compose(const Embedding& outer, const Embedding& inner);

// True iff emb is strictly increasing, in range, and preserves AND reflects
// every relation of `a` into `b`.
bool is_embedding(const OrderedStructure& a, const OrderedStructure& b, const Embedding& emb);

// Induced substructure on the sorted index set `idx`, relabeled to {0..|idx|-1}.
OrderedStructure restrict_to(const OrderedStructure& s, const std::vector<int>& idx);

struct CopySet {
    OrderedStructure pattern;
    OrderedStructure base;
    // Sorted index subsets of the base, in lexicographic order.
    std::vector<std::vector<int>> copies;
};

// All index subsets of b inducing a copy of a, lexicographically ordered.
CopySet enumerate_copies(const OrderedStructure& a, const OrderedStructure& b);
// The lexicographically least copy, if any.
std::optional<Embedding> leftmost_copy(const OrderedStructure& a, const OrderedStructure& b);
// Existence check with early exit.
bool embeds_into(const OrderedStructure& a, const OrderedStructure& b);

// Order-prescribed disjoint sum. `interleaving` lists, left to right, which
// side each merged point comes from (false = x, true = y); it must contain
// exactly size(x) falses and size(y) trues. No cross relations are added.
struct DisjointSum {
    OrderedStructure sum;
    Embedding from_x;
    Embedding from_y;
};
DisjointSum disjoint_sum(const OrderedStructure& x, const OrderedStructure& y,
                         const std::vector<bool>& interleaving);
// x entirely before y.
DisjointSum disjoint_sum(const OrderedStructure& x, const OrderedStructure& y);

// Lexicographic successor over k-subsets of {0..n-1}; returns false at the end.
bool next_subset(std::vector<int>& subset, int n);
// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> all_subsets(int n, int k);

}  // namespace ramseyforge
