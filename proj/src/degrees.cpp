#include "ramseyforge/degrees.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace ramseyforge {

std::vector<std::vector<int>> compositions(int m) {
    if (m < 0) throw DomainError("compositions: negative m");
    std::vector<std::vector<int>> out;
    if (m == 0) return out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int remaining) -> void {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (int part = 1; part <= remaining; ++part) {
            cur.push_back(part);
            self(self, remaining - part);
            cur.pop_back();
        }
    };
    rec(rec, m);
    return out;
}

uint64_t degree_formula_j1(const FraisseClass& cls, int m, uint64_t candidate_budget) {
    if (m < 1) throw DomainError("degree_formula_j1: m must be >= 1");
    std::vector<uint64_t> iso(m + 1, 0);
    for (int s = 1; s <= m; ++s) iso[s] = cls.iso_count(s, candidate_budget).count;
    uint64_t total = 0;
    for (const auto& comp : compositions(m)) {
        uint64_t prod = 1;
        for (int part : comp) prod *= iso[part];
        total += prod;
    }
    return total;
}

uint64_t degree_formula_j2(const FraisseClass& k0, const FraisseClass& k1,
                           uint64_t candidate_budget) {
    uint64_t i0 = k0.iso_count(2, candidate_budget).count;
    uint64_t i1 = k1.iso_count(2, candidate_budget).count;
    return 1 + i0 + i1 + 2 * i0 * i1;
}

namespace {

// Cumulative same-block type registries per q. Levels are initial-segment
// substructures of their successors, so the type set at level n is the set
// of codes seen over levels 0..n; for a single binary relation the induced
// substructure on q points packs into q*q bits.
class BlockTypeCounter {
public:
    BlockTypeCounter(const GeneratingSequence& seq, int q_max)
        : seq_(seq), q_max_(q_max), counts_(q_max + 1) {
        fast_ = !seq.omega() && seq.class_count() == 1 &&
                seq.class_of(0).signature().relations.size() == 1 &&
                seq.class_of(0).signature().relations[0].arity == 2 && q_max <= 5;
        if (fast_) {
            seen_bits_.resize(q_max + 1);
            for (int q = 1; q <= q_max_; ++q)
                seen_bits_[q].assign(size_t{1} << (q * q), false);
        } else {
            seen_codes_.resize(q_max + 1);
        }
        counts_per_level_.assign(q_max + 1, {});
    }

    // Extends the registries through level `n` (inclusive); levels must be
    // fed in increasing order.
    void advance_to(int n) {
        while (next_level_ <= n) {
            for (int q = 1; q <= q_max_; ++q) add_level(next_level_, q);
            for (int q = 1; q <= q_max_; ++q) counts_per_level_[q].push_back(counts_[q]);
            ++next_level_;
        }
    }

    uint64_t count(int level, int q) const {
        if (q == 0) return 1;
        return counts_per_level_[q][level];
    }

private:
    void add_level(int n, int q) {
        if (fast_) {
            add_level_fast(n, q);
        } else {
            add_level_general(n, q);
        }
    }

    // J = 1, one binary relation: recursive combination scan over new points
    // carrying partial adjacency codes.
    void add_level_fast(int n, int q) {
        const OrderedStructure& s = seq_.level(n, 0);
        int size = s.size();
        int old_size = n == 0 ? 0 : seq_.level(n - 1, 0).size();
        if (size < q) return;
        adj_ = s.adjacency_bits(0);
        words_ = (size + 63) / 64;
        pick_.assign(q, 0);
        auto& seen = seen_bits_[q];
        auto& count = counts_[q];

        auto adj = [&](int i, int j) {
            return (adj_[static_cast<size_t>(i) * words_ + j / 64] >> (j % 64)) & 1;
        };
        // pos: next slot to fill; partial: code over filled slots; fresh:
        // whether a point >= old_size has been used (required once).
        auto rec = [&](auto&& self, int pos, int lo, uint64_t partial, bool fresh) -> void {
            if (pos == q) {
                if (!seen[partial]) {
                    seen[partial] = true;
                    ++count;
                }
                return;
            }
            int remaining = q - pos - 1;
            for (int v = lo; v + remaining < size; ++v) {
                if (!fresh && pos == q - 1 && v < old_size) continue;
                uint64_t code = partial;
                for (int a = 0; a < pos; ++a) {
                    code |= uint64_t{adj(pick_[a], v)} << (a * q + pos);
                    code |= uint64_t{adj(v, pick_[a])} << (pos * q + a);
                }
                code |= uint64_t{adj(v, v)} << (pos * q + pos);
                pick_[pos] = v;
                self(self, pos + 1, v + 1, code, fresh || v >= old_size);
            }
        };
        rec(rec, 0, 0, 0, false);
    }

    // General path: every q-subset of point vectors at the level, coded by
    // per-coordinate ranks and induced substructures.
    void add_level_general(int n, int q) {
        int coords = seq_.coords_at(n);
        std::vector<int> sizes(coords);
        uint64_t vector_count = 1;
        for (int j = 0; j < coords; ++j) {
            sizes[j] = seq_.level(n, j).size();
            vector_count *= static_cast<uint64_t>(sizes[j]);
        }
        if (vector_count < static_cast<uint64_t>(q)) return;
        // Vectors in lexicographic order.
        std::vector<std::vector<int>> vectors;
        std::vector<int> cur(coords, 0);
        while (true) {
            vectors.push_back(cur);
            int j = coords - 1;
            while (j >= 0 && cur[j] + 1 == sizes[j]) cur[j--] = 0;
            if (j < 0) break;
            ++cur[j];
        }

        auto& seen = seen_codes_[q];
        auto& count = counts_[q];
        std::vector<int> subset(q);
        for (int i = 0; i < q; ++i) subset[i] = i;
        do {
            std::string code = type_code(n, vectors, subset);
            if (seen.insert(std::move(code)).second) ++count;
        } while (next_subset(subset, static_cast<int>(vectors.size())));
    }

    std::string type_code(int n, const std::vector<std::vector<int>>& vectors,
                          const std::vector<int>& subset) {
        int coords = seq_.coords_at(n);
        int q = static_cast<int>(subset.size());
        std::string code;
        for (int j = 0; j < coords; ++j) {
            std::vector<int> pts;
            for (int i = 0; i < q; ++i) pts.push_back(vectors[subset[i]][j]);
            std::vector<int> distinct(pts);
            std::sort(distinct.begin(), distinct.end());
            distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
            code += "c";
            for (int i = 0; i < q; ++i) {
                int rank = static_cast<int>(
                    std::lower_bound(distinct.begin(), distinct.end(), pts[i]) - distinct.begin());
                code += std::to_string(rank) + ".";
            }
            code += "/" + restrict_to(seq_.level(n, j), distinct).to_line() + ";";
        }
        return code;
    }

    const GeneratingSequence& seq_;
    int q_max_;
    bool fast_ = false;
    int next_level_ = 0;
    std::vector<uint64_t> counts_;
    std::vector<std::vector<uint64_t>> counts_per_level_;  // [q][level]
    std::vector<std::vector<bool>> seen_bits_;
    std::vector<std::set<std::string>> seen_codes_;
    std::vector<uint64_t> adj_;
    int words_ = 0;
    std::vector<int> pick_;
};

}  // namespace

uint64_t block_type_count(const GeneratingSequence& seq, int level, int q) {
    if (seq.omega()) throw DomainError("block_type_count: finite J only");
    if (level < 0 || level >= seq.depth()) throw DomainError("block_type_count: level out of range");
    if (q < 1) throw DomainError("block_type_count: q must be >= 1");
    BlockTypeCounter counter(seq, q);
    counter.advance_to(level);
    return counter.count(level, q);
}

OracleResult degree_oracle(const GeneratingSequence& seq, int m, int depth_cap) {
    if (seq.omega()) throw DomainError("degree_oracle: finite J only");
    if (m < 1) throw DomainError("degree_oracle: m must be >= 1");
    if (depth_cap > seq.depth())
        throw DomainError("degree_oracle: depth cap exceeds built prefix");

    BlockTypeCounter counter(seq, m);
    auto comps = compositions(m);

    auto count_at = [&](int depth) -> uint64_t {
        counter.advance_to(depth - 1);
        uint64_t total = 0;
        for (const auto& comp : comps) {
            int l = static_cast<int>(comp.size());
            if (l > depth) continue;
            uint64_t prod = 1;
            for (int i = 0; i < l && prod; ++i) prod *= counter.count(depth - l + i, comp[i]);
            total += prod;
        }
        return total;
    };

    uint64_t prev2 = 0, prev1 = 0;
    bool have2 = false, have1 = false;
    for (int depth = std::max(1, m); depth <= depth_cap; ++depth) {
        uint64_t value = count_at(depth);
        if (have2 && have1 && prev2 == prev1 && prev1 == value && depth >= m + 2)
            return {value, depth};
        prev2 = prev1;
        have2 = have1;
        prev1 = value;
        have1 = true;
    }
    throw StabilizationError(
        "degree oracle did not stabilize across two depth increments by depth " +
        std::to_string(depth_cap) + "; deepen the prefix");
}

std::string space_name(const std::vector<FraisseClass>& classes) {
    bool all_lo = true;
    for (const auto& c : classes) all_lo = all_lo && c.kind() == ClassKind::LinearOrders;
    if (all_lo) return "H^" + std::to_string(classes.size());
    std::string out;
    for (size_t j = 0; j < classes.size(); ++j) out += (j ? "x" : "") + classes[j].name();
    return out;
}

std::optional<uint64_t> reference_degree(const std::vector<FraisseClass>& classes, int m) {
    bool all_lo = true;
    for (const auto& c : classes) all_lo = all_lo && c.kind() == ClassKind::LinearOrders;
    if (all_lo && classes.size() == 1 && m >= 2) return uint64_t{1} << (m - 1);
    if (all_lo && m == 2) {
        uint64_t p = 1;
        for (size_t i = 0; i < classes.size(); ++i) p *= 3;
        return (p - 1) / 2 + 1;
    }
    if (all_lo && classes.size() == 2 && m == 3) return 24;
    if (classes.size() == 1 && classes[0].kind() == ClassKind::OrderedCliqueFree &&
        classes[0].param() == 3) {
        if (m == 2) return 3;
        if (m == 3) return 12;
        if (m == 4) return 35;
    }
    return std::nullopt;
}

DegreeReport degree_report(const std::vector<FraisseClass>& classes, int m, int depth_cap,
                           uint64_t candidate_budget) {
    DegreeReport report;
    report.space = space_name(classes);
    report.m = m;
    if (classes.size() == 1)
        report.formula = degree_formula_j1(classes[0], m, candidate_budget);
    else if (classes.size() == 2 && m == 2)
        report.formula = degree_formula_j2(classes[0], classes[1], candidate_budget);

    GeneratingSequence seq =
        GeneratingSequence::build(classes, depth_cap - 1, candidate_budget, false);
    OracleResult oracle = degree_oracle(seq, m, depth_cap);
    report.oracle = oracle.value;
    report.oracle_depth = oracle.stabilized_at;
    report.reference = reference_degree(classes, m);
    report.agreement = !report.formula || *report.formula == report.oracle;
    report.discrepancy = report.reference && *report.reference != report.oracle;
    if (report.discrepancy)
        report.note = "reference value " + std::to_string(*report.reference) +
                      " differs from the computed degree " + std::to_string(report.oracle);
    return report;
}

std::vector<ConjectureRow> conjecture_table(int n_max, int depth_cap) {
    std::vector<ConjectureRow> rows;
    for (int n = 1; n <= n_max; ++n) {
        std::vector<FraisseClass> classes(n, FraisseClass::linear_orders());
        GeneratingSequence seq = GeneratingSequence::build(classes, depth_cap - 1, 1 << 20, false);
        OracleResult oracle = degree_oracle(seq, 2, depth_cap);
        uint64_t p = 1;
        for (int i = 0; i < n; ++i) p *= 3;
        uint64_t predicted = (p - 1) / 2 + 1;
        rows.push_back({n, predicted, oracle.value, predicted == oracle.value});
    }
    return rows;
}

}  // namespace ramseyforge
