#include "ramseyforge/ramsey.hpp"

#include <algorithm>
#include <cmath>

#include "ramseyforge/genseq.hpp"

namespace ramseyforge {

void ArrowQuery::validate() const {
    if (a.size() != b.size() || a.size() != c.size() || a.empty())
        throw DomainError("arrow query: coordinate lists must be nonempty and equal length");
    if (colors < 1) throw DomainError("arrow query: colors must be >= 1");
    for (size_t j = 0; j < a.size(); ++j) {
        if (!embeds_into(a[j], b[j]) || !embeds_into(b[j], c[j]))
            throw DomainError("arrow query: embeddability chain fails at coordinate " +
                              std::to_string(j));
    }
}

namespace {

// Cartesian product of per-coordinate copy lists, lexicographic by coordinate.
std::vector<std::vector<int>> product_indices(const std::vector<size_t>& sizes) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(sizes.size(), 0);
    for (size_t s : sizes)
        if (s == 0) return out;
    while (true) {
        out.push_back(cur);
        int j = static_cast<int>(sizes.size()) - 1;
        while (j >= 0 && cur[j] + 1 == static_cast<int>(sizes[j])) cur[j--] = 0;
        if (j < 0) break;
        ++cur[j];
    }
    return out;
}

bool subset_of(const std::vector<int>& small, const std::vector<int>& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

ArrowCost arrow_cost(const ArrowQuery& q) {
    ArrowCost cost;
    cost.product_copies = 1;
    for (size_t j = 0; j < q.a.size(); ++j) {
        uint64_t n = enumerate_copies(q.a[j], q.c[j]).copies.size();
        cost.product_copies *= n;
    }
    cost.colorings_log2 = static_cast<double>(cost.product_copies) * std::log2((double)q.colors);
    return cost;
}

bool arrow_check(const ArrowQuery& q, uint64_t coloring_budget) {
    q.validate();
    const size_t J = q.a.size();

    std::vector<std::vector<std::vector<int>>> a_copies(J), b_copies(J);
    std::vector<size_t> a_sizes(J), b_sizes(J);
    for (size_t j = 0; j < J; ++j) {
        a_copies[j] = enumerate_copies(q.a[j], q.c[j]).copies;
        b_copies[j] = enumerate_copies(q.b[j], q.c[j]).copies;
        a_sizes[j] = a_copies[j].size();
        b_sizes[j] = b_copies[j].size();
    }
    auto a_products = product_indices(a_sizes);
    auto b_products = product_indices(b_sizes);
    const uint64_t n_copies = a_products.size();

    double cost_log2 = static_cast<double>(n_copies) * std::log2((double)q.colors);
    double budget_log2 = std::log2((double)coloring_budget);
    if (q.colors > 1 && cost_log2 > budget_log2)
        throw BudgetError("arrow_check: " + std::to_string(q.colors) + "^" +
                              std::to_string(n_copies) + " colorings exceed budget",
                          cost_log2, budget_log2);
    if (q.colors == 1) return true;  // one color is trivially homogeneous

    // Per product B-copy, the A-product copies lying inside it, as index sets.
    std::vector<std::vector<uint32_t>> inside(b_products.size());
    for (size_t bi = 0; bi < b_products.size(); ++bi) {
        // Within-coordinate A-copies inside the chosen B-copy.
        std::vector<std::vector<int>> member(J);
        for (size_t j = 0; j < J; ++j) {
            for (size_t ai = 0; ai < a_copies[j].size(); ++ai)
                if (subset_of(a_copies[j][ai], b_copies[j][b_products[bi][j]]))
                    member[j].push_back(static_cast<int>(ai));
        }
        std::vector<size_t> msizes(J);
        for (size_t j = 0; j < J; ++j) msizes[j] = member[j].size();
        for (const auto& pick : product_indices(msizes)) {
            // Locate the global index of this A-product copy.
            uint64_t idx = 0;
            for (size_t j = 0; j < J; ++j) idx = idx * a_sizes[j] + member[j][pick[j]];
            inside[bi].push_back(static_cast<uint32_t>(idx));
        }
    }

    const int k = q.colors;
    if (k == 2 && n_copies <= 64) {
        std::vector<uint64_t> masks(b_products.size(), 0);
        for (size_t bi = 0; bi < b_products.size(); ++bi)
            for (uint32_t idx : inside[bi]) masks[bi] |= uint64_t{1} << idx;
        uint64_t total = n_copies == 64 ? ~uint64_t{0} : ((uint64_t{1} << n_copies) - 1);
        for (uint64_t coloring = 0;; ++coloring) {
            bool mono = false;
            for (uint64_t m : masks) {
                uint64_t bits = coloring & m;
                if (bits == 0 || bits == m) {
                    mono = true;
                    break;
                }
            }
            if (!mono) return false;
            if (coloring == total) break;
        }
        return true;
    }

    std::vector<int> coloring(n_copies, 0);
    while (true) {
        bool mono = false;
        for (const auto& members : inside) {
            bool same = true;
            for (size_t i = 1; i < members.size(); ++i)
                if (coloring[members[i]] != coloring[members[0]]) {
                    same = false;
                    break;
                }
            if (same) {
                mono = true;
                break;
            }
        }
        if (!mono) return false;
        int pos = static_cast<int>(n_copies) - 1;
        while (pos >= 0 && coloring[pos] == k - 1) coloring[pos--] = 0;
        if (pos < 0) break;
        ++coloring[pos];
    }
    return true;
}

std::optional<std::vector<OrderedStructure>> find_witness(
    const std::vector<FraisseClass>& classes, const std::vector<OrderedStructure>& a,
    const std::vector<OrderedStructure>& b, int colors, int size_cap, uint64_t coloring_budget) {
    const size_t J = classes.size();
    if (a.size() != J || b.size() != J || J == 0)
        throw DomainError("find_witness: coordinate lists must match the class list");
    int min_total = 0;
    std::vector<int> min_size(J);
    for (size_t j = 0; j < J; ++j) {
        min_size[j] = b[j].size();
        min_total += b[j].size();
    }

    for (int total = min_total; total <= size_cap * static_cast<int>(J); ++total) {
        // All size vectors summing to `total` with sizes[j] in
        // [min_size[j], size_cap], lexicographically.
        std::vector<std::vector<int>> size_vectors;
        std::vector<int> cur(J);
        auto gen = [&](auto&& self, size_t j, int remaining) -> void {
            if (j + 1 == J) {
                if (remaining >= min_size[j] && remaining <= size_cap) {
                    cur[j] = remaining;
                    size_vectors.push_back(cur);
                }
                return;
            }
            for (int s = min_size[j]; s <= std::min(size_cap, remaining); ++s) {
                cur[j] = s;
                self(self, j + 1, remaining - s);
            }
        };
        gen(gen, 0, total);

        for (const auto& sv : size_vectors) {
            std::vector<std::vector<OrderedStructure>> candidates(J);
            bool feasible = true;
            for (size_t j = 0; j < J; ++j) {
                candidates[j] = classes[j].enumerate_members(sv[j], coloring_budget);
                std::erase_if(candidates[j],
                              [&](const OrderedStructure& c) { return !embeds_into(b[j], c); });
                feasible = feasible && !candidates[j].empty();
            }
            if (!feasible) continue;
            std::vector<size_t> counts(J);
            for (size_t j = 0; j < J; ++j) counts[j] = candidates[j].size();
            for (const auto& pick : product_indices(counts)) {
                ArrowQuery q;
                q.colors = colors;
                q.a = a;
                q.b = b;
                for (size_t j = 0; j < J; ++j) q.c.push_back(candidates[j][pick[j]]);
                if (arrow_check(q, coloring_budget)) return q.c;
            }
        }
    }
    return std::nullopt;
}

bool pigeonhole_check(const GeneratingSequence& seq, int k, int m, int n,
                      uint64_t coloring_budget) {
    if (!(k < m && m < n)) throw DomainError("pigeonhole_check requires k < m < n");
    if (n >= seq.depth()) throw DomainError("pigeonhole_check: level n beyond built depth");
    ArrowQuery q;
    q.colors = 2;
    for (int j = 0; j < seq.coords_at(k); ++j) {
        q.a.push_back(seq.level(k, j));
        q.b.push_back(seq.level(m, j));
        q.c.push_back(seq.level(n, j));
    }
    return arrow_check(q, coloring_budget);
}

}  // namespace ramseyforge
