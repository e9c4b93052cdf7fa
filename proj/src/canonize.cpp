#include "ramseyforge/canonize.hpp"

#include <algorithm>
#include <cmath>

namespace ramseyforge {

void EquivalenceRelationTable::validate(int expected_domain) const {
    if (domain_size() != expected_domain)
        throw DomainError("equivalence relation covers " + std::to_string(domain_size()) +
                          " elements, domain has " + std::to_string(expected_domain));
}

std::vector<std::vector<int>> subsets_lex(int n) {
    std::vector<std::vector<int>> out;
    for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if ((mask >> i) & 1) s.push_back(i);
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool er_canonization_holds(const EquivalenceRelationTable& e, int m, int n,
                           const std::vector<int>& s, const std::vector<int>& index_set) {
    auto domain = all_subsets(m, n);
    std::vector<int> in_domain;  // indices of n-subsets inside s
    for (size_t d = 0; d < domain.size(); ++d) {
        if (std::includes(s.begin(), s.end(), domain[d].begin(), domain[d].end()))
            in_domain.push_back(static_cast<int>(d));
    }
    for (size_t i = 0; i < in_domain.size(); ++i) {
        for (size_t j = i + 1; j < in_domain.size(); ++j) {
            const auto& b = domain[in_domain[i]];
            const auto& c = domain[in_domain[j]];
            bool agree = true;
            for (int idx : index_set) agree = agree && b[idx] == c[idx];
            if (agree != e.same(in_domain[i], in_domain[j])) return false;
        }
    }
    return true;
}

std::optional<ErCanonization> er_canonize(const EquivalenceRelationTable& e, int m, int n, int l) {
    if (n > l) throw DomainError("er_canonize requires n <= l");
    if (l > m) throw DomainError("er_canonize requires l <= m");
    auto domain = all_subsets(m, n);
    e.validate(static_cast<int>(domain.size()));

    auto index_sets = subsets_lex(n);
    for (const auto& s : all_subsets(m, l)) {
        for (const auto& index_set : index_sets) {
            if (er_canonization_holds(e, m, n, s, index_set))
                return ErCanonization{s, index_set};
        }
    }
    return std::nullopt;
}

std::optional<int> er_threshold(int n, int l, int m_cap, uint64_t partition_budget) {
    if (n > l) throw DomainError("er_threshold requires n <= l");
    for (int m = l + 1; m <= m_cap; ++m) {
        uint64_t domain = all_subsets(m, n).size();
        // Bell-number budget guard via the restricted-growth enumeration size.
        double bell_log2 = 0;
        {
            // Crude upper bound: domain * log2(domain); enough to refuse
            // hopeless inputs before enumerating.
            bell_log2 = domain <= 1 ? 0 : static_cast<double>(domain) * std::log2((double)domain);
            if (bell_log2 > 64 || domain > 20)
                throw BudgetError("er_threshold: partitions of " + std::to_string(domain) +
                                      " elements exceed any feasible budget",
                                  bell_log2, std::log2((double)partition_budget));
        }
        uint64_t enumerated = 0;
        bool all_canonical = true;
        std::vector<int> rgs(domain, 0);
        // Restricted growth strings: rgs[0]=0, rgs[i] <= 1 + max(previous).
        auto max_prefix = [&](size_t i) {
            int mx = -1;
            for (size_t t = 0; t < i; ++t) mx = std::max(mx, rgs[t]);
            return mx;
        };
        while (true) {
            if (++enumerated > partition_budget)
                throw BudgetError("er_threshold: partition budget exceeded at m=" + std::to_string(m),
                                  0, std::log2((double)partition_budget));
            EquivalenceRelationTable e{rgs};
            if (!er_canonize(e, m, n, l)) {
                all_canonical = false;
                break;
            }
            // Next restricted growth string.
            int i = static_cast<int>(domain) - 1;
            while (i > 0 && rgs[i] == max_prefix(i) + 1) --i;
            if (i == 0) break;
            ++rgs[i];
            for (size_t t = i + 1; t < domain; ++t) rgs[t] = 0;
        }
        if (all_canonical) return m;
    }
    return std::nullopt;
}

namespace {

std::vector<std::vector<int>> product_tuples(const std::vector<size_t>& sizes) {
    std::vector<std::vector<int>> out;
    for (size_t s : sizes)
        if (s == 0) return out;
    std::vector<int> cur(sizes.size(), 0);
    while (true) {
        out.push_back(cur);
        int j = static_cast<int>(sizes.size()) - 1;
        while (j >= 0 && cur[j] + 1 == static_cast<int>(sizes[j])) cur[j--] = 0;
        if (j < 0) break;
        ++cur[j];
    }
    return out;
}

}  // namespace

bool product_canonization_holds(const std::vector<OrderedStructure>& a,
                                const std::vector<OrderedStructure>& c,
                                const EquivalenceRelationTable& e,
                                const ProductCanonization& canon) {
    const size_t J = a.size();
    std::vector<std::vector<std::vector<int>>> a_copies(J);
    std::vector<size_t> sizes(J);
    for (size_t j = 0; j < J; ++j) {
        a_copies[j] = enumerate_copies(a[j], c[j]).copies;
        sizes[j] = a_copies[j].size();
    }
    auto all_tuples = product_tuples(sizes);

    std::vector<int> restricted;
    for (size_t t = 0; t < all_tuples.size(); ++t) {
        bool inside = true;
        for (size_t j = 0; j < J && inside; ++j)
            inside = std::includes(canon.b_prime[j].begin(), canon.b_prime[j].end(),
                                   a_copies[j][all_tuples[t][j]].begin(),
                                   a_copies[j][all_tuples[t][j]].end());
        if (inside) restricted.push_back(static_cast<int>(t));
    }

    for (size_t i = 0; i < restricted.size(); ++i) {
        for (size_t k = i + 1; k < restricted.size(); ++k) {
            bool agree = true;
            for (size_t j = 0; j < J && agree; ++j) {
                const auto& x = a_copies[j][all_tuples[restricted[i]][j]];
                const auto& y = a_copies[j][all_tuples[restricted[k]][j]];
                for (int idx : canon.index_sets[j]) agree = agree && x[idx] == y[idx];
            }
            if (agree != e.same(restricted[i], restricted[k])) return false;
        }
    }
    return true;
}

std::optional<ProductCanonization> product_canonize(const std::vector<OrderedStructure>& a,
                                                    const std::vector<OrderedStructure>& b,
                                                    const std::vector<OrderedStructure>& c,
                                                    const EquivalenceRelationTable& e) {
    const size_t J = a.size();
    if (b.size() != J || c.size() != J || J == 0)
        throw DomainError("product_canonize: coordinate lists must be nonempty and equal length");

    std::vector<std::vector<std::vector<int>>> a_copies(J), b_copies(J);
    std::vector<size_t> a_sizes(J);
    for (size_t j = 0; j < J; ++j) {
        if (!embeds_into(a[j], b[j]) || !embeds_into(b[j], c[j]))
            throw DomainError("product_canonize: chain fails at coordinate " + std::to_string(j));
        a_copies[j] = enumerate_copies(a[j], c[j]).copies;
        b_copies[j] = enumerate_copies(b[j], c[j]).copies;
        a_sizes[j] = a_copies[j].size();
    }
    e.validate(static_cast<int>(product_tuples(a_sizes).size()));

    std::vector<std::vector<std::vector<int>>> index_choices(J);
    for (size_t j = 0; j < J; ++j) index_choices[j] = subsets_lex(a[j].size());

    std::vector<size_t> b_counts(J), i_counts(J);
    for (size_t j = 0; j < J; ++j) {
        b_counts[j] = b_copies[j].size();
        i_counts[j] = index_choices[j].size();
    }
    for (const auto& b_pick : product_tuples(b_counts)) {
        ProductCanonization canon;
        canon.b_prime.resize(J);
        for (size_t j = 0; j < J; ++j) canon.b_prime[j] = b_copies[j][b_pick[j]];
        for (const auto& i_pick : product_tuples(i_counts)) {
            canon.index_sets.clear();
            for (size_t j = 0; j < J; ++j) canon.index_sets.push_back(index_choices[j][i_pick[j]]);
            if (product_canonization_holds(a, c, e, canon)) return canon;
        }
    }
    return std::nullopt;
}

bool block_related(const BlockRelation& rel, const Block& x, const Block& y) {
    if (rel.total) return true;
    if (x.depth != y.depth) return false;
    for (size_t j = 0; j < rel.index_sets.size(); ++j)
        for (int idx : rel.index_sets[j])
            if (x.points[j][idx] != y.points[j][idx]) return false;
    return true;
}

std::vector<BlockRelation> canonical_block_relations(const GeneratingSequence& seq, int position) {
    std::vector<BlockRelation> out;
    out.push_back(BlockRelation{true, {}});
    int coords = seq.coords_at(position);
    std::vector<std::vector<std::vector<int>>> choices(coords);
    std::vector<size_t> counts(coords);
    for (int j = 0; j < coords; ++j) {
        choices[j] = subsets_lex(seq.level(position, j).size());
        counts[j] = choices[j].size();
    }
    std::vector<size_t> idx(coords, 0);
    while (true) {
        BlockRelation rel;
        rel.total = false;
        for (int j = 0; j < coords; ++j) rel.index_sets.push_back(choices[j][idx[j]]);
        out.push_back(std::move(rel));
        int j = coords - 1;
        while (j >= 0 && idx[j] + 1 == counts[j]) idx[j--] = 0;
        if (j < 0) break;
        ++idx[j];
    }
    return out;
}

std::optional<BlockCanonization> block_canonize(const GeneratingSequence& seq,
                                                const Approximation& prefix, int n,
                                                const EquivalenceRelationTable& e,
                                                uint64_t budget) {
    auto domain = enumerate_AR_n(seq, prefix, n, budget);
    e.validate(static_cast<int>(domain.size()));

    std::vector<std::vector<BlockRelation>> relation_choices(n);
    std::vector<size_t> rel_counts(n);
    for (int i = 0; i < n; ++i) {
        relation_choices[i] = canonical_block_relations(seq, i);
        rel_counts[i] = relation_choices[i].size();
    }

    for (int q = prefix.length(); q >= n; --q) {
        for (const auto& c_prefix : enumerate_AR_n(seq, prefix, q, budget)) {
            std::vector<int> restricted;
            for (size_t d = 0; d < domain.size(); ++d)
                if (le_fin(domain[d], c_prefix)) restricted.push_back(static_cast<int>(d));
            if (restricted.empty()) continue;

            std::vector<size_t> pick(n, 0);
            while (true) {
                bool holds = true;
                for (size_t i = 0; i < restricted.size() && holds; ++i) {
                    for (size_t k = i + 1; k < restricted.size() && holds; ++k) {
                        const auto& x = domain[restricted[i]];
                        const auto& y = domain[restricted[k]];
                        bool related = true;
                        for (int pos = 0; pos < n && related; ++pos)
                            related = block_related(relation_choices[pos][pick[pos]],
                                                    x.blocks[pos], y.blocks[pos]);
                        holds = related == e.same(restricted[i], restricted[k]);
                    }
                }
                if (holds) {
                    BlockCanonization canon;
                    canon.c_prefix = c_prefix;
                    for (int pos = 0; pos < n; ++pos)
                        canon.relations.push_back(relation_choices[pos][pick[pos]]);
                    return canon;
                }
                int pos = n - 1;
                while (pos >= 0 && pick[pos] + 1 == rel_counts[pos]) pick[pos--] = 0;
                if (pos < 0) break;
                ++pick[pos];
            }
        }
    }
    return std::nullopt;
}

FrontReport validate_front(const std::vector<Approximation>& front, const GeneratingSequence& seq,
                           const Approximation& prefix, FrontMode mode) {
    FrontReport report;
    for (size_t i = 0; i < front.size() && report.antichain; ++i) {
        for (size_t j = 0; j < front.size(); ++j) {
            if (i == j) continue;
            bool below = mode == FrontMode::NashWilliams
                             ? (front[i].length() <= front[j].length() &&
                                front[j].prefix(front[i].length()) == front[i])
                             : le_fin(front[i], front[j]);
            if (below) {
                report.antichain = false;
                report.antichain_witness = {front[i], front[j]};
                break;
            }
        }
    }

    // Coverage over maximal block paths through the prefix; a path whose
    // current prefix is in F is covered and needs no extension.
    auto in_front = [&](const Approximation& a) {
        return std::find(front.begin(), front.end(), a) != front.end();
    };
    auto walk = [&](auto&& self, const Approximation& a, int last_position) -> void {
        if (!report.coverage) return;
        if (in_front(a)) return;
        bool extended = false;
        for (int pos = last_position + 1; pos < prefix.length(); ++pos) {
            for (const auto& b : block_candidates(seq, prefix, a.length(), pos)) {
                extended = true;
                Approximation next = a;
                next.blocks.push_back(b);
                self(self, next, pos);
                if (!report.coverage) return;
            }
        }
        if (!extended) {
            report.coverage = false;
            report.uncovered_path = a;
        }
    };
    Approximation empty;
    walk(walk, empty, -1);
    return report;
}

std::vector<ProjectedBlock> apply_projections(const std::vector<CanonicalProjection>& projections,
                                               const Approximation& a) {
    std::vector<ProjectedBlock> out;
    for (int i = 0; i < a.length(); ++i) {
        const CanonicalProjection& p = projections.at(i);
        if (p.kind == CanonicalProjection::Kind::Empty) continue;
        ProjectedBlock pb;
        pb.depth = a.blocks[i].depth;
        for (size_t j = 0; j < p.index_sets.size(); ++j) {
            std::vector<int> selected;
            for (int idx : p.index_sets[j]) selected.push_back(a.blocks[i].points[j].at(idx));
            pb.selected_points.push_back(std::move(selected));
        }
        out.push_back(std::move(pb));
    }
    return out;
}

InnerNwReport validate_inner_nw(const InnerMap& phi, const std::vector<Approximation>& front,
                                const GeneratingSequence& seq) {
    InnerNwReport report;
    if (phi.per_element.size() != front.size()) {
        report.inner = false;
        report.inner_detail = "map has " + std::to_string(phi.per_element.size()) +
                              " entries for a front of " + std::to_string(front.size());
        return report;
    }
    for (size_t i = 0; i < front.size() && report.inner; ++i) {
        const auto& projections = phi.per_element[i];
        if (static_cast<int>(projections.size()) != front[i].length()) {
            report.inner = false;
            report.inner_detail = "element " + std::to_string(i) +
                                  " needs one projection per block position";
            break;
        }
        for (int pos = 0; pos < front[i].length() && report.inner; ++pos) {
            const auto& p = projections[pos];
            if (p.kind == CanonicalProjection::Kind::Empty) continue;
            if (static_cast<int>(p.index_sets.size()) != seq.coords_at(pos)) {
                report.inner = false;
                report.inner_detail = "element " + std::to_string(i) + " position " +
                                      std::to_string(pos) + " has wrong coordinate count";
                break;
            }
            for (int j = 0; j < seq.coords_at(pos); ++j) {
                for (int idx : p.index_sets[j]) {
                    if (idx < 0 || idx >= seq.level(pos, j).size()) {
                        report.inner = false;
                        report.inner_detail = "element " + std::to_string(i) + " position " +
                                              std::to_string(pos) + " selects index out of range";
                        break;
                    }
                }
            }
        }
    }
    if (!report.inner) return report;

    std::vector<std::vector<ProjectedBlock>> images;
    images.reserve(front.size());
    for (size_t i = 0; i < front.size(); ++i)
        images.push_back(apply_projections(phi.per_element[i], front[i]));

    // phi(c) must not be a proper initial segment of phi(b) when they differ:
    // initial segments of phi(b) are its images over the prefixes r_l(b).
    for (size_t bi = 0; bi < front.size() && report.nash_williams; ++bi) {
        for (size_t ci = 0; ci < front.size(); ++ci) {
            if (bi == ci || images[bi] == images[ci]) continue;
            for (int l = 0; l < front[bi].length(); ++l) {
                std::vector<CanonicalProjection> head(phi.per_element[bi].begin(),
                                                      phi.per_element[bi].begin() + l);
                auto segment = apply_projections(head, front[bi].prefix(l));
                if (segment != images[bi] && segment == images[ci]) {
                    report.nash_williams = false;
                    report.nw_witness = {static_cast<int>(ci), static_cast<int>(bi)};
                    break;
                }
            }
            if (!report.nash_williams) break;
        }
    }
    return report;
}

}  // namespace ramseyforge
