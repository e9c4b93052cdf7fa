#include "ramseyforge/genseq.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ramseyforge/ramsey.hpp"

namespace ramseyforge {

Approximation Approximation::prefix(int n) const {
    if (n < 0 || n > length()) throw DomainError("approximation prefix length out of range");
    Approximation out;
    out.blocks.assign(blocks.begin(), blocks.begin() + n);
    return out;
}

std::string Approximation::to_line() const {
    std::string out;
    for (size_t k = 0; k < blocks.size(); ++k) {
        if (k) out += ';';
        out += std::to_string(blocks[k].depth) + ":";
        for (size_t j = 0; j < blocks[k].points.size(); ++j) {
            if (j) out += '|';
            for (size_t i = 0; i < blocks[k].points[j].size(); ++i) {
                if (i) out += ',';
                out += std::to_string(blocks[k].points[j][i]);
            }
        }
    }
    return out.empty() ? "-" : out;
}

Approximation Approximation::from_line(const std::string& line) {
    Approximation out;
    if (line == "-" || line.empty()) return out;
    std::stringstream blocks_in(line);
    std::string block_str;
    while (std::getline(blocks_in, block_str, ';')) {
        size_t colon = block_str.find(':');
        if (colon == std::string::npos) throw DomainError("approximation parse: missing ':'");
        Block b;
        b.depth = std::stoi(block_str.substr(0, colon));
        std::stringstream coords_in(block_str.substr(colon + 1));
        std::string coord_str;
        while (std::getline(coords_in, coord_str, '|')) {
            std::vector<int> pts;
            std::stringstream pts_in(coord_str);
            std::string p;
            while (std::getline(pts_in, p, ','))
                if (!p.empty()) pts.push_back(std::stoi(p));
            b.points.push_back(std::move(pts));
        }
        out.blocks.push_back(std::move(b));
    }
    return out;
}

int GeneratingSequence::coords_at(int k) const {
    if (k < 0 || k >= depth()) throw DomainError("level index out of range");
    return static_cast<int>(levels_[k].size());
}

const FraisseClass& GeneratingSequence::class_of(int coordinate) const {
    if (omega_) return classes_[0];
    return classes_.at(coordinate);
}

const OrderedStructure& GeneratingSequence::level(int k, int coordinate) const {
    if (k < 0 || k >= depth()) throw DomainError("level index out of range");
    return levels_[k].at(coordinate);
}

const Embedding& GeneratingSequence::step_embedding(int k, int coordinate) const {
    if (k < 0 || k + 1 >= depth()) throw DomainError("step embedding index out of range");
    return embeddings_[k].at(coordinate);
}

GeneratingSequence GeneratingSequence::build(std::vector<FraisseClass> classes, int k_max,
                                             uint64_t candidate_budget, bool omega) {
    if (classes.empty()) throw DomainError("build: need at least one class");
    if (omega && classes.size() != 1)
        throw DomainError("build: omega sequences replicate a single class template");
    if (k_max < 0) throw DomainError("build: negative level count");

    GeneratingSequence seq;
    seq.classes_ = std::move(classes);
    seq.omega_ = omega;

    const int template_count = static_cast<int>(seq.classes_.size());

    // Per-class absorption schedule over the canonical enumeration, sizes
    // in increasing order. Linear orders take the direct k+1-point level;
    // everything else grows by disjoint-sum absorption of each member in
    // turn, so every member is absorbed at a recorded level.
    struct Schedule {
        int next_size = 1;
        int next_index = 0;
        std::vector<OrderedStructure> members_of_size;
    };
    std::vector<Schedule> schedules(template_count);
    std::vector<OrderedStructure> current(template_count);

    auto advance = [&](int t) -> std::pair<OrderedStructure, std::pair<int, int>> {
        Schedule& sch = schedules[t];
        while (true) {
            if (sch.members_of_size.empty())
                sch.members_of_size = seq.classes_[t].enumerate_members(sch.next_size, candidate_budget);
            if (sch.next_index < static_cast<int>(sch.members_of_size.size())) {
                auto m = sch.members_of_size[sch.next_index];
                auto id = std::make_pair(sch.next_size, sch.next_index);
                ++sch.next_index;
                return {m, id};
            }
            ++sch.next_size;
            sch.next_index = 0;
            sch.members_of_size.clear();
        }
    };

    for (int t = 0; t < template_count; ++t) {
        auto [first, id] = advance(t);
        if (first.size() != 1)
            throw DomainError("class '" + seq.classes_[t].name() + "' has no one-point member");
        current[t] = first;
        seq.ledger_.push_back({t, id.first, id.second, 0});
    }

    for (int k = 0; k <= k_max; ++k) {
        int width = omega ? k + 1 : template_count;
        std::vector<OrderedStructure> row;
        for (int j = 0; j < width; ++j) row.push_back(current[omega ? 0 : j]);
        seq.levels_.push_back(std::move(row));
        if (k == k_max) break;

        for (int t = 0; t < template_count; ++t) {
            if (seq.classes_[t].kind() == ClassKind::LinearOrders) {
                current[t] = OrderedStructure::linear_order(k + 2);
                seq.ledger_.push_back({t, k + 2, 0, k + 1});
            } else {
                auto [member, id] = advance(t);
                current[t] = disjoint_sum(current[t], member).sum;
                seq.ledger_.push_back({t, id.first, id.second, k + 1});
            }
        }
        std::vector<Embedding> step;
        for (int j = 0; j < width; ++j)
            step.push_back(Embedding::identity(seq.levels_.back()[j].size()));
        seq.embeddings_.push_back(std::move(step));
    }
    return seq;
}

std::optional<std::string> GeneratingSequence::cofinality_gap(int size_cap,
                                                              uint64_t candidate_budget) const {
    for (int t = 0; t < class_count(); ++t) {
        const OrderedStructure& top = levels_.back()[omega_ ? 0 : t];
        for (int s = 1; s <= size_cap; ++s) {
            for (const auto& m : classes_[t].enumerate_members(s, candidate_budget)) {
                if (!embeds_into(m, top))
                    return "class " + classes_[t].name() + " member " + m.to_line() +
                           " not absorbed by depth " + std::to_string(depth());
            }
        }
    }
    return std::nullopt;
}

Approximation GeneratingSequence::full_prefix(int prefix_depth) const {
    if (prefix_depth < 0 || prefix_depth > depth())
        throw DomainError("full_prefix depth out of range");
    Approximation out;
    for (int k = 0; k < prefix_depth; ++k) {
        Block b;
        b.depth = k;
        for (int j = 0; j < coords_at(k); ++j) {
            std::vector<int> all(levels_[k][j].size());
            for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
            b.points.push_back(std::move(all));
        }
        out.blocks.push_back(std::move(b));
    }
    return out;
}

void GeneratingSequence::validate_approximation(const Approximation& a) const {
    for (int k = 0; k < a.length(); ++k) {
        const Block& b = a.blocks[k];
        if (k > 0 && a.blocks[k - 1].depth >= b.depth)
            throw DomainError("approximation depths must strictly increase");
        if (b.depth < 0 || b.depth >= depth())
            throw DomainError("approximation block depth beyond built prefix");
        if (static_cast<int>(b.points.size()) != coords_at(k))
            throw DomainError("approximation block " + std::to_string(k) +
                              " has wrong coordinate count");
        for (int j = 0; j < coords_at(k); ++j) {
            if (restrict_to(level(b.depth, j), b.points[j]) != level(k, j))
                throw DomainError("approximation block " + std::to_string(k) +
                                  " does not span a level-" + std::to_string(k) + " copy");
        }
    }
}

std::string GeneratingSequence::to_manifest() const {
    std::ostringstream out;
    out << "genseq J=" << (omega_ ? std::string("omega") : std::to_string(class_count()))
        << " levels=" << depth() << "\n";
    for (const auto& c : classes_) out << c.to_spec_text() << "\n";
    for (int k = 0; k < depth(); ++k) {
        out << "level " << k << "\n";
        for (int j = 0; j < coords_at(k); ++j) {
            out << "  coord " << j << ": " << levels_[k][j].to_line() << "\n";
            if (k + 1 < depth()) {
                out << "  embed " << j << ":";
                for (int v : embeddings_[k][j].map) out << " " << v;
                out << "\n";
            }
        }
    }
    for (const auto& rec : ledger_)
        out << "absorbed coord=" << rec.coordinate << " size=" << rec.member_size
            << " index=" << rec.member_index << " level=" << rec.level << "\n";
    return out.str();
}

GeneratingSequence GeneratingSequence::from_manifest(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("genseq ", 0) != 0)
        throw DomainError("manifest must start with 'genseq'");
    bool omega = line.find("J=omega") != std::string::npos;
    int levels = 0;
    {
        auto pos = line.find("levels=");
        if (pos == std::string::npos) throw DomainError("manifest missing levels=");
        levels = std::stoi(line.substr(pos + 7));
    }
    GeneratingSequence seq;
    seq.omega_ = omega;
    while (std::getline(in, line)) {
        if (line.rfind("class ", 0) == 0) {
            seq.classes_.push_back(parse_class_spec(line, nullptr));
        } else if (line.rfind("level ", 0) == 0) {
            seq.levels_.emplace_back();
        } else if (line.rfind("  coord ", 0) == 0) {
            auto colon = line.find(": ");
            seq.levels_.back().push_back(OrderedStructure::from_line(line.substr(colon + 2)));
        } else if (line.rfind("  embed ", 0) == 0) {
            // Embeddings recorded on the previous level row.
            auto colon = line.find(":");
            std::istringstream vals(line.substr(colon + 1));
            Embedding e;
            int v;
            while (vals >> v) e.map.push_back(v);
            if (seq.embeddings_.size() < seq.levels_.size()) seq.embeddings_.emplace_back();
            seq.embeddings_.back().push_back(std::move(e));
        } else if (line.rfind("absorbed ", 0) == 0) {
            AbsorptionRecord rec;
            std::istringstream fields(line.substr(9));
            std::string f;
            while (fields >> f) {
                if (f.rfind("coord=", 0) == 0) rec.coordinate = std::stoi(f.substr(6));
                if (f.rfind("size=", 0) == 0) rec.member_size = std::stoi(f.substr(5));
                if (f.rfind("index=", 0) == 0) rec.member_index = std::stoi(f.substr(6));
                if (f.rfind("level=", 0) == 0) rec.level = std::stoi(f.substr(6));
            }
            seq.ledger_.push_back(rec);
        } else if (!line.empty()) {
            throw DomainError("manifest parse error at '" + line + "'");
        }
    }
    if (static_cast<int>(seq.levels_.size()) != levels)
        throw DomainError("manifest level count mismatch");
    return seq;
}

namespace {

// Blocks in both approximations have strictly increasing depths, so at most
// one block of b can host a given block of c.
struct BlockMatch {
    bool matched = false;
    size_t position = 0;
};

BlockMatch match_block(const Block& cb, const Approximation& b, size_t from) {
    for (size_t l = from; l < b.blocks.size(); ++l) {
        if (b.blocks[l].depth != cb.depth) continue;
        if (b.blocks[l].points.size() < cb.points.size()) return {};
        bool ok = true;
        for (size_t j = 0; j < cb.points.size() && ok; ++j)
            ok = std::includes(b.blocks[l].points[j].begin(), b.blocks[l].points[j].end(),
                               cb.points[j].begin(), cb.points[j].end());
        return {ok, l};
    }
    return {};
}

}  // namespace

bool le_fin(const Approximation& c, const Approximation& b) {
    size_t from = 0;
    for (const auto& cb : c.blocks) {
        BlockMatch m = match_block(cb, b, from);
        if (!m.matched) return false;
        from = m.position + 1;
    }
    return true;
}

std::optional<int> depth_in(const Approximation& a, const Approximation& prefix) {
    for (int d = 0; d <= prefix.length(); ++d)
        if (le_fin(a, prefix.prefix(d))) return d;
    return std::nullopt;
}

namespace {

}  // namespace

std::vector<Block> block_candidates(const GeneratingSequence& seq, const Approximation& prefix,
                                    int i, int position) {
    size_t l = static_cast<size_t>(position);
    const Block& host = prefix.blocks[l];
    int coords = seq.coords_at(i);
    if (static_cast<int>(host.points.size()) < coords) return {};
    std::vector<std::vector<std::vector<int>>> per_coord(coords);
    for (int j = 0; j < coords; ++j) {
        OrderedStructure induced = restrict_to(seq.level(host.depth, j), host.points[j]);
        for (const auto& rel : enumerate_copies(seq.level(i, j), induced).copies) {
            std::vector<int> abs_points;
            for (int v : rel) abs_points.push_back(host.points[j][v]);
            per_coord[j].push_back(std::move(abs_points));
        }
        if (per_coord[j].empty()) return {};
    }
    std::vector<Block> out;
    std::vector<size_t> idx(coords, 0);
    while (true) {
        Block b;
        b.depth = host.depth;
        for (int j = 0; j < coords; ++j) b.points.push_back(per_coord[j][idx[j]]);
        out.push_back(std::move(b));
        int j = coords - 1;
        while (j >= 0 && idx[j] + 1 == per_coord[j].size()) idx[j--] = 0;
        if (j < 0) break;
        ++idx[j];
    }
    return out;
}

uint64_t count_AR_n(const GeneratingSequence& seq, const Approximation& prefix, int n) {
    if (n == 0) return 1;
    int p = prefix.length();
    if (n > p) return 0;
    // Copy counts per (block position, prefix position).
    uint64_t total = 0;
    for (const auto& positions : all_subsets(p, n)) {
        uint64_t ways = 1;
        for (int i = 0; i < n && ways; ++i)
            ways *= block_candidates(seq, prefix, i, positions[i]).size();
        total += ways;
    }
    return total;
}

std::vector<Approximation> enumerate_AR_n(const GeneratingSequence& seq,
                                          const Approximation& prefix, int n, uint64_t budget) {
    seq.validate_approximation(prefix);
    if (n < 0) throw DomainError("enumerate_AR_n: negative length");
    std::vector<Approximation> out;
    if (n == 0) {
        out.emplace_back();
        return out;
    }
    uint64_t count = count_AR_n(seq, prefix, n);
    if (count > budget)
        throw BudgetError("enumerate_AR_n: " + std::to_string(count) + " approximations exceed budget",
                          count > 0 ? std::log2((double)count) : 0.0, std::log2((double)budget));
    int p = prefix.length();
    if (n > p) return out;

    for (const auto& positions : all_subsets(p, n)) {
        std::vector<std::vector<Block>> choices(n);
        bool feasible = true;
        for (int i = 0; i < n && feasible; ++i) {
            choices[i] = block_candidates(seq, prefix, i, positions[i]);
            feasible = !choices[i].empty();
        }
        if (!feasible) continue;
        std::vector<size_t> idx(n, 0);
        while (true) {
            Approximation a;
            for (int i = 0; i < n; ++i) a.blocks.push_back(choices[i][idx[i]]);
            out.push_back(std::move(a));
            int i = n - 1;
            while (i >= 0 && idx[i] + 1 == choices[i].size()) idx[i--] = 0;
            if (i < 0) break;
            ++idx[i];
        }
    }
    return out;
}

namespace {

void add_clause(AxiomCheckReport& report, std::string clause, CheckStatus status,
                std::string detail, uint64_t cost) {
    report.clauses.push_back({std::move(clause), status, std::move(detail), cost});
}

}  // namespace

AxiomCheckReport check_axioms(const GeneratingSequence& seq, int depth, uint64_t budget) {
    AxiomCheckReport report;
    if (depth > seq.depth()) throw DomainError("check_axioms: depth beyond built prefix");
    Approximation prefix = seq.full_prefix(depth);

    // Enumerate AR_n for n up to the prefix depth, within budget.
    std::vector<std::vector<Approximation>> ar(depth + 1);
    int max_n = 0;
    uint64_t enumerated = 0;
    for (int n = 0; n <= depth; ++n) {
        uint64_t c = count_AR_n(seq, prefix, n);
        if (enumerated + c > budget) break;
        ar[n] = enumerate_AR_n(seq, prefix, n, budget);
        enumerated += c;
        max_n = n;
    }

    // A.1(a): the empty approximation is the unique length-0 prefix.
    {
        bool ok = ar[0].size() == 1 && ar[0][0].length() == 0;
        for (int n = 0; n <= max_n && ok; ++n)
            for (const auto& a : ar[n]) ok = ok && a.prefix(0) == ar[0][0];
        add_clause(report, "A.1(a)", ok ? CheckStatus::Pass : CheckStatus::Fail,
                   "r_0 is the empty approximation", enumerated);
    }
    // A.1(b): distinct approximations of equal length differ at some prefix.
    {
        bool ok = true;
        uint64_t cost = 0;
        for (int n = 1; n <= max_n && ok; ++n) {
            for (size_t i = 0; i < ar[n].size() && ok; ++i) {
                for (size_t j = i + 1; j < ar[n].size() && ok; ++j) {
                    ++cost;
                    bool differ = false;
                    for (int q = 1; q <= n; ++q)
                        if (ar[n][i].prefix(q) != ar[n][j].prefix(q)) {
                            differ = true;
                            break;
                        }
                    ok = differ;
                }
            }
        }
        add_clause(report, "A.1(b)", ok ? CheckStatus::Pass : CheckStatus::Fail,
                   "distinct approximations are separated by some prefix", cost);
    }
    // A.1(c): equal prefixes have equal length and agree below.
    {
        bool ok = true;
        uint64_t cost = 0;
        for (int n = 1; n <= max_n && ok; ++n) {
            for (const auto& a : ar[n]) {
                for (int q1 = 0; q1 <= n && ok; ++q1) {
                    for (int q2 = q1 + 1; q2 <= n; ++q2) {
                        ++cost;
                        if (a.prefix(q1) == a.prefix(q2)) {
                            ok = false;
                            break;
                        }
                    }
                }
            }
        }
        add_clause(report, "A.1(c)", ok ? CheckStatus::Pass : CheckStatus::Fail,
                   "prefixes of distinct lengths are distinct and nested", cost);
    }
    // A.2(a): the set below any approximation is finite (explicitly counted).
    {
        uint64_t cost = 0;
        bool ok = true;
        for (int n = 0; n <= max_n; ++n) {
            for (const auto& b : ar[n]) {
                uint64_t below = 0;
                for (int q = 0; q <= b.length(); ++q) below += count_AR_n(seq, b, q);
                cost += below;
                ok = ok && below >= 1;
            }
        }
        add_clause(report, "A.2(a)", ok ? CheckStatus::Pass : CheckStatus::Fail,
                   "finitely many approximations below each approximation, counted", cost);
    }
    // A.2(b): the fin-order matches blockwise refinement on enumerated pairs.
    {
        bool ok = true;
        uint64_t cost = 0;
        for (int n = 0; n <= max_n && ok; ++n) {
            for (const auto& c : ar[n]) {
                for (const auto& b : ar[max_n]) {
                    ++cost;
                    if (le_fin(c, b)) {
                        // every prefix of c sits below some prefix of b
                        for (int q = 0; q <= c.length() && ok; ++q)
                            ok = ok && depth_in(c.prefix(q), b).has_value();
                    }
                }
            }
        }
        add_clause(report, "A.2(b)", ok ? CheckStatus::Pass : CheckStatus::Fail,
                   "refinement agrees with prefixwise depth", cost);
    }
    // A.2(c): a ⊏ b and b <=_fin c gives d ⊏ c with a <=_fin d.
    {
        bool ok = true;
        uint64_t cost = 0;
        for (int nb = 1; nb <= max_n && ok; ++nb) {
            for (const auto& b : ar[nb]) {
                for (int nc = nb; nc <= max_n && ok; ++nc) {
                    for (const auto& c : ar[nc]) {
                        if (!le_fin(b, c)) continue;
                        for (int q = 0; q < b.length() && ok; ++q) {
                            Approximation a = b.prefix(q);
                            bool found = false;
                            for (int d = 0; d < c.length() && !found; ++d) {
                                ++cost;
                                found = le_fin(a, c.prefix(d));
                            }
                            ok = found;
                        }
                    }
                }
            }
        }
        add_clause(report, "A.2(c)", ok ? CheckStatus::Pass : CheckStatus::Fail,
                   "initial segments transfer along refinement", cost);
    }
    // A.3: extension clauses, spot-checked: every enumerated approximation
    // whose depth leaves room in the prefix extends by one block drawn from
    // a prefix position at or beyond that depth.
    {
        bool ok = true;
        uint64_t cost = 0;
        for (int n = 0; n < max_n && ok; ++n) {
            for (const auto& a : ar[n]) {
                auto d = depth_in(a, prefix);
                if (!d || *d >= prefix.length()) continue;
                ++cost;
                bool extends = false;
                for (const auto& b : ar[n + 1]) {
                    if (b.prefix(n) == a && b.blocks[n].depth >= *d) {
                        extends = true;
                        break;
                    }
                }
                ok = extends;
            }
        }
        add_clause(report, "A.3", max_n > 0 ? (ok ? CheckStatus::Pass : CheckStatus::Fail)
                                            : CheckStatus::Skipped,
                   "one-block extension beyond the depth of every unsaturated approximation "
                   "(sampled surrogate)",
                   cost);
    }
    // A.4: one-block homogenization via the pigeonhole clause at the smallest
    // level window that fits the prefix.
    {
        bool ran = false, ok = false;
        uint64_t cost = 0;
        std::string detail = "pigeonhole for |a|=0 within the prefix";
        for (int n = 2; n < depth && !ran; ++n) {
            ArrowCost c;
            ArrowQuery q;
            q.colors = 2;
            for (int j = 0; j < seq.coords_at(0); ++j) {
                q.a.push_back(seq.level(0, j));
                q.b.push_back(seq.level(1, j));
                q.c.push_back(seq.level(n, j));
            }
            c = arrow_cost(q);
            if (c.colorings_log2 > std::log2((double)budget)) break;
            cost += c.product_copies;
            if (arrow_check(q, budget)) {
                ran = true;
                ok = true;
                detail += "; homogenized at level " + std::to_string(n);
            }
        }
        add_clause(report, "A.4", ran ? (ok ? CheckStatus::Pass : CheckStatus::Fail)
                                      : CheckStatus::Skipped,
                   detail, cost);
    }
    return report;
}

}  // namespace ramseyforge
