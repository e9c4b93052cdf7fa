#include "ramseyforge/structures.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ramseyforge {

void Signature::validate() const {
    for (size_t i = 0; i < relations.size(); ++i) {
        if (relations[i].arity < 1)
            throw DomainError("relation '" + relations[i].name + "' has arity < 1");
        if (relations[i].name.empty() || relations[i].name.find_first_of(" :/|;,()") != std::string::npos)
            throw DomainError("bad relation name '" + relations[i].name + "'");
        for (size_t j = i + 1; j < relations.size(); ++j)
            if (relations[i].name == relations[j].name)
                throw DomainError("duplicate relation name '" + relations[i].name + "'");
    }
}

int Signature::index_of(const std::string& name) const {
    for (size_t i = 0; i < relations.size(); ++i)
        if (relations[i].name == name) return static_cast<int>(i);
    return -1;
}

OrderedStructure::OrderedStructure(Signature sig, int size)
    : sig_(std::move(sig)), size_(size), tables_(sig_.relations.size()) {
    sig_.validate();
    if (size < 0) throw DomainError("negative universe size");
}

void OrderedStructure::add_tuple(int rel, Tuple t) {
    if (rel < 0 || rel >= relation_count()) throw DomainError("relation index out of range");
    if (static_cast<int>(t.size()) != sig_.relations[rel].arity)
        throw DomainError("tuple arity mismatch for relation '" + sig_.relations[rel].name + "'");
    for (int v : t)
        if (v < 0 || v >= size_) throw DomainError("tuple index out of range");
    auto& tab = tables_[rel];
    auto it = std::lower_bound(tab.begin(), tab.end(), t);
    if (it == tab.end() || *it != t) tab.insert(it, std::move(t));
}

bool OrderedStructure::has_tuple(int rel, const Tuple& t) const {
    const auto& tab = tables_[rel];
    return std::binary_search(tab.begin(), tab.end(), t);
}

bool OrderedStructure::table_less(const OrderedStructure& a, const OrderedStructure& b) {
    if (a.size_ != b.size_) return a.size_ < b.size_;
    return a.tables_ < b.tables_;
}

bool OrderedStructure::related(int rel, int i, int j) const {
    return has_tuple(rel, Tuple{i, j});
}

std::vector<uint64_t> OrderedStructure::adjacency_bits(int rel) const {
    if (sig_.relations[rel].arity != 2) throw DomainError("adjacency_bits needs a binary relation");
    int words = (size_ + 63) / 64;
    std::vector<uint64_t> rows(static_cast<size_t>(size_) * words, 0);
    for (const auto& t : tables_[rel])
        rows[static_cast<size_t>(t[0]) * words + t[1] / 64] |= uint64_t{1} << (t[1] % 64);
    return rows;
}

OrderedStructure OrderedStructure::linear_order(int n) {
    return OrderedStructure(Signature::empty(), n);
}

OrderedStructure OrderedStructure::ordered_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    OrderedStructure s(Signature::graph(), n);
    for (auto [i, j] : edges) {
        if (i == j) throw DomainError("loop edge in ordered graph");
        s.add_tuple(0, {i, j});
        s.add_tuple(0, {j, i});
    }
    return s;
}

OrderedStructure OrderedStructure::complete_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return ordered_graph(n, edges);
}

std::string OrderedStructure::to_text() const {
    std::ostringstream out;
    out << "size=" << size_ << "\n";
    for (int r = 0; r < relation_count(); ++r) {
        out << "rel " << sig_.relations[r].name << "/" << sig_.relations[r].arity << ":";
        for (const auto& t : tables_[r]) {
            out << " (";
            for (size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << t[i];
            out << ")";
        }
        out << "\n";
    }
    return out.str();
}

std::string OrderedStructure::to_line() const {
    std::string text = to_text();
    std::string line;
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\n') {
            if (i + 1 < text.size()) line += "; ";
        } else {
            line += text[i];
        }
    }
    return line;
}

namespace {

void fail_parse(const std::string& what) { throw DomainError("structure parse error: " + what); }

Tuple parse_tuple(const std::string& body, int arity) {
    Tuple t;
    std::stringstream ss(body);
    std::string part;
    while (std::getline(ss, part, ',')) {
        size_t pos = 0;
        int v = std::stoi(part, &pos);
        if (pos != part.size()) fail_parse("bad tuple entry '" + part + "'");
        t.push_back(v);
    }
    if (static_cast<int>(t.size()) != arity) fail_parse("tuple arity mismatch in '" + body + "'");
    return t;
}

}  // namespace

OrderedStructure OrderedStructure::from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) fail_parse("empty input");
    if (line.rfind("size=", 0) != 0) fail_parse("expected 'size=<n>' header");
    int size = 0;
    try {
        size = std::stoi(line.substr(5));
    } catch (const std::exception&) {
        fail_parse("bad size value");
    }

    Signature sig;
    std::vector<std::vector<Tuple>> tables;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("rel ", 0) != 0) fail_parse("expected 'rel <name>/<arity>: ...'");
        size_t slash = line.find('/');
        size_t colon = line.find(':', slash == std::string::npos ? 0 : slash);
        if (slash == std::string::npos || colon == std::string::npos) fail_parse("malformed rel line");
        std::string name = line.substr(4, slash - 4);
        int arity = std::stoi(line.substr(slash + 1, colon - slash - 1));
        sig.relations.push_back({name, arity});
        std::vector<Tuple> table;
        size_t pos = colon + 1;
        while (true) {
            size_t open = line.find('(', pos);
            if (open == std::string::npos) break;
            size_t close = line.find(')', open);
            if (close == std::string::npos) fail_parse("unbalanced tuple parens");
            table.push_back(parse_tuple(line.substr(open + 1, close - open - 1), arity));
            pos = close + 1;
        }
        tables.push_back(std::move(table));
    }

    OrderedStructure s(sig, size);
    for (size_t r = 0; r < tables.size(); ++r)
        for (auto& t : tables[r]) s.add_tuple(static_cast<int>(r), std::move(t));
    return s;
}

OrderedStructure OrderedStructure::from_line(const std::string& line) {
    std::string text;
    size_t pos = 0;
    while (pos < line.size()) {
        size_t sep = line.find("; ", pos);
        if (sep == std::string::npos) {
            text += line.substr(pos);
            break;
        }
        text += line.substr(pos, sep - pos);
        text += '\n';
        pos = sep + 2;
    }
    text += '\n';
    return from_text(text);
}

Embedding Embedding::identity(int n) {
    Embedding e;
    e.map.resize(n);
    for (int i = 0; i < n; ++i) e.map[i] = i;
    return e;
}

Embedding compose(const Embedding& outer, const Embedding& inner) {
    Embedding e;
    e.map.reserve(inner.map.size());
    for (int v : inner.map) {
        if (v < 0 || v >= outer.size()) throw DomainError("embedding composition out of range");
        e.map.push_back(outer.map[v]);
    }
    return e;
}

bool is_embedding(const OrderedStructure& a, const OrderedStructure& b, const Embedding& emb) {
    if (a.signature() != b.signature()) return false;
    if (emb.size() != a.size()) return false;
    for (int i = 0; i < emb.size(); ++i) {
        if (emb(i) < 0 || emb(i) >= b.size()) return false;
        if (i > 0 && emb(i - 1) >= emb(i)) return false;
    }
    // Preserve and reflect: check image tuples both ways.
    std::vector<int> image(emb.map);
    OrderedStructure induced = restrict_to(b, image);
    return induced == a;
}

OrderedStructure restrict_to(const OrderedStructure& s, const std::vector<int>& idx) {
    std::vector<int> pos(s.size(), -1);
    for (size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] < 0 || idx[i] >= s.size()) throw DomainError("restriction index out of range");
        if (i > 0 && idx[i - 1] >= idx[i]) throw DomainError("restriction index set not sorted");
        pos[idx[i]] = static_cast<int>(i);
    }
    OrderedStructure out(s.signature(), static_cast<int>(idx.size()));
    for (int r = 0; r < s.relation_count(); ++r) {
        for (const auto& t : s.table(r)) {
            Tuple mapped;
            mapped.reserve(t.size());
            bool inside = true;
            for (int v : t) {
                if (pos[v] < 0) {
                    inside = false;
                    break;
                }
                mapped.push_back(pos[v]);
            }
            if (inside) out.add_tuple(r, std::move(mapped));
        }
    }
    return out;
}

namespace {

// Backtracking enumeration of strictly increasing maps from a into b that
// preserve and reflect all relations. Unary and binary relations are checked
// incrementally; higher arities at the leaves.
class CopySearch {
public:
    CopySearch(const OrderedStructure& a, const OrderedStructure& b, bool first_only)
        : a_(a), b_(b), first_only_(first_only) {
        has_higher_ = false;
        for (int r = 0; r < a.relation_count(); ++r) {
            int ar = a.signature().relations[r].arity;
            if (ar == 1) {
                unary_.push_back(r);
            } else if (ar == 2) {
                binary_.push_back(r);
                a_bits_.push_back(a.adjacency_bits(r));
                b_bits_.push_back(b.adjacency_bits(r));
            } else {
                has_higher_ = true;
            }
        }
        a_words_ = (a.size() + 63) / 64;
        b_words_ = (b.size() + 63) / 64;
        map_.reserve(a.size());
    }

    std::vector<std::vector<int>> run() {
        if (a_.size() > b_.size()) return {};
        extend(0);
        return std::move(found_);
    }

private:
    bool adj_a(size_t k, int i, int j) const {
        return (a_bits_[k][static_cast<size_t>(i) * a_words_ + j / 64] >> (j % 64)) & 1;
    }
    bool adj_b(size_t k, int i, int j) const {
        return (b_bits_[k][static_cast<size_t>(i) * b_words_ + j / 64] >> (j % 64)) & 1;
    }

    bool consistent(int p, int v) const {
        for (int r : unary_)
            if (a_.has_tuple(r, {p}) != b_.has_tuple(r, {v})) return false;
        for (size_t k = 0; k < binary_.size(); ++k) {
            if (adj_a(k, p, p) != adj_b(k, v, v)) return false;
            for (int q = 0; q < p; ++q) {
                int w = map_[q];
                if (adj_a(k, q, p) != adj_b(k, w, v)) return false;
                if (adj_a(k, p, q) != adj_b(k, v, w)) return false;
            }
        }
        return true;
    }

    bool leaf_check() const {
        if (!has_higher_) return true;
        Embedding e{map_};
        return is_embedding(a_, b_, e);
    }

    // Returns true to abort (first_only satisfied).
    bool extend(int p) {
        if (p == a_.size()) {
            if (leaf_check()) {
                found_.push_back(map_);
                return first_only_;
            }
            return false;
        }
        int lo = p == 0 ? 0 : map_[p - 1] + 1;
        // Leave room for the remaining pattern points.
        int hi = b_.size() - (a_.size() - p);
        for (int v = lo; v <= hi; ++v) {
            if (!consistent(p, v)) continue;
            map_.push_back(v);
            if (extend(p + 1)) return true;
            map_.pop_back();
        }
        return false;
    }

    const OrderedStructure& a_;
    const OrderedStructure& b_;
    bool first_only_;
    bool has_higher_;
    std::vector<int> unary_, binary_;
    std::vector<std::vector<uint64_t>> a_bits_, b_bits_;
    int a_words_ = 0, b_words_ = 0;
    std::vector<int> map_;
    std::vector<std::vector<int>> found_;
};

}  // namespace

CopySet enumerate_copies(const OrderedStructure& a, const OrderedStructure& b) {
    if (a.signature() != b.signature()) throw DomainError("enumerate_copies: signature mismatch");
    CopySearch search(a, b, false);
    return CopySet{a, b, search.run()};
}

std::optional<Embedding> leftmost_copy(const OrderedStructure& a, const OrderedStructure& b) {
    if (a.signature() != b.signature()) throw DomainError("leftmost_copy: signature mismatch");
    CopySearch search(a, b, true);
    auto found = search.run();
    if (found.empty()) return std::nullopt;
    return Embedding{std::move(found.front())};
}

bool embeds_into(const OrderedStructure& a, const OrderedStructure& b) {
    return leftmost_copy(a, b).has_value();
}

DisjointSum disjoint_sum(const OrderedStructure& x, const OrderedStructure& y,
                         const std::vector<bool>& interleaving) {
    if (x.signature() != y.signature()) throw DomainError("disjoint_sum: signature mismatch");
    if (static_cast<int>(interleaving.size()) != x.size() + y.size())
        throw DomainError("disjoint_sum: interleaving length mismatch");
    Embedding from_x, from_y;
    for (size_t p = 0; p < interleaving.size(); ++p)
        (interleaving[p] ? from_y : from_x).map.push_back(static_cast<int>(p));
    if (from_x.size() != x.size() || from_y.size() != y.size())
        throw DomainError("disjoint_sum: interleaving side counts mismatch");

    OrderedStructure sum(x.signature(), x.size() + y.size());
    for (int r = 0; r < x.relation_count(); ++r) {
        for (const auto& t : x.table(r)) {
            Tuple mapped;
            for (int v : t) mapped.push_back(from_x(v));
            sum.add_tuple(r, std::move(mapped));
        }
        for (const auto& t : y.table(r)) {
            Tuple mapped;
            for (int v : t) mapped.push_back(from_y(v));
            sum.add_tuple(r, std::move(mapped));
        }
    }
    return DisjointSum{std::move(sum), std::move(from_x), std::move(from_y)};
}

DisjointSum disjoint_sum(const OrderedStructure& x, const OrderedStructure& y) {
    std::vector<bool> interleaving(x.size(), false);
    interleaving.insert(interleaving.end(), y.size(), true);
    return disjoint_sum(x, y, interleaving);
}

bool next_subset(std::vector<int>& subset, int n) {
    int k = static_cast<int>(subset.size());
    for (int i = k - 1; i >= 0; --i) {
        if (subset[i] < n - (k - i)) {
            ++subset[i];
            for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<std::vector<int>> all_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> subset(k);
    for (int i = 0; i < k; ++i) subset[i] = i;
    do {
        out.push_back(subset);
    } while (next_subset(subset, n));
    return out;
}

}  // namespace ramseyforge
