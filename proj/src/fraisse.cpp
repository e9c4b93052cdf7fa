#include "ramseyforge/fraisse.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ramseyforge {

std::string to_string(ClassKind kind) {
    switch (kind) {
        case ClassKind::LinearOrders: return "LinearOrders";
        case ClassKind::OrderedGraphs: return "OrderedGraphs";
        case ClassKind::OrderedCliqueFree: return "OrderedCliqueFree";
        case ClassKind::OrderedCompleteGraphs: return "OrderedCompleteGraphs";
        case ClassKind::ForbiddenSubstructures: return "ForbiddenSubstructures";
    }
    return "?";
}

std::optional<ClassKind> class_kind_from_string(const std::string& name) {
    if (name == "LinearOrders") return ClassKind::LinearOrders;
    if (name == "OrderedGraphs") return ClassKind::OrderedGraphs;
    if (name == "OrderedCliqueFree") return ClassKind::OrderedCliqueFree;
    if (name == "OrderedCompleteGraphs") return ClassKind::OrderedCompleteGraphs;
    if (name == "ForbiddenSubstructures") return ClassKind::ForbiddenSubstructures;
    return std::nullopt;
}

FraisseClass FraisseClass::linear_orders() {
    FraisseClass c;
    c.name_ = "linear-orders";
    c.kind_ = ClassKind::LinearOrders;
    c.sig_ = Signature::empty();
    return c;
}

FraisseClass FraisseClass::ordered_graphs() {
    FraisseClass c;
    c.name_ = "ordered-graphs";
    c.kind_ = ClassKind::OrderedGraphs;
    c.sig_ = Signature::graph();
    return c;
}

FraisseClass FraisseClass::clique_free(int clique_size) {
    if (clique_size < 3) throw DomainError("clique-free class needs clique size >= 3");
    FraisseClass c;
    c.name_ = "clique-free-" + std::to_string(clique_size);
    c.kind_ = ClassKind::OrderedCliqueFree;
    c.param_ = clique_size;
    c.sig_ = Signature::graph();
    return c;
}

FraisseClass FraisseClass::complete_graphs() {
    FraisseClass c;
    c.name_ = "complete-graphs";
    c.kind_ = ClassKind::OrderedCompleteGraphs;
    c.sig_ = Signature::graph();
    return c;
}

FraisseClass FraisseClass::forbidden_substructures(std::string name, Signature sig,
                                                   std::vector<OrderedStructure> forbidden) {
    if (forbidden.empty()) throw DomainError("forbidden-substructure class needs a nonempty list");
    for (const auto& f : forbidden)
        if (f.signature() != sig) throw DomainError("forbidden structure signature mismatch");
    FraisseClass c;
    c.name_ = std::move(name);
    c.kind_ = ClassKind::ForbiddenSubstructures;
    c.sig_ = std::move(sig);
    c.forbidden_ = std::move(forbidden);
    return c;
}

namespace {

bool is_graph_table(const OrderedStructure& s) {
    if (s.relation_count() != 1 || s.signature().relations[0].arity != 2) return false;
    for (const auto& t : s.table(0)) {
        if (t[0] == t[1]) return false;
        if (!s.has_tuple(0, {t[1], t[0]})) return false;
    }
    return true;
}

}  // namespace

bool FraisseClass::contains(const OrderedStructure& s) const {
    if (s.signature() != sig_) throw DomainError("contains: signature mismatch");
    switch (kind_) {
        case ClassKind::LinearOrders:
            return true;  // empty signature enforced by the mismatch check
        case ClassKind::OrderedGraphs:
            return is_graph_table(s);
        case ClassKind::OrderedCliqueFree:
            return is_graph_table(s) && !embeds_into(OrderedStructure::complete_graph(param_), s);
        case ClassKind::OrderedCompleteGraphs: {
            if (!is_graph_table(s)) return false;
            return static_cast<int>(s.table(0).size()) == s.size() * (s.size() - 1);
        }
        case ClassKind::ForbiddenSubstructures:
            for (const auto& f : forbidden_)
                if (embeds_into(f, s)) return false;
            return true;
    }
    return false;
}

uint64_t FraisseClass::candidate_count_log2(int size) const {
    switch (kind_) {
        case ClassKind::LinearOrders:
        case ClassKind::OrderedCompleteGraphs:
            return 0;
        case ClassKind::OrderedGraphs:
        case ClassKind::OrderedCliqueFree:
            return static_cast<uint64_t>(size) * (size - 1) / 2;
        case ClassKind::ForbiddenSubstructures: {
            uint64_t slots = 0;
            for (const auto& rel : sig_.relations) {
                uint64_t n = 1;
                for (int i = 0; i < rel.arity; ++i) n *= static_cast<uint64_t>(size);
                slots += n;
            }
            return slots;
        }
    }
    return 0;
}

std::vector<OrderedStructure> FraisseClass::enumerate_members(int size,
                                                              uint64_t candidate_budget) const {
    if (size < 0) throw DomainError("enumerate_members: negative size");
    std::vector<OrderedStructure> out;
    if (size == 0) {
        out.emplace_back(sig_, 0);
        return out;
    }
    switch (kind_) {
        case ClassKind::LinearOrders:
            out.push_back(OrderedStructure::linear_order(size));
            return out;
        case ClassKind::OrderedCompleteGraphs:
            out.push_back(OrderedStructure::complete_graph(size));
            return out;
        case ClassKind::OrderedGraphs:
        case ClassKind::OrderedCliqueFree: {
            uint64_t bits = candidate_count_log2(size);
            if (bits >= 63 || (uint64_t{1} << bits) > candidate_budget)
                throw BudgetError("enumerate_members: 2^" + std::to_string(bits) +
                                      " candidate graphs on " + std::to_string(size) + " points",
                                  static_cast<double>(bits), std::log2((double)candidate_budget));
            std::vector<std::pair<int, int>> pairs;
            for (int i = 0; i < size; ++i)
                for (int j = i + 1; j < size; ++j) pairs.emplace_back(i, j);
            for (uint64_t mask = 0; mask < (uint64_t{1} << bits); ++mask) {
                std::vector<std::pair<int, int>> edges;
                for (size_t p = 0; p < pairs.size(); ++p)
                    if ((mask >> p) & 1) edges.push_back(pairs[p]);
                OrderedStructure g = OrderedStructure::ordered_graph(size, edges);
                if (contains(g)) out.push_back(std::move(g));
            }
            break;
        }
        case ClassKind::ForbiddenSubstructures: {
            uint64_t bits = candidate_count_log2(size);
            if (bits >= 63 || (uint64_t{1} << bits) > candidate_budget)
                throw BudgetError("enumerate_members: 2^" + std::to_string(bits) +
                                      " candidate tables on " + std::to_string(size) + " points",
                                  static_cast<double>(bits), std::log2((double)candidate_budget));
            // Tuple slots in lexicographic order per relation.
            std::vector<std::pair<int, Tuple>> slots;
            for (int r = 0; r < static_cast<int>(sig_.relations.size()); ++r) {
                int arity = sig_.relations[r].arity;
                Tuple t(arity, 0);
                while (true) {
                    slots.emplace_back(r, t);
                    int i = arity - 1;
                    while (i >= 0 && t[i] == size - 1) t[i--] = 0;
                    if (i < 0) break;
                    ++t[i];
                }
            }
            for (uint64_t mask = 0; mask < (uint64_t{1} << bits); ++mask) {
                OrderedStructure s(sig_, size);
                for (size_t p = 0; p < slots.size(); ++p)
                    if ((mask >> p) & 1) s.add_tuple(slots[p].first, Tuple(slots[p].second));
                if (contains(s)) out.push_back(std::move(s));
            }
            break;
        }
    }
    std::sort(out.begin(), out.end(), OrderedStructure::table_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

IsoCountRecord FraisseClass::iso_count(int size, uint64_t candidate_budget) const {
    IsoCountRecord rec;
    rec.class_name = name_;
    rec.size = size;
    switch (kind_) {
        case ClassKind::LinearOrders:
        case ClassKind::OrderedCompleteGraphs:
            rec.count = 1;
            rec.closed_form = true;
            return rec;
        case ClassKind::OrderedGraphs: {
            uint64_t bits = static_cast<uint64_t>(size) * (size - 1) / 2;
            if (bits >= 63)
                throw BudgetError("iso_count: 2^" + std::to_string(bits) + " exceeds 64-bit range",
                                  static_cast<double>(bits), 63.0);
            rec.count = uint64_t{1} << bits;
            rec.closed_form = true;
            return rec;
        }
        default:
            rec.count = enumerate_members(size, candidate_budget).size();
            rec.closed_form = false;
            return rec;
    }
}

namespace {

// Exhaustive search for an amalgam of X and Y over Z inside the class:
// order-preserving merges of the two universes (gluing exactly the matched
// Z-points, optionally gluing free points) crossed with every fill-in of
// relation tuples not internal to either image. Restricting any amalgam
// in the class to the union of the two images lands in this search space,
// so a miss is a proof that no amalgam exists.
class AmalgamSearch {
public:
    AmalgamSearch(const FraisseClass& cls, const OrderedStructure& x, const OrderedStructure& y,
                  const std::vector<int>& x_glue, const std::vector<int>& y_glue,
                  uint64_t* budget_left)
        : cls_(cls), x_(x), y_(y), budget_left_(budget_left) {
        glue_of_x_.assign(x.size(), -1);
        glue_of_y_.assign(y.size(), -1);
        for (size_t m = 0; m < x_glue.size(); ++m) {
            glue_of_x_[x_glue[m]] = y_glue[m];
            glue_of_y_[y_glue[m]] = x_glue[m];
        }
    }

    bool found() {
        merge_x_.clear();
        merge_y_.clear();
        return extend(0, 0);
    }

private:
    void spend() {
        if (*budget_left_ == 0)
            throw BudgetError("amalgamation search budget exceeded", 0.0, 0.0);
        --*budget_left_;
    }

    bool try_merge() {
        spend();
        int w_size = 0;
        for (int v : merge_x_) w_size = std::max(w_size, v + 1);
        for (int v : merge_y_) w_size = std::max(w_size, v + 1);
        Embedding g{merge_x_}, h{merge_y_};

        OrderedStructure base(cls_.signature(), w_size);
        for (int r = 0; r < x_.relation_count(); ++r) {
            for (const auto& t : x_.table(r)) {
                Tuple mapped;
                for (int v : t) mapped.push_back(g(v));
                base.add_tuple(r, std::move(mapped));
            }
            for (const auto& t : y_.table(r)) {
                Tuple mapped;
                for (int v : t) mapped.push_back(h(v));
                base.add_tuple(r, std::move(mapped));
            }
        }

        std::vector<bool> in_x(w_size, false), in_y(w_size, false);
        for (int v : merge_x_) in_x[v] = true;
        for (int v : merge_y_) in_y[v] = true;

        // Tuples not internal to either image are free to fill.
        std::vector<std::pair<int, Tuple>> fill;
        for (int r = 0; w_size > 0 && r < static_cast<int>(cls_.signature().relations.size()); ++r) {
            int arity = cls_.signature().relations[r].arity;
            Tuple t(arity, 0);
            while (true) {
                bool all_x = true, all_y = true;
                for (int v : t) {
                    all_x = all_x && in_x[v];
                    all_y = all_y && in_y[v];
                }
                if (!all_x && !all_y) fill.emplace_back(r, t);
                int i = arity - 1;
                while (i >= 0 && t[i] == w_size - 1) t[i--] = 0;
                if (i < 0) break;
                ++t[i];
            }
        }

        auto check = [&](uint64_t mask) {
            spend();
            OrderedStructure w = base;
            for (size_t p = 0; p < fill.size(); ++p)
                if ((mask >> p) & 1) w.add_tuple(fill[p].first, Tuple(fill[p].second));
            return is_embedding(x_, w, g) && is_embedding(y_, w, h) && cls_.contains(w);
        };

        if (fill.size() >= 63)
            throw BudgetError("amalgamation fill space 2^" + std::to_string(fill.size()),
                              static_cast<double>(fill.size()), 62.0);
        uint64_t full = fill.empty() ? 0 : ((uint64_t{1} << fill.size()) - 1);
        if (check(0)) return true;
        if (full != 0 && check(full)) return true;
        for (uint64_t mask = 1; mask < full; ++mask)
            if (check(mask)) return true;
        return false;
    }

    bool extend(int i, int j) {
        if (i == x_.size() && j == y_.size()) return try_merge();
        int pos = (i > 0 ? merge_x_[i - 1] + 1 : 0);
        if (j > 0) pos = std::max(pos, merge_y_[j - 1] + 1);

        // Glued step (forced for matched Z-points, optional otherwise).
        if (i < x_.size() && j < y_.size()) {
            bool forced = glue_of_x_[i] == j;
            bool free_pair = glue_of_x_[i] < 0 && glue_of_y_[j] < 0;
            if (forced || free_pair) {
                merge_x_.push_back(pos);
                merge_y_.push_back(pos);
                if (extend(i + 1, j + 1)) return true;
                merge_x_.pop_back();
                merge_y_.pop_back();
            }
        }
        if (i < x_.size() && glue_of_x_[i] < 0) {
            merge_x_.push_back(pos);
            if (extend(i + 1, j)) return true;
            merge_x_.pop_back();
        }
        if (j < y_.size() && glue_of_y_[j] < 0) {
            merge_y_.push_back(pos);
            if (extend(i, j + 1)) return true;
            merge_y_.pop_back();
        }
        return false;
    }

    const FraisseClass& cls_;
    const OrderedStructure& x_;
    const OrderedStructure& y_;
    uint64_t* budget_left_;
    std::vector<int> glue_of_x_, glue_of_y_;
    std::vector<int> merge_x_, merge_y_;
};

}  // namespace

ClassAxiomReport FraisseClass::check_class_axioms(int size_cap, uint64_t budget) const {
    ClassAxiomReport report;
    report.size_cap = size_cap;
    uint64_t budget_left = budget;

    std::vector<OrderedStructure> members;
    for (int s = 0; s <= size_cap; ++s) {
        auto ms = enumerate_members(s, budget);
        members.insert(members.end(), ms.begin(), ms.end());
    }

    // Heredity: every restriction of every member is a member.
    for (const auto& m : members) {
        for (int k = 0; k <= m.size() && report.heredity; ++k) {
            for (const auto& idx : all_subsets(m.size(), k)) {
                if (budget_left == 0)
                    throw BudgetError("check_class_axioms budget exceeded (heredity)", 0, 0);
                --budget_left;
                ++report.cases_checked;
                if (!contains(restrict_to(m, idx))) {
                    report.heredity = false;
                    report.heredity_witness = "member " + m.to_line() + " restricted to subset";
                    break;
                }
            }
        }
    }

    // Joint embedding: every pair admits a common extension in the class.
    for (const auto& a : members) {
        for (const auto& b : members) {
            if (!report.joint_embedding) break;
            ++report.cases_checked;
            AmalgamSearch search(*this, a, b, {}, {}, &budget_left);
            if (!search.found()) {
                report.joint_embedding = false;
                report.jep_witness = "no joint extension of " + a.to_line() + " and " + b.to_line();
            }
        }
        if (!report.joint_embedding) break;
    }

    // Amalgamation: over all Z -> X, Z -> Y embedding pairs.
    for (const auto& z : members) {
        for (const auto& x : members) {
            if (z.size() > x.size()) continue;
            auto e_copies = enumerate_copies(z, x).copies;
            if (e_copies.empty()) continue;
            for (const auto& y : members) {
                if (z.size() > y.size()) continue;
                auto f_copies = enumerate_copies(z, y).copies;
                for (const auto& e : e_copies) {
                    for (const auto& f : f_copies) {
                        ++report.cases_checked;
                        AmalgamSearch search(*this, x, y, e, f, &budget_left);
                        if (!search.found()) {
                            report.amalgamation = false;
                            report.ap_witness = "no amalgam of " + x.to_line() + " and " +
                                                y.to_line() + " over " + z.to_line();
                            return report;
                        }
                    }
                }
            }
        }
    }
    return report;
}

std::string FraisseClass::to_spec_text() const {
    std::string out = "class " + name_ + " kind=" + to_string(kind_);
    if (kind_ == ClassKind::OrderedCliqueFree) out += " param=" + std::to_string(param_);
    return out;
}

FraisseClass parse_class_spec(const std::string& line,
                              const std::function<std::string(const std::string&)>* load_file) {
    std::istringstream in(line);
    std::string word, name, kind_str;
    int param = 0;
    std::vector<std::string> forbidden_files;
    if (!(in >> word) || word != "class") throw DomainError("class spec must start with 'class'");
    if (!(in >> name)) throw DomainError("class spec missing name");
    while (in >> word) {
        if (word.rfind("kind=", 0) == 0) {
            kind_str = word.substr(5);
        } else if (word.rfind("param=", 0) == 0) {
            param = std::stoi(word.substr(6));
        } else if (word.rfind("forbidden=", 0) == 0) {
            std::stringstream ss(word.substr(10));
            std::string f;
            while (std::getline(ss, f, ',')) forbidden_files.push_back(f);
        } else {
            throw DomainError("unknown class spec field '" + word + "'");
        }
    }
    auto kind = class_kind_from_string(kind_str);
    if (!kind) throw DomainError("unknown class kind '" + kind_str + "'");
    switch (*kind) {
        case ClassKind::LinearOrders: return FraisseClass::linear_orders();
        case ClassKind::OrderedGraphs: return FraisseClass::ordered_graphs();
        case ClassKind::OrderedCompleteGraphs: return FraisseClass::complete_graphs();
        case ClassKind::OrderedCliqueFree: return FraisseClass::clique_free(param);
        case ClassKind::ForbiddenSubstructures: {
            if (!load_file) throw DomainError("forbidden-substructure class needs file access");
            std::vector<OrderedStructure> forbidden;
            for (const auto& f : forbidden_files)
                forbidden.push_back(OrderedStructure::from_text((*load_file)(f)));
            if (forbidden.empty()) throw DomainError("forbidden list is empty");
            Signature sig = forbidden.front().signature();
            return FraisseClass::forbidden_substructures(name, sig, std::move(forbidden));
        }
    }
    throw DomainError("unreachable class kind");
}

std::optional<FraisseClass> builtin_class(const std::string& shorthand) {
    if (shorthand == "linear-orders") return FraisseClass::linear_orders();
    if (shorthand == "ordered-graphs") return FraisseClass::ordered_graphs();
    if (shorthand == "complete-graphs") return FraisseClass::complete_graphs();
    if (shorthand.rfind("clique-free-", 0) == 0) {
        int n = std::stoi(shorthand.substr(12));
        return FraisseClass::clique_free(n);
    }
    return std::nullopt;
}

}  // namespace ramseyforge
