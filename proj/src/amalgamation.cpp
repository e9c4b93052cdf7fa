#include "ramseyforge/amalgamation.hpp"

#include <algorithm>
#include <sstream>

namespace ramseyforge {

void AmalgamationProblem::validate() const {
    if (z.signature() != x.signature() || z.signature() != y.signature())
        throw DomainError("amalgamation problem: signature mismatch");
    if (!is_embedding(z, x, e)) throw DomainError("amalgamation problem: e is not an embedding Z->X");
    if (!is_embedding(z, y, f)) throw DomainError("amalgamation problem: f is not an embedding Z->Y");
}

OrderPrescription::OrderPrescription(int rows, int cols, char fill)
    : rows_(rows), cols_(cols), cells_(static_cast<size_t>(rows) * cols, fill) {
    if (rows < 0 || cols < 0) throw DomainError("prescription dimensions negative");
}

void OrderPrescription::set(int k, int l, char c) {
    if (c != '<' && c != '=' && c != '>') throw DomainError("prescription cell must be <, =, or >");
    cells_[static_cast<size_t>(k) * cols_ + l] = c;
}

std::string OrderPrescription::to_text() const {
    std::string out;
    for (int k = 0; k < rows_; ++k) {
        for (int l = 0; l < cols_; ++l) out += at(k, l);
        out += '\n';
    }
    return out;
}

OrderPrescription OrderPrescription::parse(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) lines.push_back(line);
    int rows = static_cast<int>(lines.size());
    int cols = rows == 0 ? 0 : static_cast<int>(lines[0].size());
    OrderPrescription rho(rows, cols);
    for (int k = 0; k < rows; ++k) {
        if (static_cast<int>(lines[k].size()) != cols)
            throw DomainError("prescription grid is ragged");
        for (int l = 0; l < cols; ++l) rho.set(k, l, lines[k][l]);
    }
    return rho;
}

PrescriptionCheck validate_prescription(const AmalgamationProblem& p, const OrderPrescription& rho) {
    p.validate();
    const int K = p.x.size(), L = p.y.size(), M = p.z.size();
    if (rho.rows() != K || rho.cols() != L)
        return {false, "shape", "prescription grid must be " + std::to_string(K) + "x" + std::to_string(L)};

    auto cell = [&](int k, int l) { return rho.at(k, l); };
    std::vector<int> partner_x(K, -1), partner_y(L, -1);
    for (int m = 0; m < M; ++m) {
        partner_x[p.e(m)] = p.f(m);
        partner_y[p.f(m)] = p.e(m);
    }

    // (a) matched Z-pairs are '='.
    for (int m = 0; m < M; ++m)
        if (cell(p.e(m), p.f(m)) != '=')
            return {false, "a", "rho(" + std::to_string(p.e(m)) + "," + std::to_string(p.f(m)) +
                                 ") must be '='"};

    // (b) compatibility around each Z-point, closed to the boundary rows and
    // columns: any point weakly below the shared pair on one side and weakly
    // above on the other is forced.
    for (int m = 0; m < M; ++m) {
        int km = p.e(m), lm = p.f(m);
        for (int k = 0; k < K; ++k) {
            for (int l = 0; l < L; ++l) {
                if (k == km && l == lm) continue;
                if (k <= km && l >= lm && cell(k, l) != '<')
                    return {false, "b", "rho(" + std::to_string(k) + "," + std::to_string(l) +
                                         ") must be '<' around shared point " + std::to_string(m)};
                if (k >= km && l <= lm && cell(k, l) != '>')
                    return {false, "b", "rho(" + std::to_string(k) + "," + std::to_string(l) +
                                         ") must be '>' around shared point " + std::to_string(m)};
            }
        }
    }

    // (c) no '=' outside matched Z-pairs. The quantifier is widened from
    // free-by-free pairs to all unmatched pairs; an '=' joining a Z-point to
    // a free point would identify two distinct points of one side.
    for (int k = 0; k < K; ++k)
        for (int l = 0; l < L; ++l)
            if (cell(k, l) == '=' && partner_x[k] != l)
                return {false, "c", "'=' at unmatched pair (" + std::to_string(k) + "," +
                                     std::to_string(l) + ")"};

    // (d) order consistency, closed under k' <= k and l' >= l; an '=' strictly
    // inside the forced region is just as contradictory as a '>'.
    for (int k = 0; k < K; ++k) {
        for (int l = 0; l < L; ++l) {
            if (cell(k, l) == '<') {
                for (int k2 = 0; k2 <= k; ++k2) {
                    for (int l2 = l; l2 < L; ++l2) {
                        if (k2 == k && l2 == l) continue;
                        if (cell(k2, l2) != '<')
                            return {false, "d",
                                    "rho(" + std::to_string(k) + "," + std::to_string(l) +
                                        ")='<' conflicts with rho(" + std::to_string(k2) + "," +
                                        std::to_string(l2) + ")='" + std::string(1, cell(k2, l2)) + "'"};
                    }
                }
            }
        }
    }
    return {};
}

AmalgamResult free_amalgamate(const AmalgamationProblem& p, const OrderPrescription& rho) {
    auto check = validate_prescription(p, rho);
    if (!check.ok)
        throw ValidationError(check.clause, "invalid order prescription (clause " + check.clause +
                                                "): " + check.detail);
    const int K = p.x.size(), L = p.y.size(), M = p.z.size();
    std::vector<int> partner_y(L, -1);
    for (int m = 0; m < M; ++m) partner_y[p.f(m)] = p.e(m);

    // Merge positions by counting predecessors; '=' pairs share a slot.
    // sigma on [0,K) places x-points, on [K,K+L) places y-points.
    std::vector<int> sigma(K + L, 0);
    int w_size = K + L - M;

    for (int k = 0; k < K; ++k) {
        int before = k;  // x-points below k
        for (int l = 0; l < L; ++l)
            if (partner_y[l] < 0 && rho.at(k, l) == '>') ++before;  // free y-points before x_k
        sigma[k] = before;
    }
    for (int l = 0; l < L; ++l) {
        if (partner_y[l] >= 0) {
            sigma[K + l] = sigma[partner_y[l]];
            continue;
        }
        int before = 0;
        for (int k = 0; k < K; ++k)
            if (rho.at(k, l) == '<') ++before;  // x-points before y_l
        for (int l2 = 0; l2 < l; ++l2)
            if (partner_y[l2] < 0) ++before;  // earlier free y-points
        sigma[K + l] = before;
    }

    // Consistency of the computed placement: bijective onto {0..w_size-1}
    // over representatives.
    std::vector<int> seen(w_size, 0);
    for (int k = 0; k < K; ++k) {
        if (sigma[k] < 0 || sigma[k] >= w_size)
            throw ValidationError("d", "prescription admits no consistent merge");
        ++seen[sigma[k]];
    }
    for (int l = 0; l < L; ++l) {
        if (partner_y[l] >= 0) continue;
        if (sigma[K + l] < 0 || sigma[K + l] >= w_size)
            throw ValidationError("d", "prescription admits no consistent merge");
        ++seen[sigma[K + l]];
    }
    for (int c : seen)
        if (c != 1) throw ValidationError("d", "prescription admits no consistent merge");

    Embedding g, h;
    g.map.assign(sigma.begin(), sigma.begin() + K);
    h.map.assign(sigma.begin() + K, sigma.end());

    OrderedStructure w(p.x.signature(), w_size);
    for (int r = 0; r < p.x.relation_count(); ++r) {
        for (const auto& t : p.x.table(r)) {
            Tuple mapped;
            for (int v : t) mapped.push_back(g(v));
            w.add_tuple(r, std::move(mapped));
        }
        for (const auto& t : p.y.table(r)) {
            Tuple mapped;
            for (int v : t) mapped.push_back(h(v));
            w.add_tuple(r, std::move(mapped));
        }
    }

    AmalgamResult result{std::move(w), std::move(g), std::move(h), std::move(sigma)};
    // The construction must deliver embeddings with order agreement per rho.
    if (!is_embedding(p.x, result.w, result.g) || !is_embedding(p.y, result.w, result.h))
        throw ValidationError("d", "prescription admits no consistent merge");
    return result;
}

OrderPrescription default_prescription(const AmalgamationProblem& p) {
    p.validate();
    const int K = p.x.size(), L = p.y.size(), M = p.z.size();
    std::vector<int> partner_x(K, -1), partner_y(L, -1);
    for (int m = 0; m < M; ++m) {
        partner_x[p.e(m)] = p.f(m);
        partner_y[p.f(m)] = p.e(m);
    }
    // Zone of a free point: how many Z-points precede it on its own side.
    auto zone_x = [&](int k) {
        int z = 0;
        for (int m = 0; m < M; ++m)
            if (p.e(m) < k) ++z;
        return z;
    };
    auto zone_y = [&](int l) {
        int z = 0;
        for (int m = 0; m < M; ++m)
            if (p.f(m) < l) ++z;
        return z;
    };
    OrderPrescription rho(K, L);
    for (int k = 0; k < K; ++k) {
        for (int l = 0; l < L; ++l) {
            char c;
            if (partner_x[k] == l) {
                c = '=';
            } else if (partner_x[k] >= 0) {
                // x_k is the m-th Z-point; y_l sits before it iff y_l's zone
                // index does not exceed m.
                int m = 0;
                while (p.e(m) != k) ++m;
                c = (partner_y[l] >= 0 ? (partner_y[l] < k ? '>' : '<')
                                       : (zone_y(l) <= m ? '>' : '<'));
            } else if (partner_y[l] >= 0) {
                int m = 0;
                while (p.f(m) != l) ++m;
                c = (zone_x(k) <= m ? '<' : '>');
            } else {
                int zx = zone_x(k), zy = zone_y(l);
                c = (zx != zy) ? (zx < zy ? '<' : '>') : '<';  // same zone: x first
            }
            rho.set(k, l, c);
        }
    }
    return rho;
}

AmalgamResult strong_amalgamate(const AmalgamationProblem& p) {
    return free_amalgamate(p, default_prescription(p));
}

namespace {

// Enumerates order-preserving merges of the two universes gluing exactly the
// matched Z-pairs, emitting the prescription each merge induces.
void enumerate_merges(const AmalgamationProblem& p, int i, int j, std::vector<int>& pos_x,
                      std::vector<int>& pos_y, const std::vector<int>& partner_x,
                      const std::vector<int>& partner_y, std::vector<OrderPrescription>& out) {
    const int K = p.x.size(), L = p.y.size();
    if (i == K && j == L) {
        OrderPrescription rho(K, L);
        for (int k = 0; k < K; ++k)
            for (int l = 0; l < L; ++l)
                rho.set(k, l, pos_x[k] == pos_y[l] ? '=' : (pos_x[k] < pos_y[l] ? '<' : '>'));
        out.push_back(std::move(rho));
        return;
    }
    int pos = std::max(i > 0 ? pos_x[i - 1] + 1 : 0, j > 0 ? pos_y[j - 1] + 1 : 0);
    if (i < K && j < L && partner_x[i] == j) {
        pos_x[i] = pos_y[j] = pos;
        enumerate_merges(p, i + 1, j + 1, pos_x, pos_y, partner_x, partner_y, out);
        return;  // a matched pair admits no other step
    }
    if (i < K && partner_x[i] < 0) {
        pos_x[i] = pos;
        enumerate_merges(p, i + 1, j, pos_x, pos_y, partner_x, partner_y, out);
    }
    if (j < L && partner_y[j] < 0) {
        pos_y[j] = pos;
        enumerate_merges(p, i, j + 1, pos_x, pos_y, partner_x, partner_y, out);
    }
}

}  // namespace

std::vector<OrderPrescription> enumerate_prescriptions(const AmalgamationProblem& p) {
    p.validate();
    const int K = p.x.size(), L = p.y.size(), M = p.z.size();
    std::vector<int> partner_x(K, -1), partner_y(L, -1);
    for (int m = 0; m < M; ++m) {
        partner_x[p.e(m)] = p.f(m);
        partner_y[p.f(m)] = p.e(m);
    }
    std::vector<int> pos_x(K), pos_y(L);
    std::vector<OrderPrescription> out;
    enumerate_merges(p, 0, 0, pos_x, pos_y, partner_x, partner_y, out);
    return out;
}

namespace {

// Conclusions of the prescribed-amalgamation contract, re-verified per amalgam.
std::string check_conclusions(const AmalgamationProblem& p, const OrderPrescription& rho,
                              const AmalgamResult& r) {
    const int K = p.x.size(), L = p.y.size(), M = p.z.size();
    // (1) sigma strictly increasing on each side.
    for (int k = 1; k < K; ++k)
        if (r.sigma[k - 1] >= r.sigma[k]) return "sigma not increasing on x side";
    for (int l = 1; l < L; ++l)
        if (r.sigma[K + l - 1] >= r.sigma[K + l]) return "sigma not increasing on y side";
    // (2) restrictions to the two images give back X and Y.
    if (restrict_to(r.w, r.g.map) != p.x) return "W restricted to x image differs from X";
    if (restrict_to(r.w, r.h.map) != p.y) return "W restricted to y image differs from Y";
    // (3) the images intersect exactly in the Z-image and the square commutes.
    if (compose(r.g, p.e) != compose(r.h, p.f)) return "g∘e != h∘f";
    std::vector<int> gi(r.g.map), hi(r.h.map), inter;
    std::set_intersection(gi.begin(), gi.end(), hi.begin(), hi.end(), std::back_inserter(inter));
    if (static_cast<int>(inter.size()) != M) return "image intersection differs from Z";
    if (restrict_to(r.w, inter) != p.z) return "image intersection not isomorphic to Z";
    // (4) pointwise order agreement with rho.
    for (int k = 0; k < K; ++k) {
        for (int l = 0; l < L; ++l) {
            char actual = r.sigma[k] == r.sigma[K + l] ? '=' : (r.sigma[k] < r.sigma[K + l] ? '<' : '>');
            if (actual != rho.at(k, l)) return "order of merged points disagrees with rho";
        }
    }
    // Freeness: no tuple mixes free x-points with free y-points.
    std::vector<bool> free_x(r.w.size(), false), free_y(r.w.size(), false);
    std::vector<bool> shared(r.w.size(), false);
    for (int m = 0; m < M; ++m) shared[r.g(p.e(m))] = true;
    for (int k = 0; k < K; ++k)
        if (!shared[r.g(k)]) free_x[r.g(k)] = true;
    for (int l = 0; l < L; ++l)
        if (!shared[r.h(l)]) free_y[r.h(l)] = true;
    for (int rel = 0; rel < r.w.relation_count(); ++rel) {
        for (const auto& t : r.w.table(rel)) {
            bool touches_x = false, touches_y = false;
            for (int v : t) {
                touches_x = touches_x || free_x[v];
                touches_y = touches_y || free_y[v];
            }
            if (touches_x && touches_y) return "amalgam has a relation mixing the two free parts";
        }
    }
    return {};
}

}  // namespace

OpfapReport verify_opfap(const FraisseClass& cls, int size_cap, uint64_t budget) {
    OpfapReport report;
    std::vector<OrderedStructure> members;
    for (int s = 0; s <= size_cap; ++s) {
        auto ms = cls.enumerate_members(s, budget);
        members.insert(members.end(), ms.begin(), ms.end());
    }
    for (const auto& z : members) {
        for (const auto& x : members) {
            if (z.size() > x.size()) continue;
            auto e_copies = enumerate_copies(z, x).copies;
            for (const auto& y : members) {
                if (z.size() > y.size()) continue;
                auto f_copies = enumerate_copies(z, y).copies;
                for (const auto& e : e_copies) {
                    for (const auto& f : f_copies) {
                        AmalgamationProblem p{z, x, y, Embedding{e}, Embedding{f}};
                        for (const auto& rho : enumerate_prescriptions(p)) {
                            if (report.amalgams_checked >= budget)
                                throw BudgetError("verify_opfap budget exceeded after " +
                                                      std::to_string(report.amalgams_checked) +
                                                      " amalgams",
                                                  0, 0);
                            ++report.amalgams_checked;
                            AmalgamResult r = free_amalgamate(p, rho);
                            std::string reason = check_conclusions(p, rho, r);
                            if (reason.empty() && !cls.contains(r.w))
                                reason = "free amalgam leaves the class";
                            if (!reason.empty()) {
                                report.pass = false;
                                report.witness =
                                    OpfapWitness{z, x, y, p.e, p.f, rho, reason};
                                return report;
                            }
                        }
                    }
                }
            }
        }
    }
    return report;
}

}  // namespace ramseyforge
