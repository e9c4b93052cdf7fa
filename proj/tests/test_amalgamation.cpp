#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "ramseyforge/amalgamation.hpp"

using namespace ramseyforge;

namespace {

AmalgamationProblem shared_point_edges() {
    // Z = one point, X = Y = an edge with the shared point first.
    return AmalgamationProblem{OrderedStructure::ordered_graph(1, {}),
                               OrderedStructure::ordered_graph(2, {{0, 1}}),
                               OrderedStructure::ordered_graph(2, {{0, 1}}),
                               Embedding{{0}},
                               Embedding{{0}}};
}

}  // namespace

TEST_CASE("free_amalgamate: empty shared part") {
    AmalgamationProblem p{OrderedStructure::linear_order(0), OrderedStructure::linear_order(1),
                          OrderedStructure::linear_order(1), Embedding{{}}, Embedding{{}}};
    OrderPrescription rho(1, 1);
    rho.set(0, 0, '<');
    auto r = free_amalgamate(p, rho);
    CHECK(r.w == OrderedStructure::linear_order(2));
    CHECK(r.g.map == std::vector<int>{0});
    CHECK(r.h.map == std::vector<int>{1});
}

TEST_CASE("free_amalgamate: freeness over a shared point") {
    auto p = shared_point_edges();
    OrderPrescription rho(2, 2);
    rho.set(0, 0, '=');
    rho.set(0, 1, '<');
    rho.set(1, 0, '>');
    rho.set(1, 1, '<');  // new x-point before new y-point
    auto r = free_amalgamate(p, rho);
    CHECK(r.w == OrderedStructure::ordered_graph(3, {{0, 1}, {0, 2}}));
    CHECK(r.w.table(0).size() == 4);  // two undirected edges, no third
    CHECK(compose(r.g, p.e) == compose(r.h, p.f));
}

TEST_CASE("validate_prescription clauses") {
    auto p = shared_point_edges();
    CHECK(validate_prescription(p, default_prescription(p)).ok);

    // '=' off the matched pair.
    OrderPrescription off(2, 2);
    off.set(0, 0, '=');
    off.set(0, 1, '<');
    off.set(1, 0, '>');
    off.set(1, 1, '=');
    auto check = validate_prescription(p, off);
    CHECK(!check.ok);
    CHECK(check.clause == "c");

    // Non-monotone crossing on a 2x2 grid with no shared part.
    AmalgamationProblem q{OrderedStructure::linear_order(0), OrderedStructure::linear_order(2),
                          OrderedStructure::linear_order(2), Embedding{{}}, Embedding{{}}};
    OrderPrescription crossing(2, 2);
    crossing.set(0, 0, '>');
    crossing.set(0, 1, '<');
    crossing.set(1, 0, '<');  // x_1 < y_0 but x_0 > y_0
    crossing.set(1, 1, '<');
    auto crossed = validate_prescription(q, crossing);
    CHECK(!crossed.ok);
    CHECK(crossed.clause == "d");

    // A '<' then '>' in the same row is unrealizable and must be rejected.
    AmalgamationProblem r{OrderedStructure::linear_order(0), OrderedStructure::linear_order(1),
                          OrderedStructure::linear_order(2), Embedding{{}}, Embedding{{}}};
    OrderPrescription row(1, 2);
    row.set(0, 0, '<');
    row.set(0, 1, '>');
    CHECK(!validate_prescription(r, row).ok);

    OrderPrescription bad_shape(1, 1);
    CHECK(validate_prescription(p, bad_shape).clause == "shape");
    CHECK_THROWS_AS(free_amalgamate(p, off), ValidationError);
}

TEST_CASE("strong_amalgamate default prescription") {
    auto p = shared_point_edges();
    auto r = strong_amalgamate(p);
    // Shared point first, then the new x-point, then the new y-point.
    CHECK(r.w == OrderedStructure::ordered_graph(3, {{0, 1}, {0, 2}}));
    CHECK(r.sigma == std::vector<int>{0, 1, 0, 2});

    // Shared point in the middle of the x side: y's free point after it keeps
    // zone order.
    AmalgamationProblem mid{OrderedStructure::linear_order(1), OrderedStructure::linear_order(3),
                            OrderedStructure::linear_order(2), Embedding{{1}}, Embedding{{0}}};
    auto rm = strong_amalgamate(mid);
    CHECK(rm.w.size() == 4);
    CHECK(rm.g.map == std::vector<int>{0, 1, 2});
    CHECK(rm.h.map == std::vector<int>{1, 3});
}

TEST_CASE("enumerate_prescriptions covers exactly the consistent merges") {
    AmalgamationProblem p{OrderedStructure::linear_order(0), OrderedStructure::linear_order(2),
                          OrderedStructure::linear_order(2), Embedding{{}}, Embedding{{}}};
    auto all = enumerate_prescriptions(p);
    CHECK(all.size() == 6);  // interleavings of 2 and 2
    for (const auto& rho : all) CHECK(validate_prescription(p, rho).ok);

    auto q = shared_point_edges();
    auto merged = enumerate_prescriptions(q);
    CHECK(merged.size() == 2);  // the two free points in either order
    for (const auto& rho : merged) {
        auto r = free_amalgamate(q, rho);
        CHECK(r.w.size() == 3);
    }
}

TEST_CASE("amalgam invariants, exhaustively at small size") {
    auto graphs = FraisseClass::ordered_graphs();
    auto members2 = graphs.enumerate_members(2, 1 << 20);
    auto members3 = graphs.enumerate_members(3, 1 << 20);
    std::vector<OrderedStructure> zs = {OrderedStructure::ordered_graph(0, {}),
                                        OrderedStructure::ordered_graph(1, {})};
    for (const auto& z : zs) {
        for (const auto& x : members3) {
            for (const auto& y : members2) {
                auto es = enumerate_copies(z, x).copies;
                auto fs = enumerate_copies(z, y).copies;
                for (const auto& e : es) {
                    for (const auto& f : fs) {
                        AmalgamationProblem p{z, x, y, Embedding{e}, Embedding{f}};
                        for (const auto& rho : enumerate_prescriptions(p)) {
                            auto r = free_amalgamate(p, rho);
                            // Commuting square and exact intersection.
                            CHECK(compose(r.g, p.e) == compose(r.h, p.f));
                            std::vector<int> inter;
                            std::set_intersection(r.g.map.begin(), r.g.map.end(),
                                                  r.h.map.begin(), r.h.map.end(),
                                                  std::back_inserter(inter));
                            CHECK(inter.size() == static_cast<size_t>(z.size()));
                            // Pointwise order agreement with rho.
                            for (int k = 0; k < x.size(); ++k) {
                                for (int l = 0; l < y.size(); ++l) {
                                    char actual = r.sigma[k] == r.sigma[x.size() + l] ? '='
                                                  : r.sigma[k] < r.sigma[x.size() + l] ? '<'
                                                                                       : '>';
                                    CHECK(actual == rho.at(k, l));
                                }
                            }
                            CHECK(restrict_to(r.w, r.g.map) == x);
                            CHECK(restrict_to(r.w, r.h.map) == y);
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("verify_opfap") {
    CHECK(verify_opfap(FraisseClass::ordered_graphs(), 3, uint64_t{1} << 24).pass);
    CHECK(verify_opfap(FraisseClass::clique_free(3), 3, uint64_t{1} << 24).pass);

    // Forbidding the edgeless pair makes the free amalgam of two edges over a
    // shared point illegal.
    auto dense = FraisseClass::forbidden_substructures(
        "no-bare-pair", Signature::graph(), {OrderedStructure::ordered_graph(2, {})});
    auto report = verify_opfap(dense, 2, uint64_t{1} << 24);
    CHECK(!report.pass);
    REQUIRE(report.witness.has_value());
    CHECK(report.witness->reason == "free amalgam leaves the class");
}

TEST_CASE("prescription text grid round-trip") {
    auto p = shared_point_edges();
    auto rho = default_prescription(p);
    CHECK(rho.to_text() == "=<\n><\n");
    CHECK(OrderPrescription::parse(rho.to_text()) == rho);
}
