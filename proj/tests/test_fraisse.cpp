#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "ramseyforge/fraisse.hpp"

using namespace ramseyforge;

namespace {

constexpr uint64_t kBudget = uint64_t{1} << 24;

// Inclusion-exclusion over the four triangles of a 4-point graph: counts the
// triangle-free edge sets independently of the enumerator.
uint64_t triangle_free_4_by_inclusion_exclusion() {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) pairs.emplace_back(i, j);
    auto pair_index = [&](int i, int j) {
        for (size_t p = 0; p < pairs.size(); ++p)
            if (pairs[p] == std::make_pair(i, j)) return static_cast<int>(p);
        return -1;
    };
    auto triples = all_subsets(4, 3);
    int64_t total = 0;
    for (uint64_t mask = 0; mask < (1u << triples.size()); ++mask) {
        uint64_t forced_edges = 0;
        int picked = 0;
        for (size_t t = 0; t < triples.size(); ++t) {
            if (!((mask >> t) & 1)) continue;
            ++picked;
            const auto& tri = triples[t];
            forced_edges |= uint64_t{1} << pair_index(tri[0], tri[1]);
            forced_edges |= uint64_t{1} << pair_index(tri[0], tri[2]);
            forced_edges |= uint64_t{1} << pair_index(tri[1], tri[2]);
        }
        int free_edges = 6 - __builtin_popcountll(forced_edges);
        total += (picked % 2 == 0 ? 1 : -1) * (int64_t{1} << free_edges);
    }
    return static_cast<uint64_t>(total);
}

}  // namespace

TEST_CASE("contains") {
    auto cf3 = FraisseClass::clique_free(3);
    CHECK(!cf3.contains(OrderedStructure::complete_graph(3)));
    CHECK(cf3.contains(OrderedStructure::ordered_graph(3, {{0, 1}, {1, 2}})));
    CHECK(cf3.contains(OrderedStructure::ordered_graph(0, {})));
    CHECK(cf3.contains(OrderedStructure::ordered_graph(1, {})));
    CHECK(FraisseClass::ordered_graphs().contains(OrderedStructure::ordered_graph(1, {})));
    CHECK(FraisseClass::linear_orders().contains(OrderedStructure::linear_order(0)));
    CHECK(FraisseClass::linear_orders().contains(OrderedStructure::linear_order(1)));
    // Asymmetric tables are not graphs.
    OrderedStructure asym(Signature::graph(), 2);
    asym.add_tuple(0, {0, 1});
    CHECK(!FraisseClass::ordered_graphs().contains(asym));
    CHECK_THROWS_AS(cf3.contains(OrderedStructure::linear_order(2)), DomainError);
}

TEST_CASE("enumerate_members") {
    CHECK(FraisseClass::linear_orders().enumerate_members(5, kBudget).size() == 1);
    auto og2 = FraisseClass::ordered_graphs().enumerate_members(2, kBudget);
    REQUIRE(og2.size() == 2);
    CHECK(og2[0] == OrderedStructure::ordered_graph(2, {}));
    CHECK(og2[1] == OrderedStructure::ordered_graph(2, {{0, 1}}));
    CHECK(FraisseClass::clique_free(3).enumerate_members(3, kBudget).size() == 7);

    auto members = FraisseClass::clique_free(3).enumerate_members(4, kBudget);
    for (const auto& m : members) CHECK(FraisseClass::clique_free(3).contains(m));
    for (size_t i = 1; i < members.size(); ++i)
        CHECK(OrderedStructure::table_less(members[i - 1], members[i]));
    CHECK_THROWS_AS(FraisseClass::ordered_graphs().enumerate_members(9, 1 << 10), BudgetError);
}

TEST_CASE("heredity of enumerated members") {
    auto cf3 = FraisseClass::clique_free(3);
    for (const auto& m : cf3.enumerate_members(4, kBudget))
        for (const auto& idx : all_subsets(m.size(), 3)) CHECK(cf3.contains(restrict_to(m, idx)));
}

TEST_CASE("iso_count") {
    for (int s = 0; s <= 6; ++s) CHECK(FraisseClass::linear_orders().iso_count(s, kBudget).count == 1);
    CHECK(FraisseClass::ordered_graphs().iso_count(3, kBudget).count == 8);
    CHECK(FraisseClass::complete_graphs().iso_count(5, kBudget).count == 1);
    // Closed form and enumeration agree where both apply.
    for (int s = 1; s <= 5; ++s) {
        auto rec = FraisseClass::ordered_graphs().iso_count(s, kBudget);
        CHECK(rec.closed_form);
        CHECK(rec.count == FraisseClass::ordered_graphs().enumerate_members(s, kBudget).size());
    }
    // Exhaustive enumeration against the inclusion-exclusion oracle.
    auto cf3_4 = FraisseClass::clique_free(3).iso_count(4, kBudget);
    CHECK(cf3_4.count == triangle_free_4_by_inclusion_exclusion());
    CHECK(cf3_4.count == 41);
    CHECK(cf3_4.count == FraisseClass::clique_free(3).enumerate_members(4, kBudget).size());
}

TEST_CASE("check_class_axioms") {
    CHECK(FraisseClass::linear_orders().check_class_axioms(4, uint64_t{1} << 22).pass());
    CHECK(FraisseClass::ordered_graphs().check_class_axioms(3, uint64_t{1} << 22).pass());
    auto cf3 = FraisseClass::clique_free(3).check_class_axioms(3, uint64_t{1} << 22);
    CHECK(cf3.pass());
    CHECK(cf3.cases_checked > 0);

    // Forbidding the edgeless pair degenerates the class; the checker still
    // produces a report on it.
    auto dense = FraisseClass::forbidden_substructures(
        "no-bare-pair", Signature::graph(), {OrderedStructure::ordered_graph(2, {})});
    auto report = dense.check_class_axioms(2, uint64_t{1} << 22);
    CHECK(report.heredity);
    CHECK(report.cases_checked > 0);
}

TEST_CASE("class spec text") {
    auto cf4 = FraisseClass::clique_free(4);
    CHECK(cf4.to_spec_text() == "class clique-free-4 kind=OrderedCliqueFree param=4");
    auto parsed = parse_class_spec(cf4.to_spec_text(), nullptr);
    CHECK(parsed.kind() == ClassKind::OrderedCliqueFree);
    CHECK(parsed.param() == 4);
    CHECK(builtin_class("linear-orders")->kind() == ClassKind::LinearOrders);
    CHECK(builtin_class("clique-free-3")->param() == 3);
    CHECK(!builtin_class("nonsense").has_value());
}
