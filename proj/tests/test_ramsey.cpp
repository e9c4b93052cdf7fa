#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "ramseyforge/genseq.hpp"
#include "ramseyforge/ramsey.hpp"

using namespace ramseyforge;

namespace {

constexpr uint64_t kBudget = uint64_t{1} << 26;

ArrowQuery lo_query(int a, int b, int c, int colors) {
    ArrowQuery q;
    q.a = {OrderedStructure::linear_order(a)};
    q.b = {OrderedStructure::linear_order(b)};
    q.c = {OrderedStructure::linear_order(c)};
    q.colors = colors;
    return q;
}

}  // namespace

TEST_CASE("arrow_check: one color and B=A are trivially true") {
    CHECK(arrow_check(lo_query(2, 3, 4, 1), kBudget));
    CHECK(arrow_check(lo_query(2, 2, 3, 5), kBudget));
}

TEST_CASE("arrow_check: pigeonhole instances") {
    CHECK(arrow_check(lo_query(1, 2, 3, 2), kBudget));
    // Two points, two colors: the injective coloring has no monochromatic pair.
    CHECK(!arrow_check(lo_query(1, 2, 2, 2), kBudget));
    // Three colors need four points for a monochromatic pair.
    CHECK(!arrow_check(lo_query(1, 2, 3, 3), kBudget));
    CHECK(arrow_check(lo_query(1, 2, 4, 3), kBudget));
}

TEST_CASE("arrow_check: pair Ramsey threshold at six points") {
    CHECK(arrow_check(lo_query(2, 3, 6, 2), kBudget));
    CHECK(!arrow_check(lo_query(2, 3, 5, 2), kBudget));
}

TEST_CASE("arrow_check: budget guard reports cost") {
    CHECK_THROWS_AS(arrow_check(lo_query(1, 2, 40, 2), 1 << 10), BudgetError);
    try {
        arrow_check(lo_query(1, 2, 40, 2), 1 << 10);
    } catch (const BudgetError& e) {
        CHECK(e.cost_log2() == doctest::Approx(40.0));
    }
}

TEST_CASE("arrow_check monotone in the big side at tiny scale") {
    // If the arrow holds for C it holds for any larger linear order.
    for (int c = 3; c <= 5; ++c) {
        bool small = arrow_check(lo_query(1, 2, c, 2), kBudget);
        bool big = arrow_check(lo_query(1, 2, c + 1, 2), kBudget);
        if (small) CHECK(big);
    }
}

TEST_CASE("find_witness on linear orders") {
    std::vector<FraisseClass> lo = {FraisseClass::linear_orders()};
    auto small = find_witness(lo, {OrderedStructure::linear_order(1)},
                              {OrderedStructure::linear_order(2)}, 2, 8, kBudget);
    REQUIRE(small.has_value());
    CHECK((*small)[0].size() == 3);

    auto pairs = find_witness(lo, {OrderedStructure::linear_order(2)},
                              {OrderedStructure::linear_order(3)}, 2, 8, kBudget);
    REQUIRE(pairs.has_value());
    CHECK((*pairs)[0].size() == 6);

    auto none = find_witness(lo, {OrderedStructure::linear_order(2)},
                             {OrderedStructure::linear_order(3)}, 2, 5, kBudget);
    CHECK(!none.has_value());
}

TEST_CASE("find_witness on a product of two linear-order classes") {
    // Monochromatic 2x2 subgrids of an r x c grid: 2-row grids never force
    // (color columns 01/10 only), and an r x c coloring avoids them exactly
    // when the columns' same-color row pairs are pairwise disjoint. With 3
    // rows the six non-constant columns pack all six color-slots, so 3x6 is
    // avoidable and 3x7 forces. The diagonal schedule reaches (3,7) first at
    // total size 10, right after (2,8).
    std::vector<FraisseClass> classes = {FraisseClass::linear_orders(),
                                         FraisseClass::linear_orders()};
    std::vector<OrderedStructure> a = {OrderedStructure::linear_order(1),
                                       OrderedStructure::linear_order(1)};
    std::vector<OrderedStructure> b = {OrderedStructure::linear_order(2),
                                       OrderedStructure::linear_order(2)};
    auto witness = find_witness(classes, a, b, 2, 8, kBudget);
    REQUIRE(witness.has_value());
    CHECK((*witness)[0].size() == 3);
    CHECK((*witness)[1].size() == 7);

    // Capping both sides at 6 pushes the first forcing grid to the square:
    // 4x6 is avoidable via the six balanced columns, 5x5 is not (the
    // slot-count packing 3a+b<=10, a+3b<=10 has no integer solution a+b=5).
    auto capped = find_witness(classes, a, b, 2, 6, kBudget);
    REQUIRE(capped.has_value());
    CHECK((*capped)[0].size() == 5);
    CHECK((*capped)[1].size() == 5);
}

TEST_CASE("pigeonhole_check on the one-dimensional linear-order sequence") {
    auto seq = GeneratingSequence::build({FraisseClass::linear_orders()}, 4, kBudget);
    CHECK(pigeonhole_check(seq, 0, 1, 2, kBudget));
    // Level 1 has only two points: not enough for the two-coloring pigeonhole.
    CHECK_THROWS_AS(pigeonhole_check(seq, 1, 1, 2, kBudget), DomainError);
    CHECK(pigeonhole_check(seq, 0, 1, 3, kBudget));
}
