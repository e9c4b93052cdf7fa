#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "ramseyforge/structures.hpp"

using namespace ramseyforge;

namespace {

OrderedStructure path3() { return OrderedStructure::ordered_graph(3, {{0, 1}, {1, 2}}); }
OrderedStructure edge2() { return OrderedStructure::ordered_graph(2, {{0, 1}}); }
OrderedStructure nonedge2() { return OrderedStructure::ordered_graph(2, {}); }

}  // namespace

TEST_CASE("restrict: induced substructures") {
    CHECK(restrict_to(edge2(), {0}) == OrderedStructure::ordered_graph(1, {}));
    CHECK(restrict_to(path3(), {0, 1, 2}) == path3());
    CHECK(restrict_to(path3(), {0, 2}) == nonedge2());
    CHECK_THROWS_AS(restrict_to(edge2(), {0, 5}), DomainError);
}

TEST_CASE("enumerate_copies: spec instances") {
    auto point = OrderedStructure::linear_order(1);
    for (int n : {1, 3, 6}) {
        auto copies = enumerate_copies(point, OrderedStructure::linear_order(n)).copies;
        CHECK(copies.size() == static_cast<size_t>(n));
    }
    CHECK(enumerate_copies(edge2(), OrderedStructure::complete_graph(3)).copies.size() == 3);
    auto in_path = enumerate_copies(edge2(), path3()).copies;
    REQUIRE(in_path.size() == 2);
    CHECK(in_path[0] == std::vector<int>{0, 1});
    CHECK(in_path[1] == std::vector<int>{1, 2});
    CHECK_THROWS_AS(enumerate_copies(point, edge2()), DomainError);
}

TEST_CASE("leftmost_copy") {
    auto point = OrderedStructure::linear_order(1);
    CHECK(leftmost_copy(point, OrderedStructure::linear_order(4))->map == std::vector<int>{0});
    CHECK(leftmost_copy(edge2(), path3())->map == std::vector<int>{0, 1});
    CHECK(leftmost_copy(nonedge2(), path3())->map == std::vector<int>{0, 2});
    CHECK(!leftmost_copy(edge2(), nonedge2()).has_value());
    // The empty structure embeds into everything via the empty embedding.
    CHECK(leftmost_copy(OrderedStructure::ordered_graph(0, {}), path3())->map.empty());
}

TEST_CASE("disjoint_sum") {
    auto pt = OrderedStructure::linear_order(1);
    auto s = disjoint_sum(pt, pt);
    CHECK(s.sum == OrderedStructure::linear_order(2));
    CHECK(s.from_x.map == std::vector<int>{0});
    CHECK(s.from_y.map == std::vector<int>{1});

    auto ee = disjoint_sum(edge2(), edge2());
    CHECK(ee.sum == OrderedStructure::ordered_graph(4, {{0, 1}, {2, 3}}));

    auto e0 = disjoint_sum(OrderedStructure::ordered_graph(0, {}), path3());
    CHECK(e0.sum == path3());

    // Interleaved: y-point between the two x-points.
    auto mixed = disjoint_sum(edge2(), OrderedStructure::ordered_graph(1, {}),
                              {false, true, false});
    CHECK(mixed.sum == OrderedStructure::ordered_graph(3, {{0, 2}}));
    CHECK_THROWS_AS(disjoint_sum(edge2(), edge2(), {false, true, false}), DomainError);
}

TEST_CASE("copy enumeration matches the full subset scan") {
    for (int trial = 0; trial < 60; ++trial) {
        auto b = testutil::random_graph(8);
        auto a = testutil::random_graph(4);
        if (a.size() > b.size()) continue;
        auto fast = enumerate_copies(a, b).copies;
        auto slow = testutil::scan_copies(a, b);
        CHECK(fast == slow);
    }
}

TEST_CASE("embeddings compose and restrict back to the pattern") {
    for (int trial = 0; trial < 40; ++trial) {
        auto b = testutil::random_graph(7);
        auto a = testutil::random_graph(3);
        if (a.size() > b.size()) continue;
        for (const auto& idx : enumerate_copies(a, b).copies) {
            Embedding e{idx};
            CHECK(is_embedding(a, b, e));
            CHECK(restrict_to(b, idx) == a);
        }
    }
    // Composition of embeddings is an embedding.
    auto a = edge2();
    auto b = path3();
    auto c = OrderedStructure::ordered_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    for (const auto& ab : enumerate_copies(a, b).copies) {
        for (const auto& bc : enumerate_copies(b, c).copies) {
            Embedding composed = compose(Embedding{bc}, Embedding{ab});
            CHECK(is_embedding(a, c, composed));
        }
    }
}

TEST_CASE("equality agrees with two-way bijective embeddings") {
    for (int trial = 0; trial < 40; ++trial) {
        auto a = testutil::random_graph(5);
        auto b = testutil::random_graph(5);
        bool two_way = a.size() == b.size() && is_embedding(a, b, Embedding::identity(a.size())) &&
                       is_embedding(b, a, Embedding::identity(b.size()));
        CHECK(two_way == (a == b));
    }
}

TEST_CASE("canonical text round-trip is bit-exact") {
    auto g = OrderedStructure::ordered_graph(3, {{0, 1}});
    CHECK(g.to_text() == "size=3\nrel E/2: (0,1) (1,0)\n");
    for (int trial = 0; trial < 40; ++trial) {
        auto s = testutil::random_graph(6);
        auto text = s.to_text();
        auto parsed = OrderedStructure::from_text(text);
        CHECK(parsed == s);
        CHECK(parsed.to_text() == text);
        CHECK(OrderedStructure::from_line(s.to_line()) == s);
    }
    // Empty relation lines keep the signature across round-trips.
    auto empty_rel = OrderedStructure(Signature::graph(), 2);
    CHECK(OrderedStructure::from_text(empty_rel.to_text()) == empty_rel);
}
