#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "painted/trees.hpp"

#include <set>

using namespace painted;

namespace {
const PaintedSet W5{5, 0};
const PaintedSet W2B2{2, 2};
const PaintedSet W2B3{2, 3};
}

TEST_CASE("label names and parsing") {
    PaintedSet s{2, 3};
    CHECK(s.label_name(0) == "w1");
    CHECK(s.label_name(1) == "w2");
    CHECK(s.label_name(2) == "b1");
    CHECK(s.label_name(4) == "b3");
    CHECK(s.parse_label("w2") == 1);
    CHECK(s.parse_label("b3") == 4);
    CHECK_THROWS(s.parse_label("w3"));
    CHECK_THROWS(s.parse_label("b4"));
    CHECK_THROWS(s.parse_label("x1"));
}

TEST_CASE("stable partition counts") {
    CHECK(stable_partitions(PaintedSet{3, 0}).size() == 0);
    CHECK(stable_partitions(PaintedSet{4, 0}).size() == 3);
    CHECK(stable_partitions(W5).size() == 10);
    CHECK(stable_partitions(PaintedSet{6, 0}).size() == 25);
    CHECK(stable_partitions(W2B2).size() == 2);
    CHECK(stable_partitions(W2B3).size() == 6);
    // All-black far parts are unstable, so one white forces emptiness.
    CHECK(stable_partitions(PaintedSet{1, 4}).size() == 0);
}

TEST_CASE("partition canonicalization and delta") {
    // {w1,w2}|{w3,w4,w5} handed in as either part gives the same far mask.
    CHECK(make_partition(W5, 0b00011).far == 0b11100);
    CHECK(make_partition(W5, 0b11100).far == 0b11100);
    TwoPartition s1{0b11100}, s2{0b11000}, s3{0b10110};
    CHECK(delta(W5, s1, s1) == 0);
    CHECK(delta(W5, s1, s2) == 1);
    CHECK(delta(W5, s1, s3) == 2);
}

TEST_CASE("good families by degree") {
    auto count = [](const PaintedSet& s, int d) { return good_families(s, d).size(); };
    CHECK(count(W5, 0) == 1);
    CHECK(count(W5, 1) == 10);
    CHECK(count(W5, 2) == 15);
    CHECK(count(PaintedSet{6, 0}, 1) == 25);
    CHECK(count(PaintedSet{6, 0}, 2) == 105);
    CHECK(count(PaintedSet{6, 0}, 3) == 105);
    CHECK(count(W2B2, 1) == 2);
    CHECK(count(W2B3, 1) == 6);
    CHECK(count(W2B3, 2) == 6);

    for (const auto& fam : good_families(W5, 2)) CHECK(is_good_family(W5, fam));
    CHECK_FALSE(is_good_family(W5, GoodFamily{0b11100, 0b10110}));  // crossing
    CHECK_FALSE(is_good_family(W5, GoodFamily{0b11100, 0b11100}));  // duplicate
}

TEST_CASE("tree shape from a nested family") {
    GoodFamily fam{0b01100, 0b11100};  // {w3,w4} inside {w3,w4,w5}
    TreeShape t = TreeShape::build(W5, fam);
    REQUIRE(t.num_vertices() == 3);
    CHECK(t.edge_near[0] == 2);  // small edge hangs off the big edge's vertex
    CHECK(t.edge_near[1] == 0);
    CHECK(t.tail_vertex == std::vector<int>{0, 0, 1, 1, 2});
    REQUIRE(t.flags[0].size() == 3);
    REQUIRE(t.flags[1].size() == 3);
    REQUIRE(t.flags[2].size() == 3);
    // Far-side half of the inner edge sits at vertex 1 and its branch is the
    // rest of the set.
    const Flag& back = t.flags[1][2];
    CHECK(back.kind == Flag::Half);
    CHECK(back.side == 1);
    CHECK(t.branch(back) == 0b10011);
    CHECK(t.branch_has_white(back));
}

TEST_CASE("breaking trichotomy") {
    TreeShape t = TreeShape::build(W5, GoodFamily{0b11100});
    Breaking at_edge = break_at(t, TwoPartition{0b11100});
    CHECK(at_edge.kind == Breaking::AtEdge);
    CHECK(at_edge.edge == 0);

    Breaking inside = break_at(t, TwoPartition{0b01100});
    CHECK(inside.kind == Breaking::AtVertex);
    CHECK(inside.vertex == 1);

    Breaking outside = break_at(t, TwoPartition{0b11000});
    CHECK(outside.kind == Breaking::AtVertex);
    CHECK(outside.vertex == 1);

    Breaking root_side = break_at(t, TwoPartition{0b00011 ^ 0b11111});
    CHECK(root_side.kind == Breaking::AtEdge);  // complement of {w1,w2} is the same partition

    Breaking crossing = break_at(t, TwoPartition{0b00110});
    CHECK(crossing.kind == Breaking::NoBreak);
    CHECK(crossing.edge == 0);
}

TEST_CASE("vertex splits at the one-vertex tree list every stable partition") {
    TreeShape t = TreeShape::build(W5, GoodFamily{});
    auto splits = vertex_splits(t, 0);
    CHECK(splits.size() == 10);
    std::set<std::uint32_t> seen;
    for (const auto& sp : splits) {
        CHECK((sp.flag_side & 1u) == 0);  // flag 0 stays on the implicit side
        seen.insert(sp.sigma.far);
    }
    CHECK(seen.size() == 10);

    // At a trivalent vertex there is nothing to split.
    TreeShape max_tree = TreeShape::build(W5, GoodFamily{0b01100, 0b11100});
    for (int v = 0; v < 3; ++v) CHECK(vertex_splits(max_tree, v).empty());
}

TEST_CASE("splits exclude all-black sides and existing edges") {
    // w1 w2 b1 b2 b3: flags at the lone vertex are 0..4 in label order.
    TreeShape t = TreeShape::build(W2B3, GoodFamily{});
    auto splits = vertex_splits(t, 0);
    CHECK(splits.size() == 6);
    for (const auto& sp : splits) CHECK(is_stable(W2B3, sp.sigma));

    // After adding the edge {w2,b1}|..., the same label partition stops being
    // a valid split of the new near vertex.
    GoodFamily fam{0b00110};
    TreeShape t2 = TreeShape::build(W2B3, fam);
    for (int v = 0; v < t2.num_vertices(); ++v)
        for (const auto& sp : vertex_splits(t2, v)) CHECK(sp.sigma.far != 0b00110);
}

TEST_CASE("flag quadruple orientation") {
    CHECK(flag_quad_sign(0b01100, 2, 3, 0, 1) == 1);   // {2,3} vs {0,1}
    CHECK(flag_quad_sign(0b01100, 0, 1, 2, 3) == 1);   // symmetric in the two pairs
    CHECK(flag_quad_sign(0b00110, 0, 1, 2, 3) == -1);  // {2,1} vs {0,3}
    CHECK(flag_quad_sign(0b01010, 0, 1, 2, 3) == 0);
}

TEST_CASE("contract and relabel") {
    GoodFamily fam{0b01100, 0b11100};
    CHECK(contract_edge(fam, 0) == GoodFamily{0b11100});
    CHECK(contract_edge(fam, 1) == GoodFamily{0b01100});

    // Swap w4 and w5 (labels 3 and 4): {w3,w4} becomes {w3,w5}.
    std::vector<int> perm{0, 1, 2, 4, 3};
    CHECK(relabel_family(W5, fam, perm) == (GoodFamily{0b10100, 0b11100}));
}

TEST_CASE("graft two small trees") {
    PaintedSet w2b1{2, 1};
    GraftResult r = graft(w2b1, GoodFamily{}, 1, w2b1, GoodFamily{}, 0);
    CHECK(r.s == PaintedSet{2, 2});
    CHECK(r.map1 == std::vector<int>{0, -1, 2});
    CHECK(r.map2 == std::vector<int>{-1, 1, 3});
    CHECK(r.middle.far == 0b1010);
    CHECK(r.fam == GoodFamily{0b1010});
    CHECK(is_good_family(r.s, r.fam));

    CHECK_THROWS_AS(graft(w2b1, GoodFamily{}, 2, w2b1, GoodFamily{}, 0),
                    std::invalid_argument);  // black tail
}

TEST_CASE("graft keeps both families' edges") {
    // Left: w1..w4 with edge {w3,w4}|{w1,w2}; glue its w4 to w1 of another W4.
    PaintedSet w4{4, 0};
    GoodFamily left{0b1100};
    GraftResult r = graft(w4, left, 3, w4, GoodFamily{0b1100}, 0);
    CHECK(r.s == PaintedSet{6, 0});
    REQUIRE(r.fam.size() == 3);
    CHECK(is_good_family(r.s, r.fam));
    // Left labels w1,w2,w3 -> 0,1,2; right w2,w3,w4 -> 3,4,5.
    // Left edge {w3,w4}|{w1,w2}: the w4 side absorbs the right part.
    CHECK(r.middle.far == 0b111000);
    CHECK(std::binary_search(r.fam.begin(), r.fam.end(), 0b111100u));
    CHECK(std::binary_search(r.fam.begin(), r.fam.end(), 0b110000u));
}
