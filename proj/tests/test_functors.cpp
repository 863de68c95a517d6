#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "painted/functors.hpp"

using namespace painted;

TEST_CASE("ground sets of an edge") {
    EdgeGrounds eg = edge_grounds(PaintedSet{5, 0}, TwoPartition{0b11100});
    CHECK(eg.g1 == PaintedSet{3, 0});
    CHECK(eg.g2 == PaintedSet{4, 0});
    CHECK(eg.e1 == 2);
    CHECK(eg.e2 == 3);
    CHECK(eg.to_g1 == std::vector<int>{0, 1, -1, -1, -1});
    CHECK(eg.to_g2 == std::vector<int>{-1, -1, 0, 1, 2});

    // Colors survive on both sides; node points are white.
    EdgeGrounds ec = edge_grounds(PaintedSet{2, 3}, TwoPartition{0b00110});
    CHECK(ec.g1 == PaintedSet{2, 2});
    CHECK(ec.g2 == PaintedSet{2, 1});
    // Node points slot in as the last white, so blacks shift past them.
    CHECK(ec.to_g1 == std::vector<int>{0, -1, -1, 2, 3});
    CHECK(ec.to_g2 == std::vector<int>{-1, 0, 2, -1, -1});
}

TEST_CASE("pullback of compatible generators") {
    Ring six(PaintedSet{6, 0});
    EdgeFunctor f(six, TwoPartition{0b111000});

    // Inside the far side: lands in the second factor. {w4,w5} maps to the
    // first two ground labels, so the canonical far part is the complement.
    Tensor2 nested = f.pull_generator(TwoPartition{0b011000});
    REQUIRE(nested.size() == 1);
    CHECK(nested.begin()->first == std::pair{GoodFamily{}, GoodFamily{0b1100}});
    CHECK(nested.begin()->second == 1);

    // Disjoint from the far side: lands in the first factor.
    Tensor2 disjoint = f.pull_generator(TwoPartition{0b000110});
    REQUIRE(disjoint.size() == 1);
    CHECK(disjoint.begin()->first == std::pair{GoodFamily{0b0110}, GoodFamily{}});

    // Containing the far side: the node point joins the leftover labels.
    Tensor2 super = f.pull_generator(TwoPartition{0b111100});
    REQUIRE(super.size() == 1);
    CHECK(super.begin()->first == std::pair{GoodFamily{0b1100}, GoodFamily{}});

    // Crossing: zero.
    CHECK(f.pull_generator(TwoPartition{0b101100}).empty());
}

TEST_CASE("pullback of the contracted edge itself") {
    Ring five(PaintedSet{5, 0});
    EdgeFunctor f(five, TwoPartition{0b11100});
    // Near ground has three labels and no stable partitions, so only the far
    // ground contributes: the single partition keeping the node away from the
    // first two far labels.
    Tensor2 self = f.pull_generator(f.edge());
    REQUIRE(self.size() == 1);
    CHECK(self.begin()->first == std::pair{GoodFamily{}, GoodFamily{0b1100}});
    CHECK(self.begin()->second == -1);

    // A different orientation gives a different representative...
    Tensor2 other = f.pull_generator(f.edge(), QuadLabels{0, 1, 3, 4});
    REQUIRE(other.size() == 1);
    CHECK(other.begin()->first == std::pair{GoodFamily{}, GoodFamily{0b0110}});
    // ...but the same class on the stratum.
    const Ring& r2 = f.ring2();
    CHECK(r2.normal_form(1, Coords{{GoodFamily{0b1100}, Rat(1)}}) ==
          r2.normal_form(1, Coords{{GoodFamily{0b0110}, Rat(1)}}));

    CHECK_THROWS_AS(f.pull_generator(f.edge(), QuadLabels{0, 2, 3, 4}),
                    std::invalid_argument);  // w3 is on the far side
}

TEST_CASE("pullback is multiplicative") {
    Ring six(PaintedSet{6, 0});
    EdgeFunctor f(six, TwoPartition{0b111000});
    Coords x{{GoodFamily{0b000110}, Rat(1)}};
    Coords y{{GoodFamily{0b011000}, Rat(1)}};
    Coords xy = six.multiply(1, x, 1, y);
    Tensor2 lhs;
    for (const auto& [fam, c] : xy) {
        Tensor2 part = f.pull(2, Coords{{fam, c}});
        for (const auto& [k, v] : part) lhs[k] += v;
    }
    Tensor2 rhs = f.tensor_multiply(f.pull(1, x), f.pull(1, y));
    CHECK(lhs == rhs);
}

TEST_CASE("pushforward grafts and inserts the middle edge") {
    Ring six(PaintedSet{6, 0});
    EdgeFunctor f(six, TwoPartition{0b111000});
    Tensor2 unit{{{GoodFamily{}, GoodFamily{}}, Rat(1)}};
    Coords divisor = f.push(unit);
    REQUIRE(divisor.size() == 1);
    CHECK(divisor.begin()->first == GoodFamily{0b111000});
    CHECK(divisor.begin()->second == 1);

    Tensor2 left{{{GoodFamily{0b0110}, GoodFamily{}}, Rat(1)}};
    Coords pushed = f.push(left);
    REQUIRE(pushed.size() == 1);
    CHECK(pushed.begin()->first == GoodFamily{0b000110, 0b111000});
}

TEST_CASE("pushforward respects colors") {
    Ring ring(PaintedSet{2, 3});
    EdgeFunctor f(ring, TwoPartition{0b00110});
    Tensor2 unit{{{GoodFamily{}, GoodFamily{}}, Rat(1)}};
    Coords divisor = f.push(unit);
    REQUIRE(divisor.size() == 1);
    CHECK(divisor.begin()->first == GoodFamily{0b00110});
}

TEST_CASE("projection formula") {
    Ring five(PaintedSet{5, 0});
    EdgeFunctor f(five, TwoPartition{0b11100});
    Tensor2 unit{{{GoodFamily{}, GoodFamily{}}, Rat(1)}};
    Tensor2 mixed{{{GoodFamily{}, GoodFamily{0b1100}}, Rat(1)}};
    for (const Tensor2& y : {unit, mixed}) {
        int deg_y = int(y.begin()->first.first.size() + y.begin()->first.second.size());
        Coords fy = f.push(y);
        for (TwoPartition rho : stable_partitions(PaintedSet{5, 0})) {
            Coords x{{GoodFamily{rho.far}, Rat(1)}};
            Coords lhs = five.normal_form(
                deg_y + 2, f.push(f.tensor_multiply(f.pull(1, x), y)));
            Coords rhs = five.multiply(1, x, deg_y + 1, fy);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("two-edge restriction does not depend on the contraction order") {
    Ring six(PaintedSet{6, 0});
    GoodFamily nested{0b011000, 0b111000};
    GoodFamily disjoint{0b000110, 0b111000};
    for (const GoodFamily& pairfam : {nested, disjoint}) {
        // Degree one: every generator, including the edges themselves and
        // crossing ones.
        for (TwoPartition rho : stable_partitions(PaintedSet{6, 0})) {
            Coords x{{GoodFamily{rho.far}, Rat(1)}};
            StratumPull p0 = pull_pair(six, pairfam, 1, x, 0);
            StratumPull p1 = pull_pair(six, pairfam, 1, x, 1);
            CHECK(p0.grounds == p1.grounds);
            CHECK(p0.terms == p1.terms);
        }
        // A degree-two monomial through both orders.
        Coords sq{{pairfam, Rat(1)}};
        CHECK(pull_pair(six, pairfam, 2, sq, 0).terms ==
              pull_pair(six, pairfam, 2, sq, 1).terms);
    }
}

TEST_CASE("restriction to a stratum kills nothing visible in its own ring") {
    // Pull the full degree-one space and push it back: the composite is
    // multiplication by the divisor class.
    Ring five(PaintedSet{5, 0});
    TwoPartition sigma{0b11100};
    EdgeFunctor f(five, sigma);
    Coords div{{GoodFamily{sigma.far}, Rat(1)}};
    for (TwoPartition rho : stable_partitions(PaintedSet{5, 0})) {
        Coords x{{GoodFamily{rho.far}, Rat(1)}};
        Coords lhs = five.normal_form(2, f.push(f.pull(1, x)));
        Coords rhs = five.multiply(1, x, 1, div);
        CHECK(lhs == rhs);
    }
}
