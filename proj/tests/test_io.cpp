#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>

#include "painted/io_json.hpp"

using namespace painted;

namespace {

Mat scalar(Rat v) {
    Mat m(1, 1);
    m(0, 0) = v;
    return m;
}

} // namespace

TEST_CASE("correlator algebras survive the round trip") {
    for (const LAlgebra& alg : {random_exchange_lalgebra(3, 1, 2, 4),
                                random_valid_lalgebra(8, 2, 2, 3),
                                LAlgebra{0, 1, 2, {}}}) {
        const std::string text = json_of_lalgebra(alg);
        const LAlgebra back = lalgebra_of_json(text);
        CHECK(back.dim_t == alg.dim_t);
        CHECK(back.dim_f == alg.dim_f);
        CHECK(back.order == alg.order);
        CHECK(back.corr == alg.corr);
        CHECK(json_of_lalgebra(back) == text); // byte-stable
    }
    CHECK_THROWS_AS(lalgebra_of_json(R"({"dimT":1,"dimF":1,"order":2})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        lalgebra_of_json(
            R"({"dimT":1,"dimF":1,"order":2,"parity":"odd","correlators":[]})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        lalgebra_of_json(
            R"({"dimT":0,"dimF":1,"order":2,"correlators":[{"indices":["t1"],"matrix":[["1"]]}]})"),
        std::invalid_argument); // t1 does not exist when dimT = 0
}

TEST_CASE("series serialize with sparse exponent objects") {
    Series s = Series::zero({"t1", "f1"}, 3, 2, 2);
    Mat m(2, 2);
    m(0, 1) = Rat(-7, 3);
    m(1, 0) = 2;
    s.set_coefficient({1, 1}, m);
    s.set_coefficient({0, 2}, Mat::identity(2));
    const std::string text = json_of_series(s);
    CHECK(text.find("\"exp\":{\"t1\":1,\"f1\":1}") != std::string::npos);
    CHECK(text.find("-7/3") != std::string::npos);
    CHECK(series_of_json(text) == s);
    CHECK(json_of_series(series_of_json(text)) == text);

    CHECK_THROWS_AS(series_of_json(R"({"vars":["x"],"order":2,"dimF":1,)"
                                   R"("terms":[{"exp":{"y":1},"matrix":[["1"]]}]})"),
                    std::invalid_argument);
    CHECK_THROWS(series_of_json("not json"));
}

TEST_CASE("vector fields keep one component per coordinate") {
    VectorField a{Series::zero({"t0", "t1"}, 4, 1, 1), Series::zero({"t0", "t1"}, 4, 1, 1)};
    a[0].set_coefficient({2, 0}, scalar(Rat(1, 2)));
    a[1].set_coefficient({1, 1}, scalar(1));
    const std::string text = json_of_field(a);
    const VectorField back = field_of_json(text);
    REQUIRE(back.size() == 2);
    CHECK(back[0] == a[0]);
    CHECK(back[1] == a[1]);
    CHECK(json_of_field(back) == text);

    CHECK_THROWS_AS(
        field_of_json(R"({"coordinates":["t0","t1"],"order":3,"components":[[]]})"),
        std::invalid_argument);
}

TEST_CASE("partitions and trees read back from label lists") {
    const PaintedSet s{3, 1};
    const TwoPartition p = make_partition(s, 0b1100); // w3, b1 on the far side
    const std::string text = json_of_partition(s, p);
    CHECK(text == R"({"part":["w1","w2"]})");
    CHECK(partition_of_json(s, text) == p);
    // listing the far side instead names the same unordered split
    CHECK(partition_of_json(s, R"({"part":["w3","b1"]})") == p);

    const GoodFamily fam{0b1100};
    const std::string tree = json_of_tree(s, fam);
    CHECK(tree == R"([{"part":["w1","w2"]}])");
    CHECK(tree_of_json(s, tree) == fam);
    CHECK_THROWS_AS(tree_of_json(s, R"([{"part":["w1"]}])"),
                    std::invalid_argument); // single label is not stable

    const PaintedSet w5{5, 0};
    CHECK_THROWS_AS(tree_of_json(w5, R"([{"part":["w1","w4","w5"]},)"
                                     R"({"part":["w1","w2","w5"]}])"),
                    std::invalid_argument); // crossing partitions
}

TEST_CASE("graded classes round trip with exact values") {
    const PaintedSet s{5, 0};
    const Ring ring(s);
    const auto& trees = ring.trees(2);
    Coords x;
    x[trees[0]] = Rat(3, 2);
    x[trees[4]] = -1;
    const std::string text = json_of_coords(s, 2, x);
    int degree = 0;
    const Coords back = coords_of_json(s, text, degree);
    CHECK(degree == 2);
    CHECK(back == x);
    CHECK(json_of_coords(s, degree, back) == text);

    // an empty term list is the zero class
    int d1 = 0;
    CHECK(coords_of_json(s, R"({"grade":1,"terms":[]})", d1).empty());
    CHECK(d1 == 1);

    // grade mismatch between header and trees
    int d2 = 0;
    CHECK_THROWS_AS(
        coords_of_json(
            s, R"({"grade":2,"terms":[{"tree":[{"part":["w1","w2","w3"]}],"coeff":"1"}]})",
            d2),
        std::invalid_argument);
}

TEST_CASE("betti tables are plain dimension arrays") {
    CHECK(json_of_betti({1, 5, 1}) == R"({"dims":[1,5,1]})");
}
