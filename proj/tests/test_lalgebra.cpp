#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <stdexcept>
#include <vector>

#include "painted/lalgebra.hpp"
#include "painted/parallel.hpp"

using namespace painted;

namespace {

Mat scalar(Rat v) {
    Mat m(1, 1);
    m(0, 0) = v;
    return m;
}

Mat column(std::vector<Rat> vals) {
    Mat m(vals.size(), 1);
    for (std::size_t i = 0; i < vals.size(); ++i) m(i, 0) = vals[i];
    return m;
}

bool same_issues(const std::vector<LalgIssue>& a, const std::vector<LalgIssue>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].kind != b[i].kind || a[i].indices != b[i].indices || a[i].quad != b[i].quad)
            return false;
    return true;
}

// Evaluator with an explicit per-vertex pick of which white argument the
// matrix correlator applies to. choice[v] indexes the white arguments of
// vertex v in flag order; the library convention is the last one.
Mat eval_choice(const LAlgebra& alg, const TreeShape& tree, int v,
                const std::vector<Mat>& white_inputs, const std::vector<int>& choice) {
    std::vector<std::pair<bool, Mat>> args;
    for (const Flag& f : tree.flags[std::size_t(v)]) {
        if (f.kind == Flag::Tail) {
            if (f.tail == 0) continue;
            REQUIRE(tree.s.is_white(f.tail));
            args.emplace_back(true, white_inputs[std::size_t(f.tail)]);
        } else if (f.side == 0) {
            args.emplace_back(
                true, eval_choice(alg, tree, tree.edge_far(f.edge), white_inputs, choice));
        }
    }
    int special = -1, seen = 0;
    for (std::size_t i = 0; i < args.size(); ++i)
        if (args[i].first && seen++ == choice[std::size_t(v)]) special = int(i);
    REQUIRE(special >= 0);

    Mat out(std::size_t(alg.dim_f), 1);
    IndexKey key;
    std::function<void(std::size_t, const Rat&)> rec = [&](std::size_t at, const Rat& coeff) {
        if (at == args.size()) {
            Mat term = alg.correlator(key) * args[std::size_t(special)].second;
            term *= coeff;
            out += term;
            return;
        }
        if (int(at) == special) {
            rec(at + 1, coeff);
            return;
        }
        const auto& [is_f, vec] = args[at];
        for (std::size_t c = 0; c < vec.rows(); ++c) {
            if (vec(c, 0) == 0) continue;
            key.push_back((is_f ? alg.dim_t : 0) + int(c));
            rec(at + 1, coeff * vec(c, 0));
            key.pop_back();
        }
    };
    rec(0, Rat(1));
    return out;
}

int white_arg_count(const TreeShape& tree, int v) {
    int n = 0;
    for (const Flag& f : tree.flags[std::size_t(v)])
        if ((f.kind == Flag::Tail && f.tail != 0) || (f.kind == Flag::Half && f.side == 0)) ++n;
    return n;
}

} // namespace

TEST_CASE("multiset enumeration") {
    CHECK(multisets(3, 2) == std::vector<IndexKey>{
                                 {0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}});
    CHECK(multisets(2, 0) == std::vector<IndexKey>{{}});
    CHECK(multisets(0, 0) == std::vector<IndexKey>{{}});
    CHECK(multisets(0, 2).empty());
    CHECK(multisets(4, 3).size() == 20);  // C(6,3)
}

TEST_CASE("index names round-trip") {
    LAlgebra alg{2, 3, 4, {}};
    CHECK(alg.index_name(0) == "t1");
    CHECK(alg.index_name(1) == "t2");
    CHECK(alg.index_name(2) == "f1");
    CHECK(alg.index_name(4) == "f3");
    for (int id = 0; id < alg.index_count(); ++id)
        CHECK(alg.parse_index(alg.index_name(id)) == id);
    CHECK_THROWS_AS(alg.index_name(5), std::out_of_range);
    CHECK_THROWS_AS(alg.parse_index("t3"), std::invalid_argument);
    CHECK_THROWS_AS(alg.parse_index("f4"), std::invalid_argument);
    CHECK_THROWS_AS(alg.parse_index("x1"), std::invalid_argument);
    CHECK_THROWS_AS(alg.parse_index("f"), std::invalid_argument);
}

TEST_CASE("correlator storage sorts keys and validates entries") {
    LAlgebra alg{1, 2, 3, {}};
    Mat m(2, 2);
    m(0, 1) = Rat(1, 2);
    alg.set_correlator({1, 0, 2}, m);
    CHECK(alg.correlator({0, 1, 2}) == m);
    CHECK(alg.correlator({2, 1, 0}) == m);
    CHECK(alg.correlator({0, 0, 1}).is_zero());  // absent keys read as zero

    alg.set_correlator({2, 1, 0}, Mat(2, 2));  // zero value erases
    CHECK(alg.corr.empty());

    CHECK_THROWS_AS(alg.set_correlator({}, m), std::invalid_argument);
    CHECK_THROWS_AS(alg.set_correlator({0, 0, 0, 0}, m), std::invalid_argument);
    CHECK_THROWS_AS(alg.set_correlator({3}, m), std::invalid_argument);
    CHECK_THROWS_AS(alg.set_correlator({0}, Mat(2, 1)), std::invalid_argument);
}

TEST_CASE("hand-built one-parameter structure is valid") {
    // single nonzero correlator <t1,f1> = 1; both identity families reduce to
    // cancellations between the two orderings of the same product
    LAlgebra alg{1, 1, 4, {}};
    alg.set_correlator({0, 1}, scalar(1));
    CHECK(verify(alg).empty());
}

TEST_CASE("two-slot counterexample fails exactly the slot family") {
    const LAlgebra bad = noncommuting_pair_example();
    const auto issues = verify(bad);
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].kind == LalgIssue::Kind::SlotCommutator);
    CHECK(issues[0].indices.empty());
    CHECK(issues[0].quad == std::array<int, 4>{0, 1, -1, -1});
    // the in-multiset quadruple family alone is blind to this failure
    for (const auto& issue : issues) CHECK(issue.kind != LalgIssue::Kind::QuadrupleSum);
    // yet the exchange symmetry holds: both off-column reads are zero
    CHECK(verify_exchange(bad).empty());
}

TEST_CASE("shape problems are reported before identities") {
    LAlgebra alg{1, 2, 3, {}};
    alg.corr[{1, 0}] = Mat(2, 2);  // unsorted key smuggled past set_correlator
    auto issues = verify(alg);
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].kind == LalgIssue::Kind::Shape);

    LAlgebra wrong{1, 2, 3, {}};
    wrong.corr[{0, 1}] = Mat(1, 2);
    issues = verify(wrong);
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].detail == "matrix is not dim_f x dim_f");
}

TEST_CASE("seeded commuting families verify cleanly") {
    for (auto [seed, dt, df, ord] : {std::tuple{1u, 1, 2, 4}, {2u, 2, 2, 4},
                                     {3u, 0, 3, 4}, {4u, 1, 1, 5}}) {
        const LAlgebra alg = random_valid_lalgebra(seed, dt, df, ord);
        CAPTURE(seed);
        CHECK(!alg.corr.empty());
        CHECK(verify(alg).empty());
    }
    // same seed, same structure; different seed, different structure
    const LAlgebra a = random_valid_lalgebra(9, 1, 2, 4);
    const LAlgebra b = random_valid_lalgebra(9, 1, 2, 4);
    CHECK(a.corr == b.corr);
    const LAlgebra c = random_valid_lalgebra(10, 1, 2, 4);
    CHECK(a.corr != c.corr);
}

TEST_CASE("corrupted correlators are reported") {
    LAlgebra alg = random_valid_lalgebra(6, 1, 2, 4);
    REQUIRE(verify(alg).empty());
    Mat m = alg.correlator({0, 1});
    m(0, 0) += 1;
    alg.set_correlator({0, 1}, m);
    CHECK(!verify(alg).empty());
}

TEST_CASE("verify reports identically across thread budgets") {
    LAlgebra alg = random_valid_lalgebra(8, 1, 2, 4);
    Mat m = alg.correlator({1, 2});
    m(1, 0) += Rat(1, 3);
    alg.set_correlator({1, 2}, m);

    set_thread_budget(1);
    const auto serial = verify(alg);
    set_thread_budget(4);
    const auto parallel = verify(alg);
    set_thread_budget(0);
    REQUIRE(!serial.empty());
    CHECK(same_issues(serial, parallel));
}

TEST_CASE("one-vertex evaluation applies the matrix correlator") {
    LAlgebra alg{1, 2, 3, {}};
    Mat m(2, 2);
    m(0, 0) = 1, m(0, 1) = 2, m(1, 0) = 3, m(1, 1) = 4;
    alg.set_correlator({0}, m);  // keyed by the black input only

    const TreeShape tree = TreeShape::build(PaintedSet{2, 1}, {});
    const Mat out = evaluate_tree_correlator(
        alg, tree, {Mat(), column({5, 7})}, {column({11})});
    CHECK(out == column({11 * 19, 11 * 43}));
}

TEST_CASE("chain evaluation multiplies the vertex correlators") {
    // two 4-flag vertices; each contributes <t,f> = 3 against its own black
    // and non-special white, so the result is 9 times the product of inputs
    LAlgebra alg{1, 1, 2, {}};
    alg.set_correlator({0, 1}, scalar(3));

    const PaintedSet s{4, 2};
    const GoodFamily fam{0b101100};  // far side holds w3, w4, b2
    REQUIRE(is_good_family(s, fam));
    const TreeShape tree = TreeShape::build(s, fam);
    const Mat out = evaluate_tree_correlator(
        alg, tree, {Mat(), scalar(2), scalar(5), scalar(7)}, {scalar(11), scalar(13)});
    CHECK(out == scalar(Rat(9) * 2 * 5 * 7 * 11 * 13));
}

TEST_CASE("evaluation rejects overfull and whiteless vertices") {
    LAlgebra alg{1, 1, 1, {}};
    alg.set_correlator({1}, scalar(1));
    const TreeShape wide = TreeShape::build(PaintedSet{4, 0}, {});
    const std::vector<Mat> whites{Mat(), scalar(1), scalar(1), scalar(1)};
    // three inputs need a key of size two, above the stated order
    CHECK_THROWS_AS(evaluate_tree_correlator(alg, wide, whites, {}), std::invalid_argument);

    LAlgebra wider{1, 1, 2, {}};
    wider.set_correlator({1, 1}, scalar(1));
    CHECK(evaluate_tree_correlator(wider, wide, whites, {}) == scalar(1));

    const TreeShape dark = TreeShape::build(PaintedSet{1, 3}, {});
    const std::vector<Mat> blacks{scalar(1), scalar(1), scalar(1)};
    CHECK_THROWS_AS(evaluate_tree_correlator(wider, dark, {Mat()}, blacks),
                    std::invalid_argument);

    CHECK_THROWS_AS(evaluate_tree_correlator(wider, wide, {Mat(), scalar(1)}, {}),
                    std::invalid_argument);  // one column per non-root tail
}

TEST_CASE("exchange symmetry separates the two generators") {
    const LAlgebra poly = random_exchange_lalgebra(7, 2, 3, 4);
    CHECK(!poly.corr.empty());
    CHECK(verify(poly).empty());
    CHECK(verify_exchange(poly).empty());

    const LAlgebra diag = random_valid_lalgebra(5, 1, 2, 4);
    CHECK(verify(diag).empty());
    CHECK(!verify_exchange(diag).empty());
}

TEST_CASE("evaluation is cut-scheme independent exactly on exchange structures") {
    // three edges, one junction vertex with no tails of its own
    const PaintedSet s{6, 0};
    const GoodFamily fam{0b000110, 0b011000, 0b011110};
    REQUIRE(is_good_family(s, fam));
    const TreeShape tree = TreeShape::build(s, fam);
    REQUIRE(tree.num_vertices() == 4);

    const std::vector<Mat> inputs{Mat(),          column({1, 2, 3}), column({1, 1, 0}),
                                  column({0, 1, 1}), column({2, 0, 1}), column({1, 0, 0})};
    std::vector<int> counts(4);
    for (int v = 0; v < 4; ++v) counts[std::size_t(v)] = white_arg_count(tree, v);
    REQUIRE(counts == std::vector<int>{2, 2, 2, 2});

    auto sweep_choices = [&](const LAlgebra& alg) {
        std::vector<Mat> results;
        std::vector<int> choice(4, 0);
        for (;;) {
            results.push_back(eval_choice(alg, tree, 0, inputs, choice));
            int at = 3;
            while (at >= 0 && ++choice[std::size_t(at)] == counts[std::size_t(at)])
                choice[std::size_t(at--)] = 0;
            if (at < 0) break;
        }
        return results;
    };

    const LAlgebra poly = random_exchange_lalgebra(3, 1, 3, 4);
    REQUIRE(verify_exchange(poly).empty());
    const auto agree = sweep_choices(poly);
    const Mat reference = evaluate_tree_correlator(poly, tree, inputs, {});
    for (const Mat& r : agree) CHECK(r == reference);

    // a merely valid structure gives scheme-dependent answers, which is why
    // the evaluator pins its convention
    const LAlgebra diag = random_valid_lalgebra(5, 0, 3, 4);
    REQUIRE(verify(diag).empty());
    const auto differ = sweep_choices(diag);
    bool all_same = true;
    for (const Mat& r : differ) all_same = all_same && r == differ.front();
    CHECK(!all_same);
    // the pinned convention matches choice = last white everywhere
    std::vector<int> last(4);
    for (int v = 0; v < 4; ++v) last[std::size_t(v)] = counts[std::size_t(v)] - 1;
    CHECK(eval_choice(diag, tree, 0, inputs, last) ==
          evaluate_tree_correlator(diag, tree, inputs, {}));
}

TEST_CASE("tree relation sweep passes on exchange structures") {
    const PaintedSet five{5, 0};
    const LAlgebra fat = random_exchange_lalgebra(11, 0, 2, 3);
    CHECK(verify_linear_relations(fat, five, 2).empty());

    const LAlgebra colored = random_exchange_lalgebra(13, 1, 2, 3);
    CHECK(verify_linear_relations(colored, PaintedSet{2, 3}, 2).empty());

    // one-dimensional structures cannot tell the slots apart
    const LAlgebra scalar_alg = random_valid_lalgebra(11, 0, 1, 3);
    CHECK(verify_linear_relations(scalar_alg, five, 2).empty());

    const LAlgebra thin = random_valid_lalgebra(11, 0, 1, 2);
    CHECK_THROWS_AS(verify_linear_relations(thin, PaintedSet{6, 0}, 1),
                    std::invalid_argument);

    // zero-dimensional parameter space with black tails: no basis
    // assignments, identities vacuous
    CHECK(verify_linear_relations(fat, PaintedSet{2, 2}, 1).empty());
}

TEST_CASE("tree relation sweep flags corrupted structures") {
    LAlgebra alg = random_exchange_lalgebra(17, 0, 2, 2);
    REQUIRE(verify_linear_relations(alg, PaintedSet{5, 0}, 2).empty());
    Mat m = alg.correlator({0, 1});
    m(0, 1) += 1;
    alg.set_correlator({0, 1}, m);
    CHECK(!verify_linear_relations(alg, PaintedSet{5, 0}, 2).empty());

    // the identity families alone do not bound these sums: a commuting
    // family without the exchange symmetry trips the sweep too
    const LAlgebra diag = random_valid_lalgebra(11, 0, 2, 3);
    REQUIRE(verify(diag).empty());
    CHECK(!verify_linear_relations(diag, PaintedSet{5, 0}, 2).empty());
}

TEST_CASE("tensor takes Kronecker products of correlators") {
    const LAlgebra a = random_valid_lalgebra(21, 1, 2, 3);
    const LAlgebra b = random_valid_lalgebra(22, 2, 1, 3);
    const LAlgebra t = tensor(a, b);
    CHECK(t.dim_t == 2);
    CHECK(t.dim_f == 2);
    CHECK(t.order == 3);
    // pair ids are blockwise: 1 = (t1,t2), 2 = (f1,f1)
    CHECK(t.correlator({1, 2}) ==
          Mat::kronecker(a.correlator({0, 1}), b.correlator({1, 2})));
    CHECK(verify(t).empty());

    LAlgebra shorter = b;
    shorter.order = 2;
    CHECK_THROWS_AS(tensor(a, shorter), std::invalid_argument);
}

TEST_CASE("all-ones line is a unit for parameterless factors") {
    LAlgebra unit{0, 1, 3, {}};
    for (int k = 1; k <= 3; ++k)
        unit.set_correlator(IndexKey(std::size_t(k), 0), scalar(1));
    REQUIRE(verify(unit).empty());

    const LAlgebra l = random_valid_lalgebra(23, 0, 2, 3);
    CHECK(tensor(l, unit).corr == l.corr);
    CHECK(tensor(unit, l).corr == l.corr);
}

TEST_CASE("tensor evaluation factorizes over the factors") {
    const LAlgebra a = random_valid_lalgebra(25, 0, 2, 3);
    const LAlgebra b = random_exchange_lalgebra(26, 0, 2, 3);
    const LAlgebra t = tensor(a, b);

    const PaintedSet s{4, 0};
    const TreeShape tree = TreeShape::build(s, {0b1100});
    const std::vector<Mat> u{Mat(), column({1, 2}), column({3, 1}), column({0, 5})};
    const std::vector<Mat> v{Mat(), column({2, 1}), column({1, 1}), column({4, 3})};
    std::vector<Mat> uv{Mat()};
    for (int l = 1; l < 4; ++l)
        uv.push_back(Mat::kronecker(u[std::size_t(l)], v[std::size_t(l)]));

    CHECK(evaluate_tree_correlator(t, tree, uv, {}) ==
          Mat::kronecker(evaluate_tree_correlator(a, tree, u, {}),
                         evaluate_tree_correlator(b, tree, v, {})));
}

TEST_CASE("cyclic gluing squares hold for unit-valued maps") {
    const CyclicData c{0, 1, Mat::identity(1), Mat::identity(1)};
    const Coords unit{{GoodFamily{}, Rat(1)}};
    const CorrelatorMap three{PaintedSet{3, 0}, {unit}};
    const CorrelatorMap four{PaintedSet{4, 0}, {unit}};
    CHECK(verify_cyclic(c, {three, four}).empty());

    // scaling one side breaks every gluing square through that shape
    const CorrelatorMap scaled{PaintedSet{4, 0}, {Coords{{GoodFamily{}, Rat(2)}}}};
    const auto bad = verify_cyclic(c, {three, scaled});
    REQUIRE(!bad.empty());
    CHECK(bad.front().find("gluing square") != std::string::npos);

    CHECK_THROWS_AS(verify_cyclic(c, {four}), std::invalid_argument);  // no 3-point map
}

TEST_CASE("cyclic equivariance catches asymmetric maps") {
    const CyclicData c{0, 2, Mat::identity(2), Mat::identity(2)};
    const PaintedSet s{3, 0};
    std::vector<Coords> values(correlator_map_size(c, s));
    values[1] = Coords{{GoodFamily{}, Rat(1)}};  // only the assignment (0,0,1)
    const auto bad = verify_cyclic(c, {CorrelatorMap{s, values}});
    REQUIRE(!bad.empty());
    CHECK(bad.front().find("equivariance") != std::string::npos);

    // constant maps pass: three points admit no partitions, so only
    // equivariance is in play
    std::vector<Coords> flat(correlator_map_size(c, s),
                             Coords{{GoodFamily{}, Rat(1)}});
    CHECK(verify_cyclic(c, {CorrelatorMap{s, flat}}).empty());
}

TEST_CASE("cyclic squares thread colors through the ground maps") {
    const CyclicData c{1, 1, Mat::identity(1), Mat::identity(1)};
    const Coords unit{{GoodFamily{}, Rat(1)}};
    const CorrelatorMap small{PaintedSet{2, 1}, {unit}};
    const CorrelatorMap big{PaintedSet{2, 2}, {unit}};
    CHECK(verify_cyclic(c, {small, big}).empty());

    CHECK_THROWS_AS(verify_cyclic(c, {CorrelatorMap{PaintedSet{2, 1}, {unit, unit}}}),
                    std::invalid_argument);  // wrong value count
}

TEST_CASE("invalid products are rejected up front") {
    Mat notinv(2, 2);
    notinv(0, 0) = 1;
    const auto out = verify_cyclic(CyclicData{0, 2, notinv, notinv}, {});
    REQUIRE(out.size() == 1);
    CHECK(out.front().find("inverse") != std::string::npos);
}
