#include "painted/lalgebra.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>

#include "painted/parallel.hpp"

namespace painted {

std::vector<IndexKey> multisets(int num_ids, int size) {
    std::vector<IndexKey> out;
    if (size == 0) {
        out.push_back({});
        return out;
    }
    if (num_ids <= 0 || size < 0) return out;
    IndexKey cur;
    std::function<void(int)> rec = [&](int lo) {
        if (int(cur.size()) == size) {
            out.push_back(cur);
            return;
        }
        for (int id = lo; id < num_ids; ++id) {
            cur.push_back(id);
            rec(id);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

std::string LAlgebra::index_name(int id) const {
    if (id < 0 || id >= index_count()) throw std::out_of_range("index id out of range");
    return id < dim_t ? "t" + std::to_string(id + 1)
                      : "f" + std::to_string(id - dim_t + 1);
}

int LAlgebra::parse_index(const std::string& name) const {
    if (name.size() < 2 || (name[0] != 't' && name[0] != 'f'))
        throw std::invalid_argument("bad index name: " + name);
    int k = std::stoi(name.substr(1));
    if (k < 1 || (name[0] == 't' ? k > dim_t : k > dim_f))
        throw std::invalid_argument("index outside algebra: " + name);
    return name[0] == 't' ? k - 1 : dim_t + k - 1;
}

Mat LAlgebra::correlator(IndexKey key) const {
    std::sort(key.begin(), key.end());
    auto it = corr.find(key);
    if (it != corr.end()) return it->second;
    return Mat(std::size_t(dim_f), std::size_t(dim_f));
}

void LAlgebra::set_correlator(IndexKey key, Mat value) {
    std::sort(key.begin(), key.end());
    if (key.empty() || int(key.size()) > order)
        throw std::invalid_argument("correlator multiset size outside 1..order");
    for (int id : key)
        if (id < 0 || id >= index_count())
            throw std::invalid_argument("correlator index id out of range");
    if (value.rows() != std::size_t(dim_f) || value.cols() != std::size_t(dim_f))
        throw std::invalid_argument("correlator matrix must be dim_f x dim_f");
    if (value.is_zero())
        corr.erase(key);
    else
        corr.insert_or_assign(std::move(key), std::move(value));
}

namespace {

// All QuadrupleSum failures inside one multiset. The two part correlators'
// product is precomputed per ordered partition mask and reused across the
// position quadruples.
std::vector<LalgIssue> quadruple_issues(const LAlgebra& alg, const IndexKey& key) {
    std::vector<LalgIssue> issues;
    const int m = int(key.size());
    const std::uint32_t full = std::uint32_t(1) << m;
    std::vector<Mat> prod(full);
    bool any = false;
    for (std::uint32_t mask = 1; mask + 1 < full; ++mask) {
        IndexKey k1, k2;
        for (int p = 0; p < m; ++p)
            ((mask >> p) & 1u ? k1 : k2).push_back(key[std::size_t(p)]);
        prod[mask] = alg.correlator(std::move(k1)) * alg.correlator(std::move(k2));
        any = any || !prod[mask].is_zero();
    }
    if (!any) return issues;

    auto white = [&](int p) { return alg.index_is_f(key[std::size_t(p)]); };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    if (i == j || i == k || i == l || j == k || j == l || k == l) continue;
                    if (!((white(j) && white(l)) || (white(i) && white(k)))) continue;
                    Mat tot(std::size_t(alg.dim_f), std::size_t(alg.dim_f));
                    for (std::uint32_t mask = 1; mask + 1 < full; ++mask) {
                        const bool bi = (mask >> i) & 1u, bj = (mask >> j) & 1u;
                        const bool bk = (mask >> k) & 1u, bl = (mask >> l) & 1u;
                        if (bi == bj && bk == bl && bi != bk) tot += prod[mask];
                        if (bk == bj && bi == bl && bk != bi) tot -= prod[mask];
                    }
                    if (!tot.is_zero())
                        issues.push_back({LalgIssue::Kind::QuadrupleSum, key, {i, j, k, l}, ""});
                }
    return issues;
}

// All SlotCommutator failures over one base multiset.
std::vector<LalgIssue> slot_issues(const LAlgebra& alg, const IndexKey& base) {
    std::vector<LalgIssue> issues;
    const int m = int(base.size());
    const std::uint32_t full = std::uint32_t(1) << m;
    std::vector<std::pair<IndexKey, IndexKey>> splits(full);
    for (std::uint32_t mask = 0; mask < full; ++mask)
        for (int p = 0; p < m; ++p)
            ((mask >> p) & 1u ? splits[mask].first : splits[mask].second)
                .push_back(base[std::size_t(p)]);

    const int K = alg.index_count();
    for (int i = 0; i < K; ++i)
        for (int j = i + 1; j < K; ++j) {
            Mat tot(std::size_t(alg.dim_f), std::size_t(alg.dim_f));
            for (std::uint32_t mask = 0; mask < full; ++mask) {
                IndexKey ri = splits[mask].first, rj = splits[mask].first;
                IndexKey qi = splits[mask].second, qj = splits[mask].second;
                ri.push_back(i), qj.push_back(j);
                rj.push_back(j), qi.push_back(i);
                tot += alg.correlator(std::move(ri)) * alg.correlator(std::move(qj));
                tot -= alg.correlator(std::move(rj)) * alg.correlator(std::move(qi));
            }
            if (!tot.is_zero())
                issues.push_back({LalgIssue::Kind::SlotCommutator, base, {i, j, -1, -1}, ""});
        }
    return issues;
}

std::vector<LalgIssue> shape_issues(const LAlgebra& alg) {
    std::vector<LalgIssue> out;
    if (alg.dim_t < 0 || alg.dim_f < 0 || alg.order < 0) {
        out.push_back({LalgIssue::Kind::Shape, {}, {-1, -1, -1, -1}, "negative dimension or order"});
        return out;
    }
    for (const auto& [key, value] : alg.corr) {
        std::string bad;
        if (key.empty() || int(key.size()) > alg.order)
            bad = "multiset size outside 1..order";
        else if (!std::is_sorted(key.begin(), key.end()))
            bad = "multiset key not sorted";
        else if (key.front() < 0 || key.back() >= alg.index_count())
            bad = "index id out of range";
        else if (value.rows() != std::size_t(alg.dim_f) || value.cols() != std::size_t(alg.dim_f))
            bad = "matrix is not dim_f x dim_f";
        if (!bad.empty())
            out.push_back({LalgIssue::Kind::Shape, key, {-1, -1, -1, -1}, bad});
    }
    return out;
}

} // namespace

std::vector<LalgIssue> verify(const LAlgebra& alg) {
    std::vector<LalgIssue> out = shape_issues(alg);
    if (!out.empty()) return out;

    const int K = alg.index_count();
    std::vector<IndexKey> quad_keys;
    for (int size = 4; size <= alg.order; ++size)
        for (auto& k : multisets(K, size)) quad_keys.push_back(std::move(k));
    std::vector<std::vector<LalgIssue>> quad_found(quad_keys.size());
    sweep(quad_keys.size(),
          [&](std::size_t i) { quad_found[i] = quadruple_issues(alg, quad_keys[i]); });

    std::vector<IndexKey> base_keys;
    for (int size = 0; size + 2 <= alg.order; ++size)
        for (auto& k : multisets(K, size)) base_keys.push_back(std::move(k));
    std::vector<std::vector<LalgIssue>> slot_found(base_keys.size());
    sweep(base_keys.size(),
          [&](std::size_t i) { slot_found[i] = slot_issues(alg, base_keys[i]); });

    for (auto& v : quad_found)
        for (auto& issue : v) out.push_back(std::move(issue));
    for (auto& v : slot_found)
        for (auto& issue : v) out.push_back(std::move(issue));
    return out;
}

std::vector<LalgIssue> verify_exchange(const LAlgebra& alg) {
    std::vector<LalgIssue> out = shape_issues(alg);
    if (!out.empty()) return out;

    std::vector<IndexKey> bases;
    for (int size = 0; size < alg.order; ++size)
        for (auto& k : multisets(alg.index_count(), size)) bases.push_back(std::move(k));
    std::vector<std::vector<LalgIssue>> found(bases.size());
    sweep(bases.size(), [&](std::size_t i) {
        for (int a = alg.dim_t; a < alg.index_count(); ++a)
            for (int b = a + 1; b < alg.index_count(); ++b) {
                IndexKey ka = bases[i], kb = bases[i];
                ka.push_back(a);
                kb.push_back(b);
                const Mat ma = alg.correlator(std::move(ka));
                const Mat mb = alg.correlator(std::move(kb));
                bool same = true;
                for (std::size_t r = 0; r < ma.rows() && same; ++r)
                    same = ma(r, std::size_t(b - alg.dim_t)) ==
                           mb(r, std::size_t(a - alg.dim_t));
                if (!same)
                    found[i].push_back(
                        {LalgIssue::Kind::SlotExchange, bases[i], {a, b, -1, -1}, ""});
            }
    });
    for (auto& v : found)
        for (auto& issue : v) out.push_back(std::move(issue));
    return out;
}

namespace {

// Expand every argument except one white one over basis ids and apply the
// matrix correlators to that one. Structures passing verify_exchange give the
// same answer whichever white argument is picked; in general the convention
// matters, so it is pinned to the last white argument in flag order.
Mat apply_vertex(const LAlgebra& alg, const std::vector<std::pair<bool, Mat>>& args) {
    if (int(args.size()) - 1 > alg.order)
        throw std::invalid_argument("vertex arity exceeds the correlator order");
    int special = -1;
    for (int i = int(args.size()) - 1; i >= 0; --i)
        if (args[std::size_t(i)].first) {
            special = i;
            break;
        }
    if (special < 0)
        throw std::invalid_argument("vertex has no white input to factor through");

    Mat out(std::size_t(alg.dim_f), 1);
    IndexKey key;
    std::function<void(std::size_t, const Rat&)> rec = [&](std::size_t at, const Rat& coeff) {
        if (at == args.size()) {
            Mat m = alg.correlator(key);
            if (!m.is_zero()) {
                Mat term = m * args[std::size_t(special)].second;
                term *= coeff;
                out += term;
            }
            return;
        }
        if (int(at) == special) {
            rec(at + 1, coeff);
            return;
        }
        const auto& [is_f, vec] = args[at];
        const int base = is_f ? alg.dim_t : 0;
        for (std::size_t c = 0; c < vec.rows(); ++c) {
            if (vec(c, 0) == 0) continue;
            key.push_back(base + int(c));
            rec(at + 1, coeff * vec(c, 0));
            key.pop_back();
        }
    };
    rec(0, Rat(1));
    return out;
}

Mat eval_vertex(const LAlgebra& alg, const TreeShape& tree, int v,
                const std::vector<Mat>& white_inputs, const std::vector<Mat>& black_inputs) {
    std::vector<std::pair<bool, Mat>> args;
    for (const Flag& f : tree.flags[std::size_t(v)]) {
        if (f.kind == Flag::Tail) {
            if (f.tail == 0) continue;  // the root slot carries the output
            if (tree.s.is_white(f.tail))
                args.emplace_back(true, white_inputs[std::size_t(f.tail)]);
            else
                args.emplace_back(false, black_inputs[std::size_t(f.tail - tree.s.whites)]);
        } else if (f.side == 1) {
            continue;  // half toward the root: the output slot of this vertex
        } else {
            args.emplace_back(
                true, eval_vertex(alg, tree, tree.edge_far(f.edge), white_inputs, black_inputs));
        }
    }
    return apply_vertex(alg, args);
}

} // namespace

Mat evaluate_tree_correlator(const LAlgebra& alg, const TreeShape& tree,
                             const std::vector<Mat>& white_inputs,
                             const std::vector<Mat>& black_inputs) {
    if (white_inputs.size() != std::size_t(tree.s.whites) ||
        black_inputs.size() != std::size_t(tree.s.blacks))
        throw std::invalid_argument("one input column per non-root tail expected");
    for (std::size_t i = 1; i < white_inputs.size(); ++i)
        if (white_inputs[i].rows() != std::size_t(alg.dim_f) || white_inputs[i].cols() != 1)
            throw std::invalid_argument("white inputs must be dim_f columns");
    for (const Mat& b : black_inputs)
        if (b.rows() != std::size_t(alg.dim_t) || b.cols() != 1)
            throw std::invalid_argument("black inputs must be dim_t columns");
    return eval_vertex(alg, tree, 0, white_inputs, black_inputs);
}

namespace {

// Basis assignments to the non-root tails, as input columns for the
// evaluator. Index 0 of the white block stays an empty placeholder.
struct BasisInputs {
    std::vector<Mat> whites, blacks;
};

std::vector<BasisInputs> all_basis_inputs(const LAlgebra& alg, const PaintedSet& s) {
    std::size_t count = 1;
    for (int l = 1; l < s.size(); ++l)
        count *= std::size_t(s.is_white(l) ? alg.dim_f : alg.dim_t);
    std::vector<BasisInputs> out;
    if (count == 0) return out;
    out.reserve(count);
    for (std::size_t a = 0; a < count; ++a) {
        BasisInputs in;
        in.whites.assign(std::size_t(s.whites), Mat());
        in.blacks.assign(std::size_t(s.blacks), Mat());
        std::size_t rest = a;
        for (int l = s.size() - 1; l >= 1; --l) {
            const int dim = s.is_white(l) ? alg.dim_f : alg.dim_t;
            const int pick = int(rest % std::size_t(dim));
            rest /= std::size_t(dim);
            Mat col(std::size_t(dim), 1);
            col(std::size_t(pick), 0) = 1;
            if (s.is_white(l))
                in.whites[std::size_t(l)] = std::move(col);
            else
                in.blacks[std::size_t(l - s.whites)] = std::move(col);
        }
        out.push_back(std::move(in));
    }
    return out;
}

std::vector<TreeRelationIssue> tree_relation_issues(const LAlgebra& alg, const PaintedSet& s,
                                                    const GoodFamily& fam,
                                                    const std::vector<BasisInputs>& inputs) {
    std::vector<TreeRelationIssue> issues;
    const TreeShape tree = TreeShape::build(s, fam);
    for (int v = 0; v < tree.num_vertices(); ++v) {
        const int nf = int(tree.flags[std::size_t(v)].size());
        if (nf < 4) continue;
        const auto splits = vertex_splits(tree, v);
        if (splits.empty()) continue;

        // one evaluation per split tree and basis assignment, shared by quads
        std::vector<std::vector<Mat>> vals(splits.size());
        for (std::size_t a = 0; a < splits.size(); ++a) {
            const TreeShape split_tree =
                TreeShape::build(s, insert_partition(fam, splits[a].sigma));
            vals[a].reserve(inputs.size());
            for (const BasisInputs& in : inputs)
                vals[a].push_back(
                    evaluate_tree_correlator(alg, split_tree, in.whites, in.blacks));
        }

        for (int i = 0; i < nf; ++i)
            for (int j = 0; j < nf; ++j)
                for (int k = 0; k < nf; ++k)
                    for (int l = 0; l < nf; ++l) {
                        if (i == j || i == k || i == l || j == k || j == l || k == l) continue;
                        if (!allowed_flag_quadruple(tree, v, i, j, k, l)) continue;
                        bool bad = false;
                        for (std::size_t x = 0; x < inputs.size() && !bad; ++x) {
                            Mat acc(std::size_t(alg.dim_f), 1);
                            for (std::size_t a = 0; a < splits.size(); ++a) {
                                const int sign =
                                    flag_quad_sign(splits[a].flag_side, i, j, k, l);
                                if (sign == 1)
                                    acc += vals[a][x];
                                else if (sign == -1)
                                    acc -= vals[a][x];
                            }
                            bad = !acc.is_zero();
                        }
                        if (bad) issues.push_back({fam, v, {i, j, k, l}});
                    }
    }
    return issues;
}

} // namespace

std::vector<TreeRelationIssue> verify_linear_relations(const LAlgebra& alg, const PaintedSet& s,
                                                       int edge_cap) {
    check_painted_set(s);
    if (alg.order < s.size() - 3)
        throw std::invalid_argument(
            "correlator order too small for the split vertices of this set");
    std::vector<TreeRelationIssue> out;
    const auto inputs = all_basis_inputs(alg, s);
    if (inputs.empty()) return out;  // no basis assignments, identities vacuous

    const int top = std::min(edge_cap, max_edges(s));
    for (int e = 0; e <= top; ++e) {
        const auto fams = good_families(s, e);
        std::vector<std::vector<TreeRelationIssue>> found(fams.size());
        sweep(fams.size(), [&](std::size_t i) {
            found[i] = tree_relation_issues(alg, s, fams[i], inputs);
        });
        for (auto& v : found)
            for (auto& issue : v) out.push_back(std::move(issue));
    }
    return out;
}

LAlgebra tensor(const LAlgebra& a, const LAlgebra& b) {
    if (a.order != b.order)
        throw std::invalid_argument("tensor needs equal correlator orders");
    LAlgebra out;
    out.dim_t = a.dim_t * b.dim_t;
    out.dim_f = a.dim_f * b.dim_f;
    out.order = a.order;
    for (int size = 1; size <= out.order; ++size)
        for (auto& key : multisets(out.index_count(), size)) {
            IndexKey ka, kb;
            for (int id : key) {
                if (id < out.dim_t) {
                    ka.push_back(id / b.dim_t);
                    kb.push_back(id % b.dim_t);
                } else {
                    const int r = id - out.dim_t;
                    ka.push_back(a.dim_t + r / b.dim_f);
                    kb.push_back(b.dim_t + r % b.dim_f);
                }
            }
            Mat v = Mat::kronecker(a.correlator(std::move(ka)), b.correlator(std::move(kb)));
            if (!v.is_zero()) out.corr.emplace(std::move(key), std::move(v));
        }
    return out;
}

namespace {

Rat small_rat(std::mt19937_64& rng) {
    static const long dens[4] = {1, 1, 2, 3};
    const long num = long(rng() % 7) - 3;
    Rat q(num, dens[rng() % 4]);
    q.canonicalize();
    return q;
}

std::optional<Mat> mat_inverse(const Mat& p) {
    const std::size_t n = p.rows();
    Mat m = p, inv = Mat::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = n;
        for (std::size_t r = c; r < n; ++r)
            if (m(r, c) != 0) {
                piv = r;
                break;
            }
        if (piv == n) return std::nullopt;
        if (piv != c)
            for (std::size_t x = 0; x < n; ++x) {
                std::swap(m(piv, x), m(c, x));
                std::swap(inv(piv, x), inv(c, x));
            }
        const Rat d = m(c, c);
        for (std::size_t x = 0; x < n; ++x) {
            m(c, x) /= d;
            inv(c, x) /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m(r, c) == 0) continue;
            const Rat f = m(r, c);
            for (std::size_t x = 0; x < n; ++x) {
                m(r, x) -= f * m(c, x);
                inv(r, x) -= f * inv(c, x);
            }
        }
    }
    return inv;
}

// Correlators <M> = scale(|M|) * product of one commuting generator per entry.
// Both identity families follow: the slot terms cancel in pairs, and in the
// quadruple sums exchanging i with k merely reindexes equal products.
LAlgebra scaled_product_lalgebra(int dim_t, int dim_f, int order,
                                 const std::vector<Mat>& gens, std::mt19937_64& rng) {
    std::vector<Rat> scale(std::size_t(order) + 1);
    scale[1] = 1;
    for (int n = 2; n <= order; ++n) scale[std::size_t(n)] = small_rat(rng);

    LAlgebra out{dim_t, dim_f, order, {}};
    for (int size = 1; size <= order; ++size) {
        if (scale[std::size_t(size)] == 0) continue;
        for (auto& key : multisets(dim_t + dim_f, size)) {
            Mat v = Mat::identity(std::size_t(dim_f));
            for (int id : key) v = v * gens[std::size_t(id)];
            v *= scale[std::size_t(size)];
            if (!v.is_zero()) out.corr.emplace(std::move(key), std::move(v));
        }
    }
    return out;
}

void check_generator_dims(int dim_t, int dim_f, int order) {
    if (dim_t < 0 || dim_f < 1 || order < 1)
        throw std::invalid_argument("generator needs dim_t >= 0, dim_f >= 1, order >= 1");
}

} // namespace

LAlgebra random_valid_lalgebra(std::uint64_t seed, int dim_t, int dim_f, int order) {
    check_generator_dims(dim_t, dim_f, order);
    std::mt19937_64 rng(seed);
    const int K = dim_t + dim_f;
    const std::size_t n = std::size_t(dim_f);

    Mat basis(n, n), basis_inv;
    for (;;) {
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) basis(r, c) = small_rat(rng);
        if (auto inv = mat_inverse(basis)) {
            basis_inv = std::move(*inv);
            break;
        }
    }
    std::vector<Mat> gens;
    gens.reserve(std::size_t(K));
    for (int i = 0; i < K; ++i) {
        Mat d(n, n);
        for (std::size_t r = 0; r < n; ++r) d(r, r) = small_rat(rng);
        gens.push_back(basis * d * basis_inv);
    }
    return scaled_product_lalgebra(dim_t, dim_f, order, gens, rng);
}

LAlgebra random_exchange_lalgebra(std::uint64_t seed, int dim_t, int dim_f, int order) {
    check_generator_dims(dim_t, dim_f, order);
    std::mt19937_64 rng(seed);
    const std::size_t n = std::size_t(dim_f);

    // multiplication by u^k on the truncated polynomial line Q[u]/(u^dim_f),
    // in the monomial basis e_c = u^c
    auto shift_pow = [&](int k) {
        Mat m(n, n);
        for (int c = 0; c + k < dim_f; ++c) m(std::size_t(c + k), std::size_t(c)) = 1;
        return m;
    };
    std::vector<Mat> gens;
    gens.reserve(std::size_t(dim_t + dim_f));
    for (int i = 0; i < dim_t; ++i) {
        Mat p(n, n);
        for (int k = 0; k < dim_f; ++k) {
            const Rat coeff = k == 0 ? Rat(long(rng() % 5) + 1) : small_rat(rng);
            if (coeff == 0) continue;
            Mat s = shift_pow(k);
            s *= coeff;
            p += s;
        }
        gens.push_back(std::move(p));
    }
    for (int a = 0; a < dim_f; ++a) gens.push_back(shift_pow(a));
    // <A,a> e_b = scale * P_A u^(a+b) = <A,b> e_a, so the exchange symmetry
    // holds on top of the two identity families
    return scaled_product_lalgebra(dim_t, dim_f, order, gens, rng);
}

LAlgebra noncommuting_pair_example() {
    LAlgebra alg{0, 2, 2, {}};
    Mat e11(2, 2), e12(2, 2);
    e11(0, 0) = 1;
    e12(0, 1) = 1;
    alg.set_correlator({0}, e11);
    alg.set_correlator({1}, e12);
    return alg;
}

namespace {

Coords nf_mixed(const Ring& ring, const Coords& x) {
    std::map<int, Coords> by_degree;
    for (const auto& [fam, c] : x)
        if (c != 0) by_degree[int(fam.size())][fam] = c;
    Coords out;
    for (const auto& [d, part] : by_degree)
        for (const auto& [fam, c] : ring.normal_form(d, part))
            if (c != 0) out[fam] = c;
    return out;
}

Coords relabel_class(const PaintedSet& s, const Coords& x, const std::vector<int>& perm) {
    Coords out;
    for (const auto& [fam, c] : x) {
        if (c == 0) continue;
        out[relabel_family(s, fam, perm)] += c;
    }
    return out;
}

void drop_zeros(Tensor2& t) {
    for (auto it = t.begin(); it != t.end();)
        it = it->second == 0 ? t.erase(it) : std::next(it);
}

// Color-preserving label permutations (old label -> new label).
std::vector<std::vector<int>> color_permutations(const PaintedSet& s) {
    std::vector<int> wp(std::size_t(s.whites)), bp(std::size_t(s.blacks));
    for (int i = 0; i < s.whites; ++i) wp[std::size_t(i)] = i;
    for (int i = 0; i < s.blacks; ++i) bp[std::size_t(i)] = i;
    std::vector<std::vector<int>> out;
    std::vector<int> wcur = wp;
    do {
        std::vector<int> bcur = bp;
        do {
            std::vector<int> perm(std::size_t(s.size()));
            for (int i = 0; i < s.whites; ++i) perm[std::size_t(i)] = wcur[std::size_t(i)];
            for (int i = 0; i < s.blacks; ++i)
                perm[std::size_t(s.whites + i)] = s.whites + bcur[std::size_t(i)];
            out.push_back(std::move(perm));
        } while (std::next_permutation(bcur.begin(), bcur.end()));
    } while (std::next_permutation(wcur.begin(), wcur.end()));
    return out;
}

std::string shape_name(const PaintedSet& s) {
    return "w" + std::to_string(s.whites) + "b" + std::to_string(s.blacks);
}

} // namespace

std::size_t correlator_map_size(const CyclicData& c, const PaintedSet& s) {
    std::size_t n = 1;
    for (int l = 0; l < s.size(); ++l)
        n *= std::size_t(s.is_white(l) ? c.dim_f : c.dim_t);
    return n;
}

std::vector<std::string> verify_cyclic(const CyclicData& c,
                                       const std::vector<CorrelatorMap>& maps) {
    std::vector<std::string> out;
    const std::size_t nf = std::size_t(c.dim_f);
    if (c.dim_f < 1 || c.product.rows() != nf || c.product.cols() != nf ||
        c.casimir.rows() != nf || c.casimir.cols() != nf ||
        !(c.product * c.casimir == Mat::identity(nf))) {
        out.push_back("product and casimir are not mutually inverse dim_f matrices");
        return out;
    }

    std::map<PaintedSet, const CorrelatorMap*> by_shape;
    for (const auto& m : maps) {
        check_painted_set(m.s);
        if (m.values.size() != correlator_map_size(c, m.s))
            throw std::invalid_argument("wrong value count for shape " + shape_name(m.s));
        if (!by_shape.emplace(m.s, &m).second)
            throw std::invalid_argument("duplicate map for shape " + shape_name(m.s));
    }
    std::map<PaintedSet, std::unique_ptr<Ring>> rings;
    auto ring_of = [&](const PaintedSet& s) -> const Ring& {
        auto& slot = rings[s];
        if (!slot) slot = std::make_unique<Ring>(s);
        return *slot;
    };

    // tail assignments in storage order (basis ids per label, last fastest)
    auto assignments_of = [&](const PaintedSet& s) {
        std::vector<std::vector<int>> all;
        const std::size_t count = correlator_map_size(c, s);
        for (std::size_t idx = 0; idx < count; ++idx) {
            std::vector<int> a(std::size_t(s.size()));
            std::size_t rest = idx;
            for (int l = s.size() - 1; l >= 0; --l) {
                const std::size_t dim = std::size_t(s.is_white(l) ? c.dim_f : c.dim_t);
                a[std::size_t(l)] = int(rest % dim);
                rest /= dim;
            }
            all.push_back(std::move(a));
        }
        return all;
    };
    auto index_of = [&](const PaintedSet& s, const std::vector<int>& a) {
        std::size_t idx = 0;
        for (int l = 0; l < s.size(); ++l)
            idx = idx * std::size_t(s.is_white(l) ? c.dim_f : c.dim_t) +
                  std::size_t(a[std::size_t(l)]);
        return idx;
    };

    for (const auto& m : maps) {
        const Ring& ring = ring_of(m.s);
        const auto assignments = assignments_of(m.s);

        for (const auto& perm : color_permutations(m.s)) {
            bool identity = true;
            for (std::size_t i = 0; i < perm.size(); ++i) identity &= perm[i] == int(i);
            if (identity) continue;
            for (std::size_t ai = 0; ai < assignments.size(); ++ai) {
                // permuted tensor input: slot l now holds the old slot
                // perm^-1(l), so read the stored value there
                std::vector<int> moved(assignments[ai].size());
                for (std::size_t l = 0; l < perm.size(); ++l)
                    moved[std::size_t(perm[l])] = assignments[ai][l];
                const Coords lhs = nf_mixed(ring, relabel_class(m.s, m.values[ai], perm));
                const Coords rhs = nf_mixed(ring, m.values[index_of(m.s, moved)]);
                if (lhs != rhs) {
                    out.push_back("equivariance fails on " + shape_name(m.s) +
                                  " assignment " + std::to_string(ai));
                    break;  // one witness per permutation is enough
                }
            }
        }

        for (TwoPartition sigma : stable_partitions(m.s)) {
            const EdgeFunctor functor(ring, sigma);
            const EdgeGrounds& eg = functor.grounds();
            auto it1 = by_shape.find(eg.g1);
            auto it2 = by_shape.find(eg.g2);
            if (it1 == by_shape.end())
                throw std::invalid_argument("missing correlator map for shape " +
                                            shape_name(eg.g1));
            if (it2 == by_shape.end())
                throw std::invalid_argument("missing correlator map for shape " +
                                            shape_name(eg.g2));
            const Ring& ring1 = ring_of(eg.g1);
            const Ring& ring2 = ring_of(eg.g2);

            for (std::size_t ai = 0; ai < assignments.size(); ++ai) {
                const auto& a = assignments[ai];
                Tensor2 left;
                {
                    std::map<int, Coords> by_degree;
                    for (const auto& [fam, coeff] : m.values[ai])
                        if (coeff != 0) by_degree[int(fam.size())][fam] = coeff;
                    for (const auto& [d, part] : by_degree)
                        for (const auto& [fams, coeff] : functor.pull(d, part))
                            left[fams] += coeff;
                }
                drop_zeros(left);

                // casimir insertion into the node slots of the ground maps
                std::vector<int> a1(std::size_t(eg.g1.size())), a2(std::size_t(eg.g2.size()));
                for (int l = 0; l < m.s.size(); ++l) {
                    if (eg.to_g1[std::size_t(l)] >= 0)
                        a1[std::size_t(eg.to_g1[std::size_t(l)])] = a[std::size_t(l)];
                    else
                        a2[std::size_t(eg.to_g2[std::size_t(l)])] = a[std::size_t(l)];
                }
                Tensor2 right;
                for (int p = 0; p < c.dim_f; ++p) {
                    a1[std::size_t(eg.e1)] = p;
                    const Coords v1 =
                        nf_mixed(ring1, it1->second->values[index_of(eg.g1, a1)]);
                    if (v1.empty()) continue;
                    for (int q = 0; q < c.dim_f; ++q) {
                        const Rat& w = c.casimir(std::size_t(p), std::size_t(q));
                        if (w == 0) continue;
                        a2[std::size_t(eg.e2)] = q;
                        const Coords v2 =
                            nf_mixed(ring2, it2->second->values[index_of(eg.g2, a2)]);
                        for (const auto& [f1, c1] : v1)
                            for (const auto& [f2, c2] : v2)
                                right[{f1, f2}] += w * c1 * c2;
                    }
                }
                drop_zeros(right);

                if (left != right)
                    out.push_back("gluing square fails on " + shape_name(m.s) + " far mask " +
                                  std::to_string(sigma.far) + " assignment " +
                                  std::to_string(ai));
            }
        }
    }
    return out;
}

} // namespace painted
