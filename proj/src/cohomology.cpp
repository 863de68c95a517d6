#include "painted/cohomology.hpp"

#include <algorithm>
#include <stdexcept>

#include "painted/parallel.hpp"

namespace painted {

void add_scaled(Coords& acc, const Coords& x, const Rat& factor) {
    if (factor == 0) return;
    for (const auto& [fam, c] : x) {
        Rat& slot = acc[fam];
        slot += c * factor;
        if (slot == 0) acc.erase(fam);
    }
}

namespace {

void prune_zeros(Coords& x) {
    for (auto it = x.begin(); it != x.end();)
        it = it->second == 0 ? x.erase(it) : std::next(it);
}

// Signed sum over vertex splits for one oriented quadruple, as a sparse row
// over tree indices one degree up.
SparseRow relation_row(const TreeShape& t, const std::vector<VertexSplit>& splits,
                       int v, Quad q, const std::map<GoodFamily, int>& index) {
    std::map<std::int64_t, Rat> acc;
    for (const VertexSplit& sp : splits) {
        int sign = flag_quad_sign(sp.flag_side, q.i, q.j, q.k, q.l);
        if (sign == 0) continue;
        auto it = index.find(insert_partition(t.fam, sp.sigma));
        if (it == index.end()) throw std::logic_error("split left the tree list");
        acc[it->second] += sign;
    }
    (void)v;
    return sparse_normalize(acc);
}

bool row_less(const SparseRow& a, const SparseRow& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].first != b[i].first) return a[i].first < b[i].first;
        int c = cmp(a[i].second, b[i].second);
        if (c != 0) return c < 0;
    }
    return a.size() < b.size();
}

// Scale so the leading coefficient is 1; collapses sign and scalar twins.
void monicize(SparseRow& r) {
    if (r.empty()) return;
    Rat lead = r.front().second;
    if (lead == 1) return;
    for (auto& [c, v] : r) v /= lead;
}

} // namespace

Ring::Ring(const PaintedSet& s) : s_(s) {
    check_painted_set(s);
    deg_.resize(std::size_t(top_degree()) + 1);
}

const Ring::DegreeData& Ring::ensure(int degree) const {
    if (degree < 0 || degree > top_degree()) throw std::out_of_range("degree out of range");
    DegreeData& d = deg_[std::size_t(degree)];
    if (d.built) return d;
    d.trees = good_families(s_, degree);
    for (std::size_t i = 0; i < d.trees.size(); ++i) d.index[d.trees[i]] = int(i);
    if (degree >= 1) {
        const DegreeData& prev = ensure(degree - 1);
        // Relation rows are generated per lower tree in parallel, then merged
        // in a canonical order so the pivot choice is reproducible.
        std::vector<std::vector<SparseRow>> chunks(prev.trees.size());
        sweep(prev.trees.size(), [&](std::size_t ti) {
            TreeShape t = TreeShape::build(s_, prev.trees[ti]);
            for (int v = 0; v < t.num_vertices(); ++v) {
                int nf = int(t.flags[std::size_t(v)].size());
                if (nf < 4) continue;
                std::vector<VertexSplit> splits = vertex_splits(t, v);
                for (int a = 0; a < nf; ++a)
                    for (int b = a + 1; b < nf; ++b)
                        for (int c = b + 1; c < nf; ++c)
                            for (int e = c + 1; e < nf; ++e) {
                                // all oriented pairings of the 4-set
                                const Quad quads[6] = {{a, b, c, e}, {a, b, e, c},
                                                       {a, c, b, e}, {a, c, e, b},
                                                       {a, e, b, c}, {a, e, c, b}};
                                for (const Quad& q : quads) {
                                    if (!allowed_flag_quadruple(t, v, q.i, q.j, q.k, q.l))
                                        continue;
                                    SparseRow r = relation_row(t, splits, v, q, d.index);
                                    if (!r.empty()) {
                                        monicize(r);
                                        chunks[ti].push_back(std::move(r));
                                    }
                                }
                            }
            }
        });
        std::vector<SparseRow> rows;
        for (auto& c : chunks)
            rows.insert(rows.end(), std::make_move_iterator(c.begin()),
                        std::make_move_iterator(c.end()));
        std::sort(rows.begin(), rows.end(), row_less);
        rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
        for (SparseRow& r : rows) d.reducer.add_row(std::move(r));
    }
    for (std::size_t i = 0; i < d.trees.size(); ++i)
        if (!d.reducer.is_pivot(std::int64_t(i))) {
            d.basis.push_back(d.trees[i]);
            d.basis_pos.push_back(i);
        }
    d.built = true;
    return d;
}

const std::vector<GoodFamily>& Ring::trees(int degree) const {
    static const std::vector<GoodFamily> empty;
    if (degree < 0 || degree > top_degree()) return empty;
    return ensure(degree).trees;
}

int Ring::tree_index(int degree, const GoodFamily& fam) const {
    if (degree < 0 || degree > top_degree()) return -1;
    const DegreeData& d = ensure(degree);
    auto it = d.index.find(fam);
    return it == d.index.end() ? -1 : it->second;
}

const std::vector<GoodFamily>& Ring::basis(int degree) const {
    static const std::vector<GoodFamily> empty;
    if (degree < 0 || degree > top_degree()) return empty;
    return ensure(degree).basis;
}

std::vector<int> Ring::betti() const {
    std::vector<int> out;
    for (int d = 0; d <= top_degree(); ++d) out.push_back(dimension(d));
    return out;
}

Coords Ring::standard_relation(const GoodFamily& fam, int v, Quad q) const {
    TreeShape t = TreeShape::build(s_, fam);
    if (v < 0 || v >= t.num_vertices()) throw std::out_of_range("vertex out of range");
    int nf = int(t.flags[std::size_t(v)].size());
    auto in_range = [&](int x) { return x >= 0 && x < nf; };
    if (!in_range(q.i) || !in_range(q.j) || !in_range(q.k) || !in_range(q.l))
        throw std::out_of_range("flag position out of range");
    int p[4] = {q.i, q.j, q.k, q.l};
    std::sort(p, p + 4);
    if (p[0] == p[1] || p[1] == p[2] || p[2] == p[3])
        throw std::invalid_argument("flag quadruple must be distinct");
    if (!allowed_flag_quadruple(t, v, q.i, q.j, q.k, q.l))
        throw std::invalid_argument("flag quadruple is not allowed at this vertex");
    Coords acc;
    for (const VertexSplit& sp : vertex_splits(t, v)) {
        int sign = flag_quad_sign(sp.flag_side, q.i, q.j, q.k, q.l);
        if (sign == 0) continue;
        GoodFamily key = insert_partition(fam, sp.sigma);
        Rat& slot = acc[key];
        slot += sign;
        if (slot == 0) acc.erase(key);
    }
    return acc;
}

Coords Ring::normal_form(int degree, const Coords& x) const {
    if (degree < 0 || degree > top_degree()) return {};
    const DegreeData& d = ensure(degree);
    std::map<std::int64_t, Rat> row;
    for (const auto& [fam, c] : x) {
        if (c == 0) continue;
        auto it = d.index.find(fam);
        if (it == d.index.end())
            throw std::invalid_argument("class term is not a tree of this degree");
        row[it->second] += c;
    }
    SparseRow residual = d.reducer.reduce(sparse_normalize(row));
    Coords out;
    for (const auto& [col, c] : residual) out[d.trees[std::size_t(col)]] = c;
    return out;
}

Coords Ring::multiply_generator(TwoPartition sigma, const GoodFamily& fam,
                                const std::optional<Quad>& quad) const {
    if (!is_stable(s_, sigma)) throw std::invalid_argument("partition is not stable");
    TreeShape t = TreeShape::build(s_, fam);
    Breaking b = break_at(t, sigma);
    if (b.kind == Breaking::NoBreak) return {};
    if (b.kind == Breaking::AtVertex) {
        if (quad) throw std::invalid_argument("quadruple given but product needs none");
        return Coords{{insert_partition(fam, sigma), Rat(1)}};
    }
    int e = b.edge;
    int v1 = t.edge_near[std::size_t(e)];
    int v2 = t.edge_far(e);
    const auto& fl1 = t.flags[std::size_t(v1)];
    const auto& fl2 = t.flags[std::size_t(v2)];
    auto half_pos = [&](const std::vector<Flag>& fl, int side) {
        for (std::size_t i = 0; i < fl.size(); ++i)
            if (fl[i].kind == Flag::Half && fl[i].edge == e && fl[i].side == side)
                return int(i);
        throw std::logic_error("edge half missing");
    };
    int h1 = half_pos(fl1, 0);
    int h2 = half_pos(fl2, 1);
    auto cross_allowed = [&](int i, int j, int k, int l) {
        bool wi = t.branch_has_white(fl1[std::size_t(i)]);
        bool wj = t.branch_has_white(fl1[std::size_t(j)]);
        bool wk = t.branch_has_white(fl2[std::size_t(k)]);
        bool wl = t.branch_has_white(fl2[std::size_t(l)]);
        return (wj && wl) || (wi && wk);
    };
    Quad q;
    if (quad) {
        q = *quad;
        auto ok1 = [&](int x) { return x >= 0 && x < int(fl1.size()) && x != h1; };
        auto ok2 = [&](int x) { return x >= 0 && x < int(fl2.size()) && x != h2; };
        if (!ok1(q.i) || !ok1(q.j) || q.i == q.j || !ok2(q.k) || !ok2(q.l) || q.k == q.l)
            throw std::invalid_argument("quadruple must avoid the edge halves");
        if (!cross_allowed(q.i, q.j, q.k, q.l))
            throw std::invalid_argument("quadruple is not allowed around this edge");
    } else {
        bool found = false;
        for (int i = 0; i < int(fl1.size()) && !found; ++i)
            for (int j = 0; j < int(fl1.size()) && !found; ++j)
                for (int k = 0; k < int(fl2.size()) && !found; ++k)
                    for (int l = 0; l < int(fl2.size()) && !found; ++l) {
                        if (i == h1 || j == h1 || i == j) continue;
                        if (k == h2 || l == h2 || k == l) continue;
                        if (!cross_allowed(i, j, k, l)) continue;
                        q = Quad{i, j, k, l};
                        found = true;
                    }
        if (!found) throw std::logic_error("no allowed quadruple around edge");
    }
    Coords acc;
    auto separated = [](std::uint32_t side, int a, int b, int other) {
        std::uint32_t sa = (side >> a) & 1u, sb = (side >> b) & 1u;
        std::uint32_t so = (side >> other) & 1u;
        return sa == sb && so != sa;
    };
    for (const VertexSplit& sp : vertex_splits(t, v1))
        if (separated(sp.flag_side, q.i, q.j, h1))
            acc[insert_partition(fam, sp.sigma)] -= 1;
    for (const VertexSplit& sp : vertex_splits(t, v2))
        if (separated(sp.flag_side, q.k, q.l, h2))
            acc[insert_partition(fam, sp.sigma)] -= 1;
    prune_zeros(acc);
    return acc;
}

Coords Ring::multiply(int deg_a, const Coords& a, int deg_b, const Coords& b) const {
    if (deg_a + deg_b > top_degree()) return {};
    Coords base = normal_form(deg_a, a);
    Coords out;
    for (const auto& [fam_b, cb] : b) {
        if (int(fam_b.size()) != deg_b)
            throw std::invalid_argument("class term is not a tree of this degree");
        Coords cur = base;
        int d = deg_a;
        for (std::uint32_t f : fam_b) {
            Coords next;
            for (const auto& [fam, c] : cur)
                add_scaled(next, multiply_generator(TwoPartition{f}, fam), c);
            ++d;
            cur = normal_form(d, next);
            if (cur.empty()) break;
        }
        add_scaled(out, cur, cb);
    }
    prune_zeros(out);
    return out;
}

void Ring::warm() const {
    for (int d = 0; d <= top_degree(); ++d) ensure(d);
    if (dimension(top_degree()) == 1) top_scale();
}

Rat Ring::top_scale() const {
    if (top_scale_) return *top_scale_;
    int top = top_degree();
    if (dimension(top) != 1)
        throw std::logic_error("top degree is not one-dimensional");
    const DegreeData& d = ensure(top);
    if (d.trees.empty()) throw std::logic_error("no maximal trees");
    Coords nf = normal_form(top, Coords{{d.trees.front(), Rat(1)}});
    Rat c = nf.empty() ? Rat(0) : nf.begin()->second;
    if (c == 0) throw std::logic_error("maximal tree monomial reduced to zero");
    top_scale_ = c;
    return c;
}

bool Ring::verify_top_normalization() const {
    int top = top_degree();
    if (dimension(top) != 1) return false;
    const DegreeData& d = ensure(top);
    Rat c = top_scale();
    std::vector<char> ok(d.trees.size(), 0);
    sweep(d.trees.size(), [&](std::size_t i) {
        Coords nf = normal_form(top, Coords{{d.trees[i], Rat(1)}});
        ok[i] = nf.size() == 1 && nf.begin()->second == c;
    });
    for (char v : ok)
        if (!v) return false;
    return true;
}

Rat Ring::integrate(const Coords& top) const {
    int d = top_degree();
    Rat c = top_scale();
    Coords nf = normal_form(d, top);
    if (nf.empty()) return Rat(0);
    return nf.begin()->second / c;
}

} // namespace painted
