#include "painted/functors.hpp"

#include <algorithm>
#include <stdexcept>

namespace painted {

namespace {

std::uint32_t image_mask(std::uint32_t mask, const std::vector<int>& map) {
    std::uint32_t out = 0;
    for (std::size_t x = 0; x < map.size(); ++x)
        if (((mask >> x) & 1u) && map[x] >= 0) out |= std::uint32_t(1) << map[x];
    return out;
}

void prune(Tensor2& t) {
    for (auto it = t.begin(); it != t.end();)
        it = it->second == 0 ? t.erase(it) : std::next(it);
}

} // namespace

EdgeGrounds edge_grounds(const PaintedSet& s, TwoPartition sigma) {
    if (!is_stable(s, sigma)) throw std::invalid_argument("partition is not stable");
    EdgeGrounds eg;
    std::uint32_t far = sigma.far;
    eg.to_g1.assign(std::size_t(s.size()), -1);
    eg.to_g2.assign(std::size_t(s.size()), -1);
    int n1 = 0, n2 = 0;
    for (int x = 0; x < s.whites; ++x) {
        if ((far >> x) & 1u)
            eg.to_g2[std::size_t(x)] = n2++;
        else
            eg.to_g1[std::size_t(x)] = n1++;
    }
    // One fresh node point per side, appended as the last white.
    eg.e1 = n1++;
    eg.e2 = n2++;
    eg.g1 = PaintedSet{n1, 0};
    eg.g2 = PaintedSet{n2, 0};
    for (int x = s.whites; x < s.size(); ++x) {
        if ((far >> x) & 1u)
            eg.to_g2[std::size_t(x)] = n2++;
        else
            eg.to_g1[std::size_t(x)] = n1++;
    }
    eg.g1.blacks = n1 - eg.g1.whites;
    eg.g2.blacks = n2 - eg.g2.whites;
    return eg;
}

EdgeFunctor::EdgeFunctor(const Ring& ambient, TwoPartition sigma)
    : ambient_(ambient), sigma_(sigma), eg_(edge_grounds(ambient.set(), sigma)) {
    r1_ = std::make_unique<Ring>(eg_.g1);
    r2_ = std::make_unique<Ring>(eg_.g2);
    // Gluing the grounds back lists near whites, far whites, near blacks, far
    // blacks; this permutation sends that layout to the ambient labels.
    const PaintedSet& s = ambient_.set();
    graft_to_ambient_.clear();
    for (int x = 0; x < s.whites; ++x)
        if (!((sigma_.far >> x) & 1u)) graft_to_ambient_.push_back(x);
    for (int x = 0; x < s.whites; ++x)
        if ((sigma_.far >> x) & 1u) graft_to_ambient_.push_back(x);
    for (int x = s.whites; x < s.size(); ++x)
        if (!((sigma_.far >> x) & 1u)) graft_to_ambient_.push_back(x);
    for (int x = s.whites; x < s.size(); ++x)
        if ((sigma_.far >> x) & 1u) graft_to_ambient_.push_back(x);
}

Tensor2 EdgeFunctor::pull_generator(TwoPartition rho,
                                    const std::optional<QuadLabels>& quad) const {
    const PaintedSet& s = ambient_.set();
    if (!is_stable(s, rho)) throw std::invalid_argument("partition is not stable");
    if (rho == sigma_) {
        std::uint32_t near = s.full_mask() & ~sigma_.far;
        QuadLabels q;
        if (quad) {
            q = *quad;
            auto in_near = [&](int x) {
                return x >= 0 && x < s.size() && !((sigma_.far >> x) & 1u);
            };
            auto in_far = [&](int x) {
                return x >= 0 && x < s.size() && ((sigma_.far >> x) & 1u);
            };
            if (!in_near(q.i) || !in_near(q.j) || q.i == q.j || !in_far(q.k) ||
                !in_far(q.l) || q.k == q.l)
                throw std::invalid_argument("quadruple must straddle the edge");
            if (!allowed_quadruple(s, q.i, q.j, q.k, q.l))
                throw std::invalid_argument("quadruple is not allowed");
        } else {
            bool found = false;
            for (int i = 0; i < s.size() && !found; ++i)
                for (int j = 0; j < s.size() && !found; ++j)
                    for (int k = 0; k < s.size() && !found; ++k)
                        for (int l = 0; l < s.size() && !found; ++l) {
                            if (i == j || k == l) continue;
                            if ((near >> i & 1u) == 0 || (near >> j & 1u) == 0) continue;
                            if ((sigma_.far >> k & 1u) == 0 || (sigma_.far >> l & 1u) == 0)
                                continue;
                            if (!allowed_quadruple(s, i, j, k, l)) continue;
                            q = QuadLabels{i, j, k, l};
                            found = true;
                        }
            if (!found) throw std::logic_error("no allowed quadruple for the edge");
        }
        Tensor2 out;
        auto opposite = [](TwoPartition p, int node, int a, int b) {
            std::uint32_t sn = (p.far >> node) & 1u;
            std::uint32_t sa = (p.far >> a) & 1u, sb = (p.far >> b) & 1u;
            return sa == sb && sn != sa;
        };
        int i1 = eg_.to_g1[std::size_t(q.i)], j1 = eg_.to_g1[std::size_t(q.j)];
        for (TwoPartition p : stable_partitions(eg_.g1))
            if (opposite(p, eg_.e1, i1, j1)) out[{GoodFamily{p.far}, GoodFamily{}}] -= 1;
        int k2 = eg_.to_g2[std::size_t(q.k)], l2 = eg_.to_g2[std::size_t(q.l)];
        for (TwoPartition p : stable_partitions(eg_.g2))
            if (opposite(p, eg_.e2, k2, l2)) out[{GoodFamily{}, GoodFamily{p.far}}] -= 1;
        return out;
    }
    int d = delta(s, sigma_, rho);
    if (d == 2) return {};
    if (d != 1) throw std::logic_error("unexpected delta");
    std::uint32_t meet = rho.far & sigma_.far;
    if (meet == 0) {
        TwoPartition p = make_partition(eg_.g1, image_mask(rho.far, eg_.to_g1));
        return Tensor2{{{GoodFamily{p.far}, GoodFamily{}}, Rat(1)}};
    }
    if (meet == sigma_.far) {
        std::uint32_t a = s.full_mask() & ~rho.far;  // side away from the stratum
        TwoPartition p = make_partition(eg_.g1, image_mask(a, eg_.to_g1));
        return Tensor2{{{GoodFamily{p.far}, GoodFamily{}}, Rat(1)}};
    }
    if (meet == rho.far) {
        TwoPartition p = make_partition(eg_.g2, image_mask(rho.far, eg_.to_g2));
        return Tensor2{{{GoodFamily{}, GoodFamily{p.far}}, Rat(1)}};
    }
    throw std::logic_error("compatible partitions must nest or be disjoint");
}

Tensor2 EdgeFunctor::tensor_multiply(const Tensor2& a, const Tensor2& b) const {
    Tensor2 out;
    for (const auto& [fa, ca] : a)
        for (const auto& [fb, cb] : b) {
            Coords p1 = r1_->multiply(int(fa.first.size()), Coords{{fa.first, Rat(1)}},
                                      int(fb.first.size()), Coords{{fb.first, Rat(1)}});
            if (p1.empty()) continue;
            Coords p2 = r2_->multiply(int(fa.second.size()), Coords{{fa.second, Rat(1)}},
                                      int(fb.second.size()), Coords{{fb.second, Rat(1)}});
            Rat scale = ca * cb;
            for (const auto& [f1, c1] : p1)
                for (const auto& [f2, c2] : p2) out[{f1, f2}] += scale * c1 * c2;
        }
    prune(out);
    return out;
}

Tensor2 EdgeFunctor::pull(int degree, const Coords& x) const {
    Tensor2 out;
    for (const auto& [fam, c] : x) {
        if (int(fam.size()) != degree)
            throw std::invalid_argument("class term is not a tree of this degree");
        Tensor2 cur{{{GoodFamily{}, GoodFamily{}}, Rat(1)}};
        for (std::uint32_t f : fam) {
            cur = tensor_multiply(cur, pull_generator(TwoPartition{f}));
            if (cur.empty()) break;
        }
        for (const auto& [key, cc] : cur) out[key] += c * cc;
    }
    prune(out);
    return out;
}

Coords EdgeFunctor::push(const Tensor2& t) const {
    Coords out;
    for (const auto& [fams, c] : t) {
        GraftResult gr = graft(eg_.g1, fams.first, eg_.e1, eg_.g2, fams.second, eg_.e2);
        GoodFamily fam = relabel_family(ambient_.set(), gr.fam, graft_to_ambient_);
        out[fam] += c;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

namespace {

struct Meaning {
    int kind;  // 0: tail with its ambient label, 1: node point of an edge
    int id;
    bool operator==(const Meaning&) const = default;
    auto operator<=>(const Meaning&) const = default;
};

using Legend = std::vector<Meaning>;

Meaning flag_meaning(const Flag& f) {
    return f.kind == Flag::Tail ? Meaning{0, f.tail} : Meaning{1, f.edge};
}

// Legends of the two halves after contracting edge_id out of a legended set.
std::pair<Legend, Legend> split_legend(const EdgeGrounds& eg, const Legend& legend,
                                       int edge_id) {
    Legend l1(std::size_t(eg.g1.size())), l2(std::size_t(eg.g2.size()));
    for (std::size_t x = 0; x < legend.size(); ++x) {
        if (eg.to_g1[x] >= 0) l1[std::size_t(eg.to_g1[x])] = legend[x];
        if (eg.to_g2[x] >= 0) l2[std::size_t(eg.to_g2[x])] = legend[x];
    }
    l1[std::size_t(eg.e1)] = Meaning{1, edge_id};
    l2[std::size_t(eg.e2)] = Meaning{1, edge_id};
    return {l1, l2};
}

} // namespace

StratumPull pull_pair(const Ring& ambient, const GoodFamily& two_edges, int degree,
                      const Coords& x, int first_edge) {
    const PaintedSet& s = ambient.set();
    if (two_edges.size() != 2 || !is_good_family(s, two_edges))
        throw std::invalid_argument("need a good family with two edges");
    if (first_edge != 0 && first_edge != 1)
        throw std::invalid_argument("first_edge must be 0 or 1");
    TreeShape t = TreeShape::build(s, two_edges);

    // Authoritative ground per vertex: white tails, node points by edge
    // index, black tails; plus where each flag meaning lands.
    std::array<PaintedSet, 3> auth;
    std::array<std::map<Meaning, int>, 3> pos;
    std::array<std::vector<Meaning>, 3> vertex_meanings;
    for (int v = 0; v < 3; ++v) {
        std::vector<Meaning> whites, blacks;
        for (const Flag& f : t.flags[std::size_t(v)]) {
            Meaning m = flag_meaning(f);
            vertex_meanings[std::size_t(v)].push_back(m);
            if (f.kind == Flag::Tail && !s.is_white(f.tail))
                blacks.push_back(m);
            else if (f.kind == Flag::Tail)
                whites.push_back(m);
        }
        for (const Flag& f : t.flags[std::size_t(v)])
            if (f.kind == Flag::Half) whites.push_back(flag_meaning(f));
        auth[std::size_t(v)] = PaintedSet{int(whites.size()), int(blacks.size())};
        int next = 0;
        for (const Meaning& m : whites) pos[std::size_t(v)][m] = next++;
        for (const Meaning& m : blacks) pos[std::size_t(v)][m] = next++;
        std::sort(vertex_meanings[std::size_t(v)].begin(),
                  vertex_meanings[std::size_t(v)].end());
    }

    int a = first_edge, b = 1 - first_edge;
    EdgeFunctor fa(ambient, TwoPartition{two_edges[std::size_t(a)]});
    const EdgeGrounds& ega = fa.grounds();

    // Where the second edge lands after the first contraction.
    std::uint32_t fb_mask = two_edges[std::size_t(b)];
    std::uint32_t fa_mask = two_edges[std::size_t(a)];
    bool on_g1;
    TwoPartition pi;
    if ((fb_mask & fa_mask) == 0) {
        on_g1 = true;
        pi = make_partition(ega.g1, image_mask(fb_mask, ega.to_g1));
    } else if ((fb_mask & fa_mask) == fa_mask) {
        on_g1 = true;
        pi = make_partition(ega.g1, image_mask(s.full_mask() & ~fb_mask, ega.to_g1));
    } else {
        on_g1 = false;
        pi = make_partition(ega.g2, image_mask(fb_mask, ega.to_g2));
    }

    Legend ambient_legend(std::size_t(s.size()));
    for (int lbl = 0; lbl < s.size(); ++lbl)
        ambient_legend[std::size_t(lbl)] = Meaning{0, lbl};
    auto [la1, la2] = split_legend(ega, ambient_legend, a);

    EdgeFunctor fb(on_g1 ? fa.ring1() : fa.ring2(), pi);
    auto [lb1, lb2] = split_legend(fb.grounds(), on_g1 ? la1 : la2, b);

    // Factor layout: the split factor contributes two grounds, the untouched
    // one stays. Factor index -> (ground, legend).
    std::array<const PaintedSet*, 3> fac_g;
    std::array<Legend, 3> fac_legend;
    if (on_g1) {
        fac_g = {&fb.grounds().g1, &fb.grounds().g2, &ega.g2};
        fac_legend = {lb1, lb2, la2};
    } else {
        fac_g = {&ega.g1, &fb.grounds().g1, &fb.grounds().g2};
        fac_legend = {la1, lb1, lb2};
    }

    // Identify each factor's vertex and its relabeling onto the
    // authoritative ground.
    std::array<int, 3> fac_vertex{};
    std::array<std::vector<int>, 3> fac_perm;
    for (int fi = 0; fi < 3; ++fi) {
        std::vector<Meaning> sorted = fac_legend[std::size_t(fi)];
        std::sort(sorted.begin(), sorted.end());
        int v = -1;
        for (int cand = 0; cand < 3; ++cand)
            if (sorted == vertex_meanings[std::size_t(cand)]) v = cand;
        if (v < 0) throw std::logic_error("factor does not match any vertex");
        if (!(auth[std::size_t(v)] == *fac_g[std::size_t(fi)]))
            throw std::logic_error("ground shape mismatch");
        fac_vertex[std::size_t(fi)] = v;
        std::vector<int> perm(fac_legend[std::size_t(fi)].size());
        for (std::size_t g = 0; g < perm.size(); ++g)
            perm[g] = pos[std::size_t(v)].at(fac_legend[std::size_t(fi)][g]);
        fac_perm[std::size_t(fi)] = std::move(perm);
    }

    // Pull twice, reassemble on the vertex grounds, and put each factor in
    // normal form there so both contraction orders are directly comparable.
    std::array<std::unique_ptr<Ring>, 3> auth_ring;
    for (int v = 0; v < 3; ++v) auth_ring[std::size_t(v)] = std::make_unique<Ring>(auth[std::size_t(v)]);

    StratumPull out;
    out.grounds = auth;
    Tensor2 first = fa.pull(degree, x);
    for (const auto& [fams, c] : first) {
        const GoodFamily& tosplit = on_g1 ? fams.first : fams.second;
        const GoodFamily& keep = on_g1 ? fams.second : fams.first;
        Tensor2 second = fb.pull(int(tosplit.size()), Coords{{tosplit, Rat(1)}});
        for (const auto& [qs, c2] : second) {
            std::array<GoodFamily, 3> raw;
            if (on_g1)
                raw = {qs.first, qs.second, keep};
            else
                raw = {keep, qs.first, qs.second};
            std::array<Coords, 3> nfs;
            for (int fi = 0; fi < 3; ++fi) {
                int v = fac_vertex[std::size_t(fi)];
                GoodFamily mapped = relabel_family(auth[std::size_t(v)], raw[std::size_t(fi)],
                                                   fac_perm[std::size_t(fi)]);
                nfs[std::size_t(v)] = auth_ring[std::size_t(v)]->normal_form(
                    int(mapped.size()), Coords{{mapped, Rat(1)}});
            }
            Rat scale = c * c2;
            for (const auto& [f0, c0] : nfs[0])
                for (const auto& [f1, c1] : nfs[1])
                    for (const auto& [f2, cc2] : nfs[2]) {
                        Rat& slot = out.terms[{f0, f1, f2}];
                        slot += scale * c0 * c1 * cc2;
                    }
        }
    }
    for (auto it = out.terms.begin(); it != out.terms.end();)
        it = it->second == 0 ? out.terms.erase(it) : std::next(it);
    return out;
}

} // namespace painted
