#include "painted/trees.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "painted/parallel.hpp"

namespace painted {

bool is_good_family(const PaintedSet& s, const GoodFamily& fam) {
    if (!std::is_sorted(fam.begin(), fam.end())) return false;
    if (std::adjacent_find(fam.begin(), fam.end()) != fam.end()) return false;
    for (std::uint32_t f : fam)
        if (!is_stable(s, TwoPartition{f})) return false;
    for (std::size_t i = 0; i < fam.size(); ++i)
        for (std::size_t j = i + 1; j < fam.size(); ++j)
            if (delta(s, TwoPartition{fam[i]}, TwoPartition{fam[j]}) != 1) return false;
    return true;
}

GoodFamily insert_partition(const GoodFamily& fam, TwoPartition p) {
    GoodFamily out = fam;
    out.insert(std::lower_bound(out.begin(), out.end(), p.far), p.far);
    return out;
}

namespace {

void extend_family(const PaintedSet& s, const std::vector<TwoPartition>& parts,
                   std::size_t start, int need, GoodFamily& current,
                   std::vector<GoodFamily>& out) {
    if (need == 0) {
        out.push_back(current);
        return;
    }
    for (std::size_t i = start; i + std::size_t(need) <= parts.size(); ++i) {
        bool ok = true;
        for (std::uint32_t f : current)
            if (delta(s, TwoPartition{f}, parts[i]) != 1) {
                ok = false;
                break;
            }
        if (!ok) continue;
        current.push_back(parts[i].far);
        extend_family(s, parts, i + 1, need - 1, current, out);
        current.pop_back();
    }
}

} // namespace

std::vector<GoodFamily> good_families(const PaintedSet& s, int edges) {
    if (edges < 0) return {};
    if (edges == 0) return {GoodFamily{}};
    std::vector<TwoPartition> parts = stable_partitions(s);
    if (edges == 1) {
        std::vector<GoodFamily> out;
        out.reserve(parts.size());
        for (TwoPartition p : parts) out.push_back(GoodFamily{p.far});
        return out;
    }
    // Independent searches per first element, stitched back in order.
    std::vector<std::vector<GoodFamily>> chunks(parts.size());
    sweep(parts.size(), [&](std::size_t i) {
        GoodFamily current{parts[i].far};
        extend_family(s, parts, i + 1, edges - 1, current, chunks[i]);
    });
    std::vector<GoodFamily> out;
    for (auto& c : chunks)
        out.insert(out.end(), std::make_move_iterator(c.begin()),
                   std::make_move_iterator(c.end()));
    return out;
}

TreeShape TreeShape::build(const PaintedSet& s, const GoodFamily& fam) {
    if (!std::is_sorted(fam.begin(), fam.end()) ||
        std::adjacent_find(fam.begin(), fam.end()) != fam.end())
        throw std::invalid_argument("family must be sorted and duplicate-free");
    TreeShape t;
    t.s = s;
    t.fam = fam;
    int ne = int(fam.size());
    t.flags.assign(std::size_t(ne) + 1, {});
    t.edge_near.assign(std::size_t(ne), 0);
    // Far masks are sorted by value, and nested masks compare by inclusion,
    // so the first superset upward is the minimal one (the parent edge).
    for (int e = 0; e < ne; ++e) {
        for (int j = e + 1; j < ne; ++j)
            if ((fam[std::size_t(j)] & fam[std::size_t(e)]) == fam[std::size_t(e)]) {
                t.edge_near[std::size_t(e)] = j + 1;
                break;
            }
    }
    t.tail_vertex.assign(std::size_t(s.size()), 0);
    for (int x = 0; x < s.size(); ++x) {
        for (int e = 0; e < ne; ++e)
            if ((fam[std::size_t(e)] >> x) & 1u) {
                t.tail_vertex[std::size_t(x)] = e + 1;
                break;
            }
    }
    for (int x = 0; x < s.size(); ++x) {
        Flag f;
        f.kind = Flag::Tail;
        f.tail = x;
        t.flags[std::size_t(t.tail_vertex[std::size_t(x)])].push_back(f);
    }
    for (int e = 0; e < ne; ++e) {
        Flag near_half;
        near_half.kind = Flag::Half;
        near_half.edge = e;
        near_half.side = 0;
        t.flags[std::size_t(t.edge_near[std::size_t(e)])].push_back(near_half);
        Flag far_half;
        far_half.kind = Flag::Half;
        far_half.edge = e;
        far_half.side = 1;
        t.flags[std::size_t(e) + 1].push_back(far_half);
    }
    return t;
}

Breaking break_at(const TreeShape& t, TwoPartition sigma) {
    Breaking b;
    auto it = std::lower_bound(t.fam.begin(), t.fam.end(), sigma.far);
    if (it != t.fam.end() && *it == sigma.far) {
        b.kind = Breaking::AtEdge;
        b.edge = int(it - t.fam.begin());
        return b;
    }
    for (std::size_t e = 0; e < t.fam.size(); ++e)
        if (delta(t.s, TwoPartition{t.fam[e]}, sigma) == 2) {
            b.kind = Breaking::NoBreak;
            b.edge = int(e);
            return b;
        }
    b.kind = Breaking::AtVertex;
    b.vertex = 0;
    for (std::size_t e = 0; e < t.fam.size(); ++e)
        if ((t.fam[e] & sigma.far) == sigma.far) {
            b.vertex = int(e) + 1;
            break;
        }
    return b;
}

TwoPartition split_partition(const TreeShape& t, int v, std::uint32_t flag_side) {
    const auto& fl = t.flags[std::size_t(v)];
    std::uint32_t labels = 0;
    for (std::size_t i = 0; i < fl.size(); ++i)
        if ((flag_side >> i) & 1u) labels |= t.branch(fl[i]);
    return make_partition(t.s, labels);
}

std::vector<VertexSplit> vertex_splits(const TreeShape& t, int v) {
    const auto& fl = t.flags[std::size_t(v)];
    int nf = int(fl.size());
    std::vector<VertexSplit> out;
    if (nf < 4) return out;
    std::vector<bool> white(static_cast<std::size_t>(nf));
    for (int i = 0; i < nf; ++i) white[std::size_t(i)] = t.branch_has_white(fl[std::size_t(i)]);
    // Keep flag 0 on the implicit side so each unordered split shows up once.
    std::uint32_t top = std::uint32_t(1) << (nf - 1);
    for (std::uint32_t m = 1; m < top; ++m) {
        std::uint32_t side = m << 1;
        int cnt = std::popcount(side);
        if (cnt < 2 || nf - cnt < 2) continue;
        bool w_in = false, w_out = false;
        for (int i = 0; i < nf; ++i) {
            if ((side >> i) & 1u)
                w_in = w_in || white[std::size_t(i)];
            else
                w_out = w_out || white[std::size_t(i)];
        }
        if (!w_in || !w_out) continue;
        TwoPartition sigma = split_partition(t, v, side);
        if (std::binary_search(t.fam.begin(), t.fam.end(), sigma.far)) continue;
        out.push_back(VertexSplit{side, sigma});
    }
    return out;
}

int flag_quad_sign(std::uint32_t flag_side, int i, int j, int k, int l) {
    std::uint32_t si = (flag_side >> i) & 1u, sj = (flag_side >> j) & 1u;
    std::uint32_t sk = (flag_side >> k) & 1u, sl = (flag_side >> l) & 1u;
    if (si == sj && sk == sl && si != sk) return 1;
    if (sk == sj && si == sl && sk != si) return -1;
    return 0;
}

bool allowed_flag_quadruple(const TreeShape& t, int v, int i, int j, int k, int l) {
    const auto& fl = t.flags[std::size_t(v)];
    auto bw = [&](int x) { return t.branch_has_white(fl[std::size_t(x)]); };
    return (bw(j) && bw(l)) || (bw(i) && bw(k));
}

GoodFamily contract_edge(const GoodFamily& fam, int edge) {
    GoodFamily out = fam;
    out.erase(out.begin() + edge);
    return out;
}

GraftResult graft(const PaintedSet& s1, const GoodFamily& f1, int w1,
                  const PaintedSet& s2, const GoodFamily& f2, int w2) {
    if (!s1.is_white(w1) || !s2.is_white(w2))
        throw std::invalid_argument("graft tails must be white");
    if (s1.whites < 2 || s2.whites < 2 || s1.size() < 3 || s2.size() < 3)
        throw std::invalid_argument("graft parts too small for a stable middle edge");
    GraftResult r;
    r.s = PaintedSet{s1.whites + s2.whites - 2, s1.blacks + s2.blacks};
    check_painted_set(r.s);
    r.map1.assign(std::size_t(s1.size()), -1);
    r.map2.assign(std::size_t(s2.size()), -1);
    int next = 0;
    for (int x = 0; x < s1.whites; ++x)
        if (x != w1) r.map1[std::size_t(x)] = next++;
    for (int x = 0; x < s2.whites; ++x)
        if (x != w2) r.map2[std::size_t(x)] = next++;
    for (int x = s1.whites; x < s1.size(); ++x) r.map1[std::size_t(x)] = next++;
    for (int x = s2.whites; x < s2.size(); ++x) r.map2[std::size_t(x)] = next++;

    auto image = [](std::uint32_t mask, const std::vector<int>& map) {
        std::uint32_t out = 0;
        for (std::size_t x = 0; x < map.size(); ++x)
            if (((mask >> x) & 1u) && map[x] >= 0) out |= std::uint32_t(1) << map[x];
        return out;
    };
    std::uint32_t img1 = image((std::uint32_t(1) << s1.size()) - 1, r.map1);
    std::uint32_t img2 = image((std::uint32_t(1) << s2.size()) - 1, r.map2);

    r.middle = make_partition(r.s, img2);
    GoodFamily fam{r.middle.far};
    for (std::uint32_t f : f1) {
        std::uint32_t part = image(f, r.map1);
        if ((f >> w1) & 1u) part |= img2;
        fam.push_back(make_partition(r.s, part).far);
    }
    for (std::uint32_t f : f2) {
        std::uint32_t part = image(f, r.map2);
        if ((f >> w2) & 1u) part |= img1;
        fam.push_back(make_partition(r.s, part).far);
    }
    std::sort(fam.begin(), fam.end());
    r.fam = fam;
    return r;
}

GoodFamily relabel_family(const PaintedSet& s, const GoodFamily& fam,
                          const std::vector<int>& perm) {
    GoodFamily out;
    out.reserve(fam.size());
    for (std::uint32_t f : fam) {
        std::uint32_t m = 0;
        for (std::size_t x = 0; x < perm.size(); ++x)
            if ((f >> x) & 1u) m |= std::uint32_t(1) << perm[x];
        out.push_back(make_partition(s, m).far);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace painted
