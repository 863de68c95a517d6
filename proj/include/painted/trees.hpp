#pragma once

#include <cstdint>
#include <vector>

#include "painted/painted_set.hpp"
#include "painted/partitions.hpp"

namespace painted {

// A good family: pairwise-compatible stable 2-partitions, stored as sorted
// far masks. Equivalent data to an isomorphism class of painted stable trees;
// the empty family is the one-vertex tree.
using GoodFamily = std::vector<std::uint32_t>;

bool is_good_family(const PaintedSet& s, const GoodFamily& fam);

// Insert a partition keeping the family sorted. No compatibility check.
GoodFamily insert_partition(const GoodFamily& fam, TwoPartition p);

// All good families with exactly `edges` elements, in lexicographic order on
// the sorted mask vectors. Runs chunks of the search in parallel for two or
// more edges; the result order does not depend on the thread count.
std::vector<GoodFamily> good_families(const PaintedSet& s, int edges);

// Largest possible number of edges (size - 3 once the set is big enough).
inline int max_edges(const PaintedSet& s) {
    int d = s.size() - 3;
    return d < 0 ? 0 : d;
}

// Half-edge or leg attached to a vertex of the tree realizing a family.
struct Flag {
    enum Kind : std::uint8_t { Tail, Half };
    Kind kind = Tail;
    int tail = -1;  // label, for Tail
    int edge = -1;  // index into the family, for Half
    int side = 0;   // 0: flag at the near endpoint (branch = far part)
                    // 1: flag at the far endpoint (branch = near part)
};

// Explicit tree built from a good family. Vertex 0 is the vertex whose region
// contains label 0; vertex e+1 is the endpoint of edge e on its far side.
// Flags at each vertex are ordered tails-ascending, then halves by edge index.
struct TreeShape {
    PaintedSet s;
    GoodFamily fam;
    std::vector<std::vector<Flag>> flags;  // per vertex
    std::vector<int> edge_near;            // per edge: vertex index of near endpoint
    std::vector<int> tail_vertex;          // per label: vertex index

    int num_vertices() const { return int(flags.size()); }
    int edge_far(int e) const { return e + 1; }

    std::uint32_t branch(const Flag& f) const {
        if (f.kind == Flag::Tail) return std::uint32_t(1) << f.tail;
        return f.side == 0 ? fam[std::size_t(f.edge)]
                           : (s.full_mask() & ~fam[std::size_t(f.edge)]);
    }

    // Every edge branch contains a white label; tails are white iff the label is.
    bool branch_has_white(const Flag& f) const {
        return f.kind == Flag::Half || s.is_white(f.tail);
    }

    static TreeShape build(const PaintedSet& s, const GoodFamily& fam);
};

// Where a partition lands relative to a tree: an existing edge, a vertex it
// can subdivide, or nowhere (with a crossing edge as witness).
struct Breaking {
    enum Kind { AtEdge, AtVertex, NoBreak };
    Kind kind = NoBreak;
    int edge = -1;    // AtEdge: index of the partition; NoBreak: crossing witness
    int vertex = -1;  // AtVertex
};

Breaking break_at(const TreeShape& t, TwoPartition sigma);

// A 2-partition of the flags at a vertex that subdivides the tree there.
// flag_side is a bitmask over positions in t.flags[v], never containing
// position 0, with at least two flags on each side, a white-containing branch
// on each side, and an induced label partition not already in the family.
struct VertexSplit {
    std::uint32_t flag_side = 0;
    TwoPartition sigma;
};

std::vector<VertexSplit> vertex_splits(const TreeShape& t, int v);

// Induced label partition of a flag subset at vertex v.
TwoPartition split_partition(const TreeShape& t, int v, std::uint32_t flag_side);

// Orientation of a flag 2-partition against a flag quadruple (positions in
// t.flags[v]): +1 if {i,j}|{k,l}, -1 if {k,j}|{i,l}, 0 otherwise.
int flag_quad_sign(std::uint32_t flag_side, int i, int j, int k, int l);

// Whether the ordered flag quadruple admits both separations, judged on the
// colors available in each branch.
bool allowed_flag_quadruple(const TreeShape& t, int v, int i, int j, int k, int l);

// Remove one edge (contract it in the tree picture).
GoodFamily contract_edge(const GoodFamily& fam, int edge);

// Glue two trees at designated white tails. The glued label set keeps whites
// of s1 (minus w1) first, then whites of s2 (minus w2), then blacks of s1,
// then blacks of s2; the connecting edge joins the two glued vertices and is
// part of the resulting family.
struct GraftResult {
    PaintedSet s;
    GoodFamily fam;
    std::vector<int> map1, map2;  // old label -> new label; glued tails -> -1
    TwoPartition middle;          // the connecting edge
};

GraftResult graft(const PaintedSet& s1, const GoodFamily& f1, int w1,
                  const PaintedSet& s2, const GoodFamily& f2, int w2);

// Relabel a family along a permutation of the painted set (old -> new). The
// permutation must preserve colors for the result to be meaningful.
GoodFamily relabel_family(const PaintedSet& s, const GoodFamily& fam,
                          const std::vector<int>& perm);

} // namespace painted
