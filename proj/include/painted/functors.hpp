#pragma once

#include <array>
#include <memory>

#include "painted/cohomology.hpp"

namespace painted {

// Contracting an edge splits the painted set into two ground sets, each
// gaining a fresh white node point as its last white label.
struct EdgeGrounds {
    PaintedSet g1, g2;            // near side (contains w1), far side
    std::vector<int> to_g1, to_g2;  // original label -> ground label or -1
    int e1 = -1, e2 = -1;           // node labels (last white of each ground)
};

EdgeGrounds edge_grounds(const PaintedSet& s, TwoPartition sigma);

// A class on the product of the two grounds: coefficients on pairs of tree
// monomials, one per factor. Bidegrees are carried by the family sizes.
using Tensor2 = std::map<std::pair<GoodFamily, GoodFamily>, Rat>;

// Label quadruple (i, j on the near part; k, l on the far part) orienting the
// self-pullback of the contracted edge.
struct QuadLabels {
    int i = -1, j = -1, k = -1, l = -1;
};

// Restriction to and pushforward from the stratum of one edge.
class EdgeFunctor {
public:
    EdgeFunctor(const Ring& ambient, TwoPartition sigma);

    const EdgeGrounds& grounds() const { return eg_; }
    const Ring& ring1() const { return *r1_; }
    const Ring& ring2() const { return *r2_; }
    TwoPartition edge() const { return sigma_; }

    // Pullback of one generator: zero on crossing partitions, the induced
    // one-factor generator on compatible ones, and for the edge itself the
    // signed node sums oriented by a label quadruple (default: the
    // lexicographically least allowed one).
    Tensor2 pull_generator(TwoPartition rho,
                           const std::optional<QuadLabels>& quad = std::nullopt) const;

    // Multiplicative extension to a homogeneous class; factors are returned
    // in normal form.
    Tensor2 pull(int degree, const Coords& x) const;

    // Product of two tensor classes, factorwise.
    Tensor2 tensor_multiply(const Tensor2& a, const Tensor2& b) const;

    // Pushforward: glue the factors at the node points. Raises degree by one
    // (the middle edge). Result is expressed on the ambient set, unreduced.
    Coords push(const Tensor2& t) const;

private:
    const Ring& ambient_;
    TwoPartition sigma_;
    EdgeGrounds eg_;
    std::unique_ptr<Ring> r1_, r2_;
    std::vector<int> graft_to_ambient_;  // label permutation for push()
};

// Pullback along a two-edge stratum. Factors are indexed by the vertices of
// the tree of the family (vertex 0 first) and written on the authoritative
// vertex grounds: white tails ascending, then node points by edge index, then
// black tails. first_edge picks which edge is contracted first; the result
// must not depend on it.
struct StratumPull {
    std::array<PaintedSet, 3> grounds;
    std::map<std::array<GoodFamily, 3>, Rat> terms;
};

StratumPull pull_pair(const Ring& ambient, const GoodFamily& two_edges,
                      int degree, const Coords& x, int first_edge);

} // namespace painted
