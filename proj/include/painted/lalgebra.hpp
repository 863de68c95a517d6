#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "painted/functors.hpp"
#include "painted/matrix.hpp"
#include "painted/trees.hpp"

namespace painted {

// Sorted multiset of correlator index ids.
using IndexKey = std::vector<int>;

// All sorted multisets of the given size over ids 0..num_ids-1, in
// lexicographic order.
std::vector<IndexKey> multisets(int num_ids, int size);

// An oriented algebra presented by its matrix correlators. Ids 0..dim_t-1
// name the parameter directions ("t1".."tm", black), ids dim_t.. name the
// argument directions ("f1".."fn", white). A correlator assigns to a multiset
// of ids an endomorphism of the argument space; missing multisets are zero,
// and `order` caps the multiset size the structure speaks about.
struct LAlgebra {
    int dim_t = 0;
    int dim_f = 0;
    int order = 0;
    std::map<IndexKey, Mat> corr;

    int index_count() const { return dim_t + dim_f; }
    bool index_is_f(int id) const { return id >= dim_t; }
    std::string index_name(int id) const;
    int parse_index(const std::string& name) const;

    // Lookup under sorting; absent keys give the zero matrix.
    Mat correlator(IndexKey key) const;

    // Insert under sorting. Throws on out-of-range ids, sizes outside
    // 1..order, or a matrix that is not dim_f x dim_f; zero matrices erase.
    void set_correlator(IndexKey key, Mat value);
};

// One failed check found by verify() or verify_exchange().
struct LalgIssue {
    enum class Kind {
        Shape,           // malformed stored entry
        QuadrupleSum,    // in-multiset partition identity
        SlotCommutator,  // two extra slots inserted across all splits
        SlotExchange,    // applied slot vs key slot swap
    };
    Kind kind = Kind::Shape;
    IndexKey indices;                          // multiset involved
    std::array<int, 4> quad{-1, -1, -1, -1};   // positions, or {id_i, id_j, -1, -1}
    std::string detail;
};

// Structural checks plus two identity families, both required of a valid
// structure:
//
//   QuadrupleSum: for every multiset of size 4..order and every ordered
//   position quadruple (i,j,k,l) whose colors admit both separations, the sum
//   over ordered 2-partitions putting {i,j} opposite {k,l} of the two part
//   correlators' product, minus the same sum with i and k exchanged, is zero.
//
//   SlotCommutator: for every multiset A with |A| <= order-2 and every id
//   pair i < j, the sum over ordered splits A = R + Q of
//   <R,i><Q,j> - <R,j><Q,i> is zero. This is the coefficientwise commutator
//   of the associated derivative fields; the quadruple family alone cannot
//   see failures confined to correlators of size < 4.
//
// The returned list is empty exactly when the structure is valid to its
// stated order. Instances are swept in parallel; the report order is fixed.
std::vector<LalgIssue> verify(const LAlgebra& alg);

// Optional extra symmetry across the applied slot: for every multiset A with
// |A| < order and every argument id pair a < b, <A,a> applied to e_b equals
// <A,b> applied to e_a. verify() does not demand this; it is precisely what
// makes evaluate_tree_correlator independent of which input a vertex factors
// through, so structures that pass it can be evaluated under any cutting
// scheme with the same result. Commuting matrix families generally fail it.
std::vector<LalgIssue> verify_exchange(const LAlgebra& alg);

// Correlator of a rooted tree, evaluated by factorization: cut an end edge,
// apply that vertex's matrix correlator, feed the output into the rest.
// white_inputs[label] is a dim_f column per white label (entry 0 is the root
// slot and is ignored); black_inputs[j] is a dim_t column for black label
// whites+j. Throws when a vertex carries more than `order` inputs or has no
// white input to factor through (a tree whose only white is the root).
Mat evaluate_tree_correlator(const LAlgebra& alg, const TreeShape& tree,
                             const std::vector<Mat>& white_inputs,
                             const std::vector<Mat>& black_inputs);

// One failed tree-level relation instance.
struct TreeRelationIssue {
    GoodFamily fam;
    int vertex = -1;
    std::array<int, 4> quad{-1, -1, -1, -1};  // flag positions at the vertex
};

// For every tree over s with at most edge_cap edges, every vertex, and every
// allowed ordered flag quadruple there, the signed sum over vertex splits of
// the split trees' correlators must vanish; checked on every assignment of
// basis vectors to the tails. Requires alg.order >= |s| - 3 so that every
// split vertex fits in the stored correlator range. Different splits route
// the evaluation through different applied slots, so an empty report is
// expected of structures passing both verify() and verify_exchange() (and of
// one-dimensional ones, where the slots cannot disagree); verify() alone does
// not bound these sums.
std::vector<TreeRelationIssue> verify_linear_relations(const LAlgebra& alg,
                                                       const PaintedSet& s,
                                                       int edge_cap);

// Tensor structure on paired parameter and argument spaces. Pair ids are laid
// out blockwise ((x,y) -> x*dim2+y within each color), matching the Kronecker
// index convention; the correlator of a pair multiset is the Kronecker
// product of the factor correlators of its two projections. Orders must
// agree.
LAlgebra tensor(const LAlgebra& a, const LAlgebra& b);

// Deterministic seeded instances. The valid generator conjugates random
// diagonal matrices by one random basis change, so all its correlator
// matrices commute and both identity families hold exactly; size scalars keep
// different multiset sizes independent.
LAlgebra random_valid_lalgebra(std::uint64_t seed, int dim_t, int dim_f, int order);

// Seeded instances that also pass verify_exchange: every id acts as a
// multiplication operator on the truncated polynomial line Q[u]/(u^dim_f),
// argument id a as multiplication by u^a and parameter ids by seeded
// polynomials, again with size scalars per multiset size.
LAlgebra random_exchange_lalgebra(std::uint64_t seed, int dim_t, int dim_f, int order);

// Two argument directions whose insertion fields do not commute; the minimal
// fixture for every failure-path test. verify() reports a SlotCommutator
// issue on it.
LAlgebra noncommuting_pair_example();

// Cyclic structure: a symmetric invertible product on the argument space
// together with its inverse.
struct CyclicData {
    int dim_t = 0;
    int dim_f = 0;
    Mat product;
    Mat casimir;
};

// A polylinear class-valued map on one painted set: one class per assignment
// of basis ids to the tails, whites first ascending then blacks, row-major
// (the last slot varies fastest). Classes may mix degrees.
struct CorrelatorMap {
    PaintedSet s;
    std::vector<Coords> values;
};

std::size_t correlator_map_size(const CyclicData& c, const PaintedSet& s);

// Check the gluing squares of a cyclic family: for every supplied set and
// every stable partition of it, the edge pullback of the class equals the
// casimir-weighted sum over node-slot insertions into the two ground maps.
// Also checks equivariance under color-preserving relabelings. Maps must be
// present for every ground shape a partition produces; a missing shape
// throws. Returns human-readable descriptions of every failure.
std::vector<std::string> verify_cyclic(const CyclicData& c,
                                       const std::vector<CorrelatorMap>& maps);

} // namespace painted
