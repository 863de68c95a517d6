#pragma once

#include <map>
#include <optional>
#include <vector>

#include "painted/linalg.hpp"
#include "painted/rational.hpp"
#include "painted/trees.hpp"

namespace painted {

// A homogeneous class, written in the monomial classes of trees of one fixed
// degree. Keys absent from the map are zero coefficients.
using Coords = std::map<GoodFamily, Rat>;

void add_scaled(Coords& acc, const Coords& x, const Rat& factor);

// Flag quadruple (positions into TreeShape::flags[v]) used to orient a
// relation or to resolve a product along an existing edge.
struct Quad {
    int i = -1, j = -1, k = -1, l = -1;
};

// The graded ring attached to a painted set: monomial classes of trees modulo
// the standard relations. Degree data is built lazily and cached; all
// requests for one degree share relation matrices.
class Ring {
public:
    explicit Ring(const PaintedSet& s);

    const PaintedSet& set() const { return s_; }
    int top_degree() const { return max_edges(s_); }

    const std::vector<GoodFamily>& trees(int degree) const;
    int tree_index(int degree, const GoodFamily& fam) const;  // -1 if absent

    // Basis of the quotient in one degree: trees whose columns are not pivots
    // of the relation matrix, in canonical tree order.
    const std::vector<GoodFamily>& basis(int degree) const;
    int dimension(int degree) const { return int(basis(degree).size()); }
    std::vector<int> betti() const;

    // Relation attached to (tree, vertex, oriented flag quadruple): the signed
    // sum over vertex splits, a class one degree up. Throws if the quadruple
    // is not allowed at that vertex.
    Coords standard_relation(const GoodFamily& fam, int v, Quad q) const;

    // Remainder after eliminating pivot trees; the result is supported on
    // basis trees only.
    Coords normal_form(int degree, const Coords& x) const;

    // Product of the degree-1 generator of sigma with the monomial class of
    // fam, unreduced. When the partition matches an existing edge the product
    // needs an oriented flag quadruple around that edge; quad picks it
    // explicitly (positions at the two endpoints), otherwise the
    // lexicographically least allowed one is used. Throws if an explicit
    // quadruple is unusable.
    Coords multiply_generator(TwoPartition sigma, const GoodFamily& fam,
                              const std::optional<Quad>& quad = std::nullopt) const;

    // Product of two classes, returned in normal form at degree a+b.
    Coords multiply(int deg_a, const Coords& a, int deg_b, const Coords& b) const;

    // Top-degree integral. The top degree must be one-dimensional and every
    // maximal tree monomial must reduce to the same nonzero multiple of the
    // basis tree; integration normalizes maximal tree monomials to 1.
    Rat integrate(const Coords& top) const;

    // Check the normalization convention behind integrate() explicitly.
    bool verify_top_normalization() const;

    // Build every degree's relation data plus the integration normalizer.
    // Lazily built state is not guarded by locks, so call this before using
    // one ring from several threads at once.
    void warm() const;

private:
    struct DegreeData {
        bool built = false;
        std::vector<GoodFamily> trees;
        std::map<GoodFamily, int> index;
        RowReducer reducer;
        std::vector<GoodFamily> basis;
        std::vector<std::size_t> basis_pos;  // tree index of each basis element
    };

    const DegreeData& ensure(int degree) const;
    Rat top_scale() const;  // common multiple for maximal monomials

    PaintedSet s_;
    mutable std::vector<DegreeData> deg_;
    mutable std::optional<Rat> top_scale_;
};

} // namespace painted
