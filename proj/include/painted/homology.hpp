#pragma once

#include "painted/cohomology.hpp"
#include "painted/matrix.hpp"

namespace painted {

// Homology coordinates: coefficients on the basis trees of one degree. The
// coordinate map s identifies these degreewise with ring classes; everything
// else (cap products, duality, the coproduct) is computed against the ring.
using HCoords = std::map<GoodFamily, Rat>;

class Module {
public:
    explicit Module(const Ring& ring) : ring_(ring) {}

    const Ring& ring() const { return ring_; }

    // Cap product with a ring class of degree deg_x; lowers degree by deg_x.
    HCoords cap(int deg_x, const Coords& x, int deg_h, const HCoords& h) const;

    // Cap with a single generator.
    HCoords act(TwoPartition sigma, int deg_h, const HCoords& h) const;

    // Fundamental class, in top degree; capping with it is the duality map.
    HCoords fundamental() const;

    // t(x) = x cap fundamental, landing in degree top - deg_x. The inverse
    // solves against the pairing matrix and requires nondegeneracy.
    HCoords t_map(int deg_x, const Coords& x) const;
    Coords t_inverse(int deg_h, const HCoords& h) const;

    // Evaluation of a ring class against homology of the same degree: dot of
    // normal-form coordinates.
    Rat pair(int degree, const Coords& x, const HCoords& h) const;

    // P[i][j] = integrate(basis_d[i] * basis_{top-d}[j]).
    Mat pairing_matrix(int degree) const;
    bool pairing_nondegenerate(int degree) const;

    // Coproduct of a homology class: for each d1 + d2 = deg_h the matrix of
    // coefficients on basis_{d1} x basis_{d2}, i.e. the evaluation of basis
    // products against h.
    struct CoproductPart {
        int d1 = 0, d2 = 0;
        Mat coeff;
    };
    std::vector<CoproductPart> coproduct(int deg_h, const HCoords& h) const;

private:
    const Ring& ring_;
};

} // namespace painted
