#include "painted/homology.hpp"

#include <stdexcept>

#include "painted/parallel.hpp"

namespace painted {

namespace {

Rat dot(const Coords& a, const HCoords& b) {
    Rat out(0);
    for (const auto& [fam, c] : a) {
        auto it = b.find(fam);
        if (it != b.end()) out += c * it->second;
    }
    return out;
}

} // namespace

HCoords Module::cap(int deg_x, const Coords& x, int deg_h, const HCoords& h) const {
    int dr = deg_h - deg_x;
    if (dr < 0) return {};
    const auto& target = ring_.basis(dr);
    HCoords out;
    for (const GoodFamily& beta : target) {
        Coords prod = ring_.multiply(deg_x, x, dr, Coords{{beta, Rat(1)}});
        Rat c = dot(prod, h);
        if (c != 0) out[beta] = c;
    }
    return out;
}

HCoords Module::act(TwoPartition sigma, int deg_h, const HCoords& h) const {
    return cap(1, Coords{{GoodFamily{sigma.far}, Rat(1)}}, deg_h, h);
}

HCoords Module::fundamental() const {
    int top = ring_.top_degree();
    if (ring_.dimension(top) != 1)
        throw std::logic_error("top degree is not one-dimensional");
    const GoodFamily& beta = ring_.basis(top).front();
    return HCoords{{beta, ring_.integrate(Coords{{beta, Rat(1)}})}};
}

HCoords Module::t_map(int deg_x, const Coords& x) const {
    return cap(deg_x, x, ring_.top_degree(), fundamental());
}

Coords Module::t_inverse(int deg_h, const HCoords& h) const {
    int dx = ring_.top_degree() - deg_h;
    const auto& src = ring_.basis(dx);
    const auto& dst = ring_.basis(deg_h);
    if (src.size() != dst.size())
        throw std::logic_error("pairing between degrees of different dimension");
    Mat p = pairing_matrix(dx);  // p(i,j) = integrate(src_i * dst_j)
    // Solve sum_i x_i p(i,j) = h_j.
    Mat pt(p.cols(), p.rows());
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j) pt(j, i) = p(i, j);
    std::vector<Rat> rhs(dst.size());
    for (std::size_t j = 0; j < dst.size(); ++j) {
        auto it = h.find(dst[j]);
        rhs[j] = it == h.end() ? Rat(0) : it->second;
    }
    auto sol = solve_dense(pt, rhs);
    if (!sol) throw std::logic_error("duality solve inconsistent");
    if (!sol->nullspace.empty()) throw std::logic_error("pairing is degenerate");
    Coords out;
    for (std::size_t i = 0; i < src.size(); ++i)
        if (sol->particular[i] != 0) out[src[i]] = sol->particular[i];
    return out;
}

Rat Module::pair(int degree, const Coords& x, const HCoords& h) const {
    return dot(ring_.normal_form(degree, x), h);
}

Mat Module::pairing_matrix(int degree) const {
    ring_.warm();
    int other = ring_.top_degree() - degree;
    const auto& rows = ring_.basis(degree);
    const auto& cols = ring_.basis(other);
    Mat p(rows.size(), cols.size());
    sweep(rows.size(), [&](std::size_t i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            Coords prod = ring_.multiply(degree, Coords{{rows[i], Rat(1)}}, other,
                                         Coords{{cols[j], Rat(1)}});
            p(i, j) = ring_.integrate(prod);
        }
    });
    return p;
}

bool Module::pairing_nondegenerate(int degree) const {
    Mat p = pairing_matrix(degree);
    if (p.rows() != p.cols()) return false;
    RowReducer red(false);
    for (std::size_t i = 0; i < p.rows(); ++i) {
        std::map<std::int64_t, Rat> row;
        for (std::size_t j = 0; j < p.cols(); ++j)
            if (p(i, j) != 0) row[std::int64_t(j)] = p(i, j);
        red.add_row(sparse_normalize(std::move(row)));
    }
    return red.rank() == p.rows();
}

std::vector<Module::CoproductPart> Module::coproduct(int deg_h, const HCoords& h) const {
    ring_.warm();
    std::vector<CoproductPart> parts;
    for (int d1 = 0; d1 <= deg_h; ++d1) {
        int d2 = deg_h - d1;
        const auto& b1 = ring_.basis(d1);
        const auto& b2 = ring_.basis(d2);
        CoproductPart part;
        part.d1 = d1;
        part.d2 = d2;
        part.coeff = Mat(b1.size(), b2.size());
        sweep(b1.size(), [&](std::size_t i) {
            for (std::size_t j = 0; j < b2.size(); ++j) {
                Coords prod = ring_.multiply(d1, Coords{{b1[i], Rat(1)}}, d2,
                                             Coords{{b2[j], Rat(1)}});
                part.coeff(i, j) = dot(prod, h);
            }
        });
        parts.push_back(std::move(part));
    }
    return parts;
}

} // namespace painted
