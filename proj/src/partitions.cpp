#include "painted/partitions.hpp"

#include <bit>

namespace painted {

bool is_stable(const PaintedSet& s, TwoPartition p) {
    std::uint32_t far = p.far;
    std::uint32_t near = s.full_mask() & ~far;
    if (far == 0 || (far & 1u)) return false;
    if (std::popcount(far) < 2 || std::popcount(near) < 2) return false;
    std::uint32_t w = s.white_mask();
    return (far & w) != 0 && (near & w) != 0;
}

std::vector<TwoPartition> stable_partitions(const PaintedSet& s) {
    std::vector<TwoPartition> out;
    std::uint32_t full = s.full_mask();
    // Even masks only: the far part never contains label 0.
    for (std::uint32_t far = 2; far < full; far += 2) {
        TwoPartition p{far};
        if (is_stable(s, p)) out.push_back(p);
    }
    return out;
}

int delta(const PaintedSet& s, TwoPartition a, TwoPartition b) {
    std::uint32_t full = s.full_mask();
    std::uint32_t af = a.far, an = full & ~af;
    std::uint32_t bf = b.far, bn = full & ~bf;
    int nonempty = int((af & bf) != 0) + int((af & bn) != 0) +
                   int((an & bf) != 0) + int((an & bn) != 0);
    return nonempty - 2;
}

int quad_sign(const PaintedSet& s, TwoPartition p, int i, int j, int k, int l) {
    (void)s;
    auto side = [&](int lab) { return (p.far >> lab) & 1u; };
    std::uint32_t si = side(i), sj = side(j), sk = side(k), sl = side(l);
    if (si == sj && sk == sl && si != sk) return 1;
    if (sk == sj && si == sl && sk != si) return -1;
    return 0;
}

} // namespace painted
