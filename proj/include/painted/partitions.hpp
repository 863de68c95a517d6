#pragma once

#include <cstdint>
#include <vector>

#include "painted/painted_set.hpp"

namespace painted {

// Unordered 2-partition of a painted set, stored as the mask of the part NOT
// containing label 0 (the "far" part). This makes the representation canonical
// without a separate normalization pass.
struct TwoPartition {
    std::uint32_t far = 0;

    bool operator==(const TwoPartition&) const = default;
    auto operator<=>(const TwoPartition&) const = default;
};

inline TwoPartition make_partition(const PaintedSet& s, std::uint32_t one_part) {
    std::uint32_t far = (one_part & 1u) ? (s.full_mask() & ~one_part) : one_part;
    return TwoPartition{far};
}

// Stability: both parts have >= 2 elements and each contains a white label.
bool is_stable(const PaintedSet& s, TwoPartition p);

// All stable 2-partitions, ordered by increasing far mask. This order is the
// canonical one used everywhere (tree encodings, relation columns, output).
std::vector<TwoPartition> stable_partitions(const PaintedSet& s);

// Number of nonempty pairwise intersections of parts, minus 2. Values for
// distinct stable partitions are 1 (compatible) or 2 (crossing); equal
// partitions give 0.
int delta(const PaintedSet& s, TwoPartition a, TwoPartition b);

// Whether the ordered quadruple (i,j,k,l) of distinct labels admits both
// separations ij|kl and kj|il as stable partitions of some refinement; this
// reduces to a color condition on the labels.
inline bool allowed_quadruple(const PaintedSet& s, int i, int j, int k, int l) {
    return (s.is_white(j) && s.is_white(l)) || (s.is_white(i) && s.is_white(k));
}

// Orientation of a partition against a quadruple: +1 if p separates {i,j}
// from {k,l}, -1 if it separates {k,j} from {i,l}, 0 otherwise.
int quad_sign(const PaintedSet& s, TwoPartition p, int i, int j, int k, int l);

} // namespace painted
