#pragma once

#include "painted/matrix.hpp"
#include "painted/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace painted {

// Sparse rational row: (column, value) pairs sorted by column, values nonzero.
using SparseRow = std::vector<std::pair<std::int64_t, Rat>>;

SparseRow sparse_normalize(std::map<std::int64_t, Rat> entries);

// Incremental reduced row echelon form over Q with the canonical pivot rule:
// each incoming row is reduced against the current pivots and, if nonzero,
// pivots on its leftmost remaining column. Feeding rows in any order yields
// the same final RREF for the same row span; pivot columns are the
// lexicographically earliest independent set, which is what the canonical
// basis selection downstream relies on.
class RowReducer {
public:
    // keep_reduced=false keeps only an echelon basis (no back-substitution);
    // enough for rank counting and much cheaper on bulk input.
    explicit RowReducer(bool keep_reduced = true) : keep_reduced_(keep_reduced) {}

    // Returns true when the row increased the rank.
    bool add_row(SparseRow row);

    // Residual of `row` after eliminating all pivot columns. The result is
    // supported on non-pivot columns only.
    SparseRow reduce(SparseRow row) const;

    std::size_t rank() const { return pivots_.size(); }
    const std::map<std::int64_t, SparseRow>& pivot_rows() const { return pivots_; }
    bool is_pivot(std::int64_t col) const { return pivots_.count(col) != 0; }

private:
    bool keep_reduced_;
    std::map<std::int64_t, SparseRow> pivots_;
};

// Dense exact solve of A x = y. Returns nullopt when inconsistent; otherwise
// a particular solution (free variables set to 0) plus a nullspace basis.
struct DenseSolution {
    std::vector<Rat> particular;
    std::vector<std::vector<Rat>> nullspace;
};
std::optional<DenseSolution> solve_dense(const Mat& a, const std::vector<Rat>& y);

} // namespace painted
