#include "painted/linalg.hpp"

#include <algorithm>

namespace painted {

SparseRow sparse_normalize(std::map<std::int64_t, Rat> entries) {
    SparseRow out;
    out.reserve(entries.size());
    for (auto& [c, v] : entries)
        if (v != 0) out.emplace_back(c, std::move(v));
    return out;
}

namespace {

// row -= f * other, both sorted by column.
SparseRow axpy(const SparseRow& row, const Rat& f, const SparseRow& other) {
    SparseRow out;
    out.reserve(row.size() + other.size());
    std::size_t i = 0, j = 0;
    while (i < row.size() || j < other.size()) {
        if (j == other.size() || (i < row.size() && row[i].first < other[j].first)) {
            out.push_back(row[i++]);
        } else if (i == row.size() || other[j].first < row[i].first) {
            out.emplace_back(other[j].first, -f * other[j].second);
            ++j;
        } else {
            Rat v = row[i].second - f * other[j].second;
            if (v != 0) out.emplace_back(row[i].first, std::move(v));
            ++i, ++j;
        }
    }
    return out;
}

Rat coeff_at(const SparseRow& row, std::int64_t col) {
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const auto& p, std::int64_t c) { return p.first < c; });
    if (it != row.end() && it->first == col) return it->second;
    return Rat(0);
}

} // namespace

SparseRow RowReducer::reduce(SparseRow row) const {
    // One forward sweep suffices: pivot rows are already fully reduced, so
    // substituting a pivot never reintroduces an earlier pivot column.
    for (std::size_t i = 0; i < row.size(); ++i) {
        auto it = pivots_.find(row[i].first);
        if (it == pivots_.end()) continue;
        Rat f = row[i].second;
        row = axpy(row, f, it->second);
        // The pivot column vanished; restart scan from its position.
        i = std::size_t(-1);
    }
    return row;
}

bool RowReducer::add_row(SparseRow row) {
    row = reduce(std::move(row));
    if (row.empty()) return false;
    std::int64_t pc = row.front().first;
    Rat inv = 1 / row.front().second;
    for (auto& [c, v] : row) v *= inv;
    if (keep_reduced_) {
        // Keep the basis fully reduced: clear the new pivot column everywhere.
        for (auto& [c, prow] : pivots_) {
            Rat f = coeff_at(prow, pc);
            if (f != 0) prow = axpy(prow, f, row);
        }
    }
    pivots_.emplace(pc, std::move(row));
    return true;
}

std::optional<DenseSolution> solve_dense(const Mat& a, const std::vector<Rat>& y) {
    const std::size_t m = a.rows(), n = a.cols();
    Mat w(m, n + 1);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) w(i, j) = a(i, j);
        w(i, n) = y[i];
    }
    std::vector<std::int64_t> pivot_of_row;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t sel = r;
        while (sel < m && w(sel, c) == 0) ++sel;
        if (sel == m) continue;
        for (std::size_t j = 0; j <= n; ++j) std::swap(w(r, j), w(sel, j));
        Rat inv = 1 / w(r, c);
        for (std::size_t j = c; j <= n; ++j) w(r, j) *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || w(i, c) == 0) continue;
            Rat f = w(i, c);
            for (std::size_t j = c; j <= n; ++j) w(i, j) -= f * w(r, j);
        }
        pivot_of_row.push_back(std::int64_t(c));
        ++r;
    }
    for (std::size_t i = r; i < m; ++i)
        if (w(i, n) != 0) return std::nullopt;

    DenseSolution sol;
    sol.particular.assign(n, Rat(0));
    std::vector<bool> is_piv(n, false);
    for (std::size_t i = 0; i < pivot_of_row.size(); ++i) {
        is_piv[std::size_t(pivot_of_row[i])] = true;
        sol.particular[std::size_t(pivot_of_row[i])] = w(i, n);
    }
    for (std::size_t c = 0; c < n; ++c) {
        if (is_piv[c]) continue;
        std::vector<Rat> v(n, Rat(0));
        v[c] = 1;
        for (std::size_t i = 0; i < pivot_of_row.size(); ++i)
            v[std::size_t(pivot_of_row[i])] = -w(i, c);
        sol.nullspace.push_back(std::move(v));
    }
    return sol;
}

} // namespace painted
