#ifndef WG_LINALG_HPP
#define WG_LINALG_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "field.hpp"

namespace wg {

// Dense row-major matrix of canonical encodings.
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<elem> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    elem& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    elem at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
    elem* row(std::size_t r) { return &a[r * cols]; }
    const elem* row(std::size_t r) const { return &a[r * cols]; }

    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

// dst -= c * src (works as += up to sign handled by caller passing negated c).
inline void row_submul(const FieldTower& F, elem c, const elem* src, elem* dst, std::size_t n) {
    if (c == 0) return;
    const elem* m = F.mul_row(F.neg(c));
    for (std::size_t i = 0; i < n; ++i) dst[i] = F.add(dst[i], m[src[i]]);
}

inline void row_scale(const FieldTower& F, elem c, elem* dst, std::size_t n) {
    const elem* m = F.mul_row(c);
    for (std::size_t i = 0; i < n; ++i) dst[i] = m[dst[i]];
}

// In-place reduced row echelon form (leftmost-pivot convention); zero rows
// removed. Returns pivot columns, one per surviving row, strictly increasing.
inline std::vector<std::size_t> rref(const FieldTower& F, Mat& M) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < M.cols && r < M.rows; ++c) {
        std::size_t sel = r;
        while (sel < M.rows && M.at(sel, c) == 0) ++sel;
        if (sel == M.rows) continue;
        if (sel != r)
            for (std::size_t j = c; j < M.cols; ++j) std::swap(M.at(r, j), M.at(sel, j));
        elem piv = M.at(r, c);
        if (piv != 1) row_scale(F, F.inv(piv), M.row(r), M.cols);
        for (std::size_t i = 0; i < M.rows; ++i) {
            if (i == r) continue;
            elem v = M.at(i, c);
            if (v != 0) row_submul(F, v, M.row(r), M.row(i), M.cols);
        }
        pivots.push_back(c);
        ++r;
    }
    M.rows = r;
    M.a.resize(r * M.cols);
    return pivots;
}

// Nullspace basis (as rows) of a matrix already in RREF with given pivots.
// Rows are indexed by the free columns; the result is independent but not
// itself RREF under the leftmost-pivot convention.
inline Mat nullspace_from_rref(const FieldTower& F, const Mat& R, const std::vector<std::size_t>& pivots) {
    std::vector<bool> is_pivot(R.cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < R.cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Mat N(free_cols.size(), R.cols);
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        std::size_t f = free_cols[k];
        N.at(k, f) = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) N.at(k, pivots[i]) = F.neg(R.at(i, f));
    }
    return N;
}

inline Mat nullspace(const FieldTower& F, Mat M) {
    auto pivots = rref(F, M);
    return nullspace_from_rref(F, M, pivots);
}

// Incremental RREF accumulator: rows kept fully reduced and pivot-sorted, so
// the final matrix is the canonical RREF of everything inserted.
class RrefBuilder {
public:
    RrefBuilder(const FieldTower& F, std::size_t cols) : F_(&F), cols_(cols) {}

    // Returns true if the row increased the rank.
    bool insert(std::vector<elem> row) {
        if (row.size() != cols_) throw std::invalid_argument("RrefBuilder::insert: width mismatch");
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            elem v = row[pivots_[i]];
            if (v != 0) row_submul(*F_, v, rows_[i].data(), row.data(), cols_);
        }
        std::size_t p = 0;
        while (p < cols_ && row[p] == 0) ++p;
        if (p == cols_) return false;
        if (row[p] != 1) row_scale(*F_, F_->inv(row[p]), row.data(), cols_);
        // clear the new pivot column from existing rows
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            elem v = rows_[i][p];
            if (v != 0) row_submul(*F_, v, row.data(), rows_[i].data(), cols_);
        }
        std::size_t pos = 0;
        while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
        pivots_.insert(pivots_.begin() + pos, p);
        rows_.insert(rows_.begin() + pos, std::move(row));
        return true;
    }

    std::size_t rank() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }

    Mat take() {
        Mat M(rows_.size(), cols_);
        for (std::size_t i = 0; i < rows_.size(); ++i)
            for (std::size_t j = 0; j < cols_; ++j) M.at(i, j) = rows_[i][j];
        return M;
    }
    std::vector<std::size_t> pivots() const { return pivots_; }

private:
    const FieldTower* F_;
    std::size_t cols_;
    std::vector<std::vector<elem>> rows_;
    std::vector<std::size_t> pivots_;
};

} // namespace wg

#endif
