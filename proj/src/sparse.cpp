#include "fsi/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fsi {

void Triplets::add(int row, int col, double value) {
    if (row < 0 || row >= nrows_ || col < 0 || col >= ncols_)
        throw std::out_of_range("Triplets::add: index (" + std::to_string(row) + "," +
                                std::to_string(col) + ") outside " + std::to_string(nrows_) +
                                "x" + std::to_string(ncols_));
    entries_.push_back({row, col, value});
}

SparseMatrix from_triplets(const Triplets& t) {
    SparseMatrix m;
    m.nrows_ = t.rows();
    m.ncols_ = t.cols();

    // Counting sort by row keeps duplicate accumulation in insertion order,
    // which makes assembly deterministic.
    std::vector<int> count(m.nrows_ + 1, 0);
    for (const Triplet& e : t.entries()) count[e.row + 1]++;
    std::partial_sum(count.begin(), count.end(), count.begin());
    std::vector<Triplet> sorted(t.entries().size());
    {
        std::vector<int> pos(count.begin(), count.end() - 1);
        for (const Triplet& e : t.entries()) sorted[pos[e.row]++] = e;
    }

    m.offsets_.assign(m.nrows_ + 1, 0);
    for (int r = 0; r < m.nrows_; ++r) {
        auto first = sorted.begin() + count[r];
        auto last = sorted.begin() + count[r + 1];
        std::stable_sort(first, last,
                         [](const Triplet& a, const Triplet& b) { return a.col < b.col; });
        const std::size_t row_start = m.cols_.size();
        for (auto it = first; it != last; ++it) {
            if (m.cols_.size() > row_start && m.cols_.back() == it->col)
                m.vals_.back() += it->value;
            else {
                m.cols_.push_back(it->col);
                m.vals_.push_back(it->value);
            }
        }
        m.offsets_[r + 1] = static_cast<int>(m.cols_.size());
    }
    return m;
}

std::vector<double> SparseMatrix::apply(std::span<const double> x) const {
    std::vector<double> y(nrows_, 0.0);
    apply_add(x, y);
    return y;
}

void SparseMatrix::apply_add(std::span<const double> x, std::span<double> y, double scale) const {
    if (static_cast<int>(x.size()) != ncols_ || static_cast<int>(y.size()) != nrows_)
        throw std::invalid_argument("SparseMatrix::apply: dimension mismatch");
    for (int r = 0; r < nrows_; ++r) {
        double s = 0.0;
        for (int k = offsets_[r]; k < offsets_[r + 1]; ++k) s += vals_[k] * x[cols_[k]];
        y[r] += scale * s;
    }
}

double SparseMatrix::quad(std::span<const double> x, std::span<const double> y) const {
    if (static_cast<int>(x.size()) != nrows_ || static_cast<int>(y.size()) != ncols_)
        throw std::invalid_argument("SparseMatrix::quad: dimension mismatch");
    double s = 0.0;
    for (int r = 0; r < nrows_; ++r) {
        double row = 0.0;
        for (int k = offsets_[r]; k < offsets_[r + 1]; ++k) row += vals_[k] * y[cols_[k]];
        s += x[r] * row;
    }
    return s;
}

SparseMatrix SparseMatrix::transposed() const {
    Triplets t(ncols_, nrows_);
    t.reserve(nnz());
    for (int r = 0; r < nrows_; ++r)
        for (int k = offsets_[r]; k < offsets_[r + 1]; ++k) t.add(cols_[k], r, vals_[k]);
    return from_triplets(t);
}

SparseMatrix SparseMatrix::restricted(std::span<const int> row_map, int nrows_out,
                                      std::span<const int> col_map, int ncols_out) const {
    if (static_cast<int>(row_map.size()) != nrows_ || static_cast<int>(col_map.size()) != ncols_)
        throw std::invalid_argument("SparseMatrix::restricted: map size mismatch");
    Triplets t(nrows_out, ncols_out);
    t.reserve(nnz());
    for (int r = 0; r < nrows_; ++r) {
        const int rr = row_map[r];
        if (rr < 0) continue;
        for (int k = offsets_[r]; k < offsets_[r + 1]; ++k) {
            const int cc = col_map[cols_[k]];
            if (cc >= 0) t.add(rr, cc, vals_[k]);
        }
    }
    return from_triplets(t);
}

double SparseMatrix::max_abs() const {
    double m = 0.0;
    for (double v : vals_) m = std::max(m, std::abs(v));
    return m;
}

std::vector<double> spmv(const SparseMatrix& A, std::span<const double> x) {
    return A.apply(x);
}

void accumulate(Triplets& out, const SparseMatrix& A, double scale, int row_offset,
                int col_offset) {
    const auto off = A.row_offsets();
    const auto cols = A.col_indices();
    const auto vals = A.values();
    for (int r = 0; r < A.rows(); ++r)
        for (int k = off[r]; k < off[r + 1]; ++k)
            out.add(r + row_offset, cols[k] + col_offset, scale * vals[k]);
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void axpy(double s, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += s * x[i];
}

}  // namespace fsi
