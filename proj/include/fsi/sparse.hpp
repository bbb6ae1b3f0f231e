#pragma once

#include <span>
#include <vector>

namespace fsi {

struct Triplet {
    int row, col;
    double value;
};

/// Assembly buffer: duplicate (row, col) entries are summed on conversion.
class Triplets {
public:
    Triplets(int nrows, int ncols) : nrows_(nrows), ncols_(ncols) {}

    void add(int row, int col, double value);
    void reserve(std::size_t n) { entries_.reserve(n); }

    int rows() const { return nrows_; }
    int cols() const { return ncols_; }
    std::span<const Triplet> entries() const { return entries_; }

private:
    int nrows_, ncols_;
    std::vector<Triplet> entries_;
};

/// Compressed-row sparse matrix with column indices strictly increasing
/// within each row.
class SparseMatrix {
public:
    SparseMatrix() = default;

    int rows() const { return nrows_; }
    int cols() const { return ncols_; }
    std::size_t nnz() const { return vals_.size(); }

    std::span<const int> row_offsets() const { return offsets_; }
    std::span<const int> col_indices() const { return cols_; }
    std::span<const double> values() const { return vals_; }

    /// y = A x
    std::vector<double> apply(std::span<const double> x) const;
    /// y += scale * A x
    void apply_add(std::span<const double> x, std::span<double> y, double scale = 1.0) const;
    /// x^T A y
    double quad(std::span<const double> x, std::span<const double> y) const;

    SparseMatrix transposed() const;

    /// Submatrix through index maps (full index -> reduced index, -1 drops).
    SparseMatrix restricted(std::span<const int> row_map, int nrows_out,
                            std::span<const int> col_map, int ncols_out) const;

    double max_abs() const;

    friend SparseMatrix from_triplets(const Triplets& t);

private:
    int nrows_ = 0, ncols_ = 0;
    std::vector<int> offsets_{0};
    std::vector<int> cols_;
    std::vector<double> vals_;
};

SparseMatrix from_triplets(const Triplets& t);

std::vector<double> spmv(const SparseMatrix& A, std::span<const double> x);

/// out += scale * A, written at the given block offsets.
void accumulate(Triplets& out, const SparseMatrix& A, double scale,
                int row_offset = 0, int col_offset = 0);

// small vector helpers shared across modules
double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
void axpy(double s, std::span<const double> x, std::span<double> y);  // y += s x

}  // namespace fsi
