#include "fsi/solvers.hpp"
#include <cstdio>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

namespace fsi {

namespace {

Eigen::SparseMatrix<double> to_eigen(const SparseMatrix& A) {
    std::vector<Eigen::Triplet<double>> ts;
    ts.reserve(A.nnz());
    const auto off = A.row_offsets();
    const auto cols = A.col_indices();
    const auto vals = A.values();
    for (int r = 0; r < A.rows(); ++r)
        for (int k = off[r]; k < off[r + 1]; ++k) ts.emplace_back(r, cols[k], vals[k]);
    Eigen::SparseMatrix<double> m(A.rows(), A.cols());
    m.setFromTriplets(ts.begin(), ts.end());
    m.makeCompressed();
    return m;
}

std::vector<double> check_residual(const SparseMatrix& A, std::span<const double> b,
                                   std::vector<double> x, double tol, const char* who) {
    std::vector<double> r = A.apply(x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    const double rn = norm2(r);
    const double bn = norm2(b);
    const double rel = bn > 0.0 ? rn / bn : rn;
    if (!(rel <= tol)) {
        char msg[160];
        std::snprintf(msg, sizeof msg, "%s: residual %.3e exceeds tolerance %.3e", who, rel, tol);
        throw SolveError(msg, rel);
    }
    return x;
}

}  // namespace

struct SpdFactor::Impl {
    Eigen::SparseMatrix<double> A;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
};

SpdFactor::SpdFactor(const SparseMatrix& A) : impl_(std::make_unique<Impl>()) {
    if (A.rows() != A.cols())
        throw std::invalid_argument("SpdFactor: matrix must be square");
    impl_->A = to_eigen(A);
    impl_->ldlt.compute(impl_->A);
    if (impl_->ldlt.info() != Eigen::Success)
        throw SolveError("SpdFactor: Cholesky factorization failed (matrix not SPD?)", -1.0);
}

SpdFactor::~SpdFactor() = default;
SpdFactor::SpdFactor(SpdFactor&&) noexcept = default;
SpdFactor& SpdFactor::operator=(SpdFactor&&) noexcept = default;

std::vector<double> SpdFactor::solve(std::span<const double> b) const {
    Eigen::Map<const Eigen::VectorXd> bv(b.data(), static_cast<Eigen::Index>(b.size()));
    Eigen::VectorXd x = impl_->ldlt.solve(bv);
    return {x.data(), x.data() + x.size()};
}

struct LuFactor::Impl {
    Eigen::SparseMatrix<double> A;
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
};

LuFactor::LuFactor(const SparseMatrix& A) : impl_(std::make_unique<Impl>()) {
    if (A.rows() != A.cols())
        throw std::invalid_argument("LuFactor: matrix must be square");
    impl_->A = to_eigen(A);
    impl_->lu.analyzePattern(impl_->A);
    impl_->lu.factorize(impl_->A);
    if (impl_->lu.info() != Eigen::Success)
        throw SolveError("LuFactor: factorization failed (singular matrix?)", -1.0);
}

LuFactor::~LuFactor() = default;
LuFactor::LuFactor(LuFactor&&) noexcept = default;
LuFactor& LuFactor::operator=(LuFactor&&) noexcept = default;

std::vector<double> LuFactor::solve(std::span<const double> b) const {
    Eigen::Map<const Eigen::VectorXd> bv(b.data(), static_cast<Eigen::Index>(b.size()));
    Eigen::VectorXd x = impl_->lu.solve(bv);
    return {x.data(), x.data() + x.size()};
}

std::vector<double> solve_spd(const SparseMatrix& A, std::span<const double> b, double tol) {
    SpdFactor f(A);
    return check_residual(A, b, f.solve(b), tol, "solve_spd");
}

std::vector<double> solve_general(const SparseMatrix& A, std::span<const double> b, double tol) {
    LuFactor f(A);
    return check_residual(A, b, f.solve(b), tol, "solve_general");
}

}  // namespace fsi
