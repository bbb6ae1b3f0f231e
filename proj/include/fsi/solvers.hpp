#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "fsi/sparse.hpp"

namespace fsi {

/// Raised when a factorization breaks down or the residual contract fails.
class SolveError : public std::runtime_error {
public:
    SolveError(const std::string& what, double achieved_residual)
        : std::runtime_error(what), achieved_residual(achieved_residual) {}
    double achieved_residual;
};

/// Sparse Cholesky (LDL^T) factorization of a symmetric positive definite
/// matrix, reusable across right-hand sides.
class SpdFactor {
public:
    explicit SpdFactor(const SparseMatrix& A);
    ~SpdFactor();
    SpdFactor(SpdFactor&&) noexcept;
    SpdFactor& operator=(SpdFactor&&) noexcept;

    std::vector<double> solve(std::span<const double> b) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Sparse LU factorization with pivoting, for general nonsingular systems.
class LuFactor {
public:
    explicit LuFactor(const SparseMatrix& A);
    ~LuFactor();
    LuFactor(LuFactor&&) noexcept;
    LuFactor& operator=(LuFactor&&) noexcept;

    std::vector<double> solve(std::span<const double> b) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Direct solve of an SPD system with a relative-residual guarantee
/// ||Ax-b|| <= tol*||b||; throws SolveError with the achieved residual
/// otherwise.
std::vector<double> solve_spd(const SparseMatrix& A, std::span<const double> b,
                              double tol = 1e-12);

/// Direct solve of a general nonsingular system, same residual contract.
std::vector<double> solve_general(const SparseMatrix& A, std::span<const double> b,
                                  double tol = 1e-12);

}  // namespace fsi
