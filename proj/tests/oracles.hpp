// Independent reference implementations used as test oracles. Everything
// here is deliberately written via a different route than the library code
// it checks: dense storage, pivoted Gaussian elimination, and quadrature
// over basis functions obtained by solving the Vandermonde system.
#pragma once

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "fsi/mesh.hpp"
#include "fsi/sparse.hpp"

namespace oracles {

using Dense = std::vector<std::vector<double>>;

inline Dense zeros(int n, int m) { return Dense(n, std::vector<double>(m, 0.0)); }

inline Dense to_dense(const fsi::SparseMatrix& a) {
    Dense d = zeros(a.rows(), a.cols());
    const auto off = a.row_offsets();
    const auto cols = a.col_indices();
    const auto vals = a.values();
    for (int r = 0; r < a.rows(); ++r)
        for (int k = off[r]; k < off[r + 1]; ++k) d[r][cols[k]] += vals[k];
    return d;
}

inline std::vector<double> dense_matvec(const Dense& a, const std::vector<double>& x) {
    std::vector<double> y(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
    return y;
}

/// Gaussian elimination with partial pivoting.
inline std::vector<double> dense_solve(Dense a, std::vector<double> b) {
    const int n = static_cast<int>(a.size());
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
        if (a[piv][k] == 0.0) throw std::runtime_error("dense_solve: singular");
        std::swap(a[k], a[piv]);
        std::swap(b[k], b[piv]);
        for (int i = k + 1; i < n; ++i) {
            const double f = a[i][k] / a[k][k];
            for (int j = k; j < n; ++j) a[i][j] -= f * a[k][j];
            b[i] -= f * b[k];
        }
    }
    std::vector<double> x(n, 0.0);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return x;
}

inline double max_abs_diff(const Dense& a, const Dense& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j)
            m = std::max(m, std::abs(a[i][j] - b[i][j]));
    return m;
}

/// P1 basis of a triangle as affine coefficient triples (a, b, c) with
/// phi(x, y) = a + b x + c y, found by solving the Vandermonde system.
struct AffineBasis {
    std::array<std::array<double, 3>, 3> coef;
    double area;
};

inline AffineBasis affine_basis(fsi::Vec2 p0, fsi::Vec2 p1, fsi::Vec2 p2) {
    AffineBasis ab;
    const Dense V = {{1.0, p0.x, p0.y}, {1.0, p1.x, p1.y}, {1.0, p2.x, p2.y}};
    for (int i = 0; i < 3; ++i) {
        std::vector<double> e(3, 0.0);
        e[i] = 1.0;
        const std::vector<double> c = dense_solve(V, e);
        ab.coef[i] = {c[0], c[1], c[2]};
    }
    ab.area = 0.5 * std::abs(fsi::cross(p1 - p0, p2 - p0));
    return ab;
}

/// Exact integral of phi_i phi_j over the triangle by the mid-edge rule
/// (exact through quadratic integrands).
inline double mass_entry(const AffineBasis& ab, fsi::Vec2 p0, fsi::Vec2 p1, fsi::Vec2 p2, int i,
                         int j) {
    const fsi::Vec2 mids[3] = {0.5 * (p0 + p1), 0.5 * (p1 + p2), 0.5 * (p2 + p0)};
    auto phi = [&](int k, fsi::Vec2 p) {
        return ab.coef[k][0] + ab.coef[k][1] * p.x + ab.coef[k][2] * p.y;
    };
    double s = 0.0;
    for (const fsi::Vec2& m : mids) s += phi(i, m) * phi(j, m);
    return ab.area / 3.0 * s;
}

/// 6x6 local matrix of 2 c1 (eps(u), eps(v)) + c2 (div u, div v) on a
/// triangle, indexed by (vertex, component) pairs 2*i + c. Built from the
/// strain tensors of the affine basis.
inline Dense local_elastic(fsi::Vec2 p0, fsi::Vec2 p1, fsi::Vec2 p2, double c1, double c2) {
    const AffineBasis ab = affine_basis(p0, p1, p2);
    Dense K = zeros(6, 6);
    for (int i = 0; i < 3; ++i)
        for (int c = 0; c < 2; ++c)
            for (int j = 0; j < 3; ++j)
                for (int d = 0; d < 2; ++d) {
                    // strain of phi_i e_c: eps_kl = (g_k d_lc + g_l d_kc)/2
                    const double gi[2] = {ab.coef[i][1], ab.coef[i][2]};
                    const double gj[2] = {ab.coef[j][1], ab.coef[j][2]};
                    double eps = 0.0;
                    for (int k = 0; k < 2; ++k)
                        for (int l = 0; l < 2; ++l) {
                            const double ei = 0.5 * (gi[k] * (l == c) + gi[l] * (k == c));
                            const double ej = 0.5 * (gj[k] * (l == d) + gj[l] * (k == d));
                            eps += ei * ej;
                        }
                    const double div = gi[c] * gj[d];
                    K[2 * i + c][2 * j + d] = ab.area * (2.0 * c1 * eps + c2 * div);
                }
    return K;
}

inline fsi::SparseMatrix random_sparse(int n, int m, double fill, unsigned seed,
                                       double diag_boost = 0.0) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    fsi::Triplets t(n, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j && diag_boost > 0.0)
                t.add(i, j, diag_boost + val(gen));
            else if (coin(gen) < fill)
                t.add(i, j, val(gen));
        }
    return fsi::from_triplets(t);
}

}  // namespace oracles
