#pragma once

#include "wsvd/cubature.hpp"
#include "wsvd/kernels.hpp"
#include "wsvd/types.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

namespace wsvd {

// Symmetric scaled kernel matrix sqrt(W) A sqrt(W). Symmetrized explicitly so
// the eigensolver sees an exactly symmetric input.
struct ScaledMatrix {
    Matrix a_w;
};

[[nodiscard]] inline ScaledMatrix scaled_matrix(const Kernel& kernel, const CubatureRule& rule) {
    const Vector sqrtw = rule.weights.array().sqrt();
    Matrix a_w = sqrtw.asDiagonal() * kernel_matrix(kernel, rule.nodes) * sqrtw.asDiagonal();
    a_w = 0.5 * (a_w + a_w.transpose()).eval();
    return {std::move(a_w)};
}

/**
 * Weighted SVD basis from the unitary diagonalization
 *
 *     sqrt(W) A sqrt(W) = Q diag(sigma2) Q^T.
 *
 * Columns of v_matrix hold the basis values at the rule nodes,
 * V = sqrt(W)^-1 Q Sigma; columns of c_matrix hold the coefficients of each
 * basis function over kernel translates, C = sqrt(W) Q Sigma^-1, so that
 * u_j(x) = sum_i c_matrix(i,j) Phi(x, x_i).
 *
 * Eigenvalues below clamp_tol = 1e-16 * sigma2[0] (or negative from roundoff)
 * are treated as numerically zero: sigma2 is zeroed and the matching columns
 * of v_matrix and c_matrix are zeroed rather than divided by a noise sigma.
 * The leading n_active columns are the usable part of the basis.
 */
struct WsvdBasis {
    Kernel kernel;
    CubatureRule rule;
    Matrix q_factor;
    Vector sigma2;
    Matrix v_matrix;
    Matrix c_matrix;
    Index n_active = 0;
    double clamp_tol = 0.0;

    [[nodiscard]] Index size() const { return sigma2.size(); }
};

[[nodiscard]] inline WsvdBasis build_basis(const Kernel& kernel, CubatureRule rule) {
    const Index n = static_cast<Index>(rule.nodes.size());
    if (n < 1) throw DegenerateRule("build_basis: empty cubature rule");
    for (Index i = 0; i < rule.weights.size(); ++i) {
        if (!(rule.weights[i] > 0.0)) throw DegenerateRule("build_basis: nonpositive cubature weight");
    }

    const ScaledMatrix scaled = scaled_matrix(kernel, rule);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(scaled.a_w);
    if (solver.info() != Eigen::Success) {
        throw EigenFailure("build_basis: symmetric eigensolver did not converge");
    }

    // Eigen returns eigenvalues ascending. Fix each eigenvector's sign first
    // (largest-magnitude entry positive, earliest such entry on a tie), then
    // order by descending eigenvalue with a lexicographic vector comparison
    // on exact ties, so the stored factorization is deterministic.
    Matrix q_raw = solver.eigenvectors();
    const Vector lam = solver.eigenvalues();
    for (Index j = 0; j < n; ++j) {
        Index imax = 0;
        q_raw.col(j).cwiseAbs().maxCoeff(&imax);
        if (q_raw(imax, j) < 0.0) q_raw.col(j) = -q_raw.col(j);
    }
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
        if (lam[a] != lam[b]) return lam[a] > lam[b];
        for (Index i = 0; i < n; ++i) {
            if (q_raw(i, a) != q_raw(i, b)) return q_raw(i, a) < q_raw(i, b);
        }
        return false;
    });

    WsvdBasis basis;
    basis.kernel = kernel;
    basis.rule = std::move(rule);
    basis.q_factor.resize(n, n);
    basis.sigma2 = Vector::Zero(n);
    basis.v_matrix = Matrix::Zero(n, n);
    basis.c_matrix = Matrix::Zero(n, n);

    const double sigma1 = lam[order.front()];
    if (!(sigma1 > 0.0)) {
        throw DegenerateRule("build_basis: scaled kernel matrix has no positive eigenvalue");
    }
    basis.clamp_tol = 1e-16 * sigma1;

    const Vector sqrtw = basis.rule.weights.array().sqrt();
    Index active = 0;
    for (Index j = 0; j < n; ++j) {
        const Index src = order[static_cast<std::size_t>(j)];
        basis.q_factor.col(j) = q_raw.col(src);
        if (lam[src] >= basis.clamp_tol) {
            const double sigma = std::sqrt(lam[src]);
            basis.sigma2[j] = lam[src];
            basis.v_matrix.col(j) = (q_raw.col(src).array() / sqrtw.array()) * sigma;
            basis.c_matrix.col(j) = (q_raw.col(src).array() * sqrtw.array()) / sigma;
            ++active;
        }
    }
    basis.n_active = active;
    return basis;
}

// Values u_j(x) for all j; clamped columns evaluate to zero.
[[nodiscard]] inline Vector eval_basis(const WsvdBasis& basis, const Point& x) {
    return basis.c_matrix.transpose() * kernel_column(basis.kernel, basis.rule.nodes, x);
}

// Row i holds u_j(points[i]); at the rule nodes this reproduces v_matrix.
[[nodiscard]] inline Matrix eval_basis(const WsvdBasis& basis, std::span<const Point> points) {
    const Index n = basis.size();
    Matrix cross(static_cast<Index>(points.size()), n);
    for (std::size_t i = 0; i < points.size(); ++i) {
        cross.row(static_cast<Index>(i)) =
            kernel_column(basis.kernel, basis.rule.nodes, points[i]).transpose();
    }
    return cross * basis.c_matrix;
}

// Error-functional norm of the order-M approximation process at x:
// sqrt(max(0, phi(0) - sum_{j<=M} u_j(x)^2)). M = N gives the interpolation
// power function; the max(0, .) guards roundoff near the nodes.
[[nodiscard]] inline double power_function(const WsvdBasis& basis, const Point& x, Index m) {
    const Index mm = std::clamp<Index>(m, 0, basis.size());
    const Vector u = eval_basis(basis, x);
    const double s = u.head(mm).squaredNorm();
    return std::sqrt(std::max(0.0, phi0(basis.kernel) - s));
}

[[nodiscard]] inline Vector power_function(const WsvdBasis& basis, std::span<const Point> points, Index m) {
    const Index mm = std::clamp<Index>(m, 0, basis.size());
    const Matrix u = eval_basis(basis, points);
    Vector out(u.rows());
    for (Index i = 0; i < u.rows(); ++i) {
        out[i] = std::sqrt(std::max(0.0, phi0(basis.kernel) - u.row(i).head(mm).squaredNorm()));
    }
    return out;
}

// View of the basis as a Nystrom discretization of the kernel integral
// operator: sigma2 approximates its eigenvalues and the v_matrix columns its
// eigenfunctions at the rule nodes. References stay valid as long as the
// basis does.
struct NystromSpectrum {
    const Vector& eigenvalues;
    const Matrix& eigenfunction_values;
};

[[nodiscard]] inline NystromSpectrum nystrom_spectrum(const WsvdBasis& basis) {
    return {basis.sigma2, basis.v_matrix};
}

} // namespace wsvd
