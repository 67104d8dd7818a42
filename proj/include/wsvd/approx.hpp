#pragma once

#include "wsvd/basis.hpp"
#include "wsvd/kernels.hpp"
#include "wsvd/types.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace wsvd {

/**
 * Truncated least-squares approximant in a weighted SVD basis. Holds the
 * projection coefficients onto all usable basis functions; eval uses only the
 * leading m_active of them, so truncation is a cheap metadata change and the
 * full coefficient vector is retained. Non-owning: the basis must outlive the
 * approximant.
 */
struct Approximant {
    const WsvdBasis* basis = nullptr;
    Vector coeffs;
    Index m_active = 0;
    std::optional<double> truncation_tol;

    [[nodiscard]] double operator()(const Point& x) const;
};

// Projection coefficients onto the basis: coeffs[j] = (1/sigma_j^2) *
// sum_i w_i u_j(x_i) f(x_i), which reduces to q_j . (sqrt(w) f) / sigma_j.
// Clamped directions get coefficient zero. m_active starts at n_active, the
// interpolation regime.
[[nodiscard]] inline Approximant project(const WsvdBasis& basis, std::span<const double> samples) {
    const Index n = basis.size();
    if (static_cast<Index>(samples.size()) != n) {
        throw LengthMismatch("project: sample count does not match rule size");
    }
    const Eigen::Map<const Vector> f(samples.data(), n);
    const Vector scaled = basis.rule.weights.array().sqrt() * f.array();
    const Vector g = basis.q_factor.transpose() * scaled;

    Approximant a;
    a.basis = &basis;
    a.coeffs = Vector::Zero(n);
    for (Index j = 0; j < basis.n_active; ++j) {
        a.coeffs[j] = g[j] / std::sqrt(basis.sigma2[j]);
    }
    a.m_active = basis.n_active;
    return a;
}

struct TruncateOrder {
    Index m;
};

struct TruncateSigmaTol {
    double tau;
};

[[nodiscard]] inline Approximant truncate(const Approximant& a, TruncateOrder policy) {
    Approximant out = a;
    out.m_active = std::clamp<Index>(policy.m, 0, a.basis->n_active);
    out.truncation_tol.reset();
    return out;
}

// Keeps the orders whose singular value sigma_j = sqrt(sigma2[j]) is at least
// tau. Clamped directions have sigma 0 and never survive.
[[nodiscard]] inline Approximant truncate(const Approximant& a, TruncateSigmaTol policy) {
    if (!(policy.tau > 0.0)) throw Error("truncate: sigma tolerance must be positive");
    Approximant out = a;
    Index m = 0;
    while (m < a.basis->n_active && std::sqrt(a.basis->sigma2[m]) >= policy.tau) ++m;
    out.m_active = m;
    out.truncation_tol = policy.tau;
    return out;
}

// Weights of the approximant over kernel translates at the rule nodes:
// eval(x) = kernel_column(x) . translate_weights. Collapsing the basis once
// is the cheap route for evaluation on large point sets.
[[nodiscard]] inline Vector translate_weights(const Approximant& a) {
    return a.basis->c_matrix.leftCols(a.m_active) * a.coeffs.head(a.m_active);
}

[[nodiscard]] inline double eval(const Approximant& a, const Point& x) {
    const Vector u = eval_basis(*a.basis, x);
    return u.head(a.m_active).dot(a.coeffs.head(a.m_active));
}

[[nodiscard]] inline Vector eval(const Approximant& a, std::span<const Point> points) {
    const Vector beta = translate_weights(a);
    Vector out(static_cast<Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
        out[static_cast<Index>(i)] =
            kernel_column(a.basis->kernel, a.basis->rule.nodes, points[i]).dot(beta);
    }
    return out;
}

inline double Approximant::operator()(const Point& x) const { return eval(*this, x); }

// Native norm of the approximant itself, by Parseval in the Phi-orthonormal
// basis: ||Lambda_M f||^2 = sum_{j<=M} coeffs[j]^2.
[[nodiscard]] inline double native_norm(const Approximant& a) {
    return a.coeffs.head(a.m_active).norm();
}

// f-independent factor of the discrete least-squares error bound:
// ||f - Lambda_M f||_{l2w} <= sqrt(sum_{j>M} sigma2[j]) ||f||_Phi.
[[nodiscard]] inline double l2w_error_bound(const WsvdBasis& basis, Index m) {
    const Index mm = std::clamp<Index>(m, 0, basis.size());
    const double tail = basis.sigma2.tail(basis.size() - mm).sum();
    return std::sqrt(std::max(0.0, tail));
}

namespace detail {

// Symmetric solve with SPD fast path and pivoted fallback. Throws
// SingularMatrix when even the pivoted factorization cannot produce a usable
// solution, attaching the reciprocal-condition-based estimate.
[[nodiscard]] inline Vector solve_kernel_system(const Matrix& a, const Vector& rhs) {
    Eigen::LLT<Matrix> llt(a);
    if (llt.info() == Eigen::Success) {
        Vector x = llt.solve(rhs);
        if (x.allFinite()) return x;
    }
    Eigen::PartialPivLU<Matrix> lu(a);
    const double rcond = lu.rcond();
    Vector x = lu.solve(rhs);
    if (!(rcond > 0.0) || !x.allFinite()) {
        const double cond = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
        throw SingularMatrix("kernel system numerically singular", cond);
    }
    return x;
}

} // namespace detail

/**
 * Plain translate-basis interpolant P_X[f](x) = sum_j alpha_j Phi(x, x_j)
 * with A alpha = f(X). The reference method the weighted SVD basis is
 * compared against; inherits the conditioning of A.
 */
struct StandardInterpolant {
    Kernel kernel;
    std::vector<Point> centers;
    Vector alpha;

    [[nodiscard]] double operator()(const Point& x) const {
        return kernel_column(kernel, centers, x).dot(alpha);
    }
};

[[nodiscard]] inline StandardInterpolant standard_interpolant(const Kernel& kernel,
                                                              std::span<const Point> points,
                                                              std::span<const double> samples) {
    if (points.size() != samples.size()) {
        throw LengthMismatch("standard_interpolant: sample count does not match point count");
    }
    if (points.empty()) throw TooFewPoints("standard_interpolant: need at least one point");
    const Matrix a = kernel_matrix(kernel, points);
    const Eigen::Map<const Vector> rhs(samples.data(), static_cast<Index>(samples.size()));
    StandardInterpolant interp;
    interp.kernel = kernel;
    interp.centers.assign(points.begin(), points.end());
    interp.alpha = detail::solve_kernel_system(a, rhs);
    return interp;
}

struct LooResult {
    double best_eps = 0.0;
    std::vector<std::pair<double, double>> scores; // (eps, score), ascending eps
};

/**
 * Leave-one-out shape parameter selection on the standard interpolant: for
 * each candidate eps the score is max_i |P_X[f](x_i) - P[f]_i(x_i)|, where
 * P[f]_i interpolates with point i removed. Each of the N reduced systems is
 * factored independently. A singular system marks the candidate with an
 * infinite score instead of aborting the scan; ties go to the smallest eps.
 */
[[nodiscard]] inline LooResult loo_optimize(KernelFamily family, std::span<const double> eps_candidates,
                                            std::span<const Point> points,
                                            std::span<const double> samples) {
    if (points.size() < 2) throw TooFewPoints("loo_optimize: need at least two points");
    if (eps_candidates.empty()) throw Error("loo_optimize: empty shape parameter list");
    if (points.size() != samples.size()) {
        throw LengthMismatch("loo_optimize: sample count does not match point count");
    }
    const Index n = static_cast<Index>(points.size());

    LooResult result;
    result.scores.reserve(eps_candidates.size());
    std::vector<double> sorted_eps(eps_candidates.begin(), eps_candidates.end());
    std::sort(sorted_eps.begin(), sorted_eps.end());

    std::vector<Point> reduced_points(static_cast<std::size_t>(n) - 1);
    Vector reduced_rhs(n - 1);
    for (double eps : sorted_eps) {
        const Kernel kernel{family, eps};
        double score;
        try {
            const Matrix a = kernel_matrix(kernel, points);
            const Eigen::Map<const Vector> rhs(samples.data(), n);
            const Vector alpha = detail::solve_kernel_system(a, rhs);
            const Vector full_at_nodes = a * alpha;
            score = 0.0;
            for (Index i = 0; i < n; ++i) {
                Index k = 0;
                for (Index j = 0; j < n; ++j) {
                    if (j == i) continue;
                    reduced_points[static_cast<std::size_t>(k)] = points[static_cast<std::size_t>(j)];
                    reduced_rhs[k] = samples[static_cast<std::size_t>(j)];
                    ++k;
                }
                Matrix a_red(n - 1, n - 1);
                k = 0;
                for (Index r = 0; r < n; ++r) {
                    if (r == i) continue;
                    Index c = 0;
                    for (Index s = 0; s < n; ++s) {
                        if (s == i) continue;
                        a_red(k, c++) = a(r, s);
                    }
                    ++k;
                }
                const Vector alpha_red = detail::solve_kernel_system(a_red, reduced_rhs);
                const double loo_value =
                    kernel_column(kernel, reduced_points, points[static_cast<std::size_t>(i)])
                        .dot(alpha_red);
                score = std::max(score, std::abs(full_at_nodes[i] - loo_value));
            }
        } catch (const SingularMatrix&) {
            score = std::numeric_limits<double>::infinity();
        }
        result.scores.emplace_back(eps, score);
    }

    result.best_eps = result.scores.front().first;
    double best_score = result.scores.front().second;
    for (const auto& [eps, score] : result.scores) {
        if (score < best_score) {
            best_score = score;
            result.best_eps = eps;
        }
    }
    return result;
}

} // namespace wsvd
