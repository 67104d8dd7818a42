#pragma once

#include "wsvd/types.hpp"

#include <cmath>
#include <optional>
#include <span>
#include <string_view>

namespace wsvd {

enum class KernelFamily {
    Gaussian,
    IMQ,            // inverse multiquadric 1/sqrt(1+(er)^2)
    GIMQ,           // generalized IMQ 1/(1+(er)^2)^2
    IQ,             // 1/(1+er)
    Matern1,        // e^{-er}(1+er)
    Matern2,        // e^{-er}(3+3er+(er)^2)
    Matern3,        // e^{-er}(15+15er+6(er)^2+(er)^3)
    LaguerreGauss1, // e^{-(er)^2}(2-(er)^2), plane only
    LaguerreGauss2, // e^{-(er)^2}(3-3(er)^2+(er)^4/2), plane only
    LinearGIMQ,     // (2-(er)^2)/(1+(er)^2)^4, plane only
    Wendland20,     // (1-er)_+^2, plane only
    Wendland21,     // (1-er)_+^4 (3er+1)/20, plane only
};

/**
 * Radial kernel Phi(x,y) = profile(shape * |x-y|). The profile is positive
 * definite on the plane for every family listed above; the shape parameter
 * controls flatness and hence the conditioning of kernel matrices.
 */
struct Kernel {
    KernelFamily family = KernelFamily::Gaussian;
    double shape = 1.0;
};

// Distance below which two points are considered duplicates.
inline constexpr double kDupTol = 1e-12;

// Radial profile at scaled distance t = shape * r.
[[nodiscard]] inline double profile(KernelFamily family, double t) {
    switch (family) {
        case KernelFamily::Gaussian: return std::exp(-t * t);
        case KernelFamily::IMQ:      return 1.0 / std::sqrt(1.0 + t * t);
        case KernelFamily::GIMQ: {
            const double q = 1.0 + t * t;
            return 1.0 / (q * q);
        }
        case KernelFamily::IQ:       return 1.0 / (1.0 + t);
        case KernelFamily::Matern1:  return std::exp(-t) * (1.0 + t);
        case KernelFamily::Matern2:  return std::exp(-t) * (3.0 + 3.0 * t + t * t);
        case KernelFamily::Matern3:  return std::exp(-t) * (15.0 + 15.0 * t + 6.0 * t * t + t * t * t);
        case KernelFamily::LaguerreGauss1: return std::exp(-t * t) * (2.0 - t * t);
        case KernelFamily::LaguerreGauss2: {
            const double s = t * t;
            return std::exp(-s) * (3.0 - 3.0 * s + 0.5 * s * s);
        }
        case KernelFamily::LinearGIMQ: {
            const double q = 1.0 + t * t;
            const double q2 = q * q;
            return (2.0 - t * t) / (q2 * q2);
        }
        case KernelFamily::Wendland20: {
            if (t >= 1.0) return 0.0;
            const double u = 1.0 - t;
            return u * u;
        }
        case KernelFamily::Wendland21: {
            if (t >= 1.0) return 0.0;
            const double u = 1.0 - t;
            const double u2 = u * u;
            return u2 * u2 * (3.0 * t + 1.0) / 20.0;
        }
    }
    return 0.0; // unreachable
}

// Kernel value at distance r (shape applied internally).
[[nodiscard]] inline double phi(const Kernel& k, double r) {
    return profile(k.family, k.shape * r);
}

// Value at r = 0; finite for every family, but not 1 for all of them.
[[nodiscard]] inline double phi0(const Kernel& k) {
    return profile(k.family, 0.0);
}

// 0 means any dimension, 2 means the profile is positive definite on the plane only.
[[nodiscard]] inline int valid_dim(KernelFamily family) {
    switch (family) {
        case KernelFamily::Gaussian:
        case KernelFamily::IMQ:
        case KernelFamily::GIMQ:
        case KernelFamily::IQ:
        case KernelFamily::Matern1:
        case KernelFamily::Matern2:
        case KernelFamily::Matern3:
            return 0;
        default:
            return 2;
    }
}

[[nodiscard]] inline const char* kernel_name(KernelFamily family) {
    switch (family) {
        case KernelFamily::Gaussian:       return "gauss";
        case KernelFamily::IMQ:            return "imq";
        case KernelFamily::GIMQ:           return "gimq";
        case KernelFamily::IQ:             return "iq";
        case KernelFamily::Matern1:        return "mat1";
        case KernelFamily::Matern2:        return "mat2";
        case KernelFamily::Matern3:        return "mat3";
        case KernelFamily::LaguerreGauss1: return "lg1";
        case KernelFamily::LaguerreGauss2: return "lg2";
        case KernelFamily::LinearGIMQ:     return "lgimq";
        case KernelFamily::Wendland20:     return "w20";
        case KernelFamily::Wendland21:     return "w21";
    }
    return "?";
}

[[nodiscard]] inline std::optional<KernelFamily> kernel_from_name(std::string_view name) {
    using KF = KernelFamily;
    for (KF f : {KF::Gaussian, KF::IMQ, KF::GIMQ, KF::IQ, KF::Matern1, KF::Matern2,
                 KF::Matern3, KF::LaguerreGauss1, KF::LaguerreGauss2, KF::LinearGIMQ,
                 KF::Wendland20, KF::Wendland21}) {
        if (name == kernel_name(f)) return f;
    }
    return std::nullopt;
}

/**
 * Dense kernel matrix A with A(i,j) = Phi(x_i, x_j). Rejects point sets with
 * a pair closer than kDupTol: the matrix would be numerically rank deficient
 * in a way no downstream factorization can repair.
 */
[[nodiscard]] inline Matrix kernel_matrix(const Kernel& k, std::span<const Point> pts) {
    const Index n = static_cast<Index>(pts.size());
    Matrix a(n, n);
    const double diag = phi0(k);
    for (Index i = 0; i < n; ++i) {
        a(i, i) = diag;
        for (Index j = i + 1; j < n; ++j) {
            const double r = (pts[static_cast<std::size_t>(i)] - pts[static_cast<std::size_t>(j)]).norm();
            if (r < kDupTol) {
                throw DuplicatePoints("kernel_matrix: points " + std::to_string(i) + " and " +
                                      std::to_string(j) + " closer than duplicate tolerance");
            }
            const double v = phi(k, r);
            a(i, j) = v;
            a(j, i) = v;
        }
    }
    return a;
}

// Evaluation vector [Phi(x,x_1), ..., Phi(x,x_N)].
[[nodiscard]] inline Vector kernel_column(const Kernel& k, std::span<const Point> pts, const Point& x) {
    const Index n = static_cast<Index>(pts.size());
    Vector t(n);
    for (Index i = 0; i < n; ++i) {
        t[i] = phi(k, (x - pts[static_cast<std::size_t>(i)]).norm());
    }
    return t;
}

} // namespace wsvd
