#pragma once

#include "wsvd/geometry.hpp"
#include "wsvd/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string_view>
#include <utility>
#include <vector>

namespace wsvd {

struct Quadrature1d {
    Vector nodes;
    Vector weights;
};

// n-point Gauss-Legendre rule on [a,b], exact for polynomials of degree
// <= 2n-1. Nodes by Newton iteration on the three-term recurrence, filled
// in symmetric pairs so the rule is exactly symmetric about the midpoint.
[[nodiscard]] inline Quadrature1d gauss_legendre_1d(int n, double a, double b) {
    if (n < 1) throw Error("gauss_legendre_1d: need n >= 1");
    if (!(a < b)) throw Error("gauss_legendre_1d: need a < b");
    Quadrature1d q{Vector(n), Vector(n)};
    const double xm = 0.5 * (a + b);
    const double xl = 0.5 * (b - a);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-like initial guess for the i-th root of P_n
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pn = 0.0, dpn = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            pn = 1.0;
            double pm = 0.0; // P_{j-1}
            for (int j = 0; j < n; ++j) {
                const double tmp = pn;
                pn = ((2.0 * j + 1.0) * z * pn - j * pm) / (j + 1.0);
                pm = tmp;
            }
            dpn = n * (z * pn - pm) / (z * z - 1.0);
            const double dz = pn / dpn;
            z -= dz;
            if (std::abs(dz) <= 1e-15) break;
        }
        q.nodes[i] = xm - xl * z;
        q.nodes[n - 1 - i] = xm + xl * z;
        const double w = 2.0 * xl / ((1.0 - z * z) * dpn * dpn);
        q.weights[i] = w;
        q.weights[n - 1 - i] = w;
    }
    return q;
}

/**
 * Cubature rule (X, W) on a domain: strictly positive weights summing to the
 * domain area, nodes inside the region. This is the only structure the basis
 * construction needs from the integration side.
 */
struct CubatureRule {
    std::vector<Point> nodes;
    Vector weights;
    Domain domain;
};

namespace detail {

inline void check_rule(const CubatureRule& rule) {
    const double floor = 1e-15 * rule.domain.measure();
    for (Index i = 0; i < rule.weights.size(); ++i) {
        if (!(rule.weights[i] > floor)) {
            throw DegenerateRule("cubature weight below positivity floor; use a different node count");
        }
    }
}

// Angle counts keeping the node cells near isotropic for the radial counts used here.
[[nodiscard]] inline int disk_angles(int m)    { return static_cast<int>(std::lround(2.0 * std::numbers::pi * m)); }
[[nodiscard]] inline int cutdisk_angles(int m) { return static_cast<int>(std::lround(1.5 * std::numbers::pi * m)); }

// Polar product rule for a full or partial disk about `center`:
// Gauss-Legendre in t = r^2 (area-exact radial change of variable) times
// equally weighted midpoint angles over [theta0, theta1].
inline void append_sector(std::vector<Point>& nodes, std::vector<double>& weights,
                          const Point& center, double radius2, int m,
                          double theta0, double theta1, int n_angles) {
    const Quadrature1d radial = gauss_legendre_1d(m, 0.0, radius2);
    const double dth = (theta1 - theta0) / n_angles;
    for (int j = 0; j < m; ++j) {
        const double r = std::sqrt(radial.nodes[j]);
        const double w = 0.5 * radial.weights[j] * dth;
        for (int k = 0; k < n_angles; ++k) {
            const double th = theta0 + (k + 0.5) * dth;
            nodes.emplace_back(center.x() + r * std::cos(th), center.y() + r * std::sin(th));
            weights.push_back(w);
        }
    }
}

} // namespace detail

// Tensor Gauss-Legendre rule on the unit square, N = m^2.
[[nodiscard]] inline CubatureRule square_rule(int m) {
    const Quadrature1d q = gauss_legendre_1d(m, 0.0, 1.0);
    CubatureRule rule{{}, Vector(static_cast<Index>(m) * m), Domain::unit_square()};
    rule.nodes.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
    Index idx = 0;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            rule.nodes.emplace_back(q.nodes[i], q.nodes[j]);
            rule.weights[idx++] = q.weights[i] * q.weights[j];
        }
    }
    detail::check_rule(rule);
    return rule;
}

/**
 * Positive-weight product rules for the curved regions.
 *
 * Disk and CutDisk use Gauss-Legendre in r^2 times midpoint angles over the
 * angular extent; the weight sum equals the area exactly. The Lens is split
 * along x = 0 into two circular segments, each integrated in polar
 * coordinates about its own circle center with a theta-dependent radial
 * interval; the midpoint rule in theta is not exact for the segment's radial
 * mass, so the weights are rescaled by area/sum (a 1+O(m^-2) factor) to keep
 * the constant-exactness guarantee.
 */
[[nodiscard]] inline CubatureRule polar_rule(const Domain& domain, int m) {
    if (m < 1) throw Error("polar_rule: need m >= 1");
    std::vector<Point> nodes;
    std::vector<double> weights;
    switch (domain.shape()) {
        case DomainShape::Disk:
            detail::append_sector(nodes, weights, domain.center(),
                                  domain.radius() * domain.radius(), m,
                                  0.0, 2.0 * std::numbers::pi, detail::disk_angles(m));
            break;
        case DomainShape::CutDisk:
            // keep theta in [-pi/2, pi]; the removed open quadrant is (pi, 3pi/2)
            detail::append_sector(nodes, weights, {0.0, 0.0}, 1.0, m,
                                  -0.5 * std::numbers::pi, std::numbers::pi,
                                  detail::cutdisk_angles(m));
            break;
        case DomainShape::Lens: {
            // right half = segment of the circle centered at (-a, 0) cut by x = 0
            const double a = std::numbers::sqrt2 / 2.0;
            const int n_angles = detail::disk_angles(m);
            const double th0 = -0.25 * std::numbers::pi;
            const double dth = (0.5 * std::numbers::pi) / n_angles;
            for (int k = 0; k < n_angles; ++k) {
                const double th = th0 + (k + 0.5) * dth;
                const double r0 = a / std::cos(th);
                const Quadrature1d radial = gauss_legendre_1d(m, r0 * r0, 1.0);
                for (int j = 0; j < m; ++j) {
                    const double r = std::sqrt(radial.nodes[j]);
                    const double x = -a + r * std::cos(th);
                    const double y = r * std::sin(th);
                    const double w = 0.5 * radial.weights[j] * dth;
                    nodes.emplace_back(x, y);
                    weights.push_back(w);
                    nodes.emplace_back(-x, y); // mirror segment, same weight
                    weights.push_back(w);
                }
            }
            double sum = 0.0;
            for (double w : weights) sum += w;
            const double scale = domain.measure() / sum;
            for (double& w : weights) w *= scale;
            break;
        }
        case DomainShape::UnitSquare:
            throw UnsupportedDomain("polar_rule: use square_rule on the unit square");
    }
    CubatureRule rule{std::move(nodes),
                      Eigen::Map<const Vector>(weights.data(), static_cast<Index>(weights.size())),
                      domain};
    detail::check_rule(rule);
    return rule;
}

template <class F>
[[nodiscard]] double integrate(const CubatureRule& rule, F&& f) {
    double acc = 0.0;
    for (Index i = 0; i < rule.weights.size(); ++i) {
        acc += rule.weights[i] * f(rule.nodes[static_cast<std::size_t>(i)]);
    }
    return acc;
}

// Achievable node count for a given radial count, matching the constructors above.
[[nodiscard]] inline Index polar_rule_size(const Domain& domain, int m) {
    switch (domain.shape()) {
        case DomainShape::Disk:    return static_cast<Index>(m) * detail::disk_angles(m);
        case DomainShape::CutDisk: return static_cast<Index>(m) * detail::cutdisk_angles(m);
        case DomainShape::Lens:    return 2 * static_cast<Index>(m) * detail::disk_angles(m);
        case DomainShape::UnitSquare: break;
    }
    throw UnsupportedDomain("polar_rule_size: not a polar domain");
}

// Maps a requested node budget to the nearest achievable rule. "gl" is the
// tensor rule on the square (N = m^2); "polar" covers the other regions.
[[nodiscard]] inline CubatureRule rule_for_budget(const Domain& domain, std::string_view kind, int budget) {
    if (budget < 1) throw Error("rule_for_budget: need a positive budget");
    if (kind == "gl") {
        if (domain.shape() != DomainShape::UnitSquare) {
            throw UnsupportedDomain("rule 'gl' applies to the unit square only");
        }
        const int m = std::max(1, static_cast<int>(std::lround(std::sqrt(static_cast<double>(budget)))));
        return square_rule(m);
    }
    if (kind != "polar") throw Error("unknown rule kind; expected 'gl' or 'polar'");
    if (domain.shape() == DomainShape::UnitSquare) {
        throw UnsupportedDomain("rule 'polar' does not apply to the unit square");
    }
    int best_m = 1;
    Index best_gap = std::numeric_limits<Index>::max();
    for (int m = 1;; ++m) {
        const Index n = polar_rule_size(domain, m);
        const Index gap = std::abs(n - static_cast<Index>(budget));
        if (gap < best_gap) {
            best_gap = gap;
            best_m = m;
        }
        if (n > 2 * static_cast<Index>(budget) + 16) break;
    }
    return polar_rule(domain, best_m);
}

} // namespace wsvd
