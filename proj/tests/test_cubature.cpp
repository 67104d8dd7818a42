#include "wsvd/cubature.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace wsvd;

TEST_CASE("Gauss-Legendre nodes and weights at small orders", "[cubature]") {
    const Quadrature1d mid = gauss_legendre_1d(1, 0.0, 1.0);
    REQUIRE(mid.nodes.size() == 1);
    CHECK_THAT(mid.nodes[0], Catch::Matchers::WithinAbs(0.5, 1e-15));
    CHECK_THAT(mid.weights[0], Catch::Matchers::WithinAbs(1.0, 1e-15));

    const Quadrature1d two = gauss_legendre_1d(2, -1.0, 1.0);
    REQUIRE(two.nodes.size() == 2);
    CHECK_THAT(two.nodes[0], Catch::Matchers::WithinAbs(-0.57735026918962584, 1e-15));
    CHECK_THAT(two.nodes[1], Catch::Matchers::WithinAbs(0.57735026918962584, 1e-15));
    CHECK_THAT(two.weights[0], Catch::Matchers::WithinAbs(1.0, 1e-15));
    CHECK_THAT(two.weights[1], Catch::Matchers::WithinAbs(1.0, 1e-15));
}

TEST_CASE("Gauss-Legendre is exact to degree 2n-1 and sums to the length", "[cubature]") {
    for (int n : {1, 2, 3, 4, 6}) {
        const Quadrature1d q = gauss_legendre_1d(n, 0.0, 1.0);
        for (int d = 0; d <= 2 * n - 1; ++d) {
            double acc = 0.0;
            for (Index i = 0; i < q.nodes.size(); ++i) acc += q.weights[i] * std::pow(q.nodes[i], d);
            CHECK_THAT(acc, Catch::Matchers::WithinRel(1.0 / (d + 1), 1e-12));
        }
    }
    for (int n : {1, 2, 7, 20}) {
        const Quadrature1d q = gauss_legendre_1d(n, 2.0, 5.0);
        CHECK_THAT(q.weights.sum(), Catch::Matchers::WithinRel(3.0, 1e-13));
    }
    CHECK_THROWS_AS(gauss_legendre_1d(0, 0.0, 1.0), Error);
    CHECK_THROWS_AS(gauss_legendre_1d(3, 1.0, 1.0), Error);
}

TEST_CASE("square rule is the tensor Gauss-Legendre product", "[cubature]") {
    const CubatureRule one = square_rule(1);
    REQUIRE(one.nodes.size() == 1);
    CHECK_THAT(one.nodes[0].x(), Catch::Matchers::WithinAbs(0.5, 1e-15));
    CHECK_THAT(one.weights[0], Catch::Matchers::WithinAbs(1.0, 1e-15));

    const CubatureRule four = square_rule(2);
    REQUIRE(four.nodes.size() == 4);
    for (Index i = 0; i < 4; ++i) CHECK_THAT(four.weights[i], Catch::Matchers::WithinAbs(0.25, 1e-15));

    for (int m : {3, 5, 9}) CHECK(square_rule(m).nodes.size() == static_cast<std::size_t>(m) * m);
}

TEST_CASE("square rule integrates monomials up to degree 2m-1 per variable", "[cubature]") {
    for (int m : {1, 2, 3, 5}) {
        const CubatureRule rule = square_rule(m);
        for (int a = 0; a <= 2 * m - 1; ++a) {
            for (int b = 0; b <= 2 * m - 1; ++b) {
                const double got = integrate(rule, [&](const Point& p) {
                    return std::pow(p.x(), a) * std::pow(p.y(), b);
                });
                const double exact = 1.0 / ((a + 1.0) * (b + 1.0));
                CHECK_THAT(got, Catch::Matchers::WithinAbs(exact, 1e-12));
            }
        }
    }
}

TEST_CASE("polar rules have positive weights summing to the area, nodes inside", "[cubature]") {
    for (const Domain& domain : {Domain::disk(), Domain::cut_disk(), Domain::lens()}) {
        INFO("domain " << domain.name());
        for (int m : {1, 2, 5, 9}) {
            const CubatureRule rule = polar_rule(domain, m);
            REQUIRE(rule.nodes.size() == static_cast<std::size_t>(rule.weights.size()));
            CHECK(rule.weights.minCoeff() > 0.0);
            CHECK_THAT(rule.weights.sum(), Catch::Matchers::WithinRel(domain.measure(), 1e-12));
            for (const Point& p : rule.nodes) CHECK(domain.contains(p));
        }
    }
    CHECK_THROWS_AS(polar_rule(Domain::unit_square(), 4), UnsupportedDomain);
    CHECK_THROWS_AS(polar_rule(Domain::disk(), 0), Error);
}

TEST_CASE("disk rule integrates radial polynomials to analytic values", "[cubature]") {
    // centered second moment of the disk of radius 1/2: pi/64
    for (int m : {3, 5, 8}) {
        const CubatureRule rule = polar_rule(Domain::disk(), m);
        const double got = integrate(rule, [](const Point& p) {
            return (p.x() - 0.5) * (p.x() - 0.5);
        });
        CHECK_THAT(got, Catch::Matchers::WithinAbs(0.049087385212340517, 1e-10));
    }
    // integral of |p - c|^(2k) over the disk: pi R^(2k+2) / (k+1)
    const CubatureRule rule = polar_rule(Domain::disk(), 4);
    for (int k : {1, 2, 3}) {
        const double got = integrate(rule, [&](const Point& p) {
            return std::pow((p - Point(0.5, 0.5)).squaredNorm(), k);
        });
        const double exact = std::numbers::pi * std::pow(0.5, 2 * k + 2) / (k + 1.0);
        CHECK_THAT(got, Catch::Matchers::WithinAbs(exact, 1e-10));
    }
}

TEST_CASE("integrate handles constants", "[cubature]") {
    const CubatureRule rule = polar_rule(Domain::lens(), 3);
    CHECK_THAT(integrate(rule, [](const Point&) { return 1.0; }),
               Catch::Matchers::WithinRel(Domain::lens().measure(), 1e-12));
    CHECK(integrate(rule, [](const Point&) { return 0.0; }) == 0.0);
}

TEST_CASE("refinement sharpens smooth-function integrals against a Monte-Carlo oracle", "[cubature]") {
    const auto f = [](const Point& p) { return std::exp(p.x() + p.y()); };
    std::mt19937_64 rng(7);
    for (const Domain& domain : {Domain::disk(), Domain::cut_disk(), Domain::lens()}) {
        INFO("domain " << domain.name());
        const auto& box = domain.bbox();
        std::uniform_real_distribution<double> ux(box.lo.x(), box.hi.x());
        std::uniform_real_distribution<double> uy(box.lo.y(), box.hi.y());
        const double box_area = (box.hi.x() - box.lo.x()) * (box.hi.y() - box.lo.y());
        const long n = 10'000'000;
        double acc = 0.0, acc2 = 0.0;
        for (long i = 0; i < n; ++i) {
            const Point p(ux(rng), uy(rng));
            const double v = domain.contains(p) ? f(p) : 0.0;
            acc += v;
            acc2 += v * v;
        }
        const double mean = acc / static_cast<double>(n);
        const double oracle = box_area * mean;
        const double variance = acc2 / static_cast<double>(n) - mean * mean;
        const double stderr_mc = box_area * std::sqrt(variance / static_cast<double>(n));

        const double err3 = std::abs(integrate(polar_rule(domain, 3), f) - oracle);
        const double err6 = std::abs(integrate(polar_rule(domain, 6), f) - oracle);
        // refinement must not lose accuracy beyond noise: factor 10 plus the
        // oracle's own uncertainty
        CHECK(err6 <= 10.0 * err3 + 6.0 * stderr_mc);
        CHECK(err3 <= 0.01 * domain.measure());
    }
}

TEST_CASE("budgets map to the nearest achievable rule", "[cubature]") {
    CHECK(rule_for_budget(Domain::unit_square(), "gl", 400).nodes.size() == 400);
    CHECK(rule_for_budget(Domain::unit_square(), "gl", 410).nodes.size() == 400);
    CHECK(rule_for_budget(Domain::disk(), "polar", 400).nodes.size() == 400);   // m=8: 8*50
    CHECK(rule_for_budget(Domain::disk(), "polar", 600).nodes.size() == 630);   // m=10: 10*63
    CHECK(rule_for_budget(Domain::disk(), "polar", 300).nodes.size() == 308);   // m=7: 7*44
    CHECK(rule_for_budget(Domain::cut_disk(), "polar", 100).nodes.size() == 120); // m=5: 5*24
    CHECK(rule_for_budget(Domain::lens(), "polar", 200).nodes.size() == 200);   // m=4: 2*4*25
    // equidistant between m=1 (N=6) and m=2 (N=26): tie resolved to smaller m
    CHECK(rule_for_budget(Domain::disk(), "polar", 16).nodes.size() == 6);

    CHECK_THROWS_AS(rule_for_budget(Domain::disk(), "gl", 100), UnsupportedDomain);
    CHECK_THROWS_AS(rule_for_budget(Domain::unit_square(), "polar", 100), UnsupportedDomain);
    CHECK_THROWS_AS(rule_for_budget(Domain::disk(), "trap", 100), Error);
    CHECK_THROWS_AS(rule_for_budget(Domain::disk(), "polar", 0), Error);
}
