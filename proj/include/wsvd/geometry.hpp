#pragma once

#include "wsvd/types.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace wsvd {

enum class DomainShape { UnitSquare, Disk, CutDisk, Lens };

/**
 * The four experiment regions. All are closed subsets of the plane with a
 * known area and axis-aligned bounding box:
 *
 *   UnitSquare  [0,1]^2
 *   Disk        center c, radius R (default c=(1/2,1/2), R=1/2)
 *   CutDisk     unit disk at the origin with the open third quadrant removed
 *   Lens        intersection of the unit disks centered at (+-sqrt(2)/2, 0)
 */
class Domain {
public:
    struct Box {
        Point lo;
        Point hi;
    };

    Domain() : Domain(DomainShape::UnitSquare, {0.5, 0.5}, 0.5, 1.0, Box{{0.0, 0.0}, {1.0, 1.0}}) {}

    [[nodiscard]] static Domain unit_square() {
        return Domain(DomainShape::UnitSquare, {0.5, 0.5}, 0.5, 1.0,
                      Box{{0.0, 0.0}, {1.0, 1.0}});
    }

    [[nodiscard]] static Domain disk(const Point& center = {0.5, 0.5}, double radius = 0.5) {
        return Domain(DomainShape::Disk, center, radius,
                      std::numbers::pi * radius * radius,
                      Box{{center.x() - radius, center.y() - radius},
                          {center.x() + radius, center.y() + radius}});
    }

    [[nodiscard]] static Domain cut_disk() {
        return Domain(DomainShape::CutDisk, {0.0, 0.0}, 1.0,
                      0.75 * std::numbers::pi,
                      Box{{-1.0, -1.0}, {1.0, 1.0}});
    }

    [[nodiscard]] static Domain lens() {
        const double a = std::numbers::sqrt2 / 2.0;
        const double h = std::sqrt(1.0 - a * a); // = a
        return Domain(DomainShape::Lens, {0.0, 0.0}, 1.0,
                      0.5 * std::numbers::pi - 1.0,
                      Box{{a - 1.0, -h}, {1.0 - a, h}});
    }

    [[nodiscard]] bool contains(const Point& p) const {
        switch (shape_) {
            case DomainShape::UnitSquare:
                return p.x() >= 0.0 && p.x() <= 1.0 && p.y() >= 0.0 && p.y() <= 1.0;
            case DomainShape::Disk:
                return (p - center_).squaredNorm() <= radius_ * radius_;
            case DomainShape::CutDisk:
                if (p.x() < 0.0 && p.y() < 0.0) return false; // open quadrant removed
                return p.squaredNorm() <= 1.0;
            case DomainShape::Lens: {
                const double a = std::numbers::sqrt2 / 2.0;
                const double dx1 = p.x() + a, dx2 = p.x() - a;
                return dx1 * dx1 + p.y() * p.y() <= 1.0 &&
                       dx2 * dx2 + p.y() * p.y() <= 1.0;
            }
        }
        return false; // unreachable
    }

    [[nodiscard]] double measure() const { return measure_; }
    [[nodiscard]] const Box& bbox() const { return bbox_; }
    [[nodiscard]] DomainShape shape() const { return shape_; }
    [[nodiscard]] const Point& center() const { return center_; }
    [[nodiscard]] double radius() const { return radius_; }

    [[nodiscard]] const char* name() const {
        switch (shape_) {
            case DomainShape::UnitSquare: return "square";
            case DomainShape::Disk:       return "disk";
            case DomainShape::CutDisk:    return "cutdisk";
            case DomainShape::Lens:       return "lens";
        }
        return "?";
    }

    [[nodiscard]] static std::optional<Domain> from_name(std::string_view name) {
        if (name == "square")  return unit_square();
        if (name == "disk")    return disk();
        if (name == "cutdisk") return cut_disk();
        if (name == "lens")    return lens();
        return std::nullopt;
    }

private:
    Domain(DomainShape shape, const Point& center, double radius, double measure, Box box)
        : shape_(shape), center_(center), radius_(radius), measure_(measure), bbox_(box) {}

    DomainShape shape_;
    Point center_;   // Disk parameters; circle center also reused by CutDisk
    double radius_;
    double measure_;
    Box bbox_;
};

namespace detail {

// van der Corput radical inverse in the given base, index >= 1
[[nodiscard]] inline double radical_inverse(unsigned long long i, unsigned base) {
    double f = 1.0;
    double r = 0.0;
    while (i > 0) {
        f /= static_cast<double>(base);
        r += f * static_cast<double>(i % base);
        i /= base;
    }
    return r;
}

} // namespace detail

// First n points of the 2-D Halton sequence (bases 2 and 3) scaled to the
// domain's bounding box and filtered by membership. Prefix-stable by
// construction: the scan order over the sequence never depends on n.
[[nodiscard]] inline std::vector<Point> halton_points(int n, const Domain& domain) {
    std::vector<Point> pts;
    if (n <= 0) return pts;
    pts.reserve(static_cast<std::size_t>(n));
    const auto& box = domain.bbox();
    const Point span = box.hi - box.lo;
    for (unsigned long long i = 1; static_cast<int>(pts.size()) < n; ++i) {
        const Point p = box.lo + Point(detail::radical_inverse(i, 2) * span.x(),
                                       detail::radical_inverse(i, 3) * span.y());
        if (domain.contains(p)) pts.push_back(p);
    }
    return pts;
}

// m x m grid over the bounding box (endpoints included), filtered by
// membership; m=1 degenerates to the box midpoint. x varies slowest.
[[nodiscard]] inline std::vector<Point> uniform_grid(int m, const Domain& domain) {
    std::vector<Point> pts;
    if (m <= 0) return pts;
    const auto& box = domain.bbox();
    auto coord = [&](double lo, double hi, int i) {
        return m == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * static_cast<double>(i) / (m - 1);
    };
    pts.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
    for (int ix = 0; ix < m; ++ix) {
        const double x = coord(box.lo.x(), box.hi.x(), ix);
        for (int iy = 0; iy < m; ++iy) {
            const Point p(x, coord(box.lo.y(), box.hi.y(), iy));
            if (domain.contains(p)) pts.push_back(p);
        }
    }
    return pts;
}

struct FillSeparation {
    double fill;       // max over the probe set of the distance to X
    double separation; // half the minimal pairwise distance in X
};

// Separation is exact; the fill distance is estimated on a caller-supplied
// probe sample of the domain (probe points outside the domain are skipped).
[[nodiscard]] inline FillSeparation fill_and_separation(std::span<const Point> x,
                                                        const Domain& domain,
                                                        std::span<const Point> probe) {
    if (x.size() < 2) throw TooFewPoints("fill_and_separation: need at least two points");
    double min_pair = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            min_pair = std::min(min_pair, (x[i] - x[j]).norm());
        }
    }
    double fill = 0.0;
    for (const Point& p : probe) {
        if (!domain.contains(p)) continue;
        double nearest = std::numeric_limits<double>::infinity();
        for (const Point& q : x) nearest = std::min(nearest, (p - q).norm());
        fill = std::max(fill, nearest);
    }
    return {fill, 0.5 * min_pair};
}

} // namespace wsvd
