#pragma once

#include <optional>
#include <vector>

#include "whitney/rational.hpp"

namespace whitney {

/// Finite ordered set of distinct points in R^n. Distinctness is exact in
/// exact mode and up to the dedup tolerance otherwise.
class PointCloud {
public:
    PointCloud(std::size_t dim, std::vector<Point> points, const Tolerance& tol = Tolerance::exact_mode());

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return points_.size(); }
    const Point& point(std::size_t i) const { return points_[i]; }
    const std::vector<Point>& points() const { return points_; }

    std::optional<std::size_t> find(std::span<const Rational> p, const Tolerance& tol) const;

    bool operator==(const PointCloud& o) const { return dim_ == o.dim_ && points_ == o.points_; }

private:
    std::size_t dim_;
    std::vector<Point> points_;
};

} // namespace whitney
