#include "whitney/pointcloud.hpp"

namespace whitney {

PointCloud::PointCloud(std::size_t dim, std::vector<Point> points, const Tolerance& tol)
    : dim_(dim), points_(std::move(points)) {
    for (const auto& p : points_)
        if (p.size() != dim_) throw dimension_mismatch("cloud point has wrong dimension");
    for (std::size_t i = 0; i < points_.size(); ++i)
        for (std::size_t j = i + 1; j < points_.size(); ++j)
            if (points_equal(points_[i], points_[j], tol))
                throw domain_error("cloud points " + std::to_string(i) + " and " + std::to_string(j) +
                                   " coincide");
}

std::optional<std::size_t> PointCloud::find(std::span<const Rational> p, const Tolerance& tol) const {
    for (std::size_t i = 0; i < points_.size(); ++i)
        if (points_equal(points_[i], p, tol)) return i;
    return std::nullopt;
}

} // namespace whitney
