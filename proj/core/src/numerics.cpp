// SPDX-License-Identifier: MIT
#include "stackel/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace stackel {

TauGrid::TauGrid(std::vector<double> points, double exclusion_margin,
                 std::span<const double> singular)
    : points_(std::move(points)), margin_(exclusion_margin) {
    if (!(margin_ > 0.0)) {
        throw InvalidArgument("numerics", "exclusion margin must be positive");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i])) {
            throw InvalidArgument("numerics", "grid point is not finite");
        }
        if (i > 0 && !(points_[i] > points_[i - 1])) {
            throw InvalidArgument("numerics", "grid points must be strictly increasing");
        }
        for (double s : singular) {
            if (std::abs(points_[i] - s) < margin_) {
                std::ostringstream os;
                os << "grid point tau = " << points_[i] << " lies within " << margin_
                   << " of singular value " << s;
                throw DomainError("numerics", os.str());
            }
        }
    }
}

TauGrid TauGrid::uniform(double a, double b, std::size_t n, std::span<const double> singular,
                         double exclusion_margin) {
    std::vector<double> pts;
    if (n == 1) {
        pts.push_back(a);
    } else if (n > 1) {
        if (!(b > a)) throw InvalidArgument("numerics", "uniform grid needs a < b");
        pts.reserve(n);
        const double dx = (b - a) / static_cast<double>(n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            pts.push_back(i + 1 == n ? b : a + static_cast<double>(i) * dx);
        }
    }
    return TauGrid(std::move(pts), exclusion_margin, singular);
}

void Stencil::validate() const {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw InvalidArgument("numerics", "stencil step must be positive");
    }
    if (richardson_levels < 1 || richardson_levels > 3) {
        throw InvalidArgument("numerics", "richardson_levels must be 1, 2 or 3");
    }
}

Trajectory<Eigen::VectorXd> rk4_integrate(
    const std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>& field,
    const Eigen::VectorXd& y0, std::array<double, 2> span, int steps) {
    return rk4_integrate<Eigen::VectorXd>(field, y0, span[0], span[1], steps);
}

}  // namespace stackel
