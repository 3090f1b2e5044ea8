#include "flexsrc/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace flexsrc {

CartesianGrid::CartesianGrid(double side, int points_per_side) : side_(side), n_(points_per_side) {
    if (!(side > 0.0) || !std::isfinite(side)) {
        throw std::invalid_argument("CartesianGrid: side must be positive and finite");
    }
    if (points_per_side < 2) {
        throw std::invalid_argument("CartesianGrid: need at least 2 points per side, got " +
                                    std::to_string(points_per_side));
    }
    points_.reserve(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        const double x1 = coordinate(i);
        for (int j = 0; j < n_; ++j) {
            points_.push_back({x1, coordinate(j)});
        }
    }
}

bool CartesianGrid::contains(const Point2& x) const {
    const double half = 0.5 * side_;
    return std::abs(x.x1) <= half && std::abs(x.x2) <= half;
}

CircleGrid::CircleGrid(double radius, int angle_count, double aperture)
    : radius_(radius), aperture_(aperture) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw std::invalid_argument("CircleGrid: radius must be positive and finite");
    }
    if (angle_count < 1) {
        throw std::invalid_argument("CircleGrid: angle count must be >= 1");
    }
    if (!(aperture > 0.0) || aperture > kTwoPi * (1.0 + 1e-15)) {
        throw std::invalid_argument("CircleGrid: aperture must lie in (0, 2 pi]");
    }
    angles_.resize(static_cast<std::size_t>(angle_count));
    for (int j = 1; j <= angle_count; ++j) {
        angles_[static_cast<std::size_t>(j - 1)] = j * aperture / angle_count;
    }
}

bool CircleGrid::full_aperture() const { return std::abs(aperture_ - kTwoPi) <= 1e-12; }

Point2 CircleGrid::point(int j) const {
    const double t = angle(j);
    return {radius_ * std::cos(t), radius_ * std::sin(t)};
}

Point2 CircleGrid::normal(int j) const {
    const double t = angle(j);
    return {std::cos(t), std::sin(t)};
}

CartesianGrid make_cartesian_grid(double a, int n) { return CartesianGrid(a, n); }

CircleGrid make_circle_grid(double radius, int count, double aperture) {
    return CircleGrid(radius, count, aperture);
}

double ModeIndex::norm() const { return std::hypot(l1, l2); }

bool ModeIndex::is_integer() const { return l1 == std::round(l1) && l2 == std::round(l2); }

Complex fourier_basis(const ModeIndex& l, const Point2& x, double a) {
    const double phase = kTwoPi / a * (l.l1 * x.x1 + l.l2 * x.x2);
    return {std::cos(phase), std::sin(phase)};
}

namespace {

bool all_finite(const std::vector<Complex>& v) {
    for (const auto& z : v) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

}  // namespace

void CauchyTrace::validate() const {
    if (!(k > 0.0) || !std::isfinite(k)) throw std::invalid_argument("CauchyTrace: wavenumber must be positive");
    const auto n = static_cast<std::size_t>(circle.angle_count());
    if (u.size() != n || lap_u.size() != n) {
        throw std::invalid_argument("CauchyTrace: u / lap_u length does not match the circle");
    }
    if (dnu_u.has_value() != dnu_lap_u.has_value()) {
        throw std::invalid_argument("CauchyTrace: normal derivatives must be both present or both absent");
    }
    if (dnu_u && (dnu_u->size() != n || dnu_lap_u->size() != n)) {
        throw std::invalid_argument("CauchyTrace: derivative length does not match the circle");
    }
    if (!all_finite(u) || !all_finite(lap_u) || (dnu_u && (!all_finite(*dnu_u) || !all_finite(*dnu_lap_u)))) {
        throw std::invalid_argument("CauchyTrace: non-finite sample");
    }
}

}  // namespace flexsrc
