#pragma once

// Shared domain types: sampling grids, Fourier mode indices, boundary traces.

#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace flexsrc {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

struct Point2 {
    double x1 = 0.0;
    double x2 = 0.0;
};

/// Uniform cell-centred grid on the square V0 = (-a/2, a/2)^2.
///
/// Point (i, j) sits at (-a/2 + (i + 1/2) h, -a/2 + (j + 1/2) h) with h = a/n,
/// so no sample lies on the boundary and every sample carries the weight h^2.
/// Points are stored with the x1 index outermost: index = i * n + j.
class CartesianGrid {
public:
    CartesianGrid(double side, int points_per_side);

    [[nodiscard]] double side() const { return side_; }
    [[nodiscard]] int points_per_side() const { return n_; }
    [[nodiscard]] double spacing() const { return side_ / n_; }
    [[nodiscard]] double cell_area() const { return spacing() * spacing(); }
    [[nodiscard]] std::size_t size() const { return points_.size(); }

    /// 1-D coordinate of the i-th sample along either axis.
    [[nodiscard]] double coordinate(int i) const { return -0.5 * side_ + (i + 0.5) * spacing(); }
    [[nodiscard]] std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
    }
    [[nodiscard]] const Point2& operator[](std::size_t m) const { return points_[m]; }
    [[nodiscard]] std::span<const Point2> points() const { return points_; }

    /// True if x lies in the closed square [-a/2, a/2]^2.
    [[nodiscard]] bool contains(const Point2& x) const;

private:
    double side_;
    int n_;
    std::vector<Point2> points_;
};

/// Equally spaced angles theta_j = j * aperture / count, j = 1..count, on a
/// circle centred at the origin. theta = 0 is excluded, theta = aperture is included.
class CircleGrid {
public:
    CircleGrid(double radius, int angle_count, double aperture);

    [[nodiscard]] double radius() const { return radius_; }
    [[nodiscard]] int angle_count() const { return static_cast<int>(angles_.size()); }
    [[nodiscard]] double aperture() const { return aperture_; }
    [[nodiscard]] bool full_aperture() const;
    [[nodiscard]] std::span<const double> angles() const { return angles_; }
    [[nodiscard]] double angle(int j) const { return angles_[static_cast<std::size_t>(j)]; }
    /// Angular step aperture / count (the rectangle-rule weight in theta).
    [[nodiscard]] double angle_step() const { return aperture_ / angle_count(); }

    [[nodiscard]] Point2 point(int j) const;
    /// Outward unit normal at the j-th sample.
    [[nodiscard]] Point2 normal(int j) const;

private:
    double radius_;
    double aperture_;
    std::vector<double> angles_;
};

CartesianGrid make_cartesian_grid(double a, int n);
CircleGrid make_circle_grid(double radius, int count, double aperture);

/// Fourier mode label. Integer modes have |l|_inf >= 1; the shifted zero mode
/// l0 = (lambda, 0) replaces l = 0, whose wavenumber would vanish.
struct ModeIndex {
    double l1 = 0.0;
    double l2 = 0.0;

    static ModeIndex integer(int l1, int l2) { return {static_cast<double>(l1), static_cast<double>(l2)}; }
    static ModeIndex shifted_zero(double lambda) { return {lambda, 0.0}; }

    [[nodiscard]] double norm() const;
    [[nodiscard]] ModeIndex negated() const { return {-l1, -l2}; }
    [[nodiscard]] bool is_integer() const;
};

/// phi_l(x) = exp(i (2 pi / a) l . x).
Complex fourier_basis(const ModeIndex& l, const Point2& x, double a);

/// Boundary data of one wavenumber sampled on a circle. The normal-derivative
/// arrays are either fully present or absent.
struct CauchyTrace {
    double k = 0.0;
    CircleGrid circle;
    std::vector<Complex> u;
    std::vector<Complex> lap_u;
    std::optional<std::vector<Complex>> dnu_u;
    std::optional<std::vector<Complex>> dnu_lap_u;

    [[nodiscard]] bool has_normal_derivatives() const { return dnu_u.has_value() && dnu_lap_u.has_value(); }
    /// Throws std::invalid_argument on length mismatch, half-present
    /// derivatives, non-positive k or non-finite values.
    void validate() const;
};

}  // namespace flexsrc
