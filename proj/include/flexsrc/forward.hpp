#pragma once

// Radiated field of a source by midpoint quadrature of the fundamental solution
//   G(x, y; k) = i/(8k^2) (H_0^(1)(k r) + (2i/pi) K_0(k r)),  r = |x - y|,
// of  Delta^2 u - k^4 u = S.

#include <array>

#include "flexsrc/core.hpp"
#include "flexsrc/sources.hpp"

namespace flexsrc {

struct KernelNeeds {
    bool value = true;
    bool laplacian = true;
    bool gradient = false;
    bool gradient_laplacian = false;
};

/// G, Delta_x G and their x-gradients. Unrequested members stay zero.
struct KernelValue {
    Complex g;
    Complex lap_g;
    std::array<Complex, 2> grad_g{};
    std::array<Complex, 2> grad_lap_g{};
};

inline constexpr double kDefaultMinDistance = 1e-12;

/// Throws std::invalid_argument if k <= 0 or |x - y| <= r_min.
KernelValue kernel(double k, const Point2& x, const Point2& y, KernelNeeds needs = {},
                   double r_min = kDefaultMinDistance);

/// Source sampled for quadrature: nodes y_m with weights S(y_m) h^2. Zero
/// samples are dropped; they contribute nothing.
struct QuadratureSource {
    double side = 0.0;
    std::vector<Point2> nodes;
    std::vector<double> weights;
};

QuadratureSource discretize(const SourceSpec& spec, const CartesianGrid& quad_grid);
QuadratureSource discretize(const CartesianGrid& quad_grid, const std::vector<double>& values);

/// u, Delta u and their gradients at one observation point.
struct FieldSample {
    Complex u;
    Complex lap_u;
    std::array<Complex, 2> grad_u{};
    std::array<Complex, 2> grad_lap_u{};
};

FieldSample radiate_point(const QuadratureSource& src, double k, const Point2& x, KernelNeeds needs = {});

/// Traces of the radiated field on a circle. u and Delta u are always filled;
/// the normal derivatives (nu = x/|x|) only if normal_derivatives is set.
/// The circle must lie strictly outside the square: radius > side * sqrt(2)/2.
CauchyTrace radiate_trace(const QuadratureSource& src, double k, const CircleGrid& circle,
                          bool normal_derivatives = false);
CauchyTrace radiate_trace(const SourceSpec& spec, double k, const CircleGrid& circle, const CartesianGrid& quad_grid,
                          bool normal_derivatives = false);

}  // namespace flexsrc
