#pragma once

// Discrete relative L2 and H1 errors over the samples of a grid.

#include <array>
#include <optional>
#include <vector>

#include "flexsrc/core.hpp"

namespace flexsrc {

using GradientField = std::vector<std::array<Complex, 2>>;

struct ErrorReport {
    double rel_l2 = 0.0;
    std::optional<double> rel_h1;
    int N_used = 0;
    double delta = 0.0;
    double wall_time_s = 0.0;
};

/// sqrt(sum |approx - exact|^2) / sqrt(sum |exact|^2). Throws
/// std::invalid_argument on size mismatch or an all-zero exact field.
double rel_l2(const std::vector<Complex>& approx, const std::vector<Complex>& exact);
double rel_l2(const std::vector<Complex>& approx, const std::vector<double>& exact);

/// Second-order finite-difference gradient on the grid: central differences
/// inside, three-point one-sided differences on the edges.
GradientField grid_gradient(const std::vector<Complex>& f, const CartesianGrid& grid);

/// sqrt(sum |grad a - grad e|^2 + |a - e|^2) / sqrt(sum |grad e|^2 + |e|^2).
double rel_h1(const std::vector<Complex>& approx, const GradientField& approx_grad, const std::vector<Complex>& exact,
              const GradientField& exact_grad);

/// As above with grad exact from grid_gradient.
double rel_h1(const std::vector<Complex>& approx, const GradientField& approx_grad, const std::vector<Complex>& exact,
              const CartesianGrid& grid);

std::vector<Complex> to_complex(const std::vector<double>& v);
GradientField to_complex(const std::vector<Point2>& g);

}  // namespace flexsrc
