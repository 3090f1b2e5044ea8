#include "flexsrc/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace flexsrc {

namespace {

void check_sizes(std::size_t a, std::size_t b, const char* who) {
    if (a != b) {
        throw std::invalid_argument(std::string(who) + ": field sizes differ (" + std::to_string(a) + " vs " +
                                    std::to_string(b) + ")");
    }
}

double ratio(double num, double den, const char* who) {
    if (!(den > 0.0)) throw std::invalid_argument(std::string(who) + ": exact field is identically zero");
    return std::sqrt(num / den);
}

}  // namespace

double rel_l2(const std::vector<Complex>& approx, const std::vector<Complex>& exact) {
    check_sizes(approx.size(), exact.size(), "rel_l2");
    double num = 0.0, den = 0.0;
    for (std::size_t p = 0; p < exact.size(); ++p) {
        num += std::norm(approx[p] - exact[p]);
        den += std::norm(exact[p]);
    }
    return ratio(num, den, "rel_l2");
}

double rel_l2(const std::vector<Complex>& approx, const std::vector<double>& exact) {
    return rel_l2(approx, to_complex(exact));
}

GradientField grid_gradient(const std::vector<Complex>& f, const CartesianGrid& grid) {
    check_sizes(f.size(), grid.size(), "grid_gradient");
    const int n = grid.points_per_side();
    if (n < 3) throw std::invalid_argument("grid_gradient: need at least 3 points per side");
    const double h = grid.spacing();
    // derivative along one axis of the samples at(0..n-1)
    auto diff = [&](auto at, int i) -> Complex {
        if (i == 0) return (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h);
        if (i == n - 1) return (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) / (2.0 * h);
        return (at(i + 1) - at(i - 1)) / (2.0 * h);
    };
    GradientField g(f.size());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            auto along1 = [&](int m) { return f[grid.index(m, j)]; };
            auto along2 = [&](int m) { return f[grid.index(i, m)]; };
            g[grid.index(i, j)] = {diff(along1, i), diff(along2, j)};
        }
    }
    return g;
}

double rel_h1(const std::vector<Complex>& approx, const GradientField& approx_grad, const std::vector<Complex>& exact,
              const GradientField& exact_grad) {
    check_sizes(approx.size(), exact.size(), "rel_h1");
    check_sizes(approx_grad.size(), exact.size(), "rel_h1");
    check_sizes(exact_grad.size(), exact.size(), "rel_h1");
    double num = 0.0, den = 0.0;
    for (std::size_t p = 0; p < exact.size(); ++p) {
        num += std::norm(approx[p] - exact[p]) + std::norm(approx_grad[p][0] - exact_grad[p][0]) +
               std::norm(approx_grad[p][1] - exact_grad[p][1]);
        den += std::norm(exact[p]) + std::norm(exact_grad[p][0]) + std::norm(exact_grad[p][1]);
    }
    return ratio(num, den, "rel_h1");
}

double rel_h1(const std::vector<Complex>& approx, const GradientField& approx_grad, const std::vector<Complex>& exact,
              const CartesianGrid& grid) {
    return rel_h1(approx, approx_grad, exact, grid_gradient(exact, grid));
}

std::vector<Complex> to_complex(const std::vector<double>& v) { return {v.begin(), v.end()}; }

GradientField to_complex(const std::vector<Point2>& g) {
    GradientField out(g.size());
    for (std::size_t p = 0; p < g.size(); ++p) out[p] = {Complex(g[p].x1), Complex(g[p].x2)};
    return out;
}

}  // namespace flexsrc
