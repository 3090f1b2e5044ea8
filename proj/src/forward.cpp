#include "flexsrc/forward.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "flexsrc/specfun.hpp"

namespace flexsrc {

namespace {

constexpr double kTwoOverPi = 2.0 / std::numbers::pi;

void check_wavenumber(double k) {
    if (!(k > 0.0) || !std::isfinite(k)) throw std::invalid_argument("wavenumber must be positive and finite");
}

// Running sums of the weighted order-0/1 cylinder functions; the field
// components are linear combinations of these.
struct Sums {
    double j0 = 0, y0 = 0, k0 = 0;
    std::array<double, 2> j1{}, y1{}, k1{};  // weighted by the unit vector (x - y)/r
};

Sums accumulate(const QuadratureSource& src, double k, const Point2& x, bool gradients) {
    Sums s;
    const std::size_t n = src.nodes.size();
    for (std::size_t m = 0; m < n; ++m) {
        const double d1 = x.x1 - src.nodes[m].x1;
        const double d2 = x.x2 - src.nodes[m].x2;
        const double r = std::sqrt(d1 * d1 + d2 * d2);
        if (r <= kDefaultMinDistance) throw std::invalid_argument("observation point coincides with a source node");
        const specfun::Order01 o = specfun::order01(k * r);
        const double w = src.weights[m];
        s.j0 += w * o.j0;
        s.y0 += w * o.y0;
        s.k0 += w * o.k0;
        if (gradients) {
            const double e1 = w * d1 / r, e2 = w * d2 / r;
            s.j1[0] += e1 * o.j1;
            s.j1[1] += e2 * o.j1;
            s.y1[0] += e1 * o.y1;
            s.y1[1] += e2 * o.y1;
            s.k1[0] += e1 * o.k1;
            s.k1[1] += e2 * o.k1;
        }
    }
    return s;
}

FieldSample assemble(const Sums& s, double k, bool gradients) {
    FieldSample f;
    // G = (-(Y0 + 2/pi K0) + i J0) / (8 k^2),  Delta G = ((Y0 - 2/pi K0) - i J0) / 8
    f.u = Complex(-(s.y0 + kTwoOverPi * s.k0), s.j0) / (8.0 * k * k);
    f.lap_u = Complex(s.y0 - kTwoOverPi * s.k0, -s.j0) / 8.0;
    if (gradients) {
        for (int c = 0; c < 2; ++c) {
            // dG/dr = (Y1/(8k) + K1/(4 pi k)) - i J1/(8k);  d(Delta G)/dr = k(-Y1/8 + K1/(4 pi)) + i k J1/8
            f.grad_u[c] = Complex(s.y1[c] / (8.0 * k) + s.k1[c] / (4.0 * kPi * k), -s.j1[c] / (8.0 * k));
            f.grad_lap_u[c] = Complex(k * (-s.y1[c] / 8.0 + s.k1[c] / (4.0 * kPi)), k * s.j1[c] / 8.0);
        }
    }
    return f;
}

}  // namespace

KernelValue kernel(double k, const Point2& x, const Point2& y, KernelNeeds needs, double r_min) {
    check_wavenumber(k);
    const double d1 = x.x1 - y.x1, d2 = x.x2 - y.x2;
    const double r = std::hypot(d1, d2);
    if (!(r > r_min)) {
        throw std::invalid_argument("kernel: |x - y| = " + std::to_string(r) + " is not above the guard distance");
    }
    const specfun::Order01 o = specfun::order01(k * r);
    const Complex h0(o.j0, o.y0), h1(o.j1, o.y1);
    KernelValue v;
    if (needs.value) v.g = kI / (8.0 * k * k) * (h0 + kI * kTwoOverPi * o.k0);
    if (needs.laplacian) v.lap_g = -kI / 8.0 * h0 - o.k0 / (4.0 * kPi);
    const double e1 = d1 / r, e2 = d2 / r;
    if (needs.gradient) {
        const Complex dg = -kI / (8.0 * k) * h1 + o.k1 / (4.0 * kPi * k);
        v.grad_g = {dg * e1, dg * e2};
    }
    if (needs.gradient_laplacian) {
        const Complex dl = kI * k / 8.0 * h1 + k * o.k1 / (4.0 * kPi);
        v.grad_lap_g = {dl * e1, dl * e2};
    }
    return v;
}

QuadratureSource discretize(const CartesianGrid& quad_grid, const std::vector<double>& values) {
    if (values.size() != quad_grid.size()) throw std::invalid_argument("discretize: value count does not match grid");
    QuadratureSource q;
    q.side = quad_grid.side();
    const double w = quad_grid.cell_area();
    for (std::size_t m = 0; m < values.size(); ++m) {
        if (values[m] == 0.0) continue;
        q.nodes.push_back(quad_grid[m]);
        q.weights.push_back(values[m] * w);
    }
    return q;
}

QuadratureSource discretize(const SourceSpec& spec, const CartesianGrid& quad_grid) {
    return discretize(quad_grid, sample(spec, quad_grid));
}

FieldSample radiate_point(const QuadratureSource& src, double k, const Point2& x, KernelNeeds needs) {
    check_wavenumber(k);
    const bool gradients = needs.gradient || needs.gradient_laplacian;
    return assemble(accumulate(src, k, x, gradients), k, gradients);
}

CauchyTrace radiate_trace(const QuadratureSource& src, double k, const CircleGrid& circle, bool normal_derivatives) {
    check_wavenumber(k);
    if (!(circle.radius() > src.side * std::numbers::sqrt2 / 2.0)) {
        throw std::invalid_argument("radiate_trace: circle of radius " + std::to_string(circle.radius()) +
                                    " intersects the source square of side " + std::to_string(src.side));
    }
    const int n = circle.angle_count();
    CauchyTrace t{k, circle, std::vector<Complex>(static_cast<std::size_t>(n)),
                  std::vector<Complex>(static_cast<std::size_t>(n)), std::nullopt, std::nullopt};
    if (normal_derivatives) {
        t.dnu_u.emplace(static_cast<std::size_t>(n));
        t.dnu_lap_u.emplace(static_cast<std::size_t>(n));
    }
#pragma omp parallel for schedule(dynamic, 4)
    for (int j = 0; j < n; ++j) {
        const FieldSample f = assemble(accumulate(src, k, circle.point(j), normal_derivatives), k, normal_derivatives);
        const auto uj = static_cast<std::size_t>(j);
        t.u[uj] = f.u;
        t.lap_u[uj] = f.lap_u;
        if (normal_derivatives) {
            const Point2 nu = circle.normal(j);
            (*t.dnu_u)[uj] = f.grad_u[0] * nu.x1 + f.grad_u[1] * nu.x2;
            (*t.dnu_lap_u)[uj] = f.grad_lap_u[0] * nu.x1 + f.grad_lap_u[1] * nu.x2;
        }
    }
    return t;
}

CauchyTrace radiate_trace(const SourceSpec& spec, double k, const CircleGrid& circle, const CartesianGrid& quad_grid,
                          bool normal_derivatives) {
    return radiate_trace(discretize(spec, quad_grid), k, circle, normal_derivatives);
}

}  // namespace flexsrc
