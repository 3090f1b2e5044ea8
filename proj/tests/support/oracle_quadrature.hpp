#pragma once

// Composite Gauss-Legendre quadrature over a square, with the biharmonic
// kernel assembled from the standard library's cylinder functions. Shares
// no code with the library's quadrature or special functions.

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

struct Node {
    double x1, x2, w;
};

/// panels x panels blocks of a 20 x 20 Gauss-Legendre rule on [-a/2, a/2]^2.
inline std::vector<Node> square_rule(double a, int panels) {
    using rule = boost::math::quadrature::gauss<double, 20>;
    std::vector<double> t, w;
    const auto& abs = rule::abscissa();
    const auto& wts = rule::weights();
    for (std::size_t i = 0; i < abs.size(); ++i) {
        t.push_back(abs[i]);
        w.push_back(wts[i]);
        if (abs[i] != 0.0) {
            t.push_back(-abs[i]);
            w.push_back(wts[i]);
        }
    }
    const double h = a / panels;
    std::vector<double> xs, ws;
    for (int p = 0; p < panels; ++p) {
        const double c = -0.5 * a + (p + 0.5) * h;
        for (std::size_t i = 0; i < t.size(); ++i) {
            xs.push_back(c + 0.5 * h * t[i]);
            ws.push_back(0.5 * h * w[i]);
        }
    }
    std::vector<Node> nodes;
    nodes.reserve(xs.size() * xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j) nodes.push_back({xs[i], xs[j], ws[i] * ws[j]});
    return nodes;
}

struct Field {
    Complex u, lap_u, dr_u, dr_lap_u;  // dr: derivative along the outward radial direction of x
};

/// Integral of G(x, y) S(y) over the square, with x on a circle (radial derivatives).
inline Field radiate(const std::vector<Node>& rule, const std::function<double(double, double)>& s, double k,
                     double x1, double x2) {
    const double pi = std::numbers::pi;
    const double rx = std::hypot(x1, x2);
    const double n1 = x1 / rx, n2 = x2 / rx;
    Field f{};
    for (const Node& q : rule) {
        const double sv = s(q.x1, q.x2) * q.w;
        if (sv == 0.0) continue;
        const double d1 = x1 - q.x1, d2 = x2 - q.x2;
        const double r = std::hypot(d1, d2);
        const double z = k * r;
        const Complex h0(std::cyl_bessel_j(0.0, z), std::cyl_neumann(0.0, z));
        const Complex h1(std::cyl_bessel_j(1.0, z), std::cyl_neumann(1.0, z));
        const double k0 = std::cyl_bessel_k(0.0, z), k1 = std::cyl_bessel_k(1.0, z);
        const Complex i(0.0, 1.0);
        const Complex g = i / (8.0 * k * k) * (h0 + 2.0 * i / pi * k0);
        const Complex lg = -i / 8.0 * (h0 - 2.0 * i / pi * k0);
        const Complex dg = -i / (8.0 * k) * h1 + k1 / (4.0 * pi * k);
        const Complex dlg = i * k / 8.0 * h1 + k * k1 / (4.0 * pi);
        const double c = (d1 * n1 + d2 * n2) / r;
        f.u += sv * g;
        f.lap_u += sv * lg;
        f.dr_u += sv * c * dg;
        f.dr_lap_u += sv * c * dlg;
    }
    return f;
}

}  // namespace oracle
