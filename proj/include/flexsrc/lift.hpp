#pragma once

// Propagation of measured (u, Lap u) on the circle of radius R to full Cauchy
// data on a larger circle of radius rho. Outside the source,
//   u_H = -(Lap u - k^2 u) / (2k^2)  solves the Helmholtz equation,
//   u_M =  (Lap u + k^2 u) / (2k^2)  solves the modified Helmholtz equation,
// and each is expanded in angular modes with H_n^(1)(k r) and K_n(k r) radial factors.

#include "flexsrc/core.hpp"
#include "flexsrc/specfun.hpp"

namespace flexsrc {

inline constexpr int kDefaultModalOrder = 60;

struct SplitTrace {
    double k = 0.0;
    CircleGrid circle;
    std::vector<Complex> u_h;
    std::vector<Complex> u_m;
};

/// Coefficients for n = -n_max..n_max, stored at index n + n_max.
struct ModalCoefficients {
    double k = 0.0;
    double radius = 0.0;
    int n_max = 0;
    std::vector<Complex> coeff_h;
    std::vector<Complex> coeff_m;

    [[nodiscard]] Complex h(int n) const { return coeff_h[static_cast<std::size_t>(n + n_max)]; }
    [[nodiscard]] Complex m(int n) const { return coeff_m[static_cast<std::size_t>(n + n_max)]; }
};

SplitTrace split_fields(const CauchyTrace& trace);

/// (1/2pi) sum_j v_j exp(-i n theta_j) (aperture / count), over the measured
/// angles only; on a limited aperture the missing arc contributes nothing.
std::vector<Complex> modal_analyze(const std::vector<Complex>& values, const CircleGrid& circle, int n_max);

ModalCoefficients analyze_split(const SplitTrace& split, int n_max);

/// Full Cauchy data (u, Lap u, d_nu u, d_nu Lap u) on out_circle (radius rho >= R).
CauchyTrace propagate_cauchy(const ModalCoefficients& mc, double rho, const CircleGrid& out_circle,
                             specfun::Limits limits = {});

/// split_fields, analyze_split and propagate_cauchy in sequence.
CauchyTrace lift_trace(const CauchyTrace& measured, int n_max, const CircleGrid& out_circle,
                       specfun::Limits limits = {});

}  // namespace flexsrc
