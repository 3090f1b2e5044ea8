#include "flexsrc/lift.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace flexsrc {

SplitTrace split_fields(const CauchyTrace& trace) {
    if (!(trace.k > 0.0)) throw std::invalid_argument("split_fields: wavenumber must be positive");
    if (trace.u.size() != trace.lap_u.size()) throw std::invalid_argument("split_fields: u / lap_u length mismatch");
    const double k2 = trace.k * trace.k;
    SplitTrace s{trace.k, trace.circle, std::vector<Complex>(trace.u.size()), std::vector<Complex>(trace.u.size())};
    for (std::size_t j = 0; j < trace.u.size(); ++j) {
        s.u_h[j] = -(trace.lap_u[j] - k2 * trace.u[j]) / (2.0 * k2);
        s.u_m[j] = (trace.lap_u[j] + k2 * trace.u[j]) / (2.0 * k2);
    }
    return s;
}

std::vector<Complex> modal_analyze(const std::vector<Complex>& values, const CircleGrid& circle, int n_max) {
    if (n_max < 0) throw std::invalid_argument("modal_analyze: negative n_max");
    if (values.size() != static_cast<std::size_t>(circle.angle_count())) {
        throw std::invalid_argument("modal_analyze: value count does not match the circle");
    }
    const double w = circle.angle_step() / kTwoPi;
    std::vector<Complex> c(static_cast<std::size_t>(2 * n_max + 1));
    for (int j = 0; j < circle.angle_count(); ++j) {
        const Complex v = values[static_cast<std::size_t>(j)] * w;
        const Complex step = std::polar(1.0, -circle.angle(j));
        // e^{-i n theta} for n = 0, 1, ... by repeated multiplication, re-seeded to limit drift
        Complex e(1.0, 0.0);
        for (int n = 0; n <= n_max; ++n) {
            if (n % 16 == 0) e = std::polar(1.0, -n * circle.angle(j));
            c[static_cast<std::size_t>(n_max + n)] += v * e;
            if (n > 0) c[static_cast<std::size_t>(n_max - n)] += v * std::conj(e);
            e *= step;
        }
    }
    return c;
}

ModalCoefficients analyze_split(const SplitTrace& split, int n_max) {
    return {split.k, split.circle.radius(), n_max, modal_analyze(split.u_h, split.circle, n_max),
            modal_analyze(split.u_m, split.circle, n_max)};
}

CauchyTrace propagate_cauchy(const ModalCoefficients& mc, double rho, const CircleGrid& out_circle,
                             specfun::Limits limits) {
    if (rho < mc.radius) throw std::invalid_argument("propagate_cauchy: rho must not be below the base radius");
    if (std::abs(out_circle.radius() - rho) > 1e-12 * rho) {
        throw std::invalid_argument("propagate_cauchy: output circle radius differs from rho");
    }
    const auto size = static_cast<std::size_t>(2 * mc.n_max + 1);
    if (mc.coeff_h.size() != size || mc.coeff_m.size() != size) {
        throw std::invalid_argument("propagate_cauchy: coefficient length does not match n_max");
    }
    const double k = mc.k;
    const auto th = specfun::hankel_transfer_table(mc.n_max, k * rho, k * mc.radius, limits);
    const auto tk = specfun::modk_transfer_table(mc.n_max, k * rho, k * mc.radius, limits);
    for (int n = 0; n <= mc.n_max; ++n) {
        const auto un = static_cast<std::size_t>(n);
        const double vk = tk[un].value_ratio.real();
        if (std::abs(th[un].value_ratio) > 1.0 + 1e-12 || !(vk >= 0.0 && vk <= 1.0 + 1e-12)) {
            throw std::logic_error("propagate_cauchy: transfer factor of order " + std::to_string(n) +
                                   " does not attenuate");
        }
    }

    // modal amplitudes on the outer circle; transfer factors are even in n
    std::vector<Complex> a_u(size), a_du(size), a_lap(size), a_dlap(size);
    for (int n = -mc.n_max; n <= mc.n_max; ++n) {
        const auto i = static_cast<std::size_t>(n + mc.n_max);
        const auto o = static_cast<std::size_t>(std::abs(n));
        const Complex uh = th[o].value_ratio * mc.coeff_h[i];
        const Complex um = tk[o].value_ratio * mc.coeff_m[i];
        const Complex duh = k * th[o].deriv_ratio * mc.coeff_h[i];
        const Complex dum = k * tk[o].deriv_ratio * mc.coeff_m[i];
        a_u[i] = uh + um;
        a_lap[i] = k * k * (um - uh);
        a_du[i] = duh + dum;
        a_dlap[i] = k * k * (dum - duh);
    }

    const auto count = static_cast<std::size_t>(out_circle.angle_count());
    CauchyTrace out{k, out_circle, std::vector<Complex>(count), std::vector<Complex>(count),
                    std::vector<Complex>(count), std::vector<Complex>(count)};
    for (std::size_t j = 0; j < count; ++j) {
        const double theta = out_circle.angle(static_cast<int>(j));
        Complex su, sl, sdu, sdl;
        for (int n = -mc.n_max; n <= mc.n_max; ++n) {
            const auto i = static_cast<std::size_t>(n + mc.n_max);
            const Complex e = std::polar(1.0, n * theta);
            su += a_u[i] * e;
            sl += a_lap[i] * e;
            sdu += a_du[i] * e;
            sdl += a_dlap[i] * e;
        }
        out.u[j] = su;
        out.lap_u[j] = sl;
        (*out.dnu_u)[j] = sdu;
        (*out.dnu_lap_u)[j] = sdl;
    }
    return out;
}

CauchyTrace lift_trace(const CauchyTrace& measured, int n_max, const CircleGrid& out_circle,
                       specfun::Limits limits) {
    const ModalCoefficients mc = analyze_split(split_fields(measured), n_max);
    return propagate_cauchy(mc, out_circle.radius(), out_circle, limits);
}

}  // namespace flexsrc
