#pragma once

// Integer-order cylinder functions of real positive argument: J_n, Y_n,
// H_n^(1) = J_n + i Y_n, and the modified Bessel function K_n, plus
// overflow-safe ratio ("transfer") evaluation used to propagate modal
// expansions between circles.
//
// Algorithms (thresholds are fixed):
//   J_n      x < 25: Miller backward recurrence, normalised by the sum rule
//                    J_0 + 2 sum J_2k = 1.
//            x >= 25: Miller ratios anchored to the Hankel asymptotic J_0, J_1.
//   Y_0, Y_1 x < 25: Neumann series in the even/odd J_k.
//            x >= 25: Hankel asymptotic expansion.
//   Y_n      forward recurrence from Y_0, Y_1 (dominant direction).
//   K_0, K_1 x <= 2: ascending series; x > 2: Steed's continued fraction.
//   K_n      forward recurrence on the ratios K_n / K_{n-1}, kept in log space.

#include <stdexcept>
#include <vector>

#include "flexsrc/core.hpp"

namespace flexsrc::specfun {

inline constexpr int kDefaultMaxOrder = 128;

struct Limits {
    int max_order = kDefaultMaxOrder;
};

/// F_n(arg_out) / F_n(arg_in) and F_n'(arg_out) / F_n(arg_in) for F in {H^(1), K}.
struct TransferFactor {
    Complex value_ratio;
    Complex deriv_ratio;
};

double bessel_j(int n, double x, Limits limits = {});
double bessel_y(int n, double x, Limits limits = {});

/// H_n^(1)(x) for x > 0; negative orders via H_{-n} = (-1)^n H_n.
/// Throws std::invalid_argument for x <= 0 or |n| above limits.max_order, and
/// std::overflow_error if |Y_n(x)| is not representable.
Complex hankel1(int n, double x, Limits limits = {});

/// d/dx H_n^(1)(x) = H_{n-1}^(1)(x) - (n/x) H_n^(1)(x).
Complex hankel1_derivative(int n, double x, Limits limits = {});

/// K_n(x) for x > 0; negative orders via K_{-n} = K_n.
/// Throws std::overflow_error / std::underflow_error when the value leaves
/// the normal double range (use log_bessel_k or modk_transfer there).
double bessel_k(int n, double x, Limits limits = {});
double log_bessel_k(int n, double x, Limits limits = {});
double bessel_k_derivative(int n, double x, Limits limits = {});

TransferFactor hankel_transfer(int n, double arg_out, double arg_in, Limits limits = {});
TransferFactor modk_transfer(int n, double arg_out, double arg_in, Limits limits = {});

/// Transfer factors for all orders 0..n_max at once (the per-order results
/// are even in n). Requires arg_out >= arg_in > 0.
std::vector<TransferFactor> hankel_transfer_table(int n_max, double arg_out, double arg_in, Limits limits = {});
std::vector<TransferFactor> modk_transfer_table(int n_max, double arg_out, double arg_in, Limits limits = {});

/// Orders 0 and 1 at one argument; the hot path of the volume quadrature.
struct Order01 {
    double j0, j1, y0, y1;
    double k0, k1;
};
/// Below x = 25, piecewise Chebyshev interpolation of tables built once from
/// order01_reference; above, the shared Hankel asymptotic sums.
Order01 order01(double x);
/// Direct evaluation (Miller recurrence, Neumann series, Steed's CF2).
Order01 order01_reference(double x);

}  // namespace flexsrc::specfun
