#pragma once

// Fourier inversion: admissible wavenumbers, boundary-integral coefficients,
// the shifted zero mode and synthesis of the truncated series
//   S_N = s_l0 phi_l0 + sum_{1 <= |l|_inf <= N} s_l phi_l.

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "flexsrc/core.hpp"

namespace flexsrc {

enum class TruncationRule {
    Paper,  // N = 5 [delta^(-1/4)]
    Alt,    // N = 2 [delta^(-1/3)]
};

TruncationRule parse_truncation_rule(const std::string& name);  // "paper" or "alt"
std::string to_string(TruncationRule rule);

/// [x]: the largest integer smaller than x + 1. Values within 1e-9 of an
/// integer are snapped to it first.
int integer_bracket(double x);

/// Throws std::invalid_argument unless 0 < delta < 1; zero noise needs an explicit N.
int truncation_order(double delta, TruncationRule rule);

struct WavenumberEntry {
    ModeIndex l;
    double k = 0.0;
    std::size_t distinct = 0;  // index into WavenumberTable::distinct_k
};

/// Modes 1 <= |l|_inf <= N plus the shifted zero mode (entry 0), with
/// k_l = (2 pi / a) |l|. Modes of equal |l|^2 share one distinct wavenumber;
/// distinct_k is ascending, so the zero-mode wavenumber comes first.
struct WavenumberTable {
    double a = 0.0;
    int N = 0;
    double lambda = 0.0;
    std::vector<WavenumberEntry> entries;
    std::vector<double> distinct_k;
    /// |l|^2 per distinct wavenumber; -1 marks the zero mode.
    std::vector<int> distinct_norm2;

    [[nodiscard]] double kappa() const { return kTwoPi / a; }
};

/// Requires N >= 1, a > 0 and 0 < (2 pi / a) lambda < 1/2.
WavenumberTable admissible_wavenumbers(int N, double a, double lambda);

/// k_l for an integer |l|^2, bit-identical across modes of the same norm.
double mode_wavenumber(int norm2, double a);

/// Coefficients on the (2N+1)^2 square of integer modes; the (0, 0) slot holds s_l0.
class CoefficientTable {
public:
    CoefficientTable(double a, int N, double lambda);

    [[nodiscard]] double a() const { return a_; }
    [[nodiscard]] int N() const { return n_; }
    [[nodiscard]] double lambda() const { return lambda_; }

    [[nodiscard]] Complex at(int l1, int l2) const;
    [[nodiscard]] Complex zeroth() const { return at(0, 0); }
    void set(int l1, int l2, Complex value);
    void set_zeroth(Complex value) { set(0, 0, value); }
    [[nodiscard]] bool is_set(int l1, int l2) const;
    /// True once every integer mode 1 <= |l|_inf <= N has been set.
    [[nodiscard]] bool integer_modes_complete() const;

    [[nodiscard]] double max_abs() const;

private:
    [[nodiscard]] std::size_t slot(int l1, int l2) const;

    double a_;
    int n_;
    double lambda_;
    std::vector<Complex> values_;
    std::vector<char> set_;
};

/// Rows "l1,l2,re,im"; the zero mode is written with l1 = lambda.
void write_csv(std::ostream& os, const CoefficientTable& table);
/// Skips '#' comment lines and the column header. The period is not stored in the rows.
CoefficientTable read_coefficients_csv(std::istream& is, double a);

/// Boundary-integral identity on a full circle enclosing the source square:
///   s_l = (1/a^2) sum [d_nu Lap u + i kappa (l.nu) Lap u] conj(phi_l) ds
///       - (k_l^2/a^2) sum [d_nu u + i kappa (l.nu) u] conj(phi_l) ds,
/// with the rectangle rule ds = 2 pi rho / count. Works for integer modes and
/// for l0 (giving the boundary part of the zero-mode formula).
/// Throws if data.k differs from k_l, the circle is partial, or derivatives are missing.
Complex fourier_coefficient(const ModeIndex& l, const CauchyTrace& data, double a);

/// Integral of phi_l conj(phi_l0) over V0: a^2 sinc(l1 - lambda) sinc(l2).
double basis_overlap(const ModeIndex& l, double lambda, double a);

double sinc(double t);

/// s_l0 = lambda pi / (a^2 sin(lambda pi)) (a^2 B - sum_l s_l overlap(l)),
/// where a^2 B is the boundary integral at l0. Throws std::invalid_argument
/// unless every integer mode of coeffs has been set.
Complex zeroth_coefficient(const CauchyTrace& data, const CoefficientTable& coeffs, double lambda, double a);

/// All coefficients from lifted traces, lifted[d] taken at table.distinct_k[d].
CoefficientTable compute_coefficients(const WavenumberTable& table, const std::vector<CauchyTrace>& lifted);

/// S_N at every grid point, in grid order.
std::vector<Complex> synthesize(const CoefficientTable& coeffs, const CartesianGrid& grid);

/// grad S_N at every grid point, in grid order.
std::vector<std::array<Complex, 2>> synthesize_gradient(const CoefficientTable& coeffs, const CartesianGrid& grid);

}  // namespace flexsrc
