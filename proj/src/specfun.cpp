#include "flexsrc/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace flexsrc::specfun {

namespace {

constexpr double kEuler = 0.57721566490153286061;
constexpr double kAsymptoticThreshold = 25.0;
constexpr double kSeriesThresholdK = 2.0;
// Rescaling by an exact power of two keeps scaled values bit-exact.
constexpr int kRescaleExp = 800;
const double kRescale = std::ldexp(1.0, kRescaleExp);
constexpr double kLn2 = 0.69314718055994530942;
constexpr double kDropLog = -700.0;
const double kLogMax = std::log(std::numeric_limits<double>::max());
const double kLogMin = std::log(std::numeric_limits<double>::min());

void check_argument(double x, const char* who) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw std::invalid_argument(std::string(who) + ": argument must be positive and finite");
    }
}

void check_order(int n, const Limits& limits, const char* who) {
    if (std::abs(n) > limits.max_order) {
        throw std::invalid_argument(std::string(who) + ": order " + std::to_string(n) +
                                    " exceeds the supported maximum " + std::to_string(limits.max_order));
    }
}

// value = mant * 2^exp2
struct Scaled {
    double mant = 0.0;
    int exp2 = 0;

    [[nodiscard]] double value() const { return std::ldexp(mant, exp2); }
    [[nodiscard]] double log_abs() const {
        return mant == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(std::abs(mant)) + exp2 * kLn2;
    }
};

// a / b for scaled values, flushed to zero far below the double range.
double scaled_ratio(const Scaled& a, const Scaled& b) {
    const double lr = a.log_abs() - b.log_abs();
    if (lr < kDropLog) return 0.0;
    return std::ldexp(a.mant / b.mant, a.exp2 - b.exp2);
}

// Hankel asymptotic sums for order nu at x >= 25:
// P, Q for J/Y and S = sum a_k / x^k for K.
struct AsymptoticSums {
    double p, q, s;
};

AsymptoticSums asymptotic_sums(int nu, double x) {
    const double mu = 4.0 * nu * nu;
    double p = 1.0, q = 0.0, s = 1.0;
    const double inv8x = 0.125 / x;
    double term = 1.0;
    double last = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) * inv8x / k;
        const double mag = std::abs(term);
        if (mag > last) break;
        last = mag;
        s += term;
        switch (k % 4) {
            case 0: p += term; break;
            case 1: q += term; break;
            case 2: p -= term; break;
            default: q -= term; break;
        }
        if (mag < 1e-17) break;
    }
    return {p, q, s};
}

// J_nu, Y_nu at x >= 25 for nu in {0, 1}.
void asymptotic_jy(int nu, double x, double sn, double cs, double& j, double& y) {
    const AsymptoticSums a = asymptotic_sums(nu, x);
    const double amp = std::sqrt(2.0 / (kPi * x));
    const double r = 1.0 / std::numbers::sqrt2;
    // chi = x - pi/4 (nu = 0) or x - 3 pi/4 (nu = 1)
    double c, s;
    if (nu == 0) {
        c = (cs + sn) * r;
        s = (sn - cs) * r;
    } else {
        c = (sn - cs) * r;
        s = (-sn - cs) * r;
    }
    j = amp * (a.p * c - a.q * s);
    y = amp * (a.p * s + a.q * c);
}

// Scaled K_0, K_1: returns e^x K_0(x), e^x K_1(x) for x > 2.
void scaled_k01_large(double x, double& k0s, double& k1s) {
    if (x >= kAsymptoticThreshold) {
        const double amp = std::sqrt(kPi / (2.0 * x));
        k0s = amp * asymptotic_sums(0, x).s;
        k1s = amp * asymptotic_sums(1, x).s;
        return;
    }
    // Steed's continued fraction CF2 at order 0
    const double a1 = 0.25;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    double q = a1, c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 1; i < 10000; ++i) {
        a -= 2 * i;
        c = -a * c / (i + 1.0);
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels) < 1e-16 * std::abs(s)) break;
    }
    h = a1 * h;
    k0s = std::sqrt(kPi / (2.0 * x)) / s;
    k1s = k0s * (x + 0.5 - h) / x;
}

void series_k01(double x, double& k0, double& k1) {
    const double t = 0.25 * x * x;
    const double lg = std::log(0.5 * x) + kEuler;
    double i0 = 0.0, i1 = 0.0, s0 = 0.0, s1 = 0.0;
    double a0 = 1.0;  // t^k / (k!)^2
    double a1 = 1.0;  // t^k / (k! (k+1)!)
    double hk = 0.0;
    for (int k = 0; k < 60; ++k) {
        const double hk1 = hk + 1.0 / (k + 1);
        i0 += a0;
        i1 += a1;
        s0 += hk * a0;
        s1 += (hk + hk1) * a1;
        if (a0 < 1e-18 * i0 && k > 0) break;
        a0 *= t / ((k + 1.0) * (k + 1.0));
        a1 *= t / ((k + 1.0) * (k + 2.0));
        hk = hk1;
    }
    i1 *= 0.5 * x;
    k0 = -lg * i0 + s0;
    k1 = 1.0 / x + lg * i1 - 0.25 * x * s1;
}

// K_n(x) for n = 0..n_top in scaled form, with q_n = K_n / K_{n-1} (q_0 unused).
// Forward recurrence is stable for K; every term is positive.
struct KSequence {
    std::vector<Scaled> k;
    std::vector<double> q;
};

KSequence k_sequence(int n_top, double x) {
    KSequence out;
    out.k.resize(static_cast<std::size_t>(n_top) + 1);
    out.q.resize(static_cast<std::size_t>(n_top) + 1, 0.0);
    double k0, k1;
    int e = 0;
    if (x <= kSeriesThresholdK) {
        series_k01(x, k0, k1);
    } else {
        // e^x K scaled down by 2^-ceil(x / ln 2) to stay representable
        scaled_k01_large(x, k0, k1);
        const int shift = static_cast<int>(std::ceil(x / kLn2));
        const double rest = std::exp(shift * kLn2 - x);
        k0 *= rest;
        k1 *= rest;
        e = -shift;
    }
    out.k[0] = {k0, e};
    if (n_top == 0) return out;
    out.k[1] = {k1, e};
    out.q[1] = k1 / k0;
    double km1 = k0, kn = k1;
    for (int n = 1; n < n_top; ++n) {
        const double kp1 = km1 + (2.0 * n / x) * kn;
        out.q[static_cast<std::size_t>(n) + 1] = kp1 / kn;
        km1 = kn;
        kn = kp1;
        out.k[static_cast<std::size_t>(n) + 1] = {kn, e};
        if (kn > kRescale) {
            kn = std::ldexp(kn, -kRescaleExp);
            km1 = std::ldexp(km1, -kRescaleExp);
            e += kRescaleExp;
        }
    }
    return out;
}

// Miller backward recurrence. Returns J_k for k = 0..M (M >= n_top) in scaled form.
std::vector<Scaled> miller_j(int n_top, double x) {
    int m_start = std::max(n_top, static_cast<int>(std::ceil(x))) + 30 + static_cast<int>(12.0 * std::cbrt(x));
    if (m_start % 2 != 0) ++m_start;
    std::vector<Scaled> f(static_cast<std::size_t>(m_start) + 1);

    int e = 0;
    double fk = 1.0, fkp1 = 0.0;
    double sum = 0.0;  // J_0 + 2 sum J_2k in the current scale
    f[static_cast<std::size_t>(m_start)] = {fk, e};
    sum += 2.0 * fk;  // m_start is even and > 0
    for (int k = m_start; k >= 1; --k) {
        const double fkm1 = (2.0 * k / x) * fk - fkp1;
        fkp1 = fk;
        fk = fkm1;
        const int idx = k - 1;
        if (idx % 2 == 0) sum += (idx == 0 ? 1.0 : 2.0) * fk;
        f[static_cast<std::size_t>(idx)] = {fk, e};
        if (std::abs(fk) > kRescale) {
            fk = std::ldexp(fk, -kRescaleExp);
            fkp1 = std::ldexp(fkp1, -kRescaleExp);
            sum = std::ldexp(sum, -kRescaleExp);
            e += kRescaleExp;
        }
    }
    const int e_final = e;

    double scale;
    if (x < kAsymptoticThreshold) {
        scale = 1.0 / sum;
    } else {
        const double sn = std::sin(x), cs = std::cos(x);
        double j0, j1, y;
        asymptotic_jy(0, x, sn, cs, j0, y);
        asymptotic_jy(1, x, sn, cs, j1, y);
        const double f0 = std::ldexp(f[0].mant, f[0].exp2 - e_final);
        const double f1 = std::ldexp(f[1].mant, f[1].exp2 - e_final);
        scale = (j0 * f0 + j1 * f1) / (f0 * f0 + f1 * f1);
    }
    for (auto& v : f) {
        v.mant *= scale;
        v.exp2 -= e_final;
    }
    return f;
}

// Y_0, Y_1 at x < 25 from the Neumann series over the Miller J sequence.
void neumann_y01(const std::vector<Scaled>& j, double x, double& y0, double& y1) {
    const double lg = std::log(0.5 * x) + kEuler;
    const double j0 = j[0].value();
    const double j1 = j[1].value();
    double s0 = 0.0;
    for (std::size_t k = 1; 2 * k < j.size(); ++k) {
        const double term = j[2 * k].value() / static_cast<double>(k);
        s0 += (k % 2 == 0) ? term : -term;
    }
    y0 = (2.0 / kPi) * (lg * j0 - 2.0 * s0);

    double s1 = 0.0;
    for (std::size_t m = 2; 2 * m - 1 < j.size(); ++m) {
        const double md = static_cast<double>(m);
        const double term = (2.0 * md - 1.0) / (md * (md - 1.0)) * j[2 * m - 1].value();
        s1 += (m % 2 == 0) ? term : -term;
    }
    y1 = (2.0 / kPi) * (-j0 / x + (lg - 1.0) * j1 + s1);
}

struct JYSequence {
    std::vector<Scaled> j;  // at least n_top + 1 entries
    std::vector<Scaled> y;  // exactly n_top + 1 entries
};

JYSequence jy_sequence(int n_top, double x) {
    JYSequence out;
    out.j = miller_j(std::max(n_top, 1), x);
    double y0, y1;
    if (x < kAsymptoticThreshold) {
        neumann_y01(out.j, x, y0, y1);
    } else {
        const double sn = std::sin(x), cs = std::cos(x);
        double j;
        asymptotic_jy(0, x, sn, cs, j, y0);
        asymptotic_jy(1, x, sn, cs, j, y1);
    }
    out.y.resize(static_cast<std::size_t>(n_top) + 1);
    out.y[0] = {y0, 0};
    if (n_top == 0) return out;
    out.y[1] = {y1, 0};
    int e = 0;
    double ym1 = y0, yn = y1;
    for (int n = 1; n < n_top; ++n) {
        const double yp1 = (2.0 * n / x) * yn - ym1;
        ym1 = yn;
        yn = yp1;
        out.y[static_cast<std::size_t>(n) + 1] = {yn, e};
        if (std::abs(yn) > kRescale) {
            yn = std::ldexp(yn, -kRescaleExp);
            ym1 = std::ldexp(ym1, -kRescaleExp);
            e += kRescaleExp;
        }
    }
    return out;
}

// H_n = J_n + i Y_n as mant * 2^exp2.
struct ScaledComplex {
    Complex mant;
    int exp2 = 0;

    [[nodiscard]] double log_abs() const { return std::log(std::abs(mant)) + exp2 * kLn2; }
};

ScaledComplex combine(const Scaled& j, const Scaled& y) {
    // Y dominates J whenever either is rescaled, so align J to the Y exponent
    return {Complex(std::ldexp(j.mant, j.exp2 - y.exp2), y.mant), y.exp2};
}

std::vector<ScaledComplex> hankel_scaled(int n_top, double x) {
    const JYSequence s = jy_sequence(n_top, x);
    std::vector<ScaledComplex> out(static_cast<std::size_t>(n_top) + 1);
    for (std::size_t n = 0; n < out.size(); ++n) out[n] = combine(s.j[n], s.y[n]);
    return out;
}

Complex scaled_ratio(const ScaledComplex& num, const ScaledComplex& den) {
    if (num.log_abs() - den.log_abs() < kDropLog) return {0.0, 0.0};
    const Complex q = num.mant / den.mant;
    const int shift = num.exp2 - den.exp2;
    return {std::ldexp(q.real(), shift), std::ldexp(q.imag(), shift)};
}

void check_transfer_args(double arg_out, double arg_in, const char* who) {
    check_argument(arg_in, who);
    check_argument(arg_out, who);
    if (arg_out < arg_in) throw std::invalid_argument(std::string(who) + ": arg_out must be >= arg_in");
}

Complex hankel_from(const JYSequence& s, int n) {
    const double y = s.y[static_cast<std::size_t>(n)].value();
    if (!std::isfinite(y)) throw std::overflow_error("hankel1: |Y_n(x)| exceeds the double range");
    return {s.j[static_cast<std::size_t>(n)].value(), y};
}

double parity(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

double bessel_j(int n, double x, Limits limits) {
    check_argument(x, "bessel_j");
    check_order(n, limits, "bessel_j");
    const int m = std::abs(n);
    const std::vector<Scaled> j = miller_j(m, x);
    const double v = j[static_cast<std::size_t>(m)].value();
    return n < 0 ? parity(m) * v : v;
}

double bessel_y(int n, double x, Limits limits) { return hankel1(n, x, limits).imag(); }

Complex hankel1(int n, double x, Limits limits) {
    check_argument(x, "hankel1");
    check_order(n, limits, "hankel1");
    const int m = std::abs(n);
    const Complex h = hankel_from(jy_sequence(m, x), m);
    return n < 0 ? parity(m) * h : h;
}

Complex hankel1_derivative(int n, double x, Limits limits) {
    check_argument(x, "hankel1_derivative");
    check_order(n, limits, "hankel1_derivative");
    const int m = std::abs(n);
    const JYSequence s = jy_sequence(m + 1, x);
    Complex d;
    if (m == 0) {
        d = -hankel_from(s, 1);
    } else {
        d = hankel_from(s, m - 1) - (static_cast<double>(m) / x) * hankel_from(s, m);
    }
    return n < 0 ? parity(m) * d : d;
}

double log_bessel_k(int n, double x, Limits limits) {
    check_argument(x, "log_bessel_k");
    check_order(n, limits, "log_bessel_k");
    const int m = std::abs(n);
    return k_sequence(m, x).k[static_cast<std::size_t>(m)].log_abs();
}

double bessel_k(int n, double x, Limits limits) {
    check_argument(x, "bessel_k");
    check_order(n, limits, "bessel_k");
    const int m = std::abs(n);
    const Scaled k = k_sequence(m, x).k[static_cast<std::size_t>(m)];
    const double lk = k.log_abs();
    if (lk > kLogMax) throw std::overflow_error("bessel_k: K_n(x) exceeds the double range");
    if (lk < kLogMin) throw std::underflow_error("bessel_k: K_n(x) is below the normal double range");
    return k.value();
}

double bessel_k_derivative(int n, double x, Limits limits) {
    check_argument(x, "bessel_k_derivative");
    check_order(n, limits, "bessel_k_derivative");
    const int m = std::abs(n);
    const KSequence s = k_sequence(m + 1, x);
    const auto um = static_cast<std::size_t>(m);
    const double factor = (m == 0) ? s.q[1] : 0.5 * (1.0 / s.q[um] + s.q[um + 1]);
    const Scaled d{-s.k[um].mant * factor, s.k[um].exp2};
    const double l = d.log_abs();
    if (l > kLogMax) throw std::overflow_error("bessel_k_derivative: value exceeds the double range");
    if (l < kLogMin) throw std::underflow_error("bessel_k_derivative: value is below the normal double range");
    return d.value();
}

std::vector<TransferFactor> hankel_transfer_table(int n_max, double arg_out, double arg_in, Limits limits) {
    check_transfer_args(arg_out, arg_in, "hankel_transfer");
    if (n_max < 0) throw std::invalid_argument("hankel_transfer: negative n_max");
    check_order(n_max, limits, "hankel_transfer");
    const std::vector<ScaledComplex> hin = hankel_scaled(n_max, arg_in);
    const std::vector<ScaledComplex> hout = hankel_scaled(n_max + 1, arg_out);
    std::vector<TransferFactor> out(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        const auto un = static_cast<std::size_t>(n);
        TransferFactor& t = out[un];
        t.value_ratio = scaled_ratio(hout[un], hin[un]);
        if (n == 0) {
            t.deriv_ratio = -scaled_ratio(hout[1], hin[0]);
        } else {
            t.deriv_ratio = scaled_ratio(hout[un - 1], hin[un]) - (static_cast<double>(n) / arg_out) * t.value_ratio;
        }
    }
    return out;
}

std::vector<TransferFactor> modk_transfer_table(int n_max, double arg_out, double arg_in, Limits limits) {
    check_transfer_args(arg_out, arg_in, "modk_transfer");
    if (n_max < 0) throw std::invalid_argument("modk_transfer: negative n_max");
    check_order(n_max, limits, "modk_transfer");
    const KSequence kin = k_sequence(n_max, arg_in);
    const KSequence kout = k_sequence(n_max + 1, arg_out);
    std::vector<TransferFactor> out(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        const auto un = static_cast<std::size_t>(n);
        const double v = scaled_ratio(kout.k[un], kin.k[un]);
        const double factor = (n == 0) ? kout.q[1] : 0.5 * (1.0 / kout.q[un] + kout.q[un + 1]);
        out[un] = {Complex(v, 0.0), Complex(-v * factor, 0.0)};
    }
    return out;
}

TransferFactor hankel_transfer(int n, double arg_out, double arg_in, Limits limits) {
    check_order(n, limits, "hankel_transfer");
    return hankel_transfer_table(std::abs(n), arg_out, arg_in, limits).back();
}

TransferFactor modk_transfer(int n, double arg_out, double arg_in, Limits limits) {
    check_order(n, limits, "modk_transfer");
    return modk_transfer_table(std::abs(n), arg_out, arg_in, limits).back();
}

Order01 order01_reference(double x) {
    check_argument(x, "order01_reference");
    Order01 r{};
    if (x >= kAsymptoticThreshold) {
        const AsymptoticSums a0 = asymptotic_sums(0, x);
        const AsymptoticSums a1 = asymptotic_sums(1, x);
        const double sn = std::sin(x), cs = std::cos(x);
        const double amp = std::sqrt(2.0 / (kPi * x));
        const double r2 = 1.0 / std::numbers::sqrt2;
        const double c0 = (cs + sn) * r2, s0 = (sn - cs) * r2;  // cos, sin of x - pi/4
        // x - 3 pi/4: cos = s0, sin = -c0
        r.j0 = amp * (a0.p * c0 - a0.q * s0);
        r.y0 = amp * (a0.p * s0 + a0.q * c0);
        r.j1 = amp * (a1.p * s0 + a1.q * c0);
        r.y1 = amp * (-a1.p * c0 + a1.q * s0);
        if (x < 745.0) {
            const double ka = std::sqrt(kPi / (2.0 * x)) * std::exp(-x);
            r.k0 = ka * a0.s;
            r.k1 = ka * a1.s;
        }
        return r;
    }

    // Miller recurrence accumulating the normalisation and Neumann sums on the fly
    int m_start = static_cast<int>(std::ceil(x)) + 30 + static_cast<int>(12.0 * std::cbrt(x));
    if (m_start % 2 != 0) ++m_start;
    const double two_over_x = 2.0 / x;
    double fk = 1.0, fkp1 = 0.0;
    double norm = 2.0;
    double even = 0.0;  // sum_k>=1 (-1)^k f_2k / k
    double odd = 0.0;   // sum_m>=2 (-1)^m (2m-1)/(m(m-1)) f_{2m-1}
    {
        const double mk = 0.5 * m_start;
        even = ((m_start / 2) % 2 == 0 ? 1.0 : -1.0) / mk;
    }
    for (int k = m_start; k >= 2; --k) {
        const double fkm1 = k * two_over_x * fk - fkp1;
        fkp1 = fk;
        fk = fkm1;
        const int idx = k - 1;
        if (idx % 2 == 0) {
            const int h = idx / 2;
            norm += 2.0 * fk;
            even += ((h % 2 == 0) ? fk : -fk) / h;
        } else if (idx >= 3) {
            const int m = (idx + 1) / 2;
            const double w = (2.0 * m - 1.0) / (static_cast<double>(m) * (m - 1.0));
            odd += (m % 2 == 0) ? w * fk : -w * fk;
        }
        if (std::abs(fk) > 1e250) {
            fk *= 1e-250;
            fkp1 *= 1e-250;
            norm *= 1e-250;
            even *= 1e-250;
            odd *= 1e-250;
        }
    }
    const double f1 = fk;
    const double f0 = two_over_x * f1 - fkp1;
    norm += f0;
    const double inv = 1.0 / norm;
    r.j0 = f0 * inv;
    r.j1 = f1 * inv;
    const double lg = std::log(0.5 * x) + kEuler;
    r.y0 = (2.0 / kPi) * (lg * r.j0 - 2.0 * even * inv);
    r.y1 = (2.0 / kPi) * (-r.j0 / x + (lg - 1.0) * r.j1 + odd * inv);

    if (x <= kSeriesThresholdK) {
        series_k01(x, r.k0, r.k1);
    } else {
        double k0s, k1s;
        scaled_k01_large(x, k0s, k1s);
        const double ex = std::exp(-x);
        r.k0 = k0s * ex;
        r.k1 = k1s * ex;
    }
    return r;
}

namespace {

// Piecewise Chebyshev interpolants on (0, 25) of the smooth parts of the
// order 0/1 functions, sampled once from order01_reference:
//   Y_0 = (2/pi) ln(x/2) J_0 + q0,   Y_1 = (2/pi) (ln(x/2) J_1 - 1/x) + q1,
//   x <= 2: K_0 = -ln(x/2) I_0 + p0,  K_1 = ln(x/2) I_1 + 1/x + p1,
//   x > 2:  e^x K_0, e^x K_1 directly.
// I_0, I_1 come from their ascending series. Every tabulated part is smooth
// on its interval, so a low degree reaches full precision.
class Order01Table {
public:
    static constexpr int kDegree = 13;
    static constexpr int kPerUnit = 4;
    static constexpr int kIntervals = 25 * kPerUnit;
    static constexpr int kSeriesIntervals = 2 * kPerUnit;
    static constexpr int kFuncs = 6;

    Order01Table() {
        constexpr int m = kDegree + 1;
        for (int iv = 0; iv < kIntervals; ++iv) {
            const double lo = static_cast<double>(iv) / kPerUnit;
            const double half = 0.5 / kPerUnit;
            double samples[kFuncs][m];
            for (int p = 0; p < m; ++p) {
                const double t = std::cos(kPi * (p + 0.5) / m);
                const double x = lo + half * (t + 1.0);
                const Order01 o = order01_reference(x);
                const double lg = std::log(0.5 * x);
                samples[0][p] = o.j0;
                samples[1][p] = o.j1;
                samples[2][p] = o.y0 - (2.0 / kPi) * lg * o.j0;
                samples[3][p] = o.y1 - (2.0 / kPi) * (lg * o.j1 - 1.0 / x);
                if (iv < kSeriesIntervals) {
                    // K_0 + ln(x/2) I_0 and K_1 - ln(x/2) I_1 - 1/x, with I from its series
                    double i0, i1;
                    series_i01(x, i0, i1);
                    samples[4][p] = o.k0 + lg * i0;
                    samples[5][p] = o.k1 - lg * i1 - 1.0 / x;
                } else {
                    const double ex = std::exp(x);
                    samples[4][p] = o.k0 * ex;
                    samples[5][p] = o.k1 * ex;
                }
            }
            for (int f = 0; f < kFuncs; ++f) {
                for (int j = 0; j < m; ++j) {
                    double c = 0.0;
                    for (int p = 0; p < m; ++p) c += samples[f][p] * std::cos(kPi * j * (p + 0.5) / m);
                    coeff_[iv][j][f] = (j == 0 ? 1.0 : 2.0) * c / m;
                }
            }
        }
    }

    [[nodiscard]] Order01 eval(double x) const {
        const int iv = std::min(static_cast<int>(x * kPerUnit), kIntervals - 1);
        const double t = 2.0 * (x * kPerUnit - iv) - 1.0;
        const double t2 = 2.0 * t;
        double b1[kFuncs] = {}, b2[kFuncs] = {};
        for (int j = kDegree; j >= 1; --j) {
            for (int f = 0; f < kFuncs; ++f) {
                const double b0 = t2 * b1[f] - b2[f] + coeff_[iv][j][f];
                b2[f] = b1[f];
                b1[f] = b0;
            }
        }
        double v[kFuncs];
        for (int f = 0; f < kFuncs; ++f) v[f] = t * b1[f] - b2[f] + coeff_[iv][0][f];

        Order01 r{};
        const double lg = std::log(0.5 * x);
        r.j0 = v[0];
        r.j1 = v[1];
        r.y0 = (2.0 / kPi) * lg * v[0] + v[2];
        r.y1 = (2.0 / kPi) * (lg * v[1] - 1.0 / x) + v[3];
        if (iv < kSeriesIntervals) {
            double i0, i1;
            series_i01(x, i0, i1);
            r.k0 = -lg * i0 + v[4];
            r.k1 = lg * i1 + 1.0 / x + v[5];
        } else {
            const double ex = std::exp(-x);
            r.k0 = v[4] * ex;
            r.k1 = v[5] * ex;
        }
        return r;
    }

private:
    // I_0, I_1 for x <= 2: all terms positive, 14 terms reach double precision.
    static void series_i01(double x, double& i0, double& i1) {
        const double t = 0.25 * x * x;
        double a0 = 1.0, a1 = 1.0;
        i0 = 0.0;
        i1 = 0.0;
        for (int k = 0; k < 14; ++k) {
            i0 += a0;
            i1 += a1;
            a0 *= t / ((k + 1.0) * (k + 1.0));
            a1 *= t / ((k + 1.0) * (k + 2.0));
        }
        i1 *= 0.5 * x;
    }

    double coeff_[kIntervals][kDegree + 1][kFuncs];
};

}  // namespace

Order01 order01(double x) {
    check_argument(x, "order01");
    if (x >= kAsymptoticThreshold) return order01_reference(x);
    static const Order01Table table;
    return table.eval(x);
}

}  // namespace flexsrc::specfun
