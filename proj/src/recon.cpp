#include "flexsrc/recon.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace flexsrc {

namespace {

constexpr double kSnap = 1e-9;
constexpr double kWavenumberTolerance = 1e-9;

void check_period(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("period a must be positive and finite");
}

void check_lambda(double lambda, double a) {
    const double k0 = kTwoPi / a * lambda;
    if (!(k0 > 0.0) || !(k0 < 0.5)) {
        throw std::invalid_argument("lambda must satisfy 0 < (2 pi / a) lambda < 1/2");
    }
}

}  // namespace

TruncationRule parse_truncation_rule(const std::string& name) {
    std::string s = name;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "paper") return TruncationRule::Paper;
    if (s == "alt") return TruncationRule::Alt;
    throw std::invalid_argument("unknown truncation rule '" + name + "' (expected paper or alt)");
}

std::string to_string(TruncationRule rule) { return rule == TruncationRule::Paper ? "paper" : "alt"; }

int integer_bracket(double x) {
    const double r = std::round(x);
    if (std::abs(x - r) <= kSnap) return static_cast<int>(r);
    return static_cast<int>(std::ceil(x + 1.0)) - 1;
}

int truncation_order(double delta, TruncationRule rule) {
    if (!(delta > 0.0) || !(delta < 1.0)) {
        throw std::invalid_argument("truncation_order: delta must lie in (0, 1); set N explicitly for noiseless data");
    }
    if (rule == TruncationRule::Paper) return 5 * integer_bracket(std::pow(delta, -0.25));
    return 2 * integer_bracket(std::pow(delta, -1.0 / 3.0));
}

double mode_wavenumber(int norm2, double a) { return kTwoPi / a * std::sqrt(static_cast<double>(norm2)); }

WavenumberTable admissible_wavenumbers(int N, double a, double lambda) {
    if (N < 1) throw std::invalid_argument("admissible_wavenumbers: N must be >= 1");
    check_period(a);
    check_lambda(lambda, a);

    WavenumberTable t;
    t.a = a;
    t.N = N;
    t.lambda = lambda;

    std::map<int, std::size_t> by_norm;
    for (int l1 = -N; l1 <= N; ++l1) {
        for (int l2 = -N; l2 <= N; ++l2) {
            if (l1 != 0 || l2 != 0) by_norm.emplace(l1 * l1 + l2 * l2, 0);
        }
    }
    t.distinct_k.push_back(t.kappa() * lambda);
    t.distinct_norm2.push_back(-1);
    for (auto& [n2, idx] : by_norm) {
        idx = t.distinct_k.size();
        t.distinct_k.push_back(mode_wavenumber(n2, a));
        t.distinct_norm2.push_back(n2);
    }

    t.entries.reserve(static_cast<std::size_t>((2 * N + 1) * (2 * N + 1)));
    t.entries.push_back({ModeIndex::shifted_zero(lambda), t.distinct_k[0], 0});
    for (int l1 = -N; l1 <= N; ++l1) {
        for (int l2 = -N; l2 <= N; ++l2) {
            if (l1 == 0 && l2 == 0) continue;
            const std::size_t d = by_norm.at(l1 * l1 + l2 * l2);
            t.entries.push_back({ModeIndex::integer(l1, l2), t.distinct_k[d], d});
        }
    }
    return t;
}

CoefficientTable::CoefficientTable(double a, int N, double lambda) : a_(a), n_(N), lambda_(lambda) {
    check_period(a);
    if (N < 1) throw std::invalid_argument("CoefficientTable: N must be >= 1");
    const auto side = static_cast<std::size_t>(2 * N + 1);
    values_.assign(side * side, Complex{});
    set_.assign(side * side, 0);
}

std::size_t CoefficientTable::slot(int l1, int l2) const {
    if (std::abs(l1) > n_ || std::abs(l2) > n_) {
        throw std::out_of_range("CoefficientTable: mode (" + std::to_string(l1) + ", " + std::to_string(l2) +
                                ") outside |l|_inf <= " + std::to_string(n_));
    }
    return static_cast<std::size_t>((l1 + n_) * (2 * n_ + 1) + (l2 + n_));
}

Complex CoefficientTable::at(int l1, int l2) const { return values_[slot(l1, l2)]; }

void CoefficientTable::set(int l1, int l2, Complex value) {
    const std::size_t s = slot(l1, l2);
    values_[s] = value;
    set_[s] = 1;
}

bool CoefficientTable::is_set(int l1, int l2) const { return set_[slot(l1, l2)] != 0; }

bool CoefficientTable::integer_modes_complete() const {
    const std::size_t centre = slot(0, 0);
    for (std::size_t s = 0; s < set_.size(); ++s) {
        if (s != centre && set_[s] == 0) return false;
    }
    return true;
}

double CoefficientTable::max_abs() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
}

void write_csv(std::ostream& os, const CoefficientTable& table) {
    os << "l1,l2,re,im\n";
    os << std::setprecision(17);
    const int n = table.N();
    os << table.lambda() << ",0," << table.zeroth().real() << ',' << table.zeroth().imag() << '\n';
    for (int l1 = -n; l1 <= n; ++l1) {
        for (int l2 = -n; l2 <= n; ++l2) {
            if (l1 == 0 && l2 == 0) continue;
            const Complex v = table.at(l1, l2);
            os << l1 << ',' << l2 << ',' << v.real() << ',' << v.imag() << '\n';
        }
    }
}

CoefficientTable read_coefficients_csv(std::istream& is, double a) {
    struct Row {
        double l1, l2, re, im;
    };
    std::vector<Row> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#' || line.rfind("l1,", 0) == 0) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        Row r{};
        if (!(ss >> r.l1 >> r.l2 >> r.re >> r.im)) {
            throw std::runtime_error("coefficient CSV: malformed line " + std::to_string(line_no));
        }
        rows.push_back(r);
    }
    if (rows.empty()) throw std::runtime_error("coefficient CSV: no rows");
    const double lambda = rows.front().l1;
    int n = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        n = std::max({n, static_cast<int>(std::abs(rows[i].l1)), static_cast<int>(std::abs(rows[i].l2))});
    }
    CoefficientTable t(a, std::max(n, 1), lambda);
    t.set_zeroth({rows.front().re, rows.front().im});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        t.set(static_cast<int>(rows[i].l1), static_cast<int>(rows[i].l2), {rows[i].re, rows[i].im});
    }
    return t;
}

Complex fourier_coefficient(const ModeIndex& l, const CauchyTrace& data, double a) {
    check_period(a);
    data.validate();
    if (!data.has_normal_derivatives()) {
        throw std::invalid_argument("fourier_coefficient: trace lacks normal derivatives");
    }
    if (!data.circle.full_aperture()) {
        throw std::invalid_argument("fourier_coefficient: the boundary identity needs a full circle");
    }
    const double kappa = kTwoPi / a;
    const double k = kappa * l.norm();
    if (std::abs(data.k - k) > kWavenumberTolerance * k) {
        throw std::invalid_argument("fourier_coefficient: trace wavenumber " + std::to_string(data.k) +
                                    " does not match k_l = " + std::to_string(k));
    }

    const int m = data.circle.angle_count();
    const double ds = kTwoPi * data.circle.radius() / m;
    Complex lap_part{}, u_part{};
    for (int j = 0; j < m; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        const Point2 nu = data.circle.normal(j);
        const Complex conj_phi = std::conj(fourier_basis(l, data.circle.point(j), a));
        const Complex tang = kI * (kappa * (l.l1 * nu.x1 + l.l2 * nu.x2));
        lap_part += ((*data.dnu_lap_u)[uj] + tang * data.lap_u[uj]) * conj_phi;
        u_part += ((*data.dnu_u)[uj] + tang * data.u[uj]) * conj_phi;
    }
    return (lap_part - k * k * u_part) * (ds / (a * a));
}

double sinc(double t) {
    if (t == 0.0) return 1.0;
    if (t == std::round(t)) return 0.0;
    const double x = kPi * t;
    return std::sin(x) / x;
}

double basis_overlap(const ModeIndex& l, double lambda, double a) { return a * a * sinc(l.l1 - lambda) * sinc(l.l2); }

Complex zeroth_coefficient(const CauchyTrace& data, const CoefficientTable& coeffs, double lambda, double a) {
    if (!coeffs.integer_modes_complete()) {
        throw std::invalid_argument("zeroth_coefficient: integer-mode coefficients are missing");
    }
    const Complex boundary = fourier_coefficient(ModeIndex::shifted_zero(lambda), data, a);
    // only l2 = 0 modes overlap phi_l0
    Complex leak{};
    const int n = coeffs.N();
    for (int l1 = -n; l1 <= n; ++l1) {
        if (l1 == 0) continue;
        leak += coeffs.at(l1, 0) * basis_overlap(ModeIndex::integer(l1, 0), lambda, a);
    }
    return (boundary - leak / (a * a)) / sinc(lambda);
}

CoefficientTable compute_coefficients(const WavenumberTable& table, const std::vector<CauchyTrace>& lifted) {
    if (lifted.size() != table.distinct_k.size()) {
        throw std::invalid_argument("compute_coefficients: expected " + std::to_string(table.distinct_k.size()) +
                                    " lifted traces, got " + std::to_string(lifted.size()));
    }
    CoefficientTable out(table.a, table.N, table.lambda);
    const auto count = static_cast<long>(table.entries.size());
    std::vector<Complex> values(table.entries.size());
    std::string failure;
#pragma omp parallel for schedule(dynamic)
    for (long e = 1; e < count; ++e) {
        const WavenumberEntry& w = table.entries[static_cast<std::size_t>(e)];
        try {
            values[static_cast<std::size_t>(e)] = fourier_coefficient(w.l, lifted[w.distinct], table.a);
        } catch (const std::exception& ex) {
#pragma omp critical
            if (failure.empty()) failure = ex.what();
        }
    }
    if (!failure.empty()) throw std::invalid_argument(failure);
    for (std::size_t e = 1; e < table.entries.size(); ++e) {
        const ModeIndex& l = table.entries[e].l;
        out.set(static_cast<int>(l.l1), static_cast<int>(l.l2), values[e]);
    }
    out.set_zeroth(zeroth_coefficient(lifted[table.entries[0].distinct], out, table.lambda, table.a));
    return out;
}

namespace {

// exp(i kappa l x_i) for l = -n..n (row l + n) and every grid coordinate.
std::vector<Complex> axis_phases(const CartesianGrid& grid, double kappa, int n) {
    const int m = grid.points_per_side();
    std::vector<Complex> e(static_cast<std::size_t>((2 * n + 1) * m));
    for (int l = -n; l <= n; ++l) {
        for (int i = 0; i < m; ++i) {
            const double ph = kappa * l * grid.coordinate(i);
            e[static_cast<std::size_t>((l + n) * m + i)] = {std::cos(ph), std::sin(ph)};
        }
    }
    return e;
}

void check_grid(const CoefficientTable& coeffs, const CartesianGrid& grid) {
    if (std::abs(grid.side() - coeffs.a()) > 1e-12 * coeffs.a()) {
        throw std::invalid_argument("synthesize: grid side does not match the period of the coefficients");
    }
}

// sum over integer modes of weight(l1, l2) s_l phi_l, evaluated separably.
template <class Weight>
std::vector<Complex> modal_sum(const CoefficientTable& coeffs, const CartesianGrid& grid, Weight weight) {
    const int n = coeffs.N();
    const int m = grid.points_per_side();
    const double kappa = kTwoPi / coeffs.a();
    const std::vector<Complex> e = axis_phases(grid, kappa, n);
    const auto row = [&](int l, int i) { return e[static_cast<std::size_t>((l + n) * m + i)]; };

    // inner[l1][j] = sum_l2 weight s_l exp(i kappa l2 x2_j)
    std::vector<Complex> inner(static_cast<std::size_t>((2 * n + 1) * m));
    for (int l1 = -n; l1 <= n; ++l1) {
        for (int j = 0; j < m; ++j) {
            Complex acc{};
            for (int l2 = -n; l2 <= n; ++l2) {
                if (l1 == 0 && l2 == 0) continue;
                acc += weight(l1, l2) * coeffs.at(l1, l2) * row(l2, j);
            }
            inner[static_cast<std::size_t>((l1 + n) * m + j)] = acc;
        }
    }
    std::vector<Complex> out(grid.size());
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            Complex acc{};
            for (int l1 = -n; l1 <= n; ++l1) acc += row(l1, i) * inner[static_cast<std::size_t>((l1 + n) * m + j)];
            out[grid.index(i, j)] = acc;
        }
    }
    return out;
}

}  // namespace

std::vector<Complex> synthesize(const CoefficientTable& coeffs, const CartesianGrid& grid) {
    check_grid(coeffs, grid);
    std::vector<Complex> out = modal_sum(coeffs, grid, [](int, int) { return Complex(1.0); });
    const ModeIndex l0 = ModeIndex::shifted_zero(coeffs.lambda());
    for (std::size_t p = 0; p < grid.size(); ++p) out[p] += coeffs.zeroth() * fourier_basis(l0, grid[p], coeffs.a());
    return out;
}

std::vector<std::array<Complex, 2>> synthesize_gradient(const CoefficientTable& coeffs, const CartesianGrid& grid) {
    check_grid(coeffs, grid);
    const double kappa = kTwoPi / coeffs.a();
    const std::vector<Complex> d1 = modal_sum(coeffs, grid, [&](int l1, int) { return kI * (kappa * l1); });
    const std::vector<Complex> d2 = modal_sum(coeffs, grid, [&](int, int l2) { return kI * (kappa * l2); });
    const ModeIndex l0 = ModeIndex::shifted_zero(coeffs.lambda());
    const Complex g0 = coeffs.zeroth() * kI * (kappa * coeffs.lambda());
    std::vector<std::array<Complex, 2>> out(grid.size());
    for (std::size_t p = 0; p < grid.size(); ++p) {
        out[p] = {d1[p] + g0 * fourier_basis(l0, grid[p], coeffs.a()), d2[p]};
    }
    return out;
}

}  // namespace flexsrc
