#include <doctest.h>

#include <cmath>
#include <random>

#include "flexsrc/metrics.hpp"
#include "flexsrc/recon.hpp"
#include "flexsrc/sources.hpp"
#include "support/direct_coefficients.hpp"

using namespace flexsrc;

namespace {

std::vector<Complex> random_field(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> d;
    std::vector<Complex> v(n);
    for (auto& z : v) z = {d(rng), d(rng)};
    return v;
}

GradientField random_gradient(std::size_t n, unsigned seed) {
    const auto a = random_field(n, seed), b = random_field(n, seed + 1000);
    GradientField g(n);
    for (std::size_t p = 0; p < n; ++p) g[p] = {a[p], b[p]};
    return g;
}

double norm(const std::vector<Complex>& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("relative L2 error") {
    const auto e = random_field(50, 1);
    std::vector<Complex> scaled(e.size()), zero(e.size());
    for (std::size_t p = 0; p < e.size(); ++p) scaled[p] = 1.01 * e[p];
    CHECK(rel_l2(e, e) == 0.0);
    CHECK(rel_l2(zero, e) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rel_l2(scaled, e) == doctest::Approx(0.01).epsilon(1e-12));
    CHECK_THROWS_AS(rel_l2(e, zero), std::invalid_argument);
    CHECK_THROWS_AS(rel_l2(e, std::vector<Complex>(3)), std::invalid_argument);

    const std::vector<double> real{1.0, -2.0, 0.5};
    CHECK(rel_l2(std::vector<Complex>{1.0, -2.0, 0.5}, real) == 0.0);
}

TEST_CASE("relative H1 error") {
    const CartesianGrid g(1.0, 9);
    const auto e = random_field(g.size(), 2);
    const auto ge = random_gradient(g.size(), 3);
    CHECK(rel_h1(e, ge, e, ge) == 0.0);

    GradientField doubled = ge;
    double grad2 = 0.0, val2 = 0.0;
    for (std::size_t p = 0; p < g.size(); ++p) {
        doubled[p] = {2.0 * ge[p][0], 2.0 * ge[p][1]};
        grad2 += std::norm(ge[p][0]) + std::norm(ge[p][1]);
        val2 += std::norm(e[p]);
    }
    CHECK(rel_h1(e, doubled, e, ge) == doctest::Approx(std::sqrt(grad2 / (grad2 + val2))).epsilon(1e-13));
    CHECK_THROWS_AS(rel_h1(e, ge, std::vector<Complex>(g.size()), GradientField(g.size())), std::invalid_argument);
    CHECK_THROWS_AS(rel_h1(e, ge, e, GradientField(3)), std::invalid_argument);
}

TEST_CASE("errors are invariant under a common scale factor") {
    const CartesianGrid g(1.0, 15);
    const auto a = random_field(g.size(), 4), e = random_field(g.size(), 5);
    const auto ga = random_gradient(g.size(), 6), ge = random_gradient(g.size(), 7);
    for (Complex c : {Complex(3.0), Complex(-1e-3, 2.0), Complex(0.0, 1e5)}) {
        std::vector<Complex> ca(a), ce(e);
        GradientField cga(ga), cge(ge);
        for (std::size_t p = 0; p < g.size(); ++p) {
            ca[p] *= c;
            ce[p] *= c;
            cga[p] = {c * ga[p][0], c * ga[p][1]};
            cge[p] = {c * ge[p][0], c * ge[p][1]};
        }
        CHECK(std::abs(rel_l2(ca, ce) - rel_l2(a, e)) <= 1e-12);
        CHECK(std::abs(rel_h1(ca, cga, ce, cge) - rel_h1(a, ga, e, ge)) <= 1e-12);
        CHECK(std::abs(rel_h1(ca, cga, ce, g) - rel_h1(a, ga, e, g)) <= 1e-12);
    }
}

TEST_CASE("triangle bound on random fields") {
    for (unsigned s = 0; s < 20; ++s) {
        const auto a = random_field(40, 10 + s), b = random_field(40, 50 + s), e = random_field(40, 90 + s);
        std::vector<Complex> ab(40), be(40);
        for (std::size_t p = 0; p < 40; ++p) {
            ab[p] = a[p] - b[p];
            be[p] = b[p] - e[p];
        }
        CHECK(rel_l2(a, e) <= (norm(ab) + norm(be)) / norm(e) * (1.0 + 1e-14));
    }
}

TEST_CASE("finite-difference gradient") {
    // exact for quadratics, including the one-sided edge stencils
    const CartesianGrid g(1.0, 11);
    std::vector<Complex> f;
    for (const Point2& p : g.points()) f.emplace_back(p.x1 * p.x1 - 3.0 * p.x1 * p.x2 + 2.0 * p.x2, p.x2 * p.x2);
    const GradientField d = grid_gradient(f, g);
    for (std::size_t p = 0; p < g.size(); ++p) {
        const Point2& x = g[p];
        CHECK(std::abs(d[p][0] - Complex(2.0 * x.x1 - 3.0 * x.x2, 0.0)) < 1e-12);
        CHECK(std::abs(d[p][1] - Complex(-3.0 * x.x1 + 2.0, 2.0 * x.x2)) < 1e-12);
    }
    CHECK_THROWS_AS(grid_gradient(std::vector<Complex>(4), CartesianGrid(1.0, 2)), std::invalid_argument);

    // second-order convergence to the analytic gradient of the mountain source
    const SourceSpec s1 = SourceSpec::analytic(SourceKind::S1);
    std::vector<double> errs;
    for (int n : {101, 201}) {
        const CartesianGrid gn(1.0, n);
        const GradientField fd = grid_gradient(to_complex(sample(s1, gn)), gn);
        const GradientField an = to_complex(sample_gradient(s1, gn));
        double e = 0.0;
        for (std::size_t p = 0; p < gn.size(); ++p) {
            e = std::max({e, std::abs(fd[p][0] - an[p][0]), std::abs(fd[p][1] - an[p][1])});
        }
        errs.push_back(e);
    }
    CHECK(errs[0] / errs[1] > 3.5);
}

TEST_CASE("H1 error of a truncated Fourier series matches a plain re-implementation") {
    const double a = 1.0, lambda = 1e-3;
    const int n = 20;
    const auto rule = oracle::square_rule(a, 8);
    const auto s1f = [](double x1, double x2) {
        return eval_source(SourceSpec::analytic(SourceKind::S1), {x1, x2});
    };
    CoefficientTable c(a, n, lambda);
    c.set_zeroth(oracle::direct_coefficient(rule, s1f, a, 0.0, 0.0));
    for (int l1 = -n; l1 <= n; ++l1)
        for (int l2 = -n; l2 <= n; ++l2)
            if (l1 != 0 || l2 != 0) c.set(l1, l2, oracle::direct_coefficient(rule, s1f, a, l1, l2));

    const CartesianGrid g(a, 201);
    const auto sn = synthesize(c, g);
    const auto dsn = synthesize_gradient(c, g);
    const std::vector<double> exact = sample(SourceSpec::analytic(SourceKind::S1), g);
    const double lib = rel_h1(sn, dsn, to_complex(exact), g);

    // row-major 2-D arrays and explicit stencils
    const int m = g.points_per_side();
    const double h = g.spacing();
    auto ex = [&](int i, int j) { return exact[static_cast<std::size_t>(i * m + j)]; };
    auto d1 = [&](int i, int j) {
        if (i == 0) return (4.0 * ex(1, j) - 3.0 * ex(0, j) - ex(2, j)) / (2.0 * h);
        if (i == m - 1) return (ex(m - 3, j) - 4.0 * ex(m - 2, j) + 3.0 * ex(m - 1, j)) / (2.0 * h);
        return (ex(i + 1, j) - ex(i - 1, j)) / (2.0 * h);
    };
    auto d2 = [&](int i, int j) {
        if (j == 0) return (4.0 * ex(i, 1) - 3.0 * ex(i, 0) - ex(i, 2)) / (2.0 * h);
        if (j == m - 1) return (ex(i, m - 3) - 4.0 * ex(i, m - 2) + 3.0 * ex(i, m - 1)) / (2.0 * h);
        return (ex(i, j + 1) - ex(i, j - 1)) / (2.0 * h);
    };
    long double num = 0.0L, den = 0.0L;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const auto p = static_cast<std::size_t>(i * m + j);
            const double e1 = d1(i, j), e2 = d2(i, j);
            num += std::norm(sn[p] - ex(i, j)) + std::norm(dsn[p][0] - e1) + std::norm(dsn[p][1] - e2);
            den += ex(i, j) * ex(i, j) + e1 * e1 + e2 * e2;
        }
    }
    const double independent = static_cast<double>(std::sqrt(num / den));
    MESSAGE("rel H1 of the N = 20 truncation: " << lib);
    CHECK(std::abs(lib - independent) <= 1e-12);
}
