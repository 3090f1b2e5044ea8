#include <doctest.h>

#include <cmath>

#include "flexsrc/noise.hpp"

using namespace flexsrc;

namespace {

CauchyTrace sample_trace() {
    const CircleGrid c(0.8, 40, kTwoPi);
    std::vector<Complex> u, l;
    for (int j = 0; j < 40; ++j) {
        u.push_back(std::polar(1.0 + 0.5 * std::cos(c.angle(j)), 3.0 * c.angle(j)));
        l.push_back(-50.0 * u.back() + Complex(0.0, 2.0));
    }
    u[7] = 0.0;
    l[7] = 0.0;
    return {7.0, c, u, l, std::nullopt, std::nullopt};
}

}  // namespace

TEST_CASE("zero noise is the identity") {
    const CauchyTrace t = sample_trace();
    const CauchyTrace n = perturb_trace(t, {0.0, 42, NoiseScale::U});
    CHECK(n.u == t.u);
    CHECK(n.lap_u == t.lap_u);
}

TEST_CASE("pointwise bound and zero samples") {
    const CauchyTrace t = sample_trace();
    for (NoiseScale s : {NoiseScale::U, NoiseScale::LapU}) {
        for (std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
            const CauchyTrace n = perturb_trace(t, {0.2, seed, s});
            for (std::size_t j = 0; j < t.u.size(); ++j) {
                CHECK(std::abs(n.u[j] - t.u[j]) <= 0.2 * std::abs(t.u[j]) * (1.0 + 1e-15));
                const double m = s == NoiseScale::U ? std::abs(t.u[j]) : std::abs(t.lap_u[j]);
                CHECK(std::abs(n.lap_u[j] - t.lap_u[j]) <= 0.2 * m * (1.0 + 1e-15));
            }
            CHECK(n.u[7] == Complex(0.0));
            CHECK(n.lap_u[7] == Complex(0.0));
        }
    }
}

TEST_CASE("determinism and seed dependence") {
    const CauchyTrace t = sample_trace();
    const NoiseParams p{0.1, 7, NoiseScale::U};
    CHECK(perturb_trace(t, p).u == perturb_trace(t, p).u);
    CHECK(perturb_trace(t, p).lap_u == perturb_trace(t, p).lap_u);
    CHECK(perturb_trace(t, p).u != perturb_trace(t, {0.1, 8, NoiseScale::U}).u);
    CHECK(noise_draw(1, 2.0, 3, 0) != noise_draw(1, 2.0, 3, 1));
    CHECK(noise_draw(1, 2.0, 3, 0) != noise_draw(1, 2.0000000000000004, 3, 0));
}

TEST_CASE("draws are uniform on [-1, 1]") {
    double sum = 0.0, sum2 = 0.0;
    double lo = 1.0, hi = -1.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double r = noise_draw(5, 1.25, static_cast<std::uint64_t>(i), 2);
        sum += r;
        sum2 += r * r;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    CHECK(lo >= -1.0);
    CHECK(hi <= 1.0);
    CHECK(std::abs(sum / n) < 5.0 * std::sqrt(1.0 / 3.0 / n));
    CHECK(sum2 / n == doctest::Approx(1.0 / 3.0).epsilon(0.01));
}

TEST_CASE("seed average converges to the clean trace") {
    const CauchyTrace t = sample_trace();
    const int seeds = 10000;
    const double delta = 0.5;
    std::vector<Complex> mean(t.u.size());
    for (int s = 0; s < seeds; ++s) {
        const CauchyTrace n = perturb_trace(t, {delta, static_cast<std::uint64_t>(s), NoiseScale::U});
        for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += n.u[j] / static_cast<double>(seeds);
    }
    // each component of r1 exp(i pi r2) has variance 1/6
    for (std::size_t j : {0UL, 11UL, 25UL}) {
        const double sigma = delta * std::abs(t.u[j]) * std::sqrt(1.0 / 6.0 / seeds);
        CHECK(std::abs(mean[j].real() - t.u[j].real()) <= 3.0 * sigma);
        CHECK(std::abs(mean[j].imag() - t.u[j].imag()) <= 3.0 * sigma);
    }
}

TEST_CASE("rejections") {
    CauchyTrace t = sample_trace();
    CHECK_THROWS_AS(perturb_trace(t, {1.0, 0, NoiseScale::U}), std::invalid_argument);
    CHECK_THROWS_AS(perturb_trace(t, {-0.1, 0, NoiseScale::U}), std::invalid_argument);
    t.dnu_u = t.u;
    t.dnu_lap_u = t.u;
    CHECK_THROWS_AS(perturb_trace(t, {0.1, 0, NoiseScale::U}), std::invalid_argument);
    CHECK(parse_noise_scale("lap_u") == NoiseScale::LapU);
    CHECK_THROWS_AS(parse_noise_scale("abs"), std::invalid_argument);
}
