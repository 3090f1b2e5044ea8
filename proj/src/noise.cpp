#include "flexsrc/noise.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace flexsrc {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

NoiseScale parse_noise_scale(const std::string& name) {
    if (name == "u") return NoiseScale::U;
    if (name == "lap_u") return NoiseScale::LapU;
    throw std::invalid_argument("noise scale must be 'u' or 'lap_u', got '" + name + "'");
}

std::string to_string(NoiseScale scale) { return scale == NoiseScale::U ? "u" : "lap_u"; }

double noise_draw(std::uint64_t seed, double k, std::uint64_t angle, unsigned draw) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ std::bit_cast<std::uint64_t>(k));
    h = splitmix64(h ^ ((angle << 2) | (draw & 3U)));
    const double u01 = static_cast<double>(h >> 11) * 0x1.0p-53;
    return 2.0 * u01 - 1.0;
}

CauchyTrace perturb_trace(const CauchyTrace& trace, const NoiseParams& p) {
    if (!(p.delta >= 0.0 && p.delta < 1.0)) throw std::invalid_argument("noise level must lie in [0, 1)");
    if (trace.dnu_u || trace.dnu_lap_u) {
        throw std::invalid_argument("perturb_trace: noise applies to measured u and Lap u only");
    }
    CauchyTrace out = trace;
    if (p.delta == 0.0) return out;
    for (std::size_t j = 0; j < trace.u.size(); ++j) {
        const double r1 = noise_draw(p.seed, trace.k, j, 0);
        const double r2 = noise_draw(p.seed, trace.k, j, 1);
        const double r3 = noise_draw(p.seed, trace.k, j, 2);
        const double r4 = noise_draw(p.seed, trace.k, j, 3);
        const double mu = std::abs(trace.u[j]);
        const double ml = p.scale == NoiseScale::U ? mu : std::abs(trace.lap_u[j]);
        out.u[j] += p.delta * r1 * mu * std::polar(1.0, kPi * r2);
        out.lap_u[j] += p.delta * r3 * ml * std::polar(1.0, kPi * r4);
    }
    return out;
}

}  // namespace flexsrc
