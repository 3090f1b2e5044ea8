#pragma once

// Multiplicative noise on measured Dirichlet data:
//   u^d     = u     + delta r1 |u| exp(i pi r2)
//   Lap u^d = Lap u + delta r3 |m| exp(i pi r4),  m = u or Lap u (configurable)
// with r1..r4 uniform on [-1, 1].

#include <cstdint>
#include <string>

#include "flexsrc/core.hpp"

namespace flexsrc {

enum class NoiseScale {
    U,     // both lines scaled by |u|
    LapU,  // the Laplacian line scaled by |Lap u|
};

NoiseScale parse_noise_scale(const std::string& name);  // "u" or "lap_u"
std::string to_string(NoiseScale scale);

struct NoiseParams {
    double delta = 0.0;
    std::uint64_t seed = 0;
    NoiseScale scale = NoiseScale::LapU;
};

/// Uniform draw on [-1, 1] from a counter-based hash of
/// (seed, bit pattern of k, angle index, draw index 0..3).
double noise_draw(std::uint64_t seed, double k, std::uint64_t angle, unsigned draw);

/// Throws std::invalid_argument if delta is outside [0, 1) or the trace
/// carries normal derivatives (only measured Dirichlet data is perturbed).
CauchyTrace perturb_trace(const CauchyTrace& trace, const NoiseParams& p);

}  // namespace flexsrc
