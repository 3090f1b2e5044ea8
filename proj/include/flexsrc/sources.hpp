#pragma once

// Exact source terms used to generate synthetic data and to score reconstructions.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "flexsrc/core.hpp"

namespace flexsrc {

enum class SourceKind {
    S1,          // mountain: Gaussian bump plus a saddle damped by exp(-90 |x|^2)
    S1Printed,   // same with the saddle damped by exp(-90 (x1^2 - x2^2)), grows along x2
    S2,          // two-level disk, discontinuous
    S3,          // peaks-type function on [-3, 3]^2
    Gridded,     // replay of sampled values, nearest-neighbour lookup
};

/// Parses "s1", "s1_printed", "s2", "s3" (case-insensitive). Gridded sources
/// are created from samples, never by name.
SourceKind parse_source_kind(const std::string& name);
std::string to_string(SourceKind kind);

class SourceSpec {
public:
    static SourceSpec analytic(SourceKind kind);
    /// Samples ordered like grid.points(); throws on size mismatch or non-finite values.
    static SourceSpec gridded(CartesianGrid grid, std::vector<double> values);

    [[nodiscard]] SourceKind kind() const { return kind_; }
    [[nodiscard]] std::string name() const { return to_string(kind_); }

    /// Gridded lookups outside the closed square of the grid throw std::out_of_range.
    [[nodiscard]] double eval(const Point2& x) const;

    /// Analytic gradient; available for S1, S1Printed and S3.
    [[nodiscard]] bool has_gradient() const;
    [[nodiscard]] Point2 gradient(const Point2& x) const;

    /// Side length of the sampling grid for gridded sources.
    [[nodiscard]] std::optional<double> grid_side() const;

private:
    SourceSpec() = default;

    SourceKind kind_ = SourceKind::S1;
    std::shared_ptr<const CartesianGrid> grid_;
    std::shared_ptr<const std::vector<double>> values_;
};

double eval_source(const SourceSpec& spec, const Point2& x);

/// eval_source at every grid point, in grid order. For gridded sources the
/// grid side must match the sampling grid.
std::vector<double> sample(const SourceSpec& spec, const CartesianGrid& grid);

/// Analytic gradient at every grid point, in grid order.
std::vector<Point2> sample_gradient(const SourceSpec& spec, const CartesianGrid& grid);

}  // namespace flexsrc
