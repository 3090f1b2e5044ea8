#include "flexsrc/sources.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace flexsrc {

namespace {

double s1_bump(double x1, double x2) {
    const double d1 = x1 - 0.01, d2 = x2 - 0.12;
    return 1.1 * std::exp(-200.0 * (d1 * d1 + d2 * d2));
}

double s1(double x1, double x2, bool printed) {
    const double e = printed ? std::exp(-90.0 * (x1 * x1 - x2 * x2)) : std::exp(-90.0 * (x1 * x1 + x2 * x2));
    return s1_bump(x1, x2) - 100.0 * (x2 * x2 - x1 * x1) * e;
}

Point2 s1_gradient(double x1, double x2, bool printed) {
    const double b = s1_bump(x1, x2);
    const double p = x2 * x2 - x1 * x1;
    Point2 g{-400.0 * (x1 - 0.01) * b, -400.0 * (x2 - 0.12) * b};
    if (printed) {
        const double e = std::exp(-90.0 * (x1 * x1 - x2 * x2));
        g.x1 += 100.0 * x1 * (2.0 + 180.0 * p) * e;
        g.x2 += -100.0 * x2 * (2.0 + 180.0 * p) * e;
    } else {
        const double e = std::exp(-90.0 * (x1 * x1 + x2 * x2));
        g.x1 += 100.0 * x1 * (2.0 + 180.0 * p) * e;
        g.x2 += -100.0 * x2 * (2.0 - 180.0 * p) * e;
    }
    return g;
}

double s2(double x1, double x2) {
    const double r2 = x1 * x1 + x2 * x2;
    if (r2 < 0.04) return 0.8;
    if (r2 <= 0.09) return 0.3;
    return 0.0;
}

double s3(double x1, double x2) {
    const double ea = std::exp(-x1 * x1 - (x2 + 1.0) * (x2 + 1.0));
    const double eb = std::exp(-x1 * x1 - x2 * x2);
    const double ec = std::exp(-(x1 + 1.0) * (x1 + 1.0) - x2 * x2);
    const double q = 0.2 * x1 - x1 * x1 * x1 - std::pow(x2, 5);
    return 0.3 * (1.0 - x1) * (1.0 - x1) * ea - q * eb - 0.03 * ec;
}

Point2 s3_gradient(double x1, double x2) {
    const double ea = std::exp(-x1 * x1 - (x2 + 1.0) * (x2 + 1.0));
    const double eb = std::exp(-x1 * x1 - x2 * x2);
    const double ec = std::exp(-(x1 + 1.0) * (x1 + 1.0) - x2 * x2);
    const double w = 1.0 - x1;
    const double q = 0.2 * x1 - x1 * x1 * x1 - std::pow(x2, 5);
    Point2 g;
    g.x1 = 0.3 * (-2.0 * w - 2.0 * x1 * w * w) * ea - ((0.2 - 3.0 * x1 * x1) - 2.0 * x1 * q) * eb +
           0.06 * (x1 + 1.0) * ec;
    g.x2 = -0.6 * w * w * (x2 + 1.0) * ea - (-5.0 * std::pow(x2, 4) - 2.0 * x2 * q) * eb + 0.06 * x2 * ec;
    return g;
}

}  // namespace

SourceKind parse_source_kind(const std::string& name) {
    std::string s = name;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "s1") return SourceKind::S1;
    if (s == "s1_printed") return SourceKind::S1Printed;
    if (s == "s2") return SourceKind::S2;
    if (s == "s3") return SourceKind::S3;
    throw std::invalid_argument("unknown source '" + name + "' (expected s1, s1_printed, s2 or s3)");
}

std::string to_string(SourceKind kind) {
    switch (kind) {
        case SourceKind::S1: return "s1";
        case SourceKind::S1Printed: return "s1_printed";
        case SourceKind::S2: return "s2";
        case SourceKind::S3: return "s3";
        case SourceKind::Gridded: return "gridded";
    }
    return "unknown";
}

SourceSpec SourceSpec::analytic(SourceKind kind) {
    if (kind == SourceKind::Gridded) throw std::invalid_argument("SourceSpec::analytic: gridded needs samples");
    SourceSpec s;
    s.kind_ = kind;
    return s;
}

SourceSpec SourceSpec::gridded(CartesianGrid grid, std::vector<double> values) {
    if (values.size() != grid.size()) {
        throw std::invalid_argument("SourceSpec::gridded: " + std::to_string(values.size()) + " values for " +
                                    std::to_string(grid.size()) + " grid points");
    }
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("SourceSpec::gridded: non-finite sample");
    }
    SourceSpec s;
    s.kind_ = SourceKind::Gridded;
    s.grid_ = std::make_shared<const CartesianGrid>(std::move(grid));
    s.values_ = std::make_shared<const std::vector<double>>(std::move(values));
    return s;
}

double SourceSpec::eval(const Point2& x) const {
    switch (kind_) {
        case SourceKind::S1: return s1(x.x1, x.x2, false);
        case SourceKind::S1Printed: return s1(x.x1, x.x2, true);
        case SourceKind::S2: return s2(x.x1, x.x2);
        case SourceKind::S3: return s3(x.x1, x.x2);
        case SourceKind::Gridded: break;
    }
    if (!grid_->contains(x)) throw std::out_of_range("gridded source: point outside the sampled square");
    const int n = grid_->points_per_side();
    const double h = grid_->spacing();
    auto nearest = [&](double c) {
        const int i = static_cast<int>(std::floor((c + 0.5 * grid_->side()) / h));
        return std::clamp(i, 0, n - 1);
    };
    return (*values_)[grid_->index(nearest(x.x1), nearest(x.x2))];
}

bool SourceSpec::has_gradient() const {
    return kind_ == SourceKind::S1 || kind_ == SourceKind::S1Printed || kind_ == SourceKind::S3;
}

Point2 SourceSpec::gradient(const Point2& x) const {
    switch (kind_) {
        case SourceKind::S1: return s1_gradient(x.x1, x.x2, false);
        case SourceKind::S1Printed: return s1_gradient(x.x1, x.x2, true);
        case SourceKind::S3: return s3_gradient(x.x1, x.x2);
        default: break;
    }
    throw std::logic_error("no analytic gradient for source " + name());
}

std::optional<double> SourceSpec::grid_side() const {
    if (kind_ != SourceKind::Gridded) return std::nullopt;
    return grid_->side();
}

double eval_source(const SourceSpec& spec, const Point2& x) { return spec.eval(x); }

std::vector<double> sample(const SourceSpec& spec, const CartesianGrid& grid) {
    if (auto side = spec.grid_side(); side && std::abs(*side - grid.side()) > 1e-12 * *side) {
        throw std::invalid_argument("sample: grid side does not match the gridded source");
    }
    std::vector<double> out(grid.size());
    for (std::size_t m = 0; m < grid.size(); ++m) out[m] = spec.eval(grid[m]);
    return out;
}

std::vector<Point2> sample_gradient(const SourceSpec& spec, const CartesianGrid& grid) {
    std::vector<Point2> out(grid.size());
    for (std::size_t m = 0; m < grid.size(); ++m) out[m] = spec.gradient(grid[m]);
    return out;
}

}  // namespace flexsrc
