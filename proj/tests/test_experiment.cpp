#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "flexsrc/experiment.hpp"

using namespace flexsrc;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("flexsrc_test_" + name)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

ExperimentConfig small_config(const fs::path& root) {
    ExperimentConfig c = example_config(1);
    c.N_m = 64;
    c.out_angle_count = 64;
    c.quad_points_per_side = 41;
    c.eval_points_per_side = 41;
    c.n_max = 30;
    c.fixed_N = 2;
    c.output_dir = root / "out";
    c.data_dir = root / "data";
    return c;
}

}  // namespace

TEST_CASE("config text round trip and parsing") {
    ExperimentConfig c = example_config(3);
    apply_setting(c, "theta_max", "1.5pi");
    CHECK(c.theta_max == doctest::Approx(1.5 * kPi).epsilon(1e-15));
    apply_setting(c, "theta_max", "2*pi");
    CHECK(c.theta_max == doctest::Approx(kTwoPi).epsilon(1e-15));
    apply_setting(c, "truncation", "7");
    apply_setting(c, "table_deltas", "0.1, 0.2");
    apply_setting(c, "noise_scale_lap", "u");
    apply_setting(c, "data_layout", "per_mode");

    std::istringstream text(to_config_text(c));
    ExperimentConfig back;
    apply_config_text(back, text);
    CHECK(to_config_text(back) == to_config_text(c));
    CHECK(back.fixed_N == 7);
    CHECK(back.a == 6.0);
    CHECK(back.table_deltas == std::vector<double>{0.1, 0.2});

    std::istringstream comments("# a comment\n\n  seed = 42   # trailing\nsource=S2\n");
    apply_config_text(back, comments);
    CHECK(back.seed == 42);
    CHECK(back.source == "s2");

    CHECK_THROWS_AS(apply_setting(c, "colour", "red"), std::invalid_argument);
    CHECK_THROWS_AS(apply_setting(c, "a", "1.0x"), std::invalid_argument);
    CHECK_THROWS_AS(apply_setting(c, "N_m", "2.5"), std::invalid_argument);
    CHECK_THROWS_AS(apply_setting(c, "source", "s4"), std::invalid_argument);
    CHECK_THROWS_AS(apply_setting(c, "seed", "-1"), std::invalid_argument);
    std::istringstream bad("a 1\n");
    CHECK_THROWS_AS(apply_config_text(c, bad), std::invalid_argument);
}

TEST_CASE("config validation") {
    ExperimentConfig c;
    CHECK_NOTHROW(c.validate());
    CHECK(c.truncation_order() == 10);
    c.delta = 0.05;
    CHECK(c.truncation_order() == 15);
    c.truncation = TruncationRule::Alt;
    CHECK(c.truncation_order() == 6);
    c.fixed_N = 4;
    CHECK(c.truncation_order() == 4);

    auto invalid = [](auto change) {
        ExperimentConfig x;
        change(x);
        CHECK_THROWS_AS(x.validate(), std::invalid_argument);
    };
    invalid([](ExperimentConfig& x) { x.R = 0.7; });
    invalid([](ExperimentConfig& x) { x.rho = 0.8; });
    invalid([](ExperimentConfig& x) { x.lambda = 0.1; });
    invalid([](ExperimentConfig& x) { x.theta_max = 7.0; });
    invalid([](ExperimentConfig& x) { x.delta = 0.0; });
    invalid([](ExperimentConfig& x) { x.delta = 1.0; });
    invalid([](ExperimentConfig& x) { x.n_max = 500; });
    invalid([](ExperimentConfig& x) { x.source = "nope"; });

    ExperimentConfig z;
    z.delta = 0.0;
    z.fixed_N = 3;
    CHECK_NOTHROW(z.validate());
}

TEST_CASE("example presets") {
    CHECK(example_config(1).source == "s1");
    CHECK_FALSE(example_config(1).delta_assumed);
    CHECK(example_config(2).delta_assumed);
    const ExperimentConfig e3 = example_config(3);
    CHECK(e3.a == 6.0);
    CHECK(e3.R == 5.0);
    CHECK(e3.rho == 6.0);
    CHECK_THROWS_AS(example_config(4), std::invalid_argument);
    ExperimentConfig c = example_config(2);
    apply_setting(c, "delta", "0.05");
    CHECK_FALSE(c.delta_assumed);
}

TEST_CASE("hashing") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");

    const ExperimentConfig base;
    ExperimentConfig c = base;
    c.delta = 0.2;
    c.seed = 99;
    c.fixed_N = 3;
    c.output_dir = "elsewhere";
    CHECK(simulation_hash(c) == simulation_hash(base));
    c.a = 1.1;
    CHECK(simulation_hash(c) != simulation_hash(base));
    c = base;
    c.theta_max = kPi;
    CHECK(simulation_hash(c) != simulation_hash(base));
}

TEST_CASE("pipeline caching and determinism") {
    TempDir tmp("pipeline");
    ExperimentConfig c = small_config(tmp.path);

    const SimulationSummary cold = run_simulate(c, 2);
    CHECK(cold.files_written == 6);  // |l|^2 in {1, 2, 4, 5, 8} plus l0
    CHECK(cold.files_reused == 0);
    const SimulationSummary warm = run_simulate(c, 2);
    CHECK(warm.files_written == 0);
    CHECK(warm.files_reused == 6);
    CHECK(run_simulate(c, 1).files_reused == 3);

    const ReconstructionResult r1 = run_pipeline(c);
    const std::string report1 = slurp(c.output_dir / "report.json");
    const std::string field1 = slurp(c.output_dir / "field.csv");
    const std::string coeff1 = slurp(c.output_dir / "coefficients.csv");
    CHECK(fs::exists(c.output_dir / "timing.json"));

    // a second run into fresh directories reproduces every byte
    ExperimentConfig c2 = c;
    c2.output_dir = tmp.path / "out2";
    c2.data_dir = tmp.path / "data2";
    run_pipeline(c2);
    CHECK(slurp(c2.output_dir / "report.json") == report1);
    CHECK(slurp(c2.output_dir / "field.csv") == field1);
    CHECK(slurp(c2.output_dir / "coefficients.csv") == coeff1);
    for (const auto& e : fs::directory_iterator(simulation_dir(c))) {
        CHECK(slurp(e.path()) == slurp(simulation_dir(c2) / e.path().filename()));
    }

    // noise is applied after simulation: changing delta reuses the data
    ExperimentConfig c3 = c;
    c3.delta = 0.05;
    CHECK(run_simulate(c3, 2).files_written == 0);
    CHECK(reconstruct(c3).report.rel_l2 != r1.report.rel_l2);

    // the coefficient table reads back
    std::istringstream cs(coeff1);
    const CoefficientTable back = read_coefficients_csv(cs, c.a);
    CHECK(back.at(1, -2) == r1.coeffs.at(1, -2));
    CHECK(back.zeroth() == r1.coeffs.zeroth());
}

TEST_CASE("smallest truncation uses at most five wavenumbers") {
    TempDir tmp("smoke");
    ExperimentConfig c = small_config(tmp.path);
    c.fixed_N = 1;
    CHECK(run_simulate(c, 1).files_written == 3);
    const ReconstructionResult r = reconstruct(c);
    CHECK(r.table.distinct_k.size() == 3);
    CHECK(r.report.N_used == 1);
}

TEST_CASE("deduplicated and per-mode data give the same reconstruction") {
    TempDir tmp("layout");
    ExperimentConfig dedup = small_config(tmp.path);
    ExperimentConfig per_mode = dedup;
    per_mode.layout = DataLayout::PerMode;
    run_simulate(dedup, 2);
    CHECK(run_simulate(per_mode, 2).files_written == 25);
    const ReconstructionResult a = reconstruct(dedup);
    const ReconstructionResult b = reconstruct(per_mode);
    double diff = std::abs(a.coeffs.zeroth() - b.coeffs.zeroth());
    for (int l1 = -2; l1 <= 2; ++l1)
        for (int l2 = -2; l2 <= 2; ++l2)
            if (l1 != 0 || l2 != 0) diff = std::max(diff, std::abs(a.coeffs.at(l1, l2) - b.coeffs.at(l1, l2)));
    CHECK(diff <= 1e-12);
    CHECK(std::abs(a.report.rel_l2 - b.report.rel_l2) <= 1e-12);
}

TEST_CASE("damaged or missing data") {
    TempDir tmp("damaged");
    ExperimentConfig c = small_config(tmp.path);
    CHECK_THROWS_AS(reconstruct(c), std::runtime_error);

    run_simulate(c, 2);
    const fs::path file = simulation_dir(c) / "k_n2_5.csv";
    const std::string good = slurp(file);

    // a stale schema is rejected by reconstruct and regenerated by simulate
    std::string stale = good;
    stale.replace(stale.find("\"schema\":1"), 10, "\"schema\":0");
    std::ofstream(file, std::ios::binary) << stale;
    CHECK_THROWS_AS(reconstruct(c), std::runtime_error);
    const SimulationSummary s = run_simulate(c, 2);
    CHECK(s.files_written == 1);
    CHECK(slurp(file) == good);

    std::ofstream(file, std::ios::binary) << good.substr(0, good.size() / 2);
    CHECK_THROWS_AS(reconstruct(c), std::runtime_error);
    CHECK(run_simulate(c, 2).files_written == 1);
    CHECK_NOTHROW(reconstruct(c));
}
