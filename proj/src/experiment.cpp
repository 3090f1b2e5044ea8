#include "flexsrc/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "flexsrc/forward.hpp"
#include "flexsrc/lift.hpp"

namespace flexsrc {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

double parse_double(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || !std::isfinite(v)) {
        throw std::invalid_argument("config: '" + key + "' expects a number, got '" + text + "'");
    }
    return v;
}

// Accepts plain numbers and multiples of pi: "pi", "2pi", "1.5pi", "2*pi".
double parse_angle(const std::string& key, const std::string& text) {
    std::string t = lower(text);
    if (t.size() >= 2 && t.compare(t.size() - 2, 2, "pi") == 0) {
        std::string m = trim(t.substr(0, t.size() - 2));
        if (!m.empty() && m.back() == '*') m = trim(m.substr(0, m.size() - 1));
        return (m.empty() ? 1.0 : parse_double(key, m)) * kPi;
    }
    return parse_double(key, t);
}

long long parse_integer(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size()) throw std::invalid_argument("config: '" + key + "' expects an integer, got '" + text + "'");
    return v;
}

int parse_int(const std::string& key, const std::string& text) {
    const long long v = parse_integer(key, text);
    if (v < -1000000000LL || v > 1000000000LL) throw std::invalid_argument("config: '" + key + "' is out of range");
    return static_cast<int>(v);
}

bool is_smooth(SourceKind kind) { return kind == SourceKind::S1 || kind == SourceKind::S1Printed || kind == SourceKind::S3; }

// Experiment identity: every setting except where files go.
std::string experiment_hash(const ExperimentConfig& cfg) { return fnv1a_hex(to_config_text(cfg, false)); }

std::string header_line(const ojson& meta) { return "# " + meta.dump() + "\n"; }

void write_atomic(const fs::path& file, const std::string& content) {
    fs::create_directories(file.parent_path());
    const fs::path tmp = file.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot write " + tmp.string());
        os << content;
        if (!os) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, file);
}

// One measurement file: the wavenumber, and the modes it serves.
struct DataJob {
    std::string file;
    double k = 0.0;
    int norm2 = -1;  // -1 for the zero mode
    std::vector<std::array<double, 2>> modes;
};

std::vector<std::array<double, 2>> modes_of_norm(int norm2) {
    std::vector<std::array<double, 2>> m;
    const int r = static_cast<int>(std::sqrt(static_cast<double>(norm2))) + 1;
    for (int l1 = -r; l1 <= r; ++l1)
        for (int l2 = -r; l2 <= r; ++l2)
            if (l1 * l1 + l2 * l2 == norm2) m.push_back({double(l1), double(l2)});
    return m;
}

// Per-mode layout: every entry becomes its own wavenumber slot.
WavenumberTable expand_per_mode(const WavenumberTable& t) {
    WavenumberTable e = t;
    e.distinct_k.clear();
    e.distinct_norm2.clear();
    for (std::size_t i = 0; i < e.entries.size(); ++i) {
        const WavenumberEntry& w = t.entries[i];
        e.entries[i].distinct = i;
        e.distinct_k.push_back(w.k);
        e.distinct_norm2.push_back(t.distinct_norm2[w.distinct]);
    }
    return e;
}

WavenumberTable working_table(const ExperimentConfig& cfg, int N) {
    const WavenumberTable t = admissible_wavenumbers(N, cfg.a, cfg.lambda);
    return cfg.layout == DataLayout::PerMode ? expand_per_mode(t) : t;
}

// Jobs aligned with table.distinct_k.
std::vector<DataJob> data_jobs(const ExperimentConfig& cfg, const WavenumberTable& table) {
    std::vector<DataJob> jobs;
    for (std::size_t d = 0; d < table.distinct_k.size(); ++d) {
        DataJob j;
        j.k = table.distinct_k[d];
        j.norm2 = table.distinct_norm2[d];
        if (cfg.layout == DataLayout::Dedup) {
            j.file = j.norm2 < 0 ? "k_l0.csv" : "k_n2_" + std::to_string(j.norm2) + ".csv";
            j.modes = j.norm2 < 0 ? std::vector<std::array<double, 2>>{{cfg.lambda, 0.0}} : modes_of_norm(j.norm2);
        } else {
            const ModeIndex& l = table.entries[d].l;
            j.file = j.norm2 < 0 ? "mode_l0.csv"
                                 : "mode_" + std::to_string(static_cast<int>(l.l1)) + "_" +
                                       std::to_string(static_cast<int>(l.l2)) + ".csv";
            j.modes = {{l.l1, l.l2}};
        }
        jobs.push_back(std::move(j));
    }
    return jobs;
}

ojson trace_meta(const ExperimentConfig& cfg, const DataJob& job) {
    ojson m;
    m["schema"] = kSchemaVersion;
    m["kind"] = "trace";
    m["config_hash"] = simulation_hash(cfg);
    m["source"] = cfg.source;
    m["a"] = cfg.a;
    m["R"] = cfg.R;
    m["N_m"] = cfg.N_m;
    m["theta_max"] = cfg.theta_max;
    m["quad_points_per_side"] = cfg.quad_points_per_side;
    m["lambda"] = cfg.lambda;
    m["k"] = job.k;
    m["norm2"] = job.norm2;
    m["modes"] = job.modes;
    return m;
}

std::string trace_csv(const ExperimentConfig& cfg, const DataJob& job, const CauchyTrace& t) {
    std::string out = header_line(trace_meta(cfg, job));
    out += "theta,re_u,im_u,re_lap_u,im_lap_u\n";
    char buf[160];
    for (int j = 0; j < t.circle.angle_count(); ++j) {
        const auto uj = static_cast<std::size_t>(j);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", t.circle.angle(j), t.u[uj].real(),
                      t.u[uj].imag(), t.lap_u[uj].real(), t.lap_u[uj].imag());
        out += buf;
    }
    return out;
}

struct ParsedTrace {
    ojson meta;
    std::vector<Complex> u, lap_u;
};

ParsedTrace parse_trace(const fs::path& file) {
    std::ifstream is(file);
    if (!is) throw std::runtime_error("missing data file " + file.string());
    ParsedTrace p;
    std::string line;
    if (!std::getline(is, line) || line.rfind("# ", 0) != 0) {
        throw std::runtime_error(file.string() + ": missing JSON header line");
    }
    try {
        p.meta = ojson::parse(line.substr(2));
    } catch (const std::exception& e) {
        throw std::runtime_error(file.string() + ": malformed header: " + e.what());
    }
    std::getline(is, line);  // column names
    int line_no = 2;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        double th, ur, ui, lr, li;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &th, &ur, &ui, &lr, &li) != 5) {
            throw std::runtime_error(file.string() + ": malformed line " + std::to_string(line_no));
        }
        p.u.emplace_back(ur, ui);
        p.lap_u.emplace_back(lr, li);
    }
    return p;
}

// Empty string when the file is usable, otherwise the reason.
std::string check_trace(const ParsedTrace& p, const ExperimentConfig& cfg, const DataJob& job) {
    if (p.meta.value("schema", -1) != kSchemaVersion) return "schema version mismatch";
    if (p.meta.value("config_hash", std::string()) != simulation_hash(cfg)) return "config hash mismatch";
    if (p.meta.value("k", -1.0) != job.k) return "wavenumber mismatch";
    if (static_cast<int>(p.u.size()) != cfg.N_m) return "sample count mismatch";
    return "";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string delta_dir_name(double delta) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "delta_%g", delta);
    return buf;
}

}  // namespace

void ExperimentConfig::validate() const {
    parse_source_kind(source);
    if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("config: a must be positive");
    if (!(R > a * std::sqrt(2.0) / 2.0)) {
        throw std::invalid_argument("config: need R > a sqrt(2)/2 so the measurement circle encloses the source square");
    }
    if (!(rho > R) || !std::isfinite(rho)) throw std::invalid_argument("config: need rho > R");
    if (N_m < 1) throw std::invalid_argument("config: N_m must be >= 1");
    if (!(theta_max > 0.0) || theta_max > kTwoPi * (1.0 + 1e-15)) {
        throw std::invalid_argument("config: theta_max must lie in (0, 2 pi]");
    }
    if (out_angle_count < 1) throw std::invalid_argument("config: out_angle_count must be >= 1");
    const double k0 = kTwoPi / a * lambda;
    if (!(k0 > 0.0 && k0 < 0.5)) throw std::invalid_argument("config: need 0 < (2 pi / a) lambda < 1/2");
    if (n_max < 0 || n_max > specfun::kDefaultMaxOrder) {
        throw std::invalid_argument("config: n_max must lie in [0, " + std::to_string(specfun::kDefaultMaxOrder) + "]");
    }
    if (!(delta >= 0.0 && delta < 1.0)) throw std::invalid_argument("config: delta must lie in [0, 1)");
    if (fixed_N && *fixed_N < 1) throw std::invalid_argument("config: a fixed truncation N must be >= 1");
    if (!fixed_N && delta == 0.0) {
        throw std::invalid_argument("config: the truncation rule is undefined at delta = 0; set truncation to a fixed N");
    }
    if (quad_points_per_side < 2) throw std::invalid_argument("config: quad_points_per_side must be >= 2");
    if (eval_points_per_side < 3) throw std::invalid_argument("config: eval_points_per_side must be >= 3");
    for (double d : table_deltas) {
        if (!(d > 0.0 && d < 1.0)) throw std::invalid_argument("config: table_deltas entries must lie in (0, 1)");
    }
}

fs::path ExperimentConfig::data_root() const { return data_dir ? *data_dir : output_dir / "data"; }

int ExperimentConfig::truncation_order() const {
    if (fixed_N) return *fixed_N;
    return flexsrc::truncation_order(delta, truncation);
}

ExperimentConfig example_config(int example) {
    ExperimentConfig c;
    switch (example) {
        case 1:
            c.source = "s1";
            break;
        case 2:
            c.source = "s2";
            c.delta_assumed = true;
            break;
        case 3:
            c.source = "s3";
            c.a = 6.0;
            c.R = 5.0;
            c.rho = 6.0;
            c.delta_assumed = true;
            break;
        default:
            throw std::invalid_argument("unknown example " + std::to_string(example) + " (expected 1, 2 or 3)");
    }
    return c;
}

void apply_setting(ExperimentConfig& cfg, const std::string& raw_key, const std::string& raw_value) {
    const std::string key = trim(raw_key);
    const std::string value = trim(raw_value);
    if (key == "source") {
        parse_source_kind(value);
        cfg.source = lower(value);
    } else if (key == "a") {
        cfg.a = parse_double(key, value);
    } else if (key == "R") {
        cfg.R = parse_double(key, value);
    } else if (key == "rho") {
        cfg.rho = parse_double(key, value);
    } else if (key == "N_m") {
        cfg.N_m = parse_int(key, value);
    } else if (key == "theta_max") {
        cfg.theta_max = parse_angle(key, value);
    } else if (key == "out_angle_count") {
        cfg.out_angle_count = parse_int(key, value);
    } else if (key == "lambda") {
        cfg.lambda = parse_double(key, value);
    } else if (key == "n_max") {
        cfg.n_max = parse_int(key, value);
    } else if (key == "delta") {
        cfg.delta = parse_double(key, value);
        cfg.delta_assumed = false;
    } else if (key == "seed") {
        const long long s = parse_integer(key, value);
        if (s < 0) throw std::invalid_argument("config: seed must be non-negative");
        cfg.seed = static_cast<std::uint64_t>(s);
    } else if (key == "truncation") {
        const std::string v = lower(value);
        if (v == "paper" || v == "alt") {
            cfg.truncation = parse_truncation_rule(v);
            cfg.fixed_N.reset();
        } else {
            cfg.fixed_N = parse_int(key, value);
        }
    } else if (key == "quad_points_per_side") {
        cfg.quad_points_per_side = parse_int(key, value);
    } else if (key == "eval_points_per_side") {
        cfg.eval_points_per_side = parse_int(key, value);
    } else if (key == "noise_scale_lap") {
        cfg.noise_scale = parse_noise_scale(lower(value));
    } else if (key == "exact_gradient") {
        const std::string v = lower(value);
        if (v == "fd") cfg.exact_gradient = GradientSource::FiniteDifference;
        else if (v == "analytic") cfg.exact_gradient = GradientSource::Analytic;
        else throw std::invalid_argument("config: exact_gradient expects fd or analytic");
    } else if (key == "data_layout") {
        const std::string v = lower(value);
        if (v == "dedup") cfg.layout = DataLayout::Dedup;
        else if (v == "per_mode") cfg.layout = DataLayout::PerMode;
        else throw std::invalid_argument("config: data_layout expects dedup or per_mode");
    } else if (key == "output_dir") {
        cfg.output_dir = value;
    } else if (key == "data_dir") {
        if (value.empty()) cfg.data_dir.reset();
        else cfg.data_dir = fs::path(value);
    } else if (key == "table_deltas") {
        std::vector<double> ds;
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) ds.push_back(parse_double(key, trim(item)));
        if (ds.empty()) throw std::invalid_argument("config: table_deltas is empty");
        cfg.table_deltas = ds;
    } else if (key == "delta_assumed") {
        const std::string v = lower(value);
        if (v != "true" && v != "false") throw std::invalid_argument("config: delta_assumed expects true or false");
        cfg.delta_assumed = v == "true";
    } else {
        throw std::invalid_argument("config: unknown key '" + key + "'");
    }
}

void apply_config_text(ExperimentConfig& cfg, std::istream& in) {
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
        }
        try {
            apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + e.what());
        }
    }
}

void apply_config_file(ExperimentConfig& cfg, const fs::path& file) {
    std::ifstream is(file);
    if (!is) throw std::runtime_error("cannot open config file " + file.string());
    apply_config_text(cfg, is);
}

std::string to_config_text(const ExperimentConfig& cfg, bool include_paths) {
    std::ostringstream os;
    os << "source = " << cfg.source << '\n'
       << "a = " << fmt(cfg.a) << '\n'
       << "R = " << fmt(cfg.R) << '\n'
       << "rho = " << fmt(cfg.rho) << '\n'
       << "N_m = " << cfg.N_m << '\n'
       << "theta_max = " << fmt(cfg.theta_max) << '\n'
       << "out_angle_count = " << cfg.out_angle_count << '\n'
       << "lambda = " << fmt(cfg.lambda) << '\n'
       << "n_max = " << cfg.n_max << '\n'
       << "delta = " << fmt(cfg.delta) << '\n'
       << "seed = " << cfg.seed << '\n'
       << "truncation = " << (cfg.fixed_N ? std::to_string(*cfg.fixed_N) : to_string(cfg.truncation)) << '\n'
       << "quad_points_per_side = " << cfg.quad_points_per_side << '\n'
       << "eval_points_per_side = " << cfg.eval_points_per_side << '\n'
       << "noise_scale_lap = " << to_string(cfg.noise_scale) << '\n'
       << "exact_gradient = " << (cfg.exact_gradient == GradientSource::Analytic ? "analytic" : "fd") << '\n'
       << "data_layout = " << (cfg.layout == DataLayout::PerMode ? "per_mode" : "dedup") << '\n'
       << "table_deltas = ";
    for (std::size_t i = 0; i < cfg.table_deltas.size(); ++i) os << (i ? "," : "") << fmt(cfg.table_deltas[i]);
    os << '\n' << "delta_assumed = " << (cfg.delta_assumed ? "true" : "false") << '\n';
    if (include_paths) {
        os << "output_dir = " << cfg.output_dir.string() << '\n';
        if (cfg.data_dir) os << "data_dir = " << cfg.data_dir->string() << '\n';
    }
    return os.str();
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string simulation_hash(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "schema=" << kSchemaVersion << ";source=" << cfg.source << ";a=" << fmt(cfg.a) << ";R=" << fmt(cfg.R)
       << ";N_m=" << cfg.N_m << ";theta_max=" << fmt(cfg.theta_max) << ";lambda=" << fmt(cfg.lambda)
       << ";quad=" << cfg.quad_points_per_side;
    return fnv1a_hex(os.str());
}

fs::path simulation_dir(const ExperimentConfig& cfg) { return cfg.data_root() / ("sim_" + simulation_hash(cfg)); }

SimulationSummary run_simulate(const ExperimentConfig& cfg, int N) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const WavenumberTable table = working_table(cfg, N);
    const std::vector<DataJob> jobs = data_jobs(cfg, table);
    const fs::path dir = simulation_dir(cfg);

    SimulationSummary summary;
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const fs::path file = dir / jobs[i].file;
        if (fs::exists(file)) {
            std::string why;
            try {
                why = check_trace(parse_trace(file), cfg, jobs[i]);
            } catch (const std::exception& e) {
                why = e.what();
            }
            if (why.empty()) {
                ++summary.files_reused;
                continue;
            }
            std::cerr << "warning: regenerating " << file.string() << " (" << why << ")\n";
        }
        todo.push_back(i);
    }

    if (!todo.empty()) {
        const SourceSpec spec = SourceSpec::analytic(parse_source_kind(cfg.source));
        const QuadratureSource q = discretize(spec, CartesianGrid(cfg.a, cfg.quad_points_per_side));
        const CircleGrid circle(cfg.R, cfg.N_m, cfg.theta_max);
        std::vector<std::string> contents(todo.size());
        const auto count = static_cast<long>(todo.size());
#pragma omp parallel for schedule(dynamic)
        for (long t = 0; t < count; ++t) {
            const DataJob& job = jobs[todo[static_cast<std::size_t>(t)]];
            contents[static_cast<std::size_t>(t)] = trace_csv(cfg, job, radiate_trace(q, job.k, circle));
        }
        for (std::size_t t = 0; t < todo.size(); ++t) write_atomic(dir / jobs[todo[t]].file, contents[t]);
        summary.files_written = static_cast<int>(todo.size());
    }
    summary.wall_time_s = seconds_since(t0);
    return summary;
}

ReconstructionResult reconstruct(const ExperimentConfig& cfg) {
    cfg.validate();
    const int N = cfg.truncation_order();
    const WavenumberTable work = working_table(cfg, N);
    const std::vector<DataJob> jobs = data_jobs(cfg, work);
    const fs::path dir = simulation_dir(cfg);
    const CircleGrid measured_circle(cfg.R, cfg.N_m, cfg.theta_max);

    std::vector<CauchyTrace> measured;
    measured.reserve(jobs.size());
    for (const DataJob& job : jobs) {
        const fs::path file = dir / job.file;
        ParsedTrace p = parse_trace(file);
        const std::string why = check_trace(p, cfg, job);
        if (!why.empty()) throw std::runtime_error(file.string() + ": " + why);
        measured.push_back({job.k, measured_circle, std::move(p.u), std::move(p.lap_u), std::nullopt, std::nullopt});
    }

    const auto t0 = std::chrono::steady_clock::now();
    const CircleGrid out_circle(cfg.rho, cfg.out_angle_count, kTwoPi);
    const NoiseParams noise{cfg.delta, cfg.seed, cfg.noise_scale};
    std::vector<CauchyTrace> lifted(measured.size(), measured.front());
    const auto count = static_cast<long>(measured.size());
    std::string failure;
#pragma omp parallel for schedule(dynamic)
    for (long d = 0; d < count; ++d) {
        try {
            const auto ud = static_cast<std::size_t>(d);
            lifted[ud] = lift_trace(perturb_trace(measured[ud], noise), cfg.n_max, out_circle);
        } catch (const std::exception& e) {
#pragma omp critical
            if (failure.empty()) failure = e.what();
        }
    }
    if (!failure.empty()) throw std::runtime_error(failure);

    ReconstructionResult r{admissible_wavenumbers(N, cfg.a, cfg.lambda), compute_coefficients(work, lifted), {}, {}, {}};
    const CartesianGrid eval(cfg.a, cfg.eval_points_per_side);
    const SourceSpec spec = SourceSpec::analytic(parse_source_kind(cfg.source));
    r.field = synthesize(r.coeffs, eval);
    r.exact = sample(spec, eval);
    r.report.rel_l2 = rel_l2(r.field, r.exact);
    if (is_smooth(spec.kind())) {
        const GradientField grad = synthesize_gradient(r.coeffs, eval);
        const std::vector<Complex> exact = to_complex(r.exact);
        r.report.rel_h1 = cfg.exact_gradient == GradientSource::Analytic
                              ? rel_h1(r.field, grad, exact, to_complex(sample_gradient(spec, eval)))
                              : rel_h1(r.field, grad, exact, eval);
    }
    r.report.N_used = N;
    r.report.delta = cfg.delta;
    r.report.wall_time_s = seconds_since(t0);
    return r;
}

std::string report_json(const ExperimentConfig& cfg, const ReconstructionResult& r) {
    ojson j;
    j["schema"] = kSchemaVersion;
    j["kind"] = "report";
    j["config_hash"] = experiment_hash(cfg);
    j["simulation_hash"] = simulation_hash(cfg);
    ojson c;
    std::istringstream text(to_config_text(cfg, false));
    std::string line;
    while (std::getline(text, line)) {
        const auto eq = line.find('=');
        c[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    j["config"] = c;
    ojson e;
    e["rel_l2"] = r.report.rel_l2;
    if (r.report.rel_h1) e["rel_h1"] = *r.report.rel_h1;
    else e["rel_h1"] = nullptr;
    e["N_used"] = r.report.N_used;
    e["delta"] = r.report.delta;
    e["delta_assumed"] = cfg.delta_assumed;
    e["exact_gradient"] = cfg.exact_gradient == GradientSource::Analytic ? "analytic" : "fd";
    j["errors"] = e;
    j["distinct_wavenumbers"] = r.table.distinct_k.size();
    j["modes"] = r.table.entries.size();
    return j.dump(2) + "\n";
}

ReconstructionResult run_reconstruct(const ExperimentConfig& cfg) {
    ReconstructionResult r = reconstruct(cfg);
    const fs::path out = cfg.output_dir;
    const std::string hash = experiment_hash(cfg);

    ojson field_meta{{"schema", kSchemaVersion}, {"kind", "field"}, {"config_hash", hash}, {"a", cfg.a},
                     {"points_per_side", cfg.eval_points_per_side}, {"source", cfg.source}};
    std::string field = header_line(field_meta) + "x1,x2,re_sn,im_sn,exact,abs_err\n";
    const CartesianGrid eval(cfg.a, cfg.eval_points_per_side);
    char buf[200];
    for (std::size_t p = 0; p < eval.size(); ++p) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", eval[p].x1, eval[p].x2,
                      r.field[p].real(), r.field[p].imag(), r.exact[p], std::abs(r.field[p] - r.exact[p]));
        field += buf;
    }
    write_atomic(out / "field.csv", field);

    ojson coeff_meta{{"schema", kSchemaVersion}, {"kind", "coefficients"}, {"config_hash", hash},
                     {"a", cfg.a}, {"N", r.report.N_used}, {"lambda", cfg.lambda}};
    std::ostringstream cs;
    cs << header_line(coeff_meta);
    write_csv(cs, r.coeffs);
    write_atomic(out / "coefficients.csv", cs.str());

    write_atomic(out / "report.json", report_json(cfg, r));
    ojson timing{{"reconstruct_s", r.report.wall_time_s}};
    write_atomic(out / "timing.json", timing.dump(2) + "\n");
    return r;
}

ReconstructionResult run_pipeline(const ExperimentConfig& cfg) {
    cfg.validate();
    run_simulate(cfg, cfg.truncation_order());
    return run_reconstruct(cfg);
}

std::vector<TableRow> run_table(const ExperimentConfig& cfg) {
    cfg.validate();
    int n_top = 1;
    for (double d : cfg.table_deltas) {
        ExperimentConfig c = cfg;
        c.delta = d;
        n_top = std::max(n_top, c.truncation_order());
    }
    run_simulate(cfg, n_top);

    std::vector<TableRow> rows;
    for (double d : cfg.table_deltas) {
        ExperimentConfig c = cfg;
        c.delta = d;
        c.delta_assumed = false;
        c.output_dir = cfg.output_dir / delta_dir_name(d);
        if (!c.data_dir) c.data_dir = cfg.data_root();
        const ReconstructionResult r = run_reconstruct(c);
        rows.push_back({d, r.report.N_used, r.report.rel_l2, r.report.rel_h1, r.report.wall_time_s});
    }

    std::string csv = "delta,N,rel_l2,rel_h1,wall_time_s\n";
    char buf[160];
    for (const TableRow& row : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%d,%.17g,%s,%.3f\n", row.delta, row.N, row.rel_l2,
                      row.rel_h1 ? fmt(*row.rel_h1).c_str() : "", row.wall_time_s);
        csv += buf;
    }
    write_atomic(cfg.output_dir / "table.csv", csv);
    return rows;
}

std::string format_table(const std::vector<TableRow>& rows) {
    std::ostringstream os;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-10s %6s %10s %10s %10s\n", "delta (%)", "N", "rel L2", "rel H1", "time (s)");
    os << buf;
    for (const TableRow& r : rows) {
        char h1[32] = "-";
        if (r.rel_h1) std::snprintf(h1, sizeof h1, "%.4f%%", 100.0 * *r.rel_h1);
        std::snprintf(buf, sizeof buf, "%-10g %6d %9.4f%% %10s %10.2f\n", 100.0 * r.delta, r.N, 100.0 * r.rel_l2, h1,
                      r.wall_time_s);
        os << buf;
    }
    return os.str();
}

}  // namespace flexsrc
