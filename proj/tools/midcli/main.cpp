// Command-line front end: `detect` runs the change-point pipeline on a CSV
// panel, `simulate` drives the Monte-Carlo harness, `calibrate` re-derives
// threshold constants. Exit codes: 0 success, 2 malformed input, 3 bad
// configuration.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "csv.hpp"
#include "mid/detect.hpp"
#include "mid/errors.hpp"
#include "mid/eval.hpp"
#include "mid/preprocess.hpp"
#include "mid/rng.hpp"

namespace {

using nlohmann::json;

mid::Scenario scenario_from(const std::string& s) {
    return s == "slope" ? mid::Scenario::PiecewiseLinear : mid::Scenario::PiecewiseConstant;
}

mid::NormPolicy policy_from(const std::string& s) {
    if (s == "l2") return mid::NormPolicy::L2;
    if (s == "linf") return mid::NormPolicy::LInf;
    if (s == "perm-l2") return mid::NormPolicy::PermL2;
    if (s == "perm-linf") return mid::NormPolicy::PermLInf;
    return mid::NormPolicy::Auto;
}

const char* norm_name(mid::NormKind n) { return n == mid::NormKind::L2 ? "l2" : "linf"; }

// ---------------------------------------------------------------- detect ----

struct DetectArgs {
    std::string input;
    std::string scenario = "mean";
    std::string norm = "auto";
    double alpha = 0.05;
    long lambda = 10;
    std::string sigma = "mad";
    std::string sigma_file;
    bool anscombe = false;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string out;
    double threshold_constant = 0.0;
    bool has_threshold_constant = false;
    long perm_count = 1000;
    double perm_alpha = 0.01;
    bool dump_thresholds = false;
};

json config_echo_json(const DetectArgs& a) {
    json j;
    j["subcommand"] = "detect";
    j["input"] = a.input;
    j["scenario"] = a.scenario;
    j["norm"] = a.norm;
    j["alpha"] = a.alpha;
    j["lambda"] = a.lambda;
    j["sigma"] = a.sigma;
    j["sigma_file"] = a.sigma == "file" ? json(a.sigma_file) : json(nullptr);
    j["anscombe"] = a.anscombe;
    j["seed"] = a.seed;
    j["format"] = a.format;
    j["threshold_constant"] =
        a.has_threshold_constant ? json(a.threshold_constant) : json(nullptr);
    j["permutation_count"] = a.perm_count;
    j["permutation_alpha"] = a.perm_alpha;
    j["output"] = a.out.empty() ? json(nullptr) : json(a.out);
    return j;
}

std::string report_to_json(const mid::ChangePointReport& r, const DetectArgs& a) {
    json j;
    j["changepoints"] = r.changepoints;
    json pts = json::array();
    for (const mid::PointDetail& p : r.per_point) {
        json q;
        q["location"] = p.location;
        q["detected_in"] = {p.detected_in.s, p.detected_in.e};
        q["value"] = p.value;
        q["component"] = p.component;
        q["affected"] = p.affected;
        pts.push_back(std::move(q));
    }
    j["per_point"] = std::move(pts);
    j["norm_used"] = norm_name(r.norm_used);
    j["sparsity_estimate"] = r.sparsity_estimate ? json(*r.sparsity_estimate) : json(nullptr);
    j["threshold"] = r.threshold ? json(*r.threshold) : json(nullptr);
    j["config_echo"] = config_echo_json(a);
    return j.dump(2) + "\n";
}

std::string report_to_csv(const mid::ChangePointReport& r) {
    std::ostringstream os;
    os << "# norm_used," << norm_name(r.norm_used) << '\n';
    os << "# sparsity_estimate,"
       << (r.sparsity_estimate ? midcli::format_g17(*r.sparsity_estimate) : std::string()) << '\n';
    os << "# threshold," << (r.threshold ? midcli::format_g17(*r.threshold) : std::string())
       << '\n';
    os << "location,interval_start,interval_end,value,component,affected\n";
    for (const mid::PointDetail& p : r.per_point) {
        os << p.location << ',' << p.detected_in.s << ',' << p.detected_in.e << ','
           << midcli::format_g17(p.value) << ',' << p.component << ',';
        for (std::size_t i = 0; i < p.affected.size(); ++i)
            os << (i ? ";" : "") << p.affected[i];
        os << '\n';
    }
    return os.str();
}

int run_detect(const DetectArgs& a) {
    if (a.dump_thresholds) {
        std::ostringstream os;
        mid::dump_threshold_table(os);
        midcli::emit_text(a.out, os.str());
        return 0;
    }
    if (a.input.empty())
        throw mid::Error("detect: an input CSV is required (or pass --dump-thresholds)");
    if (a.sigma == "file" && a.sigma_file.empty())
        throw mid::Error("detect: --sigma file requires --sigma-file");

    mid::MultiSeries panel = midcli::read_panel_csv(a.input);
    if (a.anscombe) panel = mid::anscombe(panel);

    const mid::Scenario scenario = scenario_from(a.scenario);
    mid::SigmaVector sigma;
    if (a.sigma == "mad")
        sigma = mid::estimate_sigma_mad(panel, scenario);
    else if (a.sigma == "none")
        sigma.sigma.assign(static_cast<std::size_t>(panel.d()), 1.0);
    else
        sigma.sigma = midcli::read_sigma_file(a.sigma_file, panel.d());
    const mid::MultiSeries normalized = mid::normalize(panel, sigma);

    mid::DetectionConfig cfg;
    cfg.scenario = scenario;
    cfg.norm = policy_from(a.norm);
    cfg.alpha = a.alpha;
    cfg.lambda = a.lambda;
    if (a.has_threshold_constant) cfg.threshold_constant_override = a.threshold_constant;
    cfg.permutation_count = a.perm_count;
    cfg.permutation_alpha = a.perm_alpha;
    cfg.rng_seed = a.seed;

    const mid::ChangePointReport report = mid::run_detection(normalized, cfg);
    midcli::emit_text(a.out, a.format == "csv" ? report_to_csv(report)
                                               : report_to_json(report, a));
    return 0;
}

// -------------------------------------------------------------- simulate ----

struct SimulateArgs {
    std::string preset;
    std::string scenario = "mean";
    long T = 1500, d = 30, N = 3;
    double sp = 0.2;
    long reps = 100;
    std::uint64_t seed = 1;
    std::string detector = "auto";
    double alpha = 0.05;
    long lambda = 10;
    double mag_lo = 1.0, mag_hi = 2.0, noise_sd = 1.0;
    long perm_count = 1000;
    double perm_alpha = 0.01;
    std::string out;
    std::string table_out;
    std::string panel_out;
    std::string truth_out;
};

int run_simulate(const SimulateArgs& a) {
    if (a.reps < 1) throw mid::Error("simulate: --reps must be >= 1");
    if (a.N < 0) throw mid::Error("simulate: --N must be >= 0");

    std::vector<mid::BenchCell> grid;
    if (!a.preset.empty()) {
        grid = mid::preset_grid(a.preset);
        if (grid.empty()) throw mid::Error("simulate: unknown preset '" + a.preset + "'");
    } else {
        grid.push_back({scenario_from(a.scenario), a.T, a.d, a.N, a.sp});
    }

    // Fixture mode: write the first replicate of the first cell and stop.
    if (!a.panel_out.empty() || !a.truth_out.empty()) {
        const mid::BenchCell& cell = grid.front();
        mid::SignalSpec spec;
        spec.T = cell.T;
        spec.d = cell.d;
        spec.scenario = cell.scenario;
        spec.changepoints = mid::equally_spaced_changepoints(cell.T, cell.N);
        spec.sparsity = cell.sp;
        spec.mag_lo = a.mag_lo;
        spec.mag_hi = a.mag_hi;
        spec.noise_sd = a.noise_sd;
        spec.rng_seed = mid::derive_seed(a.seed, 0, 0);
        const auto [panel, truth] = mid::generate_signal(spec);
        if (!a.panel_out.empty()) midcli::write_panel_csv(a.panel_out, panel);
        if (!a.truth_out.empty()) {
            std::ostringstream os;
            os << "changepoint,affected\n";
            for (std::size_t i = 0; i < truth.changepoints.size(); ++i) {
                os << truth.changepoints[i] << ',';
                const auto& comps = truth.affected[i];
                for (std::size_t k = 0; k < comps.size(); ++k) os << (k ? ";" : "") << comps[k];
                os << '\n';
            }
            midcli::write_text_atomic(a.truth_out, os.str());
        }
        return 0;
    }

    mid::BenchmarkOptions opt;
    opt.mag_lo = a.mag_lo;
    opt.mag_hi = a.mag_hi;
    opt.noise_sd = a.noise_sd;
    opt.alpha = a.alpha;
    opt.lambda = a.lambda;
    opt.permutation_count = a.perm_count;
    opt.permutation_alpha = a.perm_alpha;

    const mid::BenchmarkReport report =
        mid::run_benchmark(grid, policy_from(a.detector), a.reps, a.seed, opt);
    {
        std::ostringstream os;
        report.write_csv(os);
        midcli::emit_text(a.out, os.str());
    }
    if (!a.table_out.empty()) {
        std::ostringstream os;
        report.write_table(os);
        midcli::write_text_atomic(a.table_out, os.str());
    }
    return 0;
}

// ------------------------------------------------------------- calibrate ----

struct CalibrateArgs {
    std::string scenario = "mean";
    std::string norm = "l2";
    double alpha = 0.05;
    std::vector<long> d_values = {1};
    std::vector<long> T_values = {700, 1400};
    long reps = 500;
    double grid_min = 0.5, grid_max = 2.5, grid_step = 0.05;
    std::uint64_t seed = 1;
    std::string out;
};

int run_calibrate(const CalibrateArgs& a) {
    if (a.reps < 1) throw mid::Error("calibrate: --reps must be >= 1");
    if (!(a.grid_step > 0.0) || a.grid_min > a.grid_max || !(a.grid_min > 0.0))
        throw mid::Error("calibrate: need 0 < --grid-min <= --grid-max and --grid-step > 0");
    std::vector<double> grid;
    for (double c = a.grid_min; c <= a.grid_max + 1e-12; c += a.grid_step) grid.push_back(c);

    const mid::Scenario scenario = scenario_from(a.scenario);
    const mid::NormKind norm = a.norm == "linf" ? mid::NormKind::LInf : mid::NormKind::L2;
    const mid::CalibrationResult res = mid::calibrate_constants(
        scenario, norm, a.alpha, a.T_values, a.d_values, a.reps, grid, a.seed);

    std::ostringstream os;
    os << "# scenario norm alpha d C\n";
    os << "# calibrated: reps=" << a.reps << " seed=" << a.seed << " T=";
    for (std::size_t i = 0; i < a.T_values.size(); ++i) os << (i ? "," : "") << a.T_values[i];
    os << " grid=[" << a.grid_min << "," << a.grid_max << "]@" << a.grid_step << '\n';
    for (const auto& [d, c] : res.constant_for_d)
        os << (scenario == mid::Scenario::PiecewiseConstant ? "mean" : "slope") << ' '
           << (norm == mid::NormKind::L2 ? "l2" : "linf") << ' ' << a.alpha << ' ' << d << ' '
           << c << '\n';
    midcli::emit_text(a.out, os.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multivariate isolate-detect change-point analysis"};
    app.require_subcommand(1);

    DetectArgs det;
    CLI::App* cdet = app.add_subcommand("detect", "Detect change-points in a CSV panel");
    cdet->add_option("input", det.input, "CSV panel: rows = time, columns = components");
    cdet->add_option("--scenario", det.scenario, "Change type: mean shifts or slope kinks")
        ->check(CLI::IsMember({"mean", "slope"}))
        ->capture_default_str();
    cdet->add_option("--norm", det.norm, "Aggregation / decision policy")
        ->check(CLI::IsMember({"l2", "linf", "auto", "perm-l2", "perm-linf"}))
        ->capture_default_str();
    cdet->add_option("--alpha", det.alpha, "Significance level (0.05 or 0.10)")
        ->capture_default_str();
    cdet->add_option("--lambda", det.lambda, "Interval expansion step")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cdet->add_option("--sigma", det.sigma, "Noise scale policy")
        ->check(CLI::IsMember({"mad", "none", "file"}))
        ->capture_default_str();
    cdet->add_option("--sigma-file", det.sigma_file,
                     "Per-component scales, one positive decimal per line");
    cdet->add_flag("--anscombe", det.anscombe,
                   "Variance-stabilize count data (2*sqrt(x+3/8)) before scaling");
    cdet->add_option("--seed", det.seed, "RNG seed for permutation policies")
        ->capture_default_str();
    cdet->add_option("--format", det.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cdet->add_option("--out", det.out, "Report path (stdout when omitted)");
    CLI::Option* thr = cdet->add_option("--threshold-constant", det.threshold_constant,
                                        "Override the table constant C");
    cdet->add_option("--perm-count", det.perm_count, "Permutation replicates K")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cdet->add_option("--perm-alpha", det.perm_alpha, "Permutation quantile level")
        ->capture_default_str();
    cdet->add_flag("--dump-thresholds", det.dump_thresholds,
                   "Print the embedded threshold-constant table and exit");

    SimulateArgs sim;
    CLI::App* csim = app.add_subcommand("simulate", "Monte-Carlo benchmark over synthetic panels");
    csim->add_option("--preset", sim.preset, "Published grid: paper-s1 or paper-s2")
        ->check(CLI::IsMember({"paper-s1", "paper-s2"}));
    csim->add_option("--scenario", sim.scenario, "Single-cell change type")
        ->check(CLI::IsMember({"mean", "slope"}))
        ->capture_default_str();
    csim->add_option("--T", sim.T, "Series length")->capture_default_str();
    csim->add_option("--d", sim.d, "Components")->capture_default_str();
    csim->add_option("--N", sim.N, "Change-points (equally spaced)")->capture_default_str();
    csim->add_option("--sp", sim.sp, "Sparsity: fraction of components affected")
        ->capture_default_str();
    csim->add_option("--reps", sim.reps, "Replicates per cell")->capture_default_str();
    csim->add_option("--seed", sim.seed, "Base RNG seed")->capture_default_str();
    csim->add_option("--detector", sim.detector, "Detection policy")
        ->check(CLI::IsMember({"l2", "linf", "auto", "perm-l2", "perm-linf"}))
        ->capture_default_str();
    csim->add_option("--alpha", sim.alpha, "Significance level")->capture_default_str();
    csim->add_option("--lambda", sim.lambda, "Interval expansion step")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    csim->add_option("--mag-lo", sim.mag_lo, "Magnitude range low end")->capture_default_str();
    csim->add_option("--mag-hi", sim.mag_hi, "Magnitude range high end")->capture_default_str();
    csim->add_option("--noise-sd", sim.noise_sd, "Gaussian noise scale")->capture_default_str();
    csim->add_option("--perm-count", sim.perm_count, "Permutation replicates K")
        ->capture_default_str();
    csim->add_option("--perm-alpha", sim.perm_alpha, "Permutation quantile level")
        ->capture_default_str();
    csim->add_option("--out", sim.out, "Benchmark CSV path (stdout when omitted)");
    csim->add_option("--table", sim.table_out, "Also write a human-readable table");
    csim->add_option("--panel-out", sim.panel_out,
                     "Write the first replicate's panel CSV and exit (fixture mode)");
    csim->add_option("--truth-out", sim.truth_out,
                     "Write the first replicate's true change-points and exit (fixture mode)");

    CalibrateArgs cal;
    CLI::App* ccal = app.add_subcommand("calibrate", "Re-derive threshold constants on null data");
    ccal->add_option("--scenario", cal.scenario, "Change type")
        ->check(CLI::IsMember({"mean", "slope"}))
        ->capture_default_str();
    ccal->add_option("--norm", cal.norm, "Aggregation norm")
        ->check(CLI::IsMember({"l2", "linf"}))
        ->capture_default_str();
    ccal->add_option("--alpha", cal.alpha, "Target significance level")->capture_default_str();
    ccal->add_option("--d", cal.d_values, "Dimensions to calibrate")->capture_default_str();
    ccal->add_option("--T", cal.T_values, "Series lengths averaged over")->capture_default_str();
    ccal->add_option("--reps", cal.reps, "Null replicates per (d, T); small values are noisy")
        ->capture_default_str();
    ccal->add_option("--grid-min", cal.grid_min, "Candidate C grid start")->capture_default_str();
    ccal->add_option("--grid-max", cal.grid_max, "Candidate C grid end")->capture_default_str();
    ccal->add_option("--grid-step", cal.grid_step, "Candidate C grid step")
        ->capture_default_str();
    ccal->add_option("--seed", cal.seed, "Base RNG seed")->capture_default_str();
    ccal->add_option("--out", cal.out, "Constants path (stdout when omitted)");

    try {
        app.parse(argc, argv);
        det.has_threshold_constant = thr->count() > 0;
        if (cdet->parsed()) return run_detect(det);
        if (csim->parsed()) return run_simulate(sim);
        if (ccal->parsed()) return run_calibrate(cal);
        return 3;
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help and friends
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;  // flag/usage problems are configuration errors
    } catch (const midcli::CsvError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
