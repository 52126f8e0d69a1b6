#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "mid/aggregate.hpp"
#include "mid/series.hpp"
#include "mid/threshold.hpp"

namespace mid {

// How detection thresholds / aggregation are chosen.
//   L2, LInf   : fixed norm, threshold from the embedded constants table;
//   Auto       : run LInf first, estimate change sparsity, rerun with L2 when dense;
//   PermL2/Inf : threshold-free permutation test per scanned interval.
enum class NormPolicy { L2, LInf, Auto, PermL2, PermLInf };

struct DetectionConfig {
    Scenario scenario = Scenario::PiecewiseConstant;
    NormPolicy norm = NormPolicy::Auto;
    double alpha = 0.05;                               // in {0.05, 0.10}
    long lambda = 10;                                  // expansion step, >= 1
    std::optional<double> threshold_constant_override; // replaces the table C
    long permutation_count = 1000;                     // K
    double permutation_alpha = 0.01;
    std::optional<std::uint64_t> rng_seed;             // permutation variants only
};

struct ScanHit {
    long b = 0;          // detected change-point (1-based)
    double value = 0.0;  // aggregated contrast at b
    long component = 0;  // 1-based argmax component at b (smallest on ties)
};

struct PointDetail {
    long location = 0;
    Interval detected_in;
    double value = 0.0;
    long component = 0;
    std::vector<long> affected;  // sparsity-step by-product; may be empty
};

struct ChangePointReport {
    std::vector<long> changepoints;       // sorted, unique, in [1, T-1]
    std::vector<PointDetail> per_point;   // aligned with changepoints
    NormKind norm_used = NormKind::LInf;  // the norm actually applied
    std::optional<double> sparsity_estimate;
    std::optional<double> threshold;      // zeta in effect; empty for permutation runs
};

// The interleaved right/left expanding schedule of [s, e]:
// with n = e-s+1 and K = ceil(n/lambda),
//   R_i = [s, min(s + i*lambda - 1, e)],  L_i = [max(s, e - i*lambda + 1), e],
// emitted R_1, L_1, R_2, L_2, ..., R_K, L_K. Intervals below a scenario's
// minimum testable length are emitted anyway and skipped at scan time.
std::vector<Interval> interval_schedule(long s, long e, long lambda);

// Argmax of the aggregated contrast over I's candidates; a hit only when the
// score strictly exceeds zeta. Ties break to the smallest candidate index and
// the smallest component index. Short intervals return nullopt.
std::optional<ScanHit> scan_interval(const MultiSeries& series, Interval I, Scenario scenario,
                                     NormKind norm, double zeta);

// The isolate-then-detect loop. Worklist starts at [1, T]; a detection in a
// right-expanding interval [s, c] pushes [c, e], one in a left-expanding
// interval [c, e] pushes [s, c]; the rest of the firing interval's schedule is
// abandoned. A schedule that exhausts without firing drops its work interval.
ChangePointReport mid_detect(const MultiSeries& series, const DetectionConfig& cfg,
                             NormKind norm, double zeta);

struct SparsityEstimate {
    double sp_hat = 0.0;                      // max_m (#exceeding components / d)
    std::vector<std::vector<long>> affected;  // per candidate, 1-based components
};

// For each candidate r_m (with r_0 = 0, r_{M+1} = T), the per-component
// contrast of r_m over [r_{m-1}+1, r_{m+1}] is compared against the
// univariate threshold; sp_hat is the largest exceedance fraction.
SparsityEstimate estimate_sparsity(const MultiSeries& series, const std::vector<long>& candidates,
                                   Scenario scenario, double alpha);

// Sparsity-adaptive detection: LInf pass, then keep it (sp <= 0.4 or the
// indeterminate band) or rerun with L2 (sp >= 0.6).
ChangePointReport mid_opt(const MultiSeries& series, const DetectionConfig& cfg);

// Permutation test on one interval: the original max aggregated score must
// strictly exceed the empirical (1-alpha) quantile (order statistic of rank
// ceil((1-alpha)K), no interpolation) of K whole-row permutations of I.
// Replicate k draws from a substream derived from (seed, I.s, I.e, k).
std::optional<ScanHit> permutation_scan(const MultiSeries& series, Interval I,
                                        const DetectionConfig& cfg, NormKind norm,
                                        std::uint64_t seed);

// mid_detect's worklist with permutation_scan in place of scan_interval.
ChangePointReport mid_perm(const MultiSeries& series, const DetectionConfig& cfg, NormKind norm);

// Dispatch on cfg.norm; computes the table threshold (or applies the override)
// for the fixed-norm policies.
ChangePointReport run_detection(const MultiSeries& series, const DetectionConfig& cfg);

// Max over the full [1, T] schedule of each interval's max aggregated score.
// A mid_detect run is empty iff this value is <= zeta, which is what makes
// one-pass calibration possible. Exposed for the equivalence test.
double max_schedule_statistic(const MultiSeries& series, Scenario scenario, NormKind norm,
                              long lambda);

struct CalibrationResult {
    std::map<long, double> constant_for_d;
    // Average (over T_values) count of empty runs per candidate C, keyed by d;
    // kept for audit output.
    std::map<long, std::map<double, double>> empty_counts;
};

// Monte-Carlo selection of the threshold constant: per dimension d, generate
// `reps` standard-normal null panels for every T in T_values, and pick the
// grid C whose average empty-run count is closest to (1-alpha)*reps
// (ties -> larger C).
CalibrationResult calibrate_constants(Scenario scenario, NormKind norm, double alpha,
                                      const std::vector<long>& T_values,
                                      const std::vector<long>& d_range, long reps,
                                      const std::vector<double>& candidate_grid,
                                      std::uint64_t rng_seed);

}  // namespace mid
