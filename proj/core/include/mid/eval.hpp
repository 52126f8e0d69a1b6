#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string_view>
#include <utility>
#include <vector>

#include "mid/detect.hpp"
#include "mid/series.hpp"

namespace mid {

// Synthetic panel description for the Monte-Carlo harness.
struct SignalSpec {
    long T = 0;
    long d = 0;
    Scenario scenario = Scenario::PiecewiseConstant;
    std::vector<long> changepoints;  // sorted, in [1, T-1]
    double sparsity = 1.0;           // each change affects ceil(sparsity * d) components
    double mag_lo = 1.0;             // |jump| or |slope delta| ~ U(mag_lo, mag_hi)
    double mag_hi = 2.0;
    double noise_sd = 1.0;
    std::uint64_t rng_seed = 0;
};

struct Truth {
    std::vector<long> changepoints;
    std::vector<std::vector<long>> affected;  // per change-point, sorted 1-based components
};

// S1: mean shifts of signed U(mag_lo, mag_hi) applied from t = r+1 on.
// S2: slope deltas of magnitude U(mag_lo, mag_hi) whose sign opposes the
// component's current slope (random at slope 0), keeping signals continuous
// and bounded. i.i.d. Gaussian noise of sd noise_sd is added everywhere.
std::pair<MultiSeries, Truth> generate_signal(const SignalSpec& spec);

// Adjusted Rand index of the two segmentations of {1..T} induced by the
// change-point sets (segment = maximal run between consecutive points).
// Degenerate 0/0 case (both sets empty) is 1.0.
double adjusted_rand_index(const std::vector<long>& true_cps, const std::vector<long>& est_cps,
                           long T);

// Scaled Hausdorff distance: max of the two directed max-min location
// discrepancies, divided by the largest *true* segment length (segments
// delimited by {0, true change-points, T}). A min over an empty estimate set
// is T by convention. Throws EmptyTruth when true_cps is empty.
double hausdorff_scaled(const std::vector<long>& true_cps, const std::vector<long>& est_cps,
                        long T);

// One cell of a simulation grid.
struct BenchCell {
    Scenario scenario = Scenario::PiecewiseConstant;
    long T = 1500;
    long d = 30;
    long N = 3;
    double sp = 0.2;
};

struct CellResult {
    BenchCell cell;
    long reps = 0;
    std::map<long, long> freq;  // (N_hat - N) -> count
    double mean_ari = 0.0;
    double mean_dh = 0.0;
    double mean_time_s = 0.0;

    long count_exact() const;            // N_hat == N
    long count_within(long k) const;     // |N_hat - N| <= k
};

struct BenchmarkReport {
    NormPolicy detector = NormPolicy::Auto;
    std::uint64_t seed = 0;
    long reps = 0;
    std::vector<CellResult> cells;

    // Stable machine format: one row per cell, fixed granular buckets.
    void write_csv(std::ostream& os) const;
    // Human-readable table with the bucket layout used for the matching N.
    void write_table(std::ostream& os) const;
};

struct BenchmarkOptions {
    double mag_lo = 1.0;
    double mag_hi = 2.0;
    double noise_sd = 1.0;
    double alpha = 0.05;
    long lambda = 10;
    long permutation_count = 1000;
    double permutation_alpha = 0.01;
};

// For each cell: run `reps` replications of generate -> MAD-normalize ->
// detect (policy `detector`) -> score. Replicate r of cell c draws from a
// substream derived from (rng_seed, c, r), so cells and replicates are
// order-independent and reproducible.
BenchmarkReport run_benchmark(const std::vector<BenchCell>& grid, NormPolicy detector, long reps,
                              std::uint64_t rng_seed, const BenchmarkOptions& opt = {});

// r_j = floor(j*T/(N+1)), j = 1..N.
std::vector<long> equally_spaced_changepoints(long T, long N);

// "paper-s1": S1, T=1500, N in {3,20,50} x d in {30,100} x sp in {.2,.5,.8}.
// "paper-s2": S2, same but d in {10,30,100}. Unknown names -> empty vector.
std::vector<BenchCell> preset_grid(std::string_view name);

}  // namespace mid
