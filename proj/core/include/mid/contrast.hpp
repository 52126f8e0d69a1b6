#pragma once

#include <span>
#include <vector>

#include "mid/series.hpp"

namespace mid {

// Per-candidate, per-component contrast values over one interval.
// Row i corresponds to candidates[i]; column j to component j+1.
// S1 candidates are {s, ..., e-1} (J = |I|-1); S2 candidates {s+1, ..., e-1}
// (J = |I|-2, forced by the contrast weights' (b-s)(b-s+1) denominator).
struct ContrastMatrix {
    Interval interval;
    Scenario scenario = Scenario::PiecewiseConstant;
    long J = 0;
    long d = 0;
    std::vector<double> values;      // J x d, row-major, all >= 0
    std::vector<long> candidates;    // absolute 1-based indices, size J

    double at(long i, long j) const { return values[i * d + j]; }
};

// Signed CUSUM of x over [s,e] split at b (s <= b < e). x spans exactly [s,e],
// i.e. x[0] is the value at time s. Callers take |.| for the S1 contrast.
double cusum_value(std::span<const double> x, long s, long e, long b);

// The unit-norm kink contrast vector phi^b_{s,e} evaluated at t = s..e.
// Orthogonal to constants and to linear trends; requires s+1 <= b <= e-1.
std::vector<double> slope_contrast_phi(long s, long e, long b);

// |<x, phi^b_{s,e}>| with x spanning [s,e].
double slope_contrast_value(std::span<const double> x, long s, long e, long b);

// Contrast of every candidate split for every component over `interval`.
// Uses per-interval prefix sums; agrees with the direct formulas to 1e-9.
ContrastMatrix contrast_matrix(const MultiSeries& series, Interval interval, Scenario scenario);

}  // namespace mid
