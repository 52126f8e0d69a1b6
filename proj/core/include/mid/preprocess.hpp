#pragma once

#include <vector>

#include "mid/series.hpp"

namespace mid {

struct SigmaVector {
    std::vector<double> sigma;  // one positive scale per component
};

// Robust per-component noise scale:
//   S1: 1.4826 * MAD(first differences)  / sqrt(2)
//   S2: 1.4826 * MAD(second differences) / sqrt(6)
// MAD = median(|z - median(z)|), median = average of the two middle order
// statistics for even length. Differencing confines each change-point to one
// (S1) or two (S2) contaminated values, which the median ignores.
// Throws DegenerateComponent(j) when a component's MAD is zero.
SigmaVector estimate_sigma_mad(const MultiSeries& series, Scenario scenario);

// Same, but substitutes sigma_j = 1 for zero-MAD components and records them
// in `degenerate` (1-based) instead of throwing.
SigmaVector estimate_sigma_mad_lenient(const MultiSeries& series, Scenario scenario,
                                       std::vector<long>& degenerate);

// Divides component j by sigma[j], entrywise.
MultiSeries normalize(const MultiSeries& series, const SigmaVector& sigma);

// Variance-stabilizer for counts: a(x) = 2*sqrt(x + 3/8). Entries must be
// nonnegative integers; throws NegativeCount / NonIntegerCount with position.
MultiSeries anscombe(const MultiSeries& series);

}  // namespace mid
