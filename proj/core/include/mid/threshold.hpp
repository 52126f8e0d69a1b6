#pragma once

#include <iosfwd>

#include "mid/aggregate.hpp"
#include "mid/series.hpp"

namespace mid {

// Default threshold constant for the given scenario, norm, alpha and dimension.
// Embedded table calibrated by simulation for d = 1..50 at alpha in {0.05, 0.10};
// d > 50 reuses the d = 50 entry. Throws UnknownAlpha for other alpha values.
double threshold_constant(Scenario scenario, NormKind norm, double alpha, long d);

// Detection threshold zeta_{T,d} = C * sqrt(log(T * d^{1/4})), natural log.
double zeta_threshold(double C, long T, long d);

// Univariate threshold C_1 * sqrt(log T) used by the sparsity estimation step
// (the d = 1 constant of the table for the given scenario and alpha).
double univariate_zeta(Scenario scenario, double alpha, long T);

// Audit dump: one line per (scenario, norm, alpha, d, C), space-separated,
// scenario in {mean, slope}, norm in {l2, linf}; a '#' header line first.
void dump_threshold_table(std::ostream& os);

}  // namespace mid
