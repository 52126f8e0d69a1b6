#include "mid/threshold.hpp"

#include <cmath>
#include <ostream>

#include "mid/errors.hpp"

namespace mid {

namespace {

struct Row {
    long d_lo, d_hi;
    double c05, c10;
};

// Simulation-calibrated default constants, dimensions 1..50.
// Above d = 50 the d = 50 entry is reused.

constexpr Row kMeanL2[] = {
    {1, 1, 1.7, 1.55},  {2, 2, 1.25, 1.25},  {3, 3, 1.1, 1.05},  {4, 4, 1.05, 0.95},
    {5, 5, 0.95, 0.9},  {6, 6, 0.9, 0.9},    {7, 7, 0.9, 0.8},   {8, 8, 0.8, 0.8},
    {9, 9, 0.8, 0.75},  {10, 13, 0.75, 0.75}, {14, 14, 0.75, 0.65}, {15, 20, 0.7, 0.65},
    {21, 23, 0.65, 0.6}, {24, 39, 0.6, 0.6},  {40, 50, 0.6, 0.55},
};

constexpr Row kMeanLInf[] = {
    {1, 1, 1.7, 1.55},  {2, 3, 1.75, 1.7},  {4, 6, 1.8, 1.7},   {7, 13, 1.85, 1.75},
    {14, 25, 1.9, 1.8}, {26, 28, 1.9, 1.85}, {29, 50, 1.95, 1.85},
};

constexpr Row kSlopeL2[] = {
    {1, 1, 1.65, 1.55}, {2, 2, 1.25, 1.2},  {3, 3, 1.05, 1.05}, {4, 4, 0.95, 0.95},
    {5, 5, 0.9, 0.9},   {6, 6, 0.9, 0.85},  {7, 7, 0.8, 0.8},   {8, 8, 0.8, 0.75},
    {9, 11, 0.75, 0.75}, {12, 16, 0.7, 0.7}, {17, 19, 0.65, 0.6}, {20, 23, 0.6, 0.6},
    {24, 42, 0.6, 0.55}, {43, 50, 0.55, 0.55},
};

constexpr Row kSlopeLInf[] = {
    {1, 1, 1.65, 1.55}, {2, 2, 1.7, 1.6},   {3, 3, 1.75, 1.6},  {4, 5, 1.75, 1.65},
    {6, 13, 1.75, 1.7}, {14, 25, 1.8, 1.75}, {26, 38, 1.85, 1.8}, {39, 50, 1.9, 1.85},
};

bool is_alpha05(double alpha) {
    if (alpha == 0.05) return true;
    if (alpha == 0.10) return false;
    throw UnknownAlpha(alpha);
}

std::span<const Row> table_for(Scenario scenario, NormKind norm) {
    if (scenario == Scenario::PiecewiseConstant)
        return norm == NormKind::L2 ? std::span<const Row>(kMeanL2) : std::span<const Row>(kMeanLInf);
    return norm == NormKind::L2 ? std::span<const Row>(kSlopeL2) : std::span<const Row>(kSlopeLInf);
}

}  // namespace

double threshold_constant(Scenario scenario, NormKind norm, double alpha, long d) {
    const bool a05 = is_alpha05(alpha);
    if (d < 1) throw DimensionMismatch("threshold_constant: d must be >= 1");
    const long dd = d > 50 ? 50 : d;
    for (const Row& r : table_for(scenario, norm))
        if (dd >= r.d_lo && dd <= r.d_hi) return a05 ? r.c05 : r.c10;
    throw DimensionMismatch("threshold_constant: no table row");  // unreachable
}

double zeta_threshold(double C, long T, long d) {
    return C * std::sqrt(std::log(static_cast<double>(T) *
                                  std::pow(static_cast<double>(d), 0.25)));
}

double univariate_zeta(Scenario scenario, double alpha, long T) {
    const double c = threshold_constant(scenario, NormKind::L2, alpha, 1);
    return c * std::sqrt(std::log(static_cast<double>(T)));
}

void dump_threshold_table(std::ostream& os) {
    os << "# scenario norm alpha d C\n";
    for (Scenario sc : {Scenario::PiecewiseConstant, Scenario::PiecewiseLinear})
        for (NormKind nk : {NormKind::L2, NormKind::LInf})
            for (double alpha : {0.05, 0.10})
                for (long d = 1; d <= 50; ++d)
                    os << (sc == Scenario::PiecewiseConstant ? "mean" : "slope") << ' '
                       << (nk == NormKind::L2 ? "l2" : "linf") << ' ' << alpha << ' ' << d << ' '
                       << threshold_constant(sc, nk, alpha, d) << '\n';
}

}  // namespace mid
