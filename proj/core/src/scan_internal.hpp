#pragma once

// Shared prefix-sum scanning engine. Internal: not installed, not API.
//
// Both contrasts are invariant under shifting (s,e,b,t) by a common offset,
// so every formula here works in interval-local coordinates (split m = b-s+1
// over a length-n window); this keeps the running sums small and lets one
// engine serve absolute panels and permuted scratch buffers alike.

#include <cmath>
#include <optional>
#include <vector>

#include "mid/aggregate.hpp"
#include "mid/series.hpp"

namespace mid::detail {

struct PanelSums {
    long T = 0, d = 0;
    std::vector<double> P;  // (T+1) x d; P[t][j] = sum_{u<=t} x(u,j)
    std::vector<double> Q;  // (T+1) x d; Q[t][j] = sum_{u<=t} u*x(u,j), u = 1..T panel-local

    static PanelSums build(const double* time_major, long T, long d, bool with_t) {
        PanelSums ps;
        ps.T = T;
        ps.d = d;
        ps.P.assign(static_cast<std::size_t>((T + 1) * d), 0.0);
        if (with_t) ps.Q.assign(static_cast<std::size_t>((T + 1) * d), 0.0);
        for (long t = 1; t <= T; ++t) {
            const double* row = time_major + (t - 1) * d;
            double* Pt = ps.P.data() + t * d;
            const double* Pp = ps.P.data() + (t - 1) * d;
            for (long j = 0; j < d; ++j) Pt[j] = Pp[j] + row[j];
            if (with_t) {
                double* Qt = ps.Q.data() + t * d;
                const double* Qp = ps.Q.data() + (t - 1) * d;
                const double w = static_cast<double>(t);
                for (long j = 0; j < d; ++j) Qt[j] = Qp[j] + w * row[j];
            }
        }
        return ps;
    }

    // sum_{t=a}^{b} x(t,j0); j0 0-based, a/b 1-based, a <= b.
    double sum(long j0, long a, long b) const { return P[b * d + j0] - P[(a - 1) * d + j0]; }
    double tsum(long j0, long a, long b) const { return Q[b * d + j0] - Q[(a - 1) * d + j0]; }
};

// |CUSUM| of component j0 over [s,e] split at b; O(1).
inline double contrast_s1(const PanelSums& ps, long j0, long s, long e, long b) {
    const double n = static_cast<double>(e - s + 1);
    const double m = static_cast<double>(b - s + 1);
    const double k = static_cast<double>(e - b);
    const double left = ps.sum(j0, s, b);
    const double right = ps.sum(j0, b + 1, e);
    return std::abs(std::sqrt(k / (n * m)) * left - std::sqrt(m / (n * k)) * right);
}

// |<x, phi>| of component j0 over [s,e] split at b; O(1), local coordinates.
inline double contrast_s2(const PanelSums& ps, long j0, long s, long e, long b) {
    const double n = static_cast<double>(e - s + 1);
    const double m = static_cast<double>(b - s + 1);  // local split position
    const double off = static_cast<double>(s - 1);    // local t = absolute t - off
    const double sl = ps.sum(j0, s, b);
    const double sr = ps.sum(j0, b + 1, e);
    const double tl = ps.tsum(j0, s, b) - off * sl;
    const double tr = ps.tsum(j0, b + 1, e) - off * sr;
    const double alpha =
        std::sqrt(6.0 / (n * (n * n - 1.0) * (1.0 + (n - m + 1.0) * m + (n - m) * (m - 1.0))));
    const double beta = std::sqrt(((n - m + 1.0) * (n - m)) / (m * (m - 1.0)));
    const double left = alpha * beta * ((n + 2.0 * m - 1.0) * tl - (m * n + m) * sl);
    const double right =
        (alpha / beta) * ((2.0 * n * n + 2.0 * n - m * n - m) * sr - (3.0 * n - 2.0 * m + 1.0) * tr);
    return std::abs(left + right);
}

struct BestCandidate {
    long b = 0;       // absolute 1-based candidate
    double value = 0; // aggregated score
    long comp0 = 0;   // 0-based argmax component at b
};

// Argmax of the aggregated contrast over all candidates of [s,e].
// Strict '>' everywhere: smallest candidate index and smallest component win
// ties. Returns nullopt when the interval is below the scenario minimum.
inline std::optional<BestCandidate> best_over_interval(const PanelSums& ps, long s, long e,
                                                       Scenario scenario, NormKind norm) {
    const long n = e - s + 1;
    if (n < min_testable_length(scenario)) return std::nullopt;
    const bool s1 = scenario == Scenario::PiecewiseConstant;
    const long b_first = s1 ? s : s + 1;
    const long b_last = e - 1;
    const long d = ps.d;

    BestCandidate best;
    best.b = -1;
    best.value = -1.0;
    for (long b = b_first; b <= b_last; ++b) {
        double agg;
        long comp0 = 0;
        if (norm == NormKind::LInf) {
            double mx = -1.0;
            for (long j = 0; j < d; ++j) {
                const double v = s1 ? contrast_s1(ps, j, s, e, b) : contrast_s2(ps, j, s, e, b);
                if (v > mx) {
                    mx = v;
                    comp0 = j;
                }
            }
            agg = mx;
        } else {
            double sumsq = 0.0, mx = -1.0;
            for (long j = 0; j < d; ++j) {
                const double v = s1 ? contrast_s1(ps, j, s, e, b) : contrast_s2(ps, j, s, e, b);
                sumsq += v * v;
                if (v > mx) {
                    mx = v;
                    comp0 = j;
                }
            }
            agg = std::sqrt(sumsq / static_cast<double>(d));
        }
        if (agg > best.value) {
            best.value = agg;
            best.b = b;
            best.comp0 = comp0;
        }
    }
    if (best.b < 0) return std::nullopt;
    return best;
}

}  // namespace mid::detail
