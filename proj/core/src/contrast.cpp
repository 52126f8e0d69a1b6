#include "mid/contrast.hpp"

#include <cmath>

#include "scan_internal.hpp"

namespace mid {

double cusum_value(std::span<const double> x, long s, long e, long b) {
    if (b < s || b >= e) throw InvalidSplit(s, e, b);
    const double n = static_cast<double>(e - s + 1);
    const double m = static_cast<double>(b - s + 1);
    const double k = static_cast<double>(e - b);
    double left = 0.0, right = 0.0;
    for (long t = s; t <= b; ++t) left += x[t - s];
    for (long t = b + 1; t <= e; ++t) right += x[t - s];
    return std::sqrt(k / (n * m)) * left - std::sqrt(m / (n * k)) * right;
}

namespace {

struct PhiCoefs {
    double alpha, beta;
    // branch values as linear functions of absolute t
    double left_mul, left_sub;    // alpha*beta*(left_mul*t - left_sub)
    double right_const, right_mul;  // (alpha/beta)*(right_const - right_mul*t)
};

PhiCoefs phi_coefs(long s, long e, long b) {
    const double sd = static_cast<double>(s), ed = static_cast<double>(e),
                 bd = static_cast<double>(b);
    const double n = ed - sd + 1.0;
    PhiCoefs c{};
    c.alpha = std::sqrt(6.0 / (n * (n * n - 1.0) *
                               (1.0 + (ed - bd + 1.0) * (bd - sd + 1.0) + (ed - bd) * (bd - sd))));
    c.beta = std::sqrt(((ed - bd + 1.0) * (ed - bd)) / ((bd - sd + 1.0) * (bd - sd)));
    c.left_mul = ed + 2.0 * bd - 3.0 * sd + 2.0;
    c.left_sub = bd * ed + bd * sd - 2.0 * sd * sd + 2.0 * sd;
    c.right_const = 2.0 * ed * ed + 2.0 * ed - bd * ed - bd * sd;
    c.right_mul = 3.0 * ed - 2.0 * bd - sd + 2.0;
    return c;
}

}  // namespace

std::vector<double> slope_contrast_phi(long s, long e, long b) {
    if (e - s + 1 < 3 || b < s + 1 || b > e - 1) throw InvalidSplit(s, e, b);
    const PhiCoefs c = phi_coefs(s, e, b);
    std::vector<double> phi(static_cast<std::size_t>(e - s + 1));
    for (long t = s; t <= b; ++t)
        phi[t - s] = c.alpha * c.beta * (c.left_mul * static_cast<double>(t) - c.left_sub);
    for (long t = b + 1; t <= e; ++t)
        phi[t - s] = (c.alpha / c.beta) * (c.right_const - c.right_mul * static_cast<double>(t));
    return phi;
}

double slope_contrast_value(std::span<const double> x, long s, long e, long b) {
    if (e - s + 1 < 3 || b < s + 1 || b > e - 1) throw InvalidSplit(s, e, b);
    const PhiCoefs c = phi_coefs(s, e, b);
    double left = 0.0, right = 0.0;
    for (long t = s; t <= b; ++t)
        left += x[t - s] * (c.left_mul * static_cast<double>(t) - c.left_sub);
    for (long t = b + 1; t <= e; ++t)
        right += x[t - s] * (c.right_const - c.right_mul * static_cast<double>(t));
    return std::abs(c.alpha * c.beta * left + (c.alpha / c.beta) * right);
}

ContrastMatrix contrast_matrix(const MultiSeries& series, Interval interval, Scenario scenario) {
    if (interval.e < interval.s) throw EmptyRange(interval.s, interval.e);
    if (interval.s < 1 || interval.e > series.T())
        throw Error("contrast_matrix: interval exceeds the series");
    const long need = min_testable_length(scenario);
    if (interval.size() < need) throw IntervalTooShort(interval.s, interval.e, need);

    const long n = interval.size();
    const long d = series.d();
    const bool s1 = scenario == Scenario::PiecewiseConstant;

    // Local prefix sums over just this interval's rows.
    const auto sums = detail::PanelSums::build(series.row(interval.s), n, d, /*with_t=*/!s1);

    ContrastMatrix B;
    B.interval = interval;
    B.scenario = scenario;
    B.d = d;
    const long b_first = s1 ? 1 : 2;  // local candidate positions
    const long b_last = n - 1;
    B.J = b_last - b_first + 1;
    B.values.resize(static_cast<std::size_t>(B.J * d));
    B.candidates.resize(static_cast<std::size_t>(B.J));
    for (long b = b_first; b <= b_last; ++b) {
        const long i = b - b_first;
        B.candidates[static_cast<std::size_t>(i)] = interval.s + b - 1;
        double* row = B.values.data() + i * d;
        for (long j = 0; j < d; ++j)
            row[j] = s1 ? detail::contrast_s1(sums, j, 1, n, b)
                        : detail::contrast_s2(sums, j, 1, n, b);
    }
    return B;
}

}  // namespace mid
