#include "mid/preprocess.hpp"

#include <algorithm>
#include <cmath>

namespace mid {

namespace {

// Median with the average-of-two-middles convention for even length.
double median_inplace(std::vector<double>& v) {
    const std::size_t n = v.size();
    const std::size_t h = n / 2;
    std::nth_element(v.begin(), v.begin() + h, v.end());
    double m = v[h];
    if (n % 2 == 0) {
        const double lo = *std::max_element(v.begin(), v.begin() + h);
        m = 0.5 * (lo + m);
    }
    return m;
}

double mad(std::vector<double> v) {
    const double med = median_inplace(v);
    for (double& x : v) x = std::abs(x - med);
    return median_inplace(v);
}

SigmaVector sigma_mad_impl(const MultiSeries& series, Scenario scenario,
                           std::vector<long>* degenerate) {
    const long T = series.T();
    const long d = series.d();
    const bool s1 = scenario == Scenario::PiecewiseConstant;
    const long need = s1 ? 3 : 4;
    if (T < need) throw TooShort(T);

    SigmaVector out;
    out.sigma.resize(static_cast<std::size_t>(d));
    std::vector<double> diffs;
    for (long j = 1; j <= d; ++j) {
        diffs.clear();
        if (s1) {
            for (long t = 2; t <= T; ++t) diffs.push_back(series.at(t, j) - series.at(t - 1, j));
        } else {
            for (long t = 3; t <= T; ++t)
                diffs.push_back(series.at(t, j) - 2.0 * series.at(t - 1, j) + series.at(t - 2, j));
        }
        // var(first diff) = 2*sigma^2, var(second diff) = 6*sigma^2 for iid noise
        const double scale = 1.4826 / (s1 ? std::sqrt(2.0) : std::sqrt(6.0));
        const double m = mad(diffs);
        if (m == 0.0) {
            if (!degenerate) throw DegenerateComponent(j);
            degenerate->push_back(j);
            out.sigma[static_cast<std::size_t>(j - 1)] = 1.0;
        } else {
            out.sigma[static_cast<std::size_t>(j - 1)] = scale * m;
        }
    }
    return out;
}

}  // namespace

SigmaVector estimate_sigma_mad(const MultiSeries& series, Scenario scenario) {
    return sigma_mad_impl(series, scenario, nullptr);
}

SigmaVector estimate_sigma_mad_lenient(const MultiSeries& series, Scenario scenario,
                                       std::vector<long>& degenerate) {
    return sigma_mad_impl(series, scenario, &degenerate);
}

MultiSeries normalize(const MultiSeries& series, const SigmaVector& sigma) {
    const long T = series.T();
    const long d = series.d();
    if (static_cast<long>(sigma.sigma.size()) != d)
        throw DimensionMismatch("normalize: sigma length " + std::to_string(sigma.sigma.size()) +
                                " != d = " + std::to_string(d));
    for (long j = 0; j < d; ++j)
        if (!(sigma.sigma[static_cast<std::size_t>(j)] > 0.0))
            throw DimensionMismatch("normalize: sigma must be positive");
    std::vector<double> flat(series.data());
    for (long t = 0; t < T; ++t)
        for (long j = 0; j < d; ++j) flat[t * d + j] /= sigma.sigma[static_cast<std::size_t>(j)];
    return MultiSeries(std::move(flat), T, d);
}

MultiSeries anscombe(const MultiSeries& series) {
    const long T = series.T();
    const long d = series.d();
    std::vector<double> flat(series.data());
    for (long t = 1; t <= T; ++t)
        for (long j = 1; j <= d; ++j) {
            const double x = series.at(t, j);
            if (x < 0.0) throw NegativeCount(t, j);
            if (x != std::floor(x)) throw NonIntegerCount(t, j);
            flat[(t - 1) * d + (j - 1)] = 2.0 * std::sqrt(x + 0.375);
        }
    return MultiSeries(std::move(flat), T, d);
}

}  // namespace mid
