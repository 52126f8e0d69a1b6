#include "mid/detect.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "mid/rng.hpp"
#include "scan_internal.hpp"

namespace mid {

std::vector<Interval> interval_schedule(long s, long e, long lambda) {
    if (s >= e) throw EmptyRange(s, e);
    if (lambda < 1) throw Error("interval_schedule: lambda must be >= 1");
    const long n = e - s + 1;
    const long K = (n + lambda - 1) / lambda;
    std::vector<Interval> out;
    out.reserve(static_cast<std::size_t>(2 * K));
    for (long i = 1; i <= K; ++i) {
        out.push_back({s, std::min(s + i * lambda - 1, e)});  // right-expanding
        out.push_back({std::max(s, e - i * lambda + 1), e});  // left-expanding
    }
    return out;
}

namespace {

using detail::PanelSums;

std::optional<ScanHit> scan_with_sums(const PanelSums& sums, long s, long e, Scenario scenario,
                                      NormKind norm, double zeta) {
    const auto best = detail::best_over_interval(sums, s, e, scenario, norm);
    if (!best || !(best->value > zeta)) return std::nullopt;
    return ScanHit{best->b, best->value, best->comp0 + 1};
}

// Scan callback returns a hit for the interval or nullopt. Shared by the
// threshold and permutation variants so the worklist logic exists once.
template <typename ScanFn>
ChangePointReport worklist_detect(long T, Scenario scenario, long lambda, ScanFn&& scan) {
    ChangePointReport report;
    if (T < min_testable_length(scenario)) return report;

    std::set<long> recorded;
    std::vector<PointDetail> details;
    std::vector<Interval> work{{1, T}};
    while (!work.empty()) {
        const Interval w = work.back();
        work.pop_back();
        if (w.size() < min_testable_length(scenario)) continue;
        for (const Interval& I : interval_schedule(w.s, w.e, lambda)) {
            const std::optional<ScanHit> hit = scan(I);
            if (!hit) continue;
            if (!recorded.insert(hit->b).second)
                throw std::logic_error("worklist invariant violated: change-point " +
                                       std::to_string(hit->b) + " detected twice");
            details.push_back({hit->b, I, hit->value, hit->component, {}});
            if (I.s == w.s)
                work.push_back({I.e, w.e});  // right-expanding: restart from its end-point
            else
                work.push_back({w.s, I.s});  // left-expanding: restart from its start-point
            break;  // abandon the rest of this work interval's schedule
        }
    }

    std::sort(details.begin(), details.end(),
              [](const PointDetail& a, const PointDetail& b) { return a.location < b.location; });
    for (const PointDetail& pd : details) report.changepoints.push_back(pd.location);
    report.per_point = std::move(details);
    return report;
}

}  // namespace

std::optional<ScanHit> scan_interval(const MultiSeries& series, Interval I, Scenario scenario,
                                     NormKind norm, double zeta) {
    if (I.s < 1 || I.e > series.T() || I.s > I.e)
        throw Error("scan_interval: interval out of range");
    if (I.size() < min_testable_length(scenario)) return std::nullopt;
    const auto sums = PanelSums::build(series.row(I.s), I.size(), series.d(),
                                       scenario == Scenario::PiecewiseLinear);
    auto hit = scan_with_sums(sums, 1, I.size(), scenario, norm, zeta);
    if (hit) hit->b += I.s - 1;  // back to absolute coordinates
    return hit;
}

ChangePointReport mid_detect(const MultiSeries& series, const DetectionConfig& cfg, NormKind norm,
                             double zeta) {
    const auto sums = PanelSums::build(series.data().data(), series.T(), series.d(),
                                       cfg.scenario == Scenario::PiecewiseLinear);
    ChangePointReport report =
        worklist_detect(series.T(), cfg.scenario, cfg.lambda, [&](Interval I) {
            return scan_with_sums(sums, I.s, I.e, cfg.scenario, norm, zeta);
        });
    report.norm_used = norm;
    report.threshold = zeta;
    return report;
}

SparsityEstimate estimate_sparsity(const MultiSeries& series, const std::vector<long>& candidates,
                                   Scenario scenario, double alpha) {
    if (candidates.empty()) throw EmptyCandidates();
    const long T = series.T();
    const long d = series.d();
    const bool s1 = scenario == Scenario::PiecewiseConstant;
    const double zeta = univariate_zeta(scenario, alpha, T);
    const auto sums = PanelSums::build(series.data().data(), T, d, !s1);

    SparsityEstimate out;
    const long M = static_cast<long>(candidates.size());
    for (long m = 0; m < M; ++m) {
        const long b = candidates[static_cast<std::size_t>(m)];
        const long a = (m == 0 ? 0 : candidates[static_cast<std::size_t>(m - 1)]) + 1;
        const long c = m + 1 < M ? candidates[static_cast<std::size_t>(m + 1)] : T;
        std::vector<long> exceed;
        // A candidate whose triplet interval cannot host it as a valid split
        // contributes zero contrast in every component.
        const bool valid = c - a + 1 >= min_testable_length(scenario) && b >= (s1 ? a : a + 1) &&
                           b <= c - 1;
        if (valid) {
            for (long j = 0; j < d; ++j) {
                const double cs = s1 ? detail::contrast_s1(sums, j, a, c, b)
                                     : detail::contrast_s2(sums, j, a, c, b);
                if (cs > zeta) exceed.push_back(j + 1);
            }
        }
        out.sp_hat = std::max(out.sp_hat,
                              static_cast<double>(exceed.size()) / static_cast<double>(d));
        out.affected.push_back(std::move(exceed));
    }
    return out;
}

namespace {

double table_zeta(const DetectionConfig& cfg, NormKind norm, long T, long d) {
    const double C = cfg.threshold_constant_override
                         ? *cfg.threshold_constant_override
                         : threshold_constant(cfg.scenario, norm, cfg.alpha, d);
    return zeta_threshold(C, T, d);
}

void attach_affected(ChangePointReport& report, const MultiSeries& series,
                     const DetectionConfig& cfg) {
    if (report.changepoints.empty()) return;
    const auto sp = estimate_sparsity(series, report.changepoints, cfg.scenario, cfg.alpha);
    for (std::size_t i = 0; i < report.per_point.size(); ++i)
        report.per_point[i].affected = sp.affected[i];
}

}  // namespace

ChangePointReport mid_opt(const MultiSeries& series, const DetectionConfig& cfg) {
    const long T = series.T();
    const long d = series.d();

    ChangePointReport first =
        mid_detect(series, cfg, NormKind::LInf, table_zeta(cfg, NormKind::LInf, T, d));
    if (first.changepoints.empty()) {
        first.sparsity_estimate = 0.0;
        return first;
    }
    const auto sp = estimate_sparsity(series, first.changepoints, cfg.scenario, cfg.alpha);
    if (sp.sp_hat >= 0.6) {
        // Dense changes: the max norm overestimates; rerun with the L2 norm.
        ChangePointReport second =
            mid_detect(series, cfg, NormKind::L2, table_zeta(cfg, NormKind::L2, T, d));
        second.sparsity_estimate = sp.sp_hat;
        attach_affected(second, series, cfg);
        return second;
    }
    first.sparsity_estimate = sp.sp_hat;
    for (std::size_t i = 0; i < first.per_point.size(); ++i)
        first.per_point[i].affected = sp.affected[i];
    return first;
}

std::optional<ScanHit> permutation_scan(const MultiSeries& series, Interval I,
                                        const DetectionConfig& cfg, NormKind norm,
                                        std::uint64_t seed) {
    const long n = I.size();
    const long d = series.d();
    if (n < min_testable_length(cfg.scenario)) return std::nullopt;
    const bool with_t = cfg.scenario == Scenario::PiecewiseLinear;

    const auto orig_sums = PanelSums::build(series.row(I.s), n, d, with_t);
    const auto best = detail::best_over_interval(orig_sums, 1, n, cfg.scenario, norm);
    if (!best) return std::nullopt;

    const long K = cfg.permutation_count;
    std::vector<double> maxima(static_cast<std::size_t>(K), 0.0);
    std::vector<long> perm(static_cast<std::size_t>(n));
    std::vector<double> scratch(static_cast<std::size_t>(n * d));
    for (long k = 0; k < K; ++k) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(I.s),
                            static_cast<std::uint64_t>(I.e), static_cast<std::uint64_t>(k + 1)));
        for (long i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
        rng.shuffle(perm);
        for (long i = 0; i < n; ++i) {
            const double* src = series.row(I.s + perm[static_cast<std::size_t>(i)]);
            std::copy(src, src + d, scratch.data() + i * d);
        }
        const auto sums = PanelSums::build(scratch.data(), n, d, with_t);
        const auto pb = detail::best_over_interval(sums, 1, n, cfg.scenario, norm);
        maxima[static_cast<std::size_t>(k)] = pb ? pb->value : 0.0;
    }

    // Empirical (1-alpha) quantile: the ceil((1-alpha)K)-th order statistic.
    const long rank =
        static_cast<long>(std::ceil((1.0 - cfg.permutation_alpha) * static_cast<double>(K)));
    const long idx = std::clamp(rank, 1L, K) - 1;
    std::nth_element(maxima.begin(), maxima.begin() + idx, maxima.end());
    const double q = maxima[static_cast<std::size_t>(idx)];
    if (!(best->value > q)) return std::nullopt;
    return ScanHit{I.s + best->b - 1, best->value, best->comp0 + 1};
}

ChangePointReport mid_perm(const MultiSeries& series, const DetectionConfig& cfg, NormKind norm) {
    const std::uint64_t seed = cfg.rng_seed.value_or(0);
    ChangePointReport report =
        worklist_detect(series.T(), cfg.scenario, cfg.lambda, [&](Interval I) {
            return permutation_scan(series, I, cfg, norm, seed);
        });
    report.norm_used = norm;
    report.threshold = std::nullopt;  // no fixed threshold exists for this variant
    return report;
}

ChangePointReport run_detection(const MultiSeries& series, const DetectionConfig& cfg) {
    switch (cfg.norm) {
        case NormPolicy::L2:
            return mid_detect(series, cfg, NormKind::L2,
                              table_zeta(cfg, NormKind::L2, series.T(), series.d()));
        case NormPolicy::LInf:
            return mid_detect(series, cfg, NormKind::LInf,
                              table_zeta(cfg, NormKind::LInf, series.T(), series.d()));
        case NormPolicy::Auto:
            return mid_opt(series, cfg);
        case NormPolicy::PermL2:
            return mid_perm(series, cfg, NormKind::L2);
        case NormPolicy::PermLInf:
            return mid_perm(series, cfg, NormKind::LInf);
    }
    throw Error("run_detection: unknown norm policy");
}

double max_schedule_statistic(const MultiSeries& series, Scenario scenario, NormKind norm,
                              long lambda) {
    const auto sums = PanelSums::build(series.data().data(), series.T(), series.d(),
                                       scenario == Scenario::PiecewiseLinear);
    double mx = 0.0;
    for (const Interval& I : interval_schedule(1, series.T(), lambda)) {
        const auto best = detail::best_over_interval(sums, I.s, I.e, scenario, norm);
        if (best && best->value > mx) mx = best->value;
    }
    return mx;
}

CalibrationResult calibrate_constants(Scenario scenario, NormKind norm, double alpha,
                                      const std::vector<long>& T_values,
                                      const std::vector<long>& d_range, long reps,
                                      const std::vector<double>& candidate_grid,
                                      std::uint64_t rng_seed) {
    if (candidate_grid.empty()) throw Error("calibrate_constants: empty candidate grid");
    if (T_values.empty()) throw Error("calibrate_constants: empty T list");
    if (reps < 1) throw Error("calibrate_constants: reps must be >= 1");

    CalibrationResult result;
    const double target = (1.0 - alpha) * static_cast<double>(reps);
    for (long d : d_range) {
        std::map<double, double> counts;
        for (double c : candidate_grid) counts[c] = 0.0;
        for (long T : T_values) {
            for (long rep = 0; rep < reps; ++rep) {
                Rng rng(derive_seed(rng_seed, static_cast<std::uint64_t>(d),
                                    static_cast<std::uint64_t>(T),
                                    static_cast<std::uint64_t>(rep)));
                std::vector<double> flat(static_cast<std::size_t>(T * d));
                for (double& x : flat) x = rng.normal();
                const MultiSeries panel(std::move(flat), T, d);
                // Empty mid_detect output <=> the whole-schedule max is <= zeta,
                // so one panel statistic serves every grid candidate.
                const double M = max_schedule_statistic(panel, scenario, norm, 10);
                for (double c : candidate_grid)
                    if (M <= zeta_threshold(c, T, d)) counts[c] += 1.0;
            }
        }
        for (auto& [c, cnt] : counts) cnt /= static_cast<double>(T_values.size());

        double best_c = candidate_grid.front();
        double best_err = std::abs(counts[best_c] - target);
        for (double c : candidate_grid) {
            const double err = std::abs(counts[c] - target);
            if (err <= best_err) {  // '<=' prefers the larger (later) constant on ties
                best_err = err;
                best_c = c;
            }
        }
        result.constant_for_d[d] = best_c;
        result.empty_counts[d] = std::move(counts);
    }
    return result;
}

}  // namespace mid
