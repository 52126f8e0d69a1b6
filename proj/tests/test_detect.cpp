#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "mid/detect.hpp"
#include "mid/errors.hpp"
#include "mid/rng.hpp"
#include "mid/threshold.hpp"

using mid::DetectionConfig;
using mid::Interval;
using mid::interval_schedule;
using mid::MultiSeries;
using mid::NormKind;
using mid::NormPolicy;
using mid::Scenario;

namespace {

// Three-component mean-shift example: one early jump, one late jump, and a
// change affecting two components at once; a flat nuisance component.
MultiSeries s1_example() {
    std::vector<double> flat;
    for (long t = 1; t <= 200; ++t) {
        flat.push_back(28 <= t && t <= 165 ? 6.0 : 0.0);
        flat.push_back(74 <= t && t <= 165 ? -6.0 : 0.0);
        flat.push_back(0.0);
    }
    return MultiSeries(std::move(flat), 200, 3);
}

// Continuous piecewise-linear example with kinks at 53/100/124 plus a
// globally linear component that never kinks.
MultiSeries s2_example() {
    std::vector<double> flat;
    for (long t = 1; t <= 200; ++t) {
        const double f1 = t <= 53 ? -t + 1 : (t <= 124 ? 2 * t - 158 : -t + 214);
        const double f2 = t <= 100 ? -t + 1 : (t <= 124 ? 2 * t - 299 : -t + 73);
        flat.push_back(static_cast<double>(f1));
        flat.push_back(static_cast<double>(f2));
        flat.push_back(static_cast<double>(t));
    }
    return MultiSeries(std::move(flat), 200, 3);
}

MultiSeries null_panel(long T, long d, std::uint64_t seed) {
    mid::Rng rng(seed);
    std::vector<double> flat(static_cast<std::size_t>(T * d));
    for (double& v : flat) v = rng.normal();
    return MultiSeries(std::move(flat), T, d);
}

constexpr double kZeta200x3 = 4.131249444001764;  // C=1.75, T=200, d=3

}  // namespace

TEST_CASE("interval schedule interleaves right and left expansions") {
    const auto sched = interval_schedule(1, 25, 10);
    const std::vector<Interval> expect{{1, 10}, {16, 25}, {1, 20}, {6, 25}, {1, 25}, {1, 25}};
    REQUIRE(sched.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(sched[i] == expect[i]);

    CHECK(interval_schedule(1, 200, 10).size() == 40);

    // Expansion step at least the span: both passes degenerate to [s, e].
    const auto whole = interval_schedule(3, 8, 10);
    REQUIRE(whole.size() == 2);
    CHECK(whole[0] == Interval{3, 8});
    CHECK(whole[1] == Interval{3, 8});

    CHECK_THROWS_AS(interval_schedule(5, 5, 10), mid::EmptyRange);
    CHECK_THROWS_AS(interval_schedule(9, 4, 10), mid::EmptyRange);
}

TEST_CASE("interval schedule matches its closed form for arbitrary inputs") {
    mid::Rng rng(31);
    for (int rep = 0; rep < 200; ++rep) {
        const long s = 1 + static_cast<long>(rng.below(50));
        const long e = s + 1 + static_cast<long>(rng.below(300));
        const long lam = 1 + static_cast<long>(rng.below(40));
        const auto sched = interval_schedule(s, e, lam);
        const long n = e - s + 1;
        const long K = (n + lam - 1) / lam;
        REQUIRE(static_cast<long>(sched.size()) == 2 * K);
        for (long i = 1; i <= K; ++i) {
            REQUIRE(sched[static_cast<std::size_t>(2 * (i - 1))] ==
                    Interval{s, std::min(s + i * lam - 1, e)});
            REQUIRE(sched[static_cast<std::size_t>(2 * (i - 1) + 1)] ==
                    Interval{std::max(s, e - i * lam + 1), e});
        }
        REQUIRE(sched[static_cast<std::size_t>(2 * K - 2)] == Interval{s, e});
        REQUIRE(sched[static_cast<std::size_t>(2 * K - 1)] == Interval{s, e});
    }
}

TEST_CASE("scan_interval pinpoints the first example jump") {
    const auto s = s1_example();
    const auto hit = mid::scan_interval(s, {1, 30}, Scenario::PiecewiseConstant, NormKind::LInf,
                                        kZeta200x3);
    REQUIRE(hit.has_value());
    CHECK(hit->b == 27);
    CHECK(hit->value == doctest::Approx(9.859006035092989).epsilon(1e-12));
    CHECK(hit->component == 1);
}

TEST_CASE("scan_interval stays quiet on flat stretches and short intervals") {
    const auto s = s1_example();
    CHECK_FALSE(mid::scan_interval(s, {1, 20}, Scenario::PiecewiseConstant, NormKind::LInf,
                                   kZeta200x3)
                    .has_value());
    CHECK_FALSE(mid::scan_interval(s, {5, 5}, Scenario::PiecewiseConstant, NormKind::LInf, 0.1)
                    .has_value());
    CHECK_FALSE(mid::scan_interval(s, {5, 6}, Scenario::PiecewiseLinear, NormKind::LInf, 0.1)
                    .has_value());
}

TEST_CASE("ties break to the smallest candidate and component") {
    // |CUSUM| over [1,4] of (0,1,1,0) is symmetric: b=1 and b=3 tie exactly.
    const MultiSeries s({0.0, 0.0, 1.0, 1.0, 1.0, 1.0, 0.0, 0.0}, 4, 2);
    const auto hit =
        mid::scan_interval(s, {1, 4}, Scenario::PiecewiseConstant, NormKind::LInf, 0.5);
    REQUIRE(hit.has_value());
    CHECK(hit->b == 1);
    CHECK(hit->component == 1);  // both components identical
}

TEST_CASE("mean-shift example is recovered exactly, with full detail") {
    const auto s = s1_example();
    DetectionConfig cfg;
    cfg.scenario = Scenario::PiecewiseConstant;

    const auto rep = mid::mid_detect(s, cfg, NormKind::LInf, kZeta200x3);
    CHECK(rep.changepoints == std::vector<long>{27, 73, 165});
    REQUIRE(rep.per_point.size() == 3);
    CHECK(rep.norm_used == NormKind::LInf);
    REQUIRE(rep.threshold.has_value());
    CHECK(*rep.threshold == doctest::Approx(kZeta200x3).epsilon(1e-13));

    CHECK(rep.per_point[0].location == 27);
    CHECK(rep.per_point[0].detected_in == Interval{1, 30});
    CHECK(rep.per_point[0].value == doctest::Approx(9.859006035092989).epsilon(1e-12));
    CHECK(rep.per_point[0].component == 1);

    CHECK(rep.per_point[1].location == 73);
    CHECK(rep.per_point[1].detected_in == Interval{30, 79});
    CHECK(rep.per_point[1].value == doctest::Approx(13.786950351691269).epsilon(1e-12));
    CHECK(rep.per_point[1].component == 2);

    CHECK(rep.per_point[2].location == 165);
    CHECK(rep.per_point[2].detected_in == Interval{161, 200});
    CHECK(rep.per_point[2].value == doctest::Approx(12.549900398011133).epsilon(1e-12));
    CHECK(rep.per_point[2].component == 1);
}

TEST_CASE("slope example is recovered exactly, with full detail") {
    const auto s = s2_example();
    DetectionConfig cfg;
    cfg.scenario = Scenario::PiecewiseLinear;

    const auto rep = mid::mid_detect(s, cfg, NormKind::LInf, kZeta200x3);
    CHECK(rep.changepoints == std::vector<long>{53, 100, 124});
    REQUIRE(rep.per_point.size() == 3);

    CHECK(rep.per_point[0].detected_in == Interval{1, 60});
    CHECK(rep.per_point[0].value == doctest::Approx(29.08380356654189).epsilon(1e-12));
    CHECK(rep.per_point[0].component == 1);
    CHECK(rep.per_point[1].detected_in == Interval{60, 109});
    CHECK(rep.per_point[1].value == doctest::Approx(36.96135355560809).epsilon(1e-12));
    CHECK(rep.per_point[1].component == 2);
    CHECK(rep.per_point[2].detected_in == Interval{109, 128});
    CHECK(rep.per_point[2].value == doctest::Approx(11.27909770827358).epsilon(1e-12));
    CHECK(rep.per_point[2].component == 2);
}

TEST_CASE("both examples also fall out under the l2 aggregation") {
    DetectionConfig cfg;
    cfg.scenario = Scenario::PiecewiseConstant;
    const double z1 = mid::zeta_threshold(
        mid::threshold_constant(Scenario::PiecewiseConstant, NormKind::L2, 0.05, 3), 200, 3);
    CHECK(mid::mid_detect(s1_example(), cfg, NormKind::L2, z1).changepoints ==
          std::vector<long>{27, 73, 165});

    cfg.scenario = Scenario::PiecewiseLinear;
    const double z2 = mid::zeta_threshold(
        mid::threshold_constant(Scenario::PiecewiseLinear, NormKind::L2, 0.05, 3), 200, 3);
    CHECK(mid::mid_detect(s2_example(), cfg, NormKind::L2, z2).changepoints ==
          std::vector<long>{53, 100, 124});
}

TEST_CASE("detection output is sorted, unique, interior, and aligned") {
    const auto s = s1_example();
    DetectionConfig cfg;
    const auto rep = mid::run_detection(s, cfg);
    for (std::size_t i = 0; i < rep.changepoints.size(); ++i) {
        const long r = rep.changepoints[i];
        REQUIRE(r >= 1);
        REQUIRE(r <= s.T() - 1);
        if (i > 0) REQUIRE(rep.changepoints[i - 1] < r);
        REQUIRE(rep.per_point[i].location == r);
    }
}

TEST_CASE("duplicate whole-interval schedule entries do not double-detect") {
    std::vector<double> flat;
    for (long t = 1; t <= 8; ++t) flat.push_back(t <= 4 ? 0.0 : 5.0);
    const MultiSeries s(std::move(flat), 8, 1);
    DetectionConfig cfg;
    cfg.lambda = 50;  // schedule is ([1,8], [1,8])
    const auto rep = mid::mid_detect(s, cfg, NormKind::LInf, 1.0);
    CHECK(rep.changepoints == std::vector<long>{4});
}

TEST_CASE("sparsity estimation flags the affected components") {
    const auto s = s1_example();
    const auto est =
        mid::estimate_sparsity(s, {27, 73, 165}, Scenario::PiecewiseConstant, 0.05);
    CHECK(est.sp_hat == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    REQUIRE(est.affected.size() == 3);
    CHECK(est.affected[0] == std::vector<long>{1});
    CHECK(est.affected[1] == std::vector<long>{2});
    CHECK(est.affected[2] == std::vector<long>{1, 2});

    CHECK_THROWS_AS(mid::estimate_sparsity(s, {}, Scenario::PiecewiseConstant, 0.05),
                    mid::EmptyCandidates);
}

TEST_CASE("auto policy reruns densely affected panels under l2") {
    DetectionConfig cfg;
    cfg.norm = NormPolicy::Auto;
    const auto rep = mid::mid_opt(s1_example(), cfg);
    CHECK(rep.changepoints == std::vector<long>{27, 73, 165});
    CHECK(rep.norm_used == NormKind::L2);
    REQUIRE(rep.sparsity_estimate.has_value());
    CHECK(*rep.sparsity_estimate == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    REQUIRE(rep.per_point.size() == 3);
    CHECK(rep.per_point[0].affected == std::vector<long>{1});
    CHECK(rep.per_point[1].affected == std::vector<long>{2});
    CHECK(rep.per_point[2].affected == std::vector<long>{1, 2});
}

TEST_CASE("auto policy keeps linf for sparse changes") {
    // One jump touching 1 of 10 components: sp_hat = 0.1 < 0.6.
    std::vector<double> flat;
    mid::Rng rng(77);
    for (long t = 1; t <= 300; ++t)
        for (long j = 1; j <= 10; ++j)
            flat.push_back((j == 4 && t > 150 ? 8.0 : 0.0) + 0.3 * rng.normal());
    const MultiSeries s(std::move(flat), 300, 10);
    DetectionConfig cfg;
    const auto rep = mid::mid_opt(s, cfg);
    CHECK(rep.norm_used == NormKind::LInf);
    REQUIRE(rep.sparsity_estimate.has_value());
    CHECK(*rep.sparsity_estimate <= 0.2);
    CHECK(rep.changepoints == std::vector<long>{150});
}

TEST_CASE("auto policy reports sparsity zero when nothing fires") {
    const auto rep = mid::mid_opt(null_panel(80, 2, 5), DetectionConfig{});
    CHECK(rep.changepoints.empty());
    CHECK(rep.norm_used == NormKind::LInf);
    REQUIRE(rep.sparsity_estimate.has_value());
    CHECK(*rep.sparsity_estimate == 0.0);
}

TEST_CASE("permutation policy is deterministic and threshold-free") {
    DetectionConfig cfg;
    cfg.scenario = Scenario::PiecewiseConstant;
    cfg.norm = NormPolicy::PermLInf;
    cfg.permutation_count = 200;
    cfg.rng_seed = 99;

    const auto a = mid::run_detection(s1_example(), cfg);
    const auto b = mid::run_detection(s1_example(), cfg);
    CHECK(a.changepoints == std::vector<long>{27, 73, 165});
    CHECK(a.changepoints == b.changepoints);
    REQUIRE(a.per_point.size() == b.per_point.size());
    for (std::size_t i = 0; i < a.per_point.size(); ++i)
        CHECK(a.per_point[i].value == b.per_point[i].value);
    CHECK_FALSE(a.threshold.has_value());
}

TEST_CASE("run_detection dispatches on the policy") {
    const auto s = s1_example();
    DetectionConfig cfg;

    cfg.norm = NormPolicy::L2;
    CHECK(mid::run_detection(s, cfg).norm_used == NormKind::L2);
    CHECK(mid::run_detection(s, cfg).threshold.has_value());
    CHECK_FALSE(mid::run_detection(s, cfg).sparsity_estimate.has_value());

    cfg.norm = NormPolicy::LInf;
    CHECK(mid::run_detection(s, cfg).norm_used == NormKind::LInf);

    cfg.norm = NormPolicy::Auto;
    CHECK(mid::run_detection(s, cfg).sparsity_estimate.has_value());

    cfg.norm = NormPolicy::PermL2;
    cfg.permutation_count = 100;
    cfg.rng_seed = 3;
    const auto perm = mid::run_detection(s, cfg);
    CHECK(perm.norm_used == NormKind::L2);
    CHECK_FALSE(perm.threshold.has_value());
}

TEST_CASE("threshold override replaces the table constant") {
    const auto s = s1_example();
    DetectionConfig cfg;
    cfg.norm = NormPolicy::LInf;
    cfg.threshold_constant_override = 1e6;  // absurdly high: nothing can fire
    CHECK(mid::run_detection(s, cfg).changepoints.empty());
}

TEST_CASE("a run is empty exactly when the schedule max clears the threshold") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto s = null_panel(120, 4, seed);
        const double M = mid::max_schedule_statistic(s, Scenario::PiecewiseConstant,
                                                     NormKind::LInf, 10);
        REQUIRE(M > 0.0);
        DetectionConfig cfg;
        CHECK(mid::mid_detect(s, cfg, NormKind::LInf, M * (1.0 + 1e-9)).changepoints.empty());
        CHECK_FALSE(
            mid::mid_detect(s, cfg, NormKind::LInf, M * (1.0 - 1e-9)).changepoints.empty());
    }
}

TEST_CASE("calibration is deterministic and its audit counts grow with C") {
    const std::vector<double> grid{1.0, 1.4, 1.8, 2.2};
    const auto a = mid::calibrate_constants(Scenario::PiecewiseConstant, NormKind::L2, 0.05,
                                            {200}, {1}, 50, grid, 5);
    const auto b = mid::calibrate_constants(Scenario::PiecewiseConstant, NormKind::L2, 0.05,
                                            {200}, {1}, 50, grid, 5);
    REQUIRE(a.constant_for_d.size() == 1);
    CHECK(a.constant_for_d.at(1) == b.constant_for_d.at(1));
    CHECK(std::find(grid.begin(), grid.end(), a.constant_for_d.at(1)) != grid.end());

    const auto& counts = a.empty_counts.at(1);
    REQUIRE(counts.size() == grid.size());
    double prev = -1.0;
    for (const auto& [c, cnt] : counts) {
        REQUIRE(cnt >= prev);
        REQUIRE(cnt <= 50.0);
        prev = cnt;
    }
}
