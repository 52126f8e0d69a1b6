#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "doctest.h"
#include "mid/contrast.hpp"
#include "mid/errors.hpp"

using mid::contrast_matrix;
using mid::cusum_value;
using mid::Interval;
using mid::MultiSeries;
using mid::Scenario;
using mid::slope_contrast_phi;
using mid::slope_contrast_value;

namespace {

// x spanning [s, e] out of a globally indexed vector (x_global[t-1] = value at t).
std::span<const double> window(const std::vector<double>& x, long s, long e) {
    return {x.data() + (s - 1), static_cast<std::size_t>(e - s + 1)};
}

}  // namespace

TEST_CASE("cusum values match an independent implementation") {
    const std::vector<double> x{1.0, 3.0, 2.0, 5.0, 4.0, 8.0, 7.0, 9.0};
    CHECK(std::abs(cusum_value(window(x, 1, 8), 1, 8, 3)) ==
          doctest::Approx(6.29880941130941).epsilon(1e-12));
    CHECK(std::abs(cusum_value(window(x, 1, 8), 1, 8, 4)) ==
          doctest::Approx(6.010407640085654).epsilon(1e-12));
    CHECK(std::abs(cusum_value(window(x, 2, 7), 2, 7, 4)) ==
          doctest::Approx(3.6742346141747673).epsilon(1e-12));
    CHECK(std::abs(cusum_value(window(x, 1, 8), 1, 8, 1)) ==
          doctest::Approx(4.142549249642578).epsilon(1e-12));
    CHECK(std::abs(cusum_value(window(x, 1, 8), 1, 8, 7)) ==
          doctest::Approx(4.409810491555002).epsilon(1e-12));
}

TEST_CASE("cusum sign: positive when the left mean dominates") {
    // Step down at b=2: left mean 5, right mean 1.
    const std::vector<double> x{5.0, 5.0, 1.0, 1.0};
    CHECK(cusum_value(window(x, 1, 4), 1, 4, 2) > 0.0);
    const std::vector<double> y{1.0, 1.0, 5.0, 5.0};
    CHECK(cusum_value(window(y, 1, 4), 1, 4, 2) < 0.0);
}

TEST_CASE("cusum is invariant to shifting the window in global time") {
    const std::vector<double> x{1.0, 3.0, 2.0, 5.0, 4.0, 8.0, 7.0, 9.0};
    const double a = cusum_value(window(x, 1, 6), 1, 6, 3);
    // Same six values presented as [11, 16] split at 13.
    std::vector<double> pad(10, 0.0);
    std::vector<double> shifted = pad;
    shifted.insert(shifted.end(), x.begin(), x.begin() + 6);
    const double b = cusum_value(window(shifted, 11, 16), 11, 16, 13);
    CHECK(a == doctest::Approx(b).epsilon(1e-13));
}

TEST_CASE("slope contrast values match an independent implementation") {
    const std::vector<double> y{0.0, 1.0, 4.0, 9.0, 16.0, 25.0, 20.0, 15.0, 10.0, 5.0};
    CHECK(slope_contrast_value(window(y, 1, 10), 1, 10, 5) ==
          doctest::Approx(18.291071041833433).epsilon(1e-12));
    CHECK(slope_contrast_value(window(y, 1, 10), 1, 10, 2) ==
          doctest::Approx(6.067798762169178).epsilon(1e-12));
    CHECK(slope_contrast_value(window(y, 2, 9), 2, 9, 5) ==
          doctest::Approx(13.976634800491869).epsilon(1e-12));
    CHECK(slope_contrast_value(window(y, 1, 10), 1, 10, 9) ==
          doctest::Approx(13.708730536752586).epsilon(1e-12));
}

TEST_CASE("phi vector endpoints match an independent implementation") {
    const auto phi = slope_contrast_phi(1, 10, 4);
    REQUIRE(phi.size() == 10);
    CHECK(phi[0] == doctest::Approx(-0.5735970185172143).epsilon(1e-12));
    CHECK(phi[3] == doctest::Approx(0.5098640164597461).epsilon(1e-12));
    CHECK(phi[4] == doctest::Approx(0.37025839290529183).epsilon(1e-12));
    CHECK(phi[9] == doctest::Approx(-0.32776972486697964).epsilon(1e-12));
}

TEST_CASE("phi is unit norm and orthogonal to constant and linear trends") {
    for (long s : {1L, 6L}) {
        for (long n = 3; n <= 30; ++n) {
            const long e = s + n - 1;
            for (long b = s + 1; b <= e - 1; ++b) {
                const auto phi = slope_contrast_phi(s, e, b);
                double dot1 = 0.0, dott = 0.0, norm2 = 0.0;
                for (long t = s; t <= e; ++t) {
                    const double v = phi[static_cast<std::size_t>(t - s)];
                    dot1 += v;
                    dott += v * static_cast<double>(t);
                    norm2 += v * v;
                }
                REQUIRE(std::abs(dot1) < 1e-10);
                REQUIRE(std::abs(dott) < 1e-10);
                REQUIRE(std::abs(std::sqrt(norm2) - 1.0) < 1e-10);
            }
        }
    }
}

TEST_CASE("slope contrast is the inner product with the materialized phi") {
    const std::vector<double> y{2.0, -1.0, 0.5, 3.0, 7.0, 4.0, 4.5, -2.0, 1.0, 0.0, 6.0, 2.5};
    for (long b = 3; b <= 10; ++b) {
        const auto phi = slope_contrast_phi(2, 11, b);
        double dot = 0.0;
        for (long t = 2; t <= 11; ++t)
            dot += y[static_cast<std::size_t>(t - 1)] * phi[static_cast<std::size_t>(t - 2)];
        CHECK(slope_contrast_value(window(y, 2, 11), 2, 11, b) ==
              doctest::Approx(std::abs(dot)).epsilon(1e-12));
    }
}

TEST_CASE("split bounds are enforced") {
    const std::vector<double> x{1.0, 2.0, 3.0, 4.0, 5.0};
    CHECK_THROWS_AS(cusum_value(window(x, 1, 5), 1, 5, 0), mid::InvalidSplit);
    CHECK_THROWS_AS(cusum_value(window(x, 1, 5), 1, 5, 5), mid::InvalidSplit);
    CHECK_THROWS_AS(slope_contrast_value(window(x, 1, 5), 1, 5, 1), mid::InvalidSplit);
    CHECK_THROWS_AS(slope_contrast_value(window(x, 1, 5), 1, 5, 5), mid::InvalidSplit);
    CHECK_THROWS_AS(slope_contrast_phi(1, 5, 5), mid::InvalidSplit);
}

TEST_CASE("contrast matrix enumerates the scenario's candidates") {
    std::vector<double> flat;
    for (long t = 1; t <= 12; ++t) {
        flat.push_back(static_cast<double>(t));           // linear component
        flat.push_back(t <= 6 ? 0.0 : 4.0);               // one mean shift
    }
    const MultiSeries s(std::move(flat), 12, 2);

    const auto m1 = contrast_matrix(s, {3, 9}, Scenario::PiecewiseConstant);
    CHECK(m1.J == 6);
    CHECK(m1.candidates.front() == 3);
    CHECK(m1.candidates.back() == 8);
    CHECK(m1.d == 2);

    const auto m2 = contrast_matrix(s, {3, 9}, Scenario::PiecewiseLinear);
    CHECK(m2.J == 5);
    CHECK(m2.candidates.front() == 4);
    CHECK(m2.candidates.back() == 8);
}

TEST_CASE("contrast matrix agrees with the direct per-split formulas") {
    std::vector<double> flat;
    for (long t = 1; t <= 15; ++t) {
        flat.push_back(std::sin(0.7 * static_cast<double>(t)) * 3.0);
        flat.push_back(static_cast<double>(t * t) * 0.1);
    }
    const MultiSeries s(std::move(flat), 15, 2);
    std::vector<double> col1, col2;
    for (long t = 2; t <= 13; ++t) {
        col1.push_back(s.at(t, 1));
        col2.push_back(s.at(t, 2));
    }

    const auto m1 = contrast_matrix(s, {2, 13}, Scenario::PiecewiseConstant);
    for (long i = 0; i < m1.J; ++i) {
        const long b = m1.candidates[static_cast<std::size_t>(i)];
        CHECK(m1.at(i, 0) ==
              doctest::Approx(std::abs(cusum_value(col1, 2, 13, b))).epsilon(1e-9));
        CHECK(m1.at(i, 1) ==
              doctest::Approx(std::abs(cusum_value(col2, 2, 13, b))).epsilon(1e-9));
    }

    const auto m2 = contrast_matrix(s, {2, 13}, Scenario::PiecewiseLinear);
    for (long i = 0; i < m2.J; ++i) {
        const long b = m2.candidates[static_cast<std::size_t>(i)];
        CHECK(m2.at(i, 0) ==
              doctest::Approx(slope_contrast_value(col1, 2, 13, b)).epsilon(1e-9));
        CHECK(m2.at(i, 1) ==
              doctest::Approx(slope_contrast_value(col2, 2, 13, b)).epsilon(1e-9));
    }
}

TEST_CASE("intervals below the minimum testable length are rejected") {
    const MultiSeries s({1.0, 2.0, 3.0, 4.0, 5.0, 6.0}, 6, 1);
    CHECK_THROWS_AS(contrast_matrix(s, {3, 3}, Scenario::PiecewiseConstant),
                    mid::IntervalTooShort);
    CHECK_THROWS_AS(contrast_matrix(s, {3, 4}, Scenario::PiecewiseLinear),
                    mid::IntervalTooShort);
    CHECK_THROWS_AS(contrast_matrix(s, {5, 3}, Scenario::PiecewiseConstant), mid::EmptyRange);
}
