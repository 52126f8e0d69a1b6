#include <cmath>
#include <vector>

#include "doctest.h"
#include "mid/aggregate.hpp"
#include "mid/contrast.hpp"
#include "mid/errors.hpp"
#include "mid/rng.hpp"

using mid::aggregate_row;
using mid::NormKind;

TEST_CASE("l2 is the root mean square, linf the maximum") {
    const std::vector<double> y{3.0, 4.0};
    CHECK(aggregate_row(y, NormKind::L2) == doctest::Approx(std::sqrt(12.5)).epsilon(1e-15));
    CHECK(aggregate_row(y, NormKind::LInf) == 4.0);

    const std::vector<double> one{7.5};
    CHECK(aggregate_row(one, NormKind::L2) == doctest::Approx(7.5).epsilon(1e-15));
    CHECK(aggregate_row(one, NormKind::LInf) == 7.5);
}

TEST_CASE("negative entries are rejected") {
    const std::vector<double> y{1.0, -0.5, 2.0};
    CHECK_THROWS_AS(aggregate_row(y, NormKind::L2), mid::NegativeEntry);
    CHECK_THROWS_AS(aggregate_row(y, NormKind::LInf), mid::NegativeEntry);
}

TEST_CASE("both norms dominate the mean and l2 never exceeds linf") {
    mid::Rng rng(17);
    for (int rep = 0; rep < 2000; ++rep) {
        const std::size_t dim = 1 + rng.below(50);
        std::vector<double> y(dim);
        double mean = 0.0;
        for (double& v : y) {
            v = rng.uniform(0.0, 10.0);
            mean += v;
        }
        mean /= static_cast<double>(dim);
        const double l2 = aggregate_row(y, NormKind::L2);
        const double li = aggregate_row(y, NormKind::LInf);
        REQUIRE(l2 >= mean - 1e-12);
        REQUIRE(li >= mean - 1e-12);
        REQUIRE(l2 <= li + 1e-12);
    }
}

TEST_CASE("aggregation is positively homogeneous") {
    const std::vector<double> y{0.5, 2.0, 1.25, 0.0};
    std::vector<double> y3;
    for (double v : y) y3.push_back(3.0 * v);
    CHECK(aggregate_row(y3, NormKind::L2) ==
          doctest::Approx(3.0 * aggregate_row(y, NormKind::L2)).epsilon(1e-14));
    CHECK(aggregate_row(y3, NormKind::LInf) ==
          doctest::Approx(3.0 * aggregate_row(y, NormKind::LInf)).epsilon(1e-14));
}

TEST_CASE("aggregate_matrix reduces each candidate row") {
    std::vector<double> flat;
    for (long t = 1; t <= 10; ++t) {
        flat.push_back(t <= 5 ? 0.0 : 3.0);
        flat.push_back(0.0);
    }
    const mid::MultiSeries s(std::move(flat), 10, 2);
    const auto cm = mid::contrast_matrix(s, {1, 10}, mid::Scenario::PiecewiseConstant);
    const auto agg = mid::aggregate_matrix(cm, NormKind::LInf);
    REQUIRE(static_cast<long>(agg.scores.size()) == cm.J);
    for (long i = 0; i < cm.J; ++i) {
        const double expect = std::max(cm.at(i, 0), cm.at(i, 1));
        CHECK(agg.scores[static_cast<std::size_t>(i)] == doctest::Approx(expect).epsilon(1e-14));
    }
}
