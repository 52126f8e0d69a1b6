#pragma once

#include <vector>

#include "mid/errors.hpp"

namespace mid {

// Which structural change is being sought.
enum class Scenario {
    PiecewiseConstant,  // changes in the mean (S1)
    PiecewiseLinear,    // changes in the first derivative of a continuous signal (S2)
};

// Shortest interval on which the scenario's contrast is defined at all.
inline long min_testable_length(Scenario sc) {
    return sc == Scenario::PiecewiseConstant ? 2 : 3;
}

// Closed 1-based time interval [s, e].
struct Interval {
    long s = 1;
    long e = 1;
    long size() const { return e - s + 1; }
    bool operator==(const Interval&) const = default;
};

// Immutable T x d panel, time-major storage (row = time point).
// All public indices are 1-based: t in [1, T], j in [1, d].
class MultiSeries {
public:
    MultiSeries(std::vector<double> time_major, long T, long d);

    static MultiSeries from_rows(const std::vector<std::vector<double>>& rows);

    long T() const { return T_; }
    long d() const { return d_; }

    double at(long t, long j) const { return data_[(t - 1) * d_ + (j - 1)]; }
    const double* row(long t) const { return data_.data() + (t - 1) * d_; }
    const std::vector<double>& data() const { return data_; }

private:
    std::vector<double> data_;
    long T_ = 0;
    long d_ = 0;
};

// Validates shape and finiteness; throws NonFiniteEntry / TooShort / DimensionMismatch.
MultiSeries validate_series(const std::vector<std::vector<double>>& rows);

}  // namespace mid
