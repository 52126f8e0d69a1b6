#include "mid/series.hpp"

#include <cmath>

namespace mid {

MultiSeries::MultiSeries(std::vector<double> time_major, long T, long d)
    : data_(std::move(time_major)), T_(T), d_(d) {
    if (T_ < 2) throw TooShort(T_);
    if (d_ < 1 || static_cast<long>(data_.size()) != T_ * d_)
        throw DimensionMismatch("flat buffer size does not match T*d");
    for (long t = 0; t < T_; ++t)
        for (long j = 0; j < d_; ++j)
            if (!std::isfinite(data_[t * d_ + j])) throw NonFiniteEntry(t + 1, j + 1);
}

MultiSeries MultiSeries::from_rows(const std::vector<std::vector<double>>& rows) {
    const long T = static_cast<long>(rows.size());
    if (T < 2) throw TooShort(T);
    const long d = static_cast<long>(rows.front().size());
    if (d < 1) throw DimensionMismatch("empty first row");
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(T * d));
    for (long t = 0; t < T; ++t) {
        if (static_cast<long>(rows[t].size()) != d)
            throw DimensionMismatch("row " + std::to_string(t + 1) + " has " +
                                    std::to_string(rows[t].size()) + " columns, expected " +
                                    std::to_string(d));
        flat.insert(flat.end(), rows[t].begin(), rows[t].end());
    }
    return MultiSeries(std::move(flat), T, d);
}

MultiSeries validate_series(const std::vector<std::vector<double>>& rows) {
    return MultiSeries::from_rows(rows);
}

}  // namespace mid
