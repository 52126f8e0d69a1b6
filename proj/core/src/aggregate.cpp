#include "mid/aggregate.hpp"

#include <cmath>

#include "mid/errors.hpp"

namespace mid {

double aggregate_row(std::span<const double> y, NormKind norm) {
    for (double v : y)
        if (v < 0.0) throw NegativeEntry("aggregate_row: negative entry");
    if (norm == NormKind::LInf) {
        double mx = 0.0;
        for (double v : y)
            if (v > mx) mx = v;
        return mx;
    }
    double sumsq = 0.0;
    for (double v : y) sumsq += v * v;
    return std::sqrt(sumsq / static_cast<double>(y.size()));
}

AggregatedScores aggregate_matrix(const ContrastMatrix& B, NormKind norm) {
    AggregatedScores out;
    out.norm = norm;
    out.candidates = B.candidates;
    out.scores.resize(static_cast<std::size_t>(B.J));
    for (long i = 0; i < B.J; ++i)
        out.scores[static_cast<std::size_t>(i)] =
            aggregate_row(std::span<const double>(B.values.data() + i * B.d,
                                                  static_cast<std::size_t>(B.d)),
                          norm);
    return out;
}

}  // namespace mid
