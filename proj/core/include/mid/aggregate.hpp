#pragma once

#include <span>
#include <vector>

#include "mid/contrast.hpp"

namespace mid {

// The two mean-dominant norms used for cross-component aggregation.
enum class NormKind { L2, LInf };

// L2(y) = ||y||_2 / sqrt(d); LInf(y) = max_i y_i. Both >= mean(y) for y >= 0;
// L2 <= LInf always. Entries must be nonnegative (throws NegativeEntry).
double aggregate_row(std::span<const double> y, NormKind norm);

struct AggregatedScores {
    std::vector<double> scores;    // one per candidate, >= 0
    std::vector<long> candidates;  // copied from the ContrastMatrix
    NormKind norm = NormKind::L2;
};

AggregatedScores aggregate_matrix(const ContrastMatrix& B, NormKind norm);

}  // namespace mid
