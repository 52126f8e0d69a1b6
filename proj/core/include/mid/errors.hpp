#pragma once

#include <stdexcept>
#include <string>

namespace mid {

// Base class for all library errors so callers can catch mid::Error wholesale.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonFiniteEntry : Error {
    long row, col;  // 1-based
    NonFiniteEntry(long r, long c)
        : Error("non-finite entry at row " + std::to_string(r) + ", column " + std::to_string(c)),
          row(r), col(c) {}
};

struct TooShort : Error {
    explicit TooShort(long T)
        : Error("series too short: T = " + std::to_string(T) + " (need T >= 2)") {}
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct EmptyRange : Error {
    EmptyRange(long s, long e)
        : Error("empty range: s = " + std::to_string(s) + " >= e = " + std::to_string(e)) {}
};

struct InvalidSplit : Error {
    InvalidSplit(long s, long e, long b)
        : Error("invalid split b = " + std::to_string(b) + " for interval [" +
                std::to_string(s) + "," + std::to_string(e) + "]") {}
};

struct IntervalTooShort : Error {
    IntervalTooShort(long s, long e, long need)
        : Error("interval [" + std::to_string(s) + "," + std::to_string(e) +
                "] shorter than minimum testable length " + std::to_string(need)) {}
};

struct NegativeEntry : Error {
    using Error::Error;
};

struct UnknownAlpha : Error {
    explicit UnknownAlpha(double a)
        : Error("unsupported alpha " + std::to_string(a) + " (supported: 0.05, 0.10)") {}
};

struct DegenerateComponent : Error {
    long component;  // 1-based
    explicit DegenerateComponent(long j)
        : Error("component " + std::to_string(j) + " has zero MAD (constant or degenerate)"),
          component(j) {}
};

struct NegativeCount : Error {
    long row, col;
    NegativeCount(long r, long c)
        : Error("negative count at row " + std::to_string(r) + ", column " + std::to_string(c)),
          row(r), col(c) {}
};

struct NonIntegerCount : Error {
    long row, col;
    NonIntegerCount(long r, long c)
        : Error("non-integer count at row " + std::to_string(r) + ", column " + std::to_string(c)),
          row(r), col(c) {}
};

struct EmptyCandidates : Error {
    EmptyCandidates() : Error("candidate change-point list is empty") {}
};

struct EmptyTruth : Error {
    EmptyTruth() : Error("true change-point set is empty") {}
};

}  // namespace mid
