#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace blindrate {

/// Shape or range violation on a matrix/vector argument.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Text input that could not be parsed; `line` is 1-based.
struct ParseError : std::runtime_error {
    ParseError(std::size_t line_no, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}

    std::size_t line;
};

/// The frame stream ended before enough suitable frames were collected.
struct InsufficientFramesError : std::runtime_error {
    InsufficientFramesError(std::size_t got, std::size_t wanted)
        : std::runtime_error("frame stream exhausted after " + std::to_string(got) + " of " +
                             std::to_string(wanted) + " suitable frames"),
          collected(got),
          requested(wanted) {}

    std::size_t collected;
    std::size_t requested;
};

/// A filter whose acceptance probability is numerically zero, or a frame
/// budget no grid point can satisfy.
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// t1 = 0 (or numerically equivalent): no symbol is ever unreliable, so
/// probabilities conditioned on unreliability are undefined.
struct DegenerateThresholdError : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace blindrate
