#pragma once

#include <functional>
#include <optional>

#include "blindrate/channel.hpp"

namespace blindrate {

/// Reliability/suitability thresholds and the word-matrix row target.
struct FilterParams {
    double t1 = 0.0;      // symbols with |r| < t1 are unreliable; t1 in [0, 1]
    std::size_t t2 = 0;   // frames with at most t2 unreliable symbols are suitable
    std::size_t m_s = 1;  // suitable frames to collect
};

struct FilterOutcome {
    BitMatrix word_matrix;  // m_s x n, rows are hard decisions of the selected frames
    std::size_t frames_consumed = 0;
    std::vector<std::size_t> unreliable_counts;  // one entry per consumed frame
};

/// Number of symbols with |r| strictly below t1; ties count as reliable.
std::size_t unreliable_count(const LlrFrame& frame, double t1);

/// Pull-based frame stream; returns nullopt when exhausted.
using FrameSource = std::function<std::optional<LlrFrame>()>;

/// Consume frames in order, select those with unreliable count <= t2, and
/// stack their hard decisions until m_s rows are collected. Throws
/// InsufficientFramesError (carrying the collected count) if the stream ends
/// first, and DimensionError on a frame whose length differs from n.
FilterOutcome build_word_matrix(const FrameSource& source, std::size_t n, const FilterParams& params);
FilterOutcome build_word_matrix(std::span<const LlrFrame> frames, std::size_t n, const FilterParams& params);

}  // namespace blindrate
