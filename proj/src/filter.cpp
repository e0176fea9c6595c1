#include "blindrate/filter.hpp"

#include <cmath>
#include <string>

#include "blindrate/errors.hpp"

namespace blindrate {

std::size_t unreliable_count(const LlrFrame& frame, double t1) {
    std::size_t count = 0;
    for (const double r : frame.symbols) count += std::fabs(r) < t1;
    return count;
}

namespace {

void validate(std::size_t n, const FilterParams& params) {
    if (!(params.t1 >= 0.0 && params.t1 <= 1.0))
        throw DimensionError("filter: t1 must lie in [0, 1]");
    if (params.t2 > n) throw DimensionError("filter: t2 must lie in 0..n");
    if (params.m_s == 0) throw DimensionError("filter: m_s must be at least 1");
}

}  // namespace

FilterOutcome build_word_matrix(const FrameSource& source, std::size_t n, const FilterParams& params) {
    validate(n, params);

    FilterOutcome out;
    out.word_matrix = BitMatrix(params.m_s, n);
    std::size_t collected = 0;

    while (collected < params.m_s) {
        std::optional<LlrFrame> frame = source();
        if (!frame) throw InsufficientFramesError(collected, params.m_s);
        if (frame->size() != n)
            throw DimensionError("filter: frame " + std::to_string(out.frames_consumed + 1) + " has length " +
                                 std::to_string(frame->size()) + ", expected " + std::to_string(n));

        const std::size_t unreliable = unreliable_count(*frame, params.t1);
        ++out.frames_consumed;
        out.unreliable_counts.push_back(unreliable);

        // Suitability is j <= t2, matching the binomial CDF F(t2; n, p_u)
        // used throughout the closed-form analysis.
        if (unreliable <= params.t2) {
            for (std::size_t j = 0; j < n; ++j)
                if (frame->hard_bits[j]) out.word_matrix.set(collected, j, true);
            ++collected;
        }
    }
    return out;
}

FilterOutcome build_word_matrix(std::span<const LlrFrame> frames, std::size_t n, const FilterParams& params) {
    std::size_t next = 0;
    return build_word_matrix(
        [&]() -> std::optional<LlrFrame> {
            if (next == frames.size()) return std::nullopt;
            return frames[next++];
        },
        n, params);
}

}  // namespace blindrate
