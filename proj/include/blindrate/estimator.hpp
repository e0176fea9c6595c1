#pragma once

#include <optional>

#include "blindrate/channel.hpp"
#include "blindrate/filter.hpp"

namespace blindrate {

/// (k' - e_c) / (n - e_c), clamped to [0, 1].
/// degenerate: e_c >= n, where the correction is meaningless and the value
/// falls back to k'/n. clamped: the raw ratio left [0, 1] (the channel
/// estimate can push e_c past k').
struct CorrectedRate {
    double value;
    bool degenerate;
    bool clamped;
};
CorrectedRate corrected_rate(std::size_t k_prime, std::size_t n, double e_c);

/// Everything the blind pipeline reports for one recovery.
struct RecoveryReport {
    std::size_t n = 0;
    std::size_t m_s = 0;
    std::size_t frames_consumed = 0;
    std::size_t k_prime = 0;        // observed rank by the column-mean rule
    double e_c = 0.0;               // expected columns in error used for the correction
    double rho_naive = 0.0;         // k' / n
    double rho_corrected = 0.0;     // (k' - e_c) / (n - e_c), clamped
    bool correction_degenerate = false;
    bool correction_clamped = false;
    ChannelParams channel{};        // blind estimate, never ground truth
    FilterParams params{};          // as used (explicit or auto-tuned)
};

struct RecoverOptions {
    /// Explicit thresholds; leave empty to auto-tune by treating the supplied
    /// stream length as the frame budget of the constrained optimizer.
    std::optional<FilterParams> params;
    std::size_t m_s = 0;  // auto mode row target; 0 means the default m_s = n
    double t1_step = 0.01;
    double budget_tolerance = 0.25;
};

/// The full blind pipeline: channel estimate, (optional) parameter tuning,
/// reliability filtering, word-matrix RREF, column-mean rank, and both rate
/// estimates. Deterministic for a given frame stream and options.
RecoveryReport recover(std::span<const LlrFrame> frames, std::size_t n, const RecoverOptions& options = {});

}  // namespace blindrate
