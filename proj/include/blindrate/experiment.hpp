#pragma once

#include <cstdint>
#include <optional>

#include "blindrate/codes.hpp"
#include "blindrate/estimator.hpp"

namespace blindrate {

/// One simulated recovery with ground truth on the side.
struct SimPoint {
    RecoveryReport report;
    std::size_t c_observed = 0;   // word-matrix columns with >= 1 actual bit error
    double e_c_theory = 0.0;      // expected columns in error at the *true* sigma
    std::vector<LlrFrame> frames; // kept only when requested
};

/// Encode num_messages random messages, transmit them at snr_db, and run the
/// blind pipeline. Message and noise streams derive from `seed`, so a single
/// point reruns bit-identically in isolation.
SimPoint run_sim_point(const LinearCode& code, double snr_db, std::size_t num_messages,
                       const std::optional<FilterParams>& params, std::uint64_t seed,
                       std::size_t m_s = 0, bool keep_frames = false);

/// Monte Carlo for the toy-model rank bound: d random columns plus their XOR
/// parity column, i.i.d. bit flips, rank compared before/after. Trials with
/// no flips anywhere are excluded (the bound conditions on at least one).
struct RankIncreaseTrialStats {
    std::size_t trials = 0;
    std::size_t conditioned_trials = 0;  // trials with at least one flip
    std::size_t rank_increased = 0;
    double frequency = 0.0;              // rank_increased / conditioned_trials
};
RankIncreaseTrialStats simulate_rank_increase(std::size_t d, std::size_t m_s, double p_e_prime,
                                              std::size_t trials, std::uint64_t seed);

}  // namespace blindrate
