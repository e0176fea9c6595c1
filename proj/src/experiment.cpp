#include "blindrate/experiment.hpp"

#include <cmath>

#include "blindrate/rng.hpp"
#include "blindrate/theory.hpp"

namespace blindrate {

SimPoint run_sim_point(const LinearCode& code, double snr_db, std::size_t num_messages,
                       const std::optional<FilterParams>& params, std::uint64_t seed,
                       std::size_t m_s, bool keep_frames) {
    const double sigma2 = std::pow(10.0, -snr_db / 10.0);

    Rng message_rng(derive_seed(seed, 0xA11CE));
    const BitMatrix messages = BitMatrix::random(num_messages, code.k, message_rng);
    const BitMatrix codewords = encode_block(code, messages);
    std::vector<LlrFrame> frames = transmit(codewords, sigma2, derive_seed(seed, 0xC0DE));

    SimPoint point;
    RecoverOptions options;
    options.params = params;
    options.m_s = m_s;
    point.report = recover(frames, code.n, options);

    // Ground truth: rebuild the selection (deterministic) and mark columns
    // where any selected row's hard decision differs from the codeword.
    const FilterOutcome outcome = build_word_matrix(frames, code.n, point.report.params);
    std::vector<std::uint8_t> column_in_error(code.n, 0);
    std::size_t row = 0;
    for (std::size_t i = 0; i < outcome.frames_consumed; ++i) {
        if (outcome.unreliable_counts[i] > point.report.params.t2) continue;
        for (std::size_t j = 0; j < code.n; ++j)
            if (outcome.word_matrix.get(row, j) != codewords.get(i, j)) column_in_error[j] = 1;
        ++row;
    }
    for (const std::uint8_t flag : column_in_error) point.c_observed += flag;

    point.e_c_theory = expected_columns_in_error(TheoryInputs{code.n, point.report.params.m_s,
                                                              std::sqrt(sigma2), point.report.params.t1,
                                                              point.report.params.t2})
                           .exact;
    if (keep_frames) point.frames = std::move(frames);
    return point;
}

RankIncreaseTrialStats simulate_rank_increase(std::size_t d, std::size_t m_s, double p_e_prime,
                                              std::size_t trials, std::uint64_t seed) {
    RankIncreaseTrialStats stats;
    stats.trials = trials;

    for (std::size_t trial = 0; trial < trials; ++trial) {
        Rng rng(derive_seed(seed, trial));

        // d random columns plus the parity column p = XOR of all of them;
        // regenerate on the (vanishing) chance the columns are dependent.
        BitMatrix matrix(m_s, d + 1);
        for (;;) {
            matrix = BitMatrix(m_s, d + 1);
            for (std::size_t r = 0; r < m_s; ++r) {
                bool parity = false;
                for (std::size_t c = 0; c < d; ++c) {
                    const bool bit = rng.bit();
                    if (bit) matrix.set(r, c, true);
                    parity ^= bit;
                }
                if (parity) matrix.set(r, d, true);
            }
            if (rref(matrix).pivot_count == d) break;
        }

        std::size_t flips = 0;
        for (std::size_t r = 0; r < m_s; ++r)
            for (std::size_t c = 0; c <= d; ++c)
                if (rng.uniform() < p_e_prime) {
                    matrix.set(r, c, !matrix.get(r, c));
                    ++flips;
                }
        if (flips == 0) continue;

        ++stats.conditioned_trials;
        if (rref(matrix).pivot_count == d + 1) ++stats.rank_increased;
    }

    if (stats.conditioned_trials > 0)
        stats.frequency =
            static_cast<double>(stats.rank_increased) / static_cast<double>(stats.conditioned_trials);
    return stats;
}

}  // namespace blindrate
