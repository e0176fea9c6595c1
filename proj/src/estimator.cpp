#include "blindrate/estimator.hpp"

#include <stdexcept>
#include <string>

#include "blindrate/errors.hpp"
#include "blindrate/optimize.hpp"
#include "blindrate/theory.hpp"

namespace blindrate {

CorrectedRate corrected_rate(std::size_t k_prime, std::size_t n, double e_c) {
    if (n == 0) throw DimensionError("corrected_rate: n must be at least 1");
    if (k_prime > n) throw DimensionError("corrected_rate: k' may not exceed n");
    if (!(e_c >= 0.0)) throw std::invalid_argument("corrected_rate: e_c must be >= 0");

    const double naive = static_cast<double>(k_prime) / static_cast<double>(n);
    if (e_c >= static_cast<double>(n)) return CorrectedRate{naive, true, false};

    const double raw = (static_cast<double>(k_prime) - e_c) / (static_cast<double>(n) - e_c);
    if (raw < 0.0) return CorrectedRate{0.0, false, true};
    if (raw > 1.0) return CorrectedRate{1.0, false, true};
    return CorrectedRate{raw, false, false};
}

RecoveryReport recover(std::span<const LlrFrame> frames, std::size_t n, const RecoverOptions& options) {
    if (n == 0) throw DimensionError("recover: n must be at least 1");

    RecoveryReport report;
    report.n = n;
    report.channel = estimate_channel(frames);

    if (options.params) {
        report.params = *options.params;
    } else {
        const OptimizationResult tuned = optimize_constrained(n, report.channel.sigma(), frames.size(),
                                                              options.t1_step, options.budget_tolerance);
        report.params = FilterParams{tuned.t1_star, tuned.t2_star, options.m_s != 0 ? options.m_s : n};
    }
    report.m_s = report.params.m_s;

    const FilterOutcome outcome = build_word_matrix(frames, n, report.params);
    report.frames_consumed = outcome.frames_consumed;

    const RrefResult reduced = rref(outcome.word_matrix);
    report.k_prime = rank_by_column_mean(reduced, report.params.m_s);
    report.rho_naive = static_cast<double>(report.k_prime) / static_cast<double>(n);

    // Correction via the exact expected-columns-in-error form, evaluated at
    // the *estimated* channel. If the filter setting makes the closed form
    // unevaluable (acceptance probability underflows), skip the correction
    // rather than fail a recovery that empirically succeeded.
    try {
        const ExpectedColumnsInError ec = expected_columns_in_error(
            TheoryInputs{n, report.params.m_s, report.channel.sigma(), report.params.t1, report.params.t2});
        report.e_c = ec.exact;
    } catch (const InfeasibleError&) {
        report.e_c = static_cast<double>(n);  // forces the degenerate path below
    }

    const CorrectedRate corrected = corrected_rate(report.k_prime, n, report.e_c);
    report.rho_corrected = corrected.value;
    report.correction_degenerate = corrected.degenerate;
    report.correction_clamped = corrected.clamped;
    if (corrected.degenerate) report.rho_corrected = report.rho_naive;
    return report;
}

}  // namespace blindrate
