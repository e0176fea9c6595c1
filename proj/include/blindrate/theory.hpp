#pragma once

#include <cstddef>
#include <vector>

namespace blindrate {

/// Binomial CDF F(k; n, p) = sum_{i<=k} C(n,i) p^i (1-p)^(n-i).
/// k < 0 yields 0, k >= n yields 1. Terms are accumulated in the log domain,
/// which keeps ~12 significant digits out to n = 10^4.
double binomial_cdf(long long k, std::size_t n, double p);

/// F(k; n, p) for every k in 0..n from one incremental sweep.
std::vector<double> binomial_cdf_table(std::size_t n, double p);

/// Probability a symbol is unreliable: Q((1-t1)/sigma) - Q((1+t1)/sigma).
double p_unreliable(double sigma, double t1);

/// Bit-error probabilities conditioned on the symbol being unreliable or
/// reliable. They partition the error event, so
/// p_eu * p_u + p_er * (1 - p_u) == p_e exactly. Throws
/// DegenerateThresholdError when p_u = 0 (p_eu undefined).
struct ConditionalErrorProbs {
    double p_eu;
    double p_er;
};
ConditionalErrorProbs conditional_error_probs(double sigma, double t1);

/// F(t2-1; n-1, p_u) / F(t2; n, p_u): the factor by which the reliability
/// filter suppresses word-matrix errors. t2 = 0 makes the numerator an empty
/// sum, so the value is exactly 0. Throws InfeasibleError when the
/// denominator is numerically zero (and t2 > 0).
double algorithmic_error(std::size_t n, std::size_t t2, double p_u);

struct TheoryInputs {
    std::size_t n;
    std::size_t m_s;
    double sigma;
    double t1;
    std::size_t t2;
};

/// Expected number of word-matrix columns containing at least one bit error.
///   exact  = n - n (1 - p_e * algorithmic_error)^m_s
///   approx = n * E[M] * p_e * F(t2-1; n-1, p_u)
struct ExpectedColumnsInError {
    double exact;
    double approx;
};
ExpectedColumnsInError expected_columns_in_error(const TheoryInputs& in);

/// Expected frames consumed until m_s are suitable: m_s / F(t2; n, p_u).
/// The consumed count is negative-binomial with success probability F.
double expected_messages(std::size_t m_s, std::size_t n, double p_u, std::size_t t2);

/// Everything the closed-form analysis yields for one parameter point.
struct TheoryMetrics {
    double p_u;
    double p_e;
    double p_eu;  // NaN when p_u = 0
    double p_er;
    double e_c_exact;
    double e_c_approx;
    double e_m;
    double algorithmic_error;
    double ambient_error;  // n * m_s * p_e (a count, not a probability)
};
TheoryMetrics compute_metrics(const TheoryInputs& in);

/// Toy model: d independent columns of length m_s plus one parity column
/// equal to their XOR, with i.i.d. bit flips at rate p_e_prime.
struct ToyModelParams {
    std::size_t d;
    std::size_t m_s;  // must exceed d
    double p_e_prime;
};

/// Lower bound on the probability that at least one bit error makes the rank
/// increase by one, with the simplified large-m_s form and the almost-sure
/// minimum-distance bound d_m >= (m_s - d)^2 / (2 m_s) it rests on.
struct RankIncreaseBound {
    double bound;
    double simplified_bound;
    double min_distance_bound;
};
RankIncreaseBound rank_increase_bound(const ToyModelParams& params);

}  // namespace blindrate
