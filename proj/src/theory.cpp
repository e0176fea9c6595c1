#include "blindrate/theory.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "blindrate/channel.hpp"
#include "blindrate/errors.hpp"

namespace blindrate {

namespace {

double log_add_exp(double a, double b) {
    if (a < b) std::swap(a, b);
    if (b == -std::numeric_limits<double>::infinity()) return a;
    return a + std::log1p(std::exp(b - a));
}

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability outside [0, 1]: " + std::to_string(p));
}

void check_theory_inputs(const TheoryInputs& in) {
    if (in.n == 0) throw DimensionError("theory: n must be at least 1");
    if (in.m_s == 0) throw DimensionError("theory: m_s must be at least 1");
    if (!(in.sigma > 0.0)) throw std::invalid_argument("theory: sigma must be positive");
    if (!(in.t1 >= 0.0 && in.t1 <= 1.0)) throw std::invalid_argument("theory: t1 must lie in [0, 1]");
    if (in.t2 > in.n) throw DimensionError("theory: t2 must lie in 0..n");
}

}  // namespace

double binomial_cdf(long long k, std::size_t n, double p) {
    check_probability(p);
    if (k < 0) return 0.0;
    if (static_cast<unsigned long long>(k) >= n) return 1.0;
    if (p == 0.0) return 1.0;
    if (p == 1.0) return 0.0;  // k < n here

    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    double log_term = static_cast<double>(n) * lq;
    double acc = log_term;
    for (long long i = 1; i <= k; ++i) {
        log_term += std::log(static_cast<double>(n - i + 1) / static_cast<double>(i)) + lp - lq;
        acc = log_add_exp(acc, log_term);
    }
    return acc >= 0.0 ? 1.0 : std::exp(acc);
}

std::vector<double> binomial_cdf_table(std::size_t n, double p) {
    check_probability(p);
    std::vector<double> table(n + 1, 1.0);
    if (p == 0.0) return table;
    if (p == 1.0) {
        for (std::size_t k = 0; k < n; ++k) table[k] = 0.0;
        return table;
    }

    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    double log_term = static_cast<double>(n) * lq;
    double acc = log_term;
    table[0] = std::exp(acc);
    for (std::size_t i = 1; i < n; ++i) {
        log_term += std::log(static_cast<double>(n - i + 1) / static_cast<double>(i)) + lp - lq;
        acc = log_add_exp(acc, log_term);
        table[i] = acc >= 0.0 ? 1.0 : std::exp(acc);
    }
    return table;
}

double p_unreliable(double sigma, double t1) {
    if (!(sigma > 0.0)) throw std::invalid_argument("p_unreliable: sigma must be positive");
    if (!(t1 >= 0.0 && t1 <= 1.0)) throw std::invalid_argument("p_unreliable: t1 must lie in [0, 1]");
    return q_function((1.0 - t1) / sigma) - q_function((1.0 + t1) / sigma);
}

ConditionalErrorProbs conditional_error_probs(double sigma, double t1) {
    const double p_u = p_unreliable(sigma, t1);
    if (p_u <= 0.0)
        throw DegenerateThresholdError("conditional_error_probs: p_u = 0, no symbol is ever unreliable");
    // Transmit +1; the error event r < 0 splits at |r| < t1:
    //   P(error, unreliable) = Q(1/sigma) - Q((1+t1)/sigma)
    //   P(error, reliable)   = Q((1+t1)/sigma)
    const double tail = q_function((1.0 + t1) / sigma);
    const double p_e = q_function(1.0 / sigma);
    return ConditionalErrorProbs{(p_e - tail) / p_u, tail / (1.0 - p_u)};
}

double algorithmic_error(std::size_t n, std::size_t t2, double p_u) {
    if (n == 0) throw DimensionError("algorithmic_error: n must be at least 1");
    if (t2 > n) throw DimensionError("algorithmic_error: t2 must lie in 0..n");
    if (t2 == 0) return 0.0;  // F(-1; n-1, p_u) is an empty sum
    const double denominator = binomial_cdf(static_cast<long long>(t2), n, p_u);
    if (denominator <= 0.0)
        throw InfeasibleError("algorithmic_error: acceptance probability F(t2; n, p_u) underflows to 0");
    return binomial_cdf(static_cast<long long>(t2) - 1, n - 1, p_u) / denominator;
}

ExpectedColumnsInError expected_columns_in_error(const TheoryInputs& in) {
    check_theory_inputs(in);
    const double p_e = q_function(1.0 / in.sigma);
    const double p_u = p_unreliable(in.sigma, in.t1);
    const double alg = algorithmic_error(in.n, in.t2, p_u);

    const double n = static_cast<double>(in.n);
    const double m_s = static_cast<double>(in.m_s);
    const double exact = -n * std::expm1(m_s * std::log1p(-p_e * alg));
    // Equals n * E[M] * p_e * F(t2-1; n-1, p_u) with E[M] = m_s / F(t2; n, p_u).
    const double approx = n * m_s * p_e * alg;
    return ExpectedColumnsInError{exact, approx};
}

double expected_messages(std::size_t m_s, std::size_t n, double p_u, std::size_t t2) {
    if (m_s == 0) throw DimensionError("expected_messages: m_s must be at least 1");
    const double acceptance = binomial_cdf(static_cast<long long>(t2), n, p_u);
    if (acceptance <= 0.0) throw InfeasibleError("expected_messages: zero acceptance probability");
    return static_cast<double>(m_s) / acceptance;
}

TheoryMetrics compute_metrics(const TheoryInputs& in) {
    check_theory_inputs(in);
    TheoryMetrics m{};
    m.p_e = q_function(1.0 / in.sigma);
    m.p_u = p_unreliable(in.sigma, in.t1);
    if (m.p_u > 0.0) {
        const ConditionalErrorProbs cond = conditional_error_probs(in.sigma, in.t1);
        m.p_eu = cond.p_eu;
        m.p_er = cond.p_er;
    } else {
        m.p_eu = std::numeric_limits<double>::quiet_NaN();
        m.p_er = m.p_e;  // every symbol is reliable
    }
    const ExpectedColumnsInError ec = expected_columns_in_error(in);
    m.e_c_exact = ec.exact;
    m.e_c_approx = ec.approx;
    m.e_m = expected_messages(in.m_s, in.n, m.p_u, in.t2);
    m.algorithmic_error = algorithmic_error(in.n, in.t2, m.p_u);
    m.ambient_error = static_cast<double>(in.n) * static_cast<double>(in.m_s) * m.p_e;
    return m;
}

RankIncreaseBound rank_increase_bound(const ToyModelParams& params) {
    if (params.d == 0 || params.m_s <= params.d)
        throw DimensionError("rank_increase_bound: need m_s > d >= 1");
    if (!(params.p_e_prime > 0.0 && params.p_e_prime < 1.0))
        throw std::invalid_argument("rank_increase_bound: p_e_prime must lie in (0, 1)");

    const double d = static_cast<double>(params.d);
    const double m_s = static_cast<double>(params.m_s);
    const double p = params.p_e_prime;

    const double spread = std::sqrt(m_s * p * (1.0 - p));
    const double numerator = (m_s - d) * (m_s - d) - 2.0 * m_s * m_s * (d + 1.0) * p;
    const double denominator = 2.0 * m_s * (d + 1.0) * spread;

    RankIncreaseBound out{};
    out.bound = phi(numerator / denominator);
    out.simplified_bound = phi(std::sqrt(m_s) / (2.0 * (d + 1.0) * std::sqrt(p * (1.0 - p))));
    out.min_distance_bound = (m_s - d) * (m_s - d) / (2.0 * m_s);
    return out;
}

}  // namespace blindrate
