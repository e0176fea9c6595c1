#include <doctest.h>

#include <cmath>

#include "blindrate/channel.hpp"
#include "blindrate/errors.hpp"
#include "blindrate/rng.hpp"
#include "blindrate/theory.hpp"
#include "../support/oracles.hpp"

using namespace blindrate;

TEST_CASE("binomial CDF edge values") {
    CHECK(binomial_cdf(5, 5, 0.3) == 1.0);
    CHECK(binomial_cdf(12, 5, 0.3) == 1.0);
    CHECK(binomial_cdf(-1, 5, 0.3) == 0.0);
    CHECK(binomial_cdf(0, 20, 0.1) == doctest::Approx(std::pow(0.9, 20)).epsilon(1e-12));
    CHECK(binomial_cdf(2, 5, 0.2) == doctest::Approx(0.94208).epsilon(1e-12));
    CHECK(binomial_cdf(3, 7, 0.0) == 1.0);
    CHECK(binomial_cdf(3, 7, 1.0) == 0.0);
    CHECK(binomial_cdf(7, 7, 1.0) == 1.0);
    CHECK_THROWS(binomial_cdf(2, 5, -0.1));
    CHECK_THROWS(binomial_cdf(2, 5, 1.1));
}

TEST_CASE("binomial CDF matches the exact rational oracle up to n = 30") {
    for (unsigned n = 1; n <= 30; ++n) {
        for (const unsigned num : {1u, 5u, 9u}) {
            for (long long k = 0; k <= n; ++k) {
                const double expected = oracles::exact_binomial_cdf(k, n, num, 10);
                const double actual = binomial_cdf(k, n, num / 10.0);
                CHECK(std::fabs(actual - expected) <= 1e-12 * std::max(expected, 1e-30));
            }
        }
    }
}

TEST_CASE("binomial CDF table agrees with single evaluations") {
    for (const double p : {1e-4, 0.02, 0.37, 0.91}) {
        const auto table = binomial_cdf_table(300, p);
        REQUIRE(table.size() == 301);
        for (const long long k : {0LL, 1LL, 17LL, 150LL, 299LL, 300LL})
            CHECK(table[k] == doctest::Approx(binomial_cdf(k, 300, p)).epsilon(1e-13));
    }
    // stays finite and exact at the edges for large n
    const auto large = binomial_cdf_table(10000, 0.5);
    CHECK(large[10000] == 1.0);
    CHECK(large[5000] == doctest::Approx(0.5).epsilon(1e-2));
}

TEST_CASE("p_unreliable values and monotonicity") {
    CHECK(p_unreliable(0.5, 0.0) == 0.0);
    CHECK(p_unreliable(std::pow(10.0, -0.5), 0.3) ==
          doctest::Approx(0.013408646962399646).epsilon(1e-12));
    double prev = -1.0;
    for (int i = 0; i <= 100; ++i) {
        const double v = p_unreliable(0.3162, i / 100.0);
        CHECK(v >= prev);
        prev = v;
    }
    CHECK_THROWS(p_unreliable(0.0, 0.3));
    CHECK_THROWS(p_unreliable(0.5, 1.5));
}

TEST_CASE("p_unreliable agrees with Monte Carlo sampling") {
    const double sigma = std::pow(10.0, -0.5);
    const double t1 = 0.3;
    Rng rng(0xCAFE);
    const std::size_t total = 10000000;
    std::size_t unreliable = 0;
    for (std::size_t i = 0; i < total; ++i) {
        const double r = (rng.bit() ? -1.0 : 1.0) + sigma * rng.normal();
        unreliable += std::fabs(r) < t1;
    }
    const double expected = p_unreliable(sigma, t1);
    const double se = std::sqrt(expected * (1.0 - expected) / static_cast<double>(total));
    CHECK(std::fabs(static_cast<double>(unreliable) / total - expected) < 3.0 * se);
}

TEST_CASE("conditional error probabilities partition p_e") {
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        const double sigma = 0.05 + rng.uniform();
        const double t1 = 0.01 + 0.99 * rng.uniform();
        const auto [p_eu, p_er] = conditional_error_probs(sigma, t1);
        const double p_u = p_unreliable(sigma, t1);
        const double p_e = q_function(1.0 / sigma);
        CHECK(std::fabs(p_eu * p_u + p_er * (1.0 - p_u) - p_e) < 1e-12);
    }
}

TEST_CASE("conditional error probabilities at frozen points") {
    const double sigma8 = std::pow(10.0, -0.4);
    const auto [p_eu, p_er] = conditional_error_probs(sigma8, 0.5);
    CHECK(p_eu == doctest::Approx(0.05667795815814170).epsilon(1e-12));
    CHECK(p_er == doctest::Approx(9.194328620110207e-5).epsilon(1e-12));

    // boundary t1 = 1: p_er = Q(2/sigma) / (1 - p_u)
    const auto bound = conditional_error_probs(0.4, 1.0);
    const double p_u = p_unreliable(0.4, 1.0);
    CHECK(bound.p_er == doctest::Approx(q_function(2.0 / 0.4) / (1.0 - p_u)).epsilon(1e-12));

    CHECK_THROWS_AS(conditional_error_probs(0.3, 0.0), DegenerateThresholdError);
}

TEST_CASE("conditional error probabilities agree with Monte Carlo at 8 dB") {
    const double sigma = std::pow(10.0, -0.4);
    const double t1 = 0.5;
    Rng rng(0xBEE);
    std::size_t unreliable = 0, err_unreliable = 0, reliable = 0, err_reliable = 0;
    for (std::size_t i = 0; i < 2000000; ++i) {
        const bool bit = rng.bit();
        const double r = (bit ? -1.0 : 1.0) + sigma * rng.normal();
        const bool error = (r < 0.0) != bit;
        if (std::fabs(r) < t1) {
            ++unreliable;
            err_unreliable += error;
        } else {
            ++reliable;
            err_reliable += error;
        }
    }
    const auto expected = conditional_error_probs(sigma, t1);
    const double f_eu = static_cast<double>(err_unreliable) / unreliable;
    const double f_er = static_cast<double>(err_reliable) / reliable;
    const double se_eu = std::sqrt(expected.p_eu * (1 - expected.p_eu) / unreliable);
    const double se_er = std::sqrt(expected.p_er * (1 - expected.p_er) / reliable);
    CHECK(std::fabs(f_eu - expected.p_eu) < 3.0 * se_eu);
    CHECK(std::fabs(f_er - expected.p_er) < 3.0 * se_er);
}

TEST_CASE("expected columns in error limits") {
    // huge SNR: no errors at all
    const auto clean = expected_columns_in_error(TheoryInputs{136, 136, 0.05, 0.3, 17});
    CHECK(clean.exact == doctest::Approx(0.0).epsilon(1e-30));
    CHECK(clean.approx == doctest::Approx(0.0).epsilon(1e-30));

    // t2 = n disables the filter: approx collapses to the ambient error
    const std::size_t n = 136;
    const double sigma = std::pow(10.0, -0.5);
    const auto ambient = expected_columns_in_error(TheoryInputs{n, n, sigma, 0.3, n});
    const double p_e = q_function(1.0 / sigma);
    CHECK(ambient.approx ==
          doctest::Approx(static_cast<double>(n) * static_cast<double>(n) * p_e).epsilon(1e-12));

    // t2 = 0 zeroes the algorithmic factor exactly
    const auto gated = expected_columns_in_error(TheoryInputs{n, n, sigma, 0.3, 0});
    CHECK(gated.exact == 0.0);
    CHECK(gated.approx == 0.0);

    // an acceptance probability that underflows is infeasible
    CHECK_THROWS_AS(expected_columns_in_error(TheoryInputs{4000, 100, 0.5, 1.0, 1}), InfeasibleError);
}

TEST_CASE("approximate and exact expected columns agree once m_s p_e is small") {
    const std::size_t n = 136;
    for (double snr_db = 14.0; snr_db <= 22.0; snr_db += 1.0) {
        const double sigma = std::pow(10.0, -snr_db / 20.0);
        const double p_e = q_function(1.0 / sigma);
        const auto ec = expected_columns_in_error(TheoryInputs{n, n, sigma, 0.3, 17});
        if (static_cast<double>(n) * p_e < 0.01 && ec.exact > 0.0)
            CHECK(ec.approx / ec.exact == doctest::Approx(1.0).epsilon(0.01));
    }
}

TEST_CASE("expected messages") {
    // t2 = n accepts everything
    CHECK(expected_messages(100, 64, 0.2, 64) == 100.0);
    // F(0; 1, 0.5) = 0.5 exactly, so the expectation doubles
    CHECK(expected_messages(100, 1, 0.5, 0) == 200.0);
    CHECK_THROWS_AS(expected_messages(100, 4000, 0.5, 1), InfeasibleError);
}

TEST_CASE("algorithmic error bounds and monotonicity") {
    const std::size_t n = 136;
    const double sigma = std::pow(10.0, -0.5);
    for (std::size_t t2 : {1u, 2u, 17u, 68u, 136u}) {
        double prev = 2.0;
        for (int i = 0; i <= 100; ++i) {
            const double p_u = p_unreliable(sigma, i / 100.0);
            const double alg = algorithmic_error(n, t2, p_u);
            CHECK(alg >= 0.0);
            CHECK(alg <= 1.0 + 1e-12);  // CDF monotonicity in disguise
            CHECK(alg <= prev + 1e-12);  // non-increasing in t1
            prev = alg;
        }
    }
    CHECK(algorithmic_error(n, n, 0.3) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(algorithmic_error(n, 0, 0.3) == 0.0);
}

TEST_CASE("compute_metrics fills a consistent block") {
    const TheoryInputs in{136, 136, std::pow(10.0, -0.5), 0.3, 1};
    const TheoryMetrics m = compute_metrics(in);
    CHECK(m.p_e == doctest::Approx(7.827011290012748e-4).epsilon(1e-12));
    CHECK(m.p_u == doctest::Approx(0.013408646962399646).epsilon(1e-12));
    CHECK(std::fabs(m.p_eu * m.p_u + m.p_er * (1.0 - m.p_u) - m.p_e) < 1e-12);
    CHECK(m.e_m == doctest::Approx(299.41295087482706).epsilon(1e-10));
    CHECK(m.ambient_error == doctest::Approx(136.0 * 136.0 * m.p_e).epsilon(1e-12));
    CHECK(m.e_c_exact <= 136.0);
    CHECK(m.e_m >= 136.0);

    // degenerate t1 = 0: p_eu undefined, p_er collapses to p_e
    const TheoryMetrics flat = compute_metrics(TheoryInputs{136, 136, 0.3162, 0.0, 1});
    CHECK(std::isnan(flat.p_eu));
    CHECK(flat.p_er == flat.p_e);
}

TEST_CASE("rank increase bound at the reference points") {
    const RankIncreaseBound loose = rank_increase_bound(ToyModelParams{10, 1000, 0.02});
    CHECK(loose.bound == doctest::Approx(0.9999999853257725).epsilon(1e-10));
    CHECK(loose.simplified_bound >= 1.0 - 1e-10);
    CHECK(loose.min_distance_bound == doctest::Approx(490.05).epsilon(1e-12));

    const RankIncreaseBound tight = rank_increase_bound(ToyModelParams{4, 200, 0.01});
    CHECK(tight.bound >= 1.0 - 1e-12);
    CHECK(tight.min_distance_bound == doctest::Approx(96.04).epsilon(1e-12));

    // p' -> 0+ drives the bound to 1
    CHECK(rank_increase_bound(ToyModelParams{4, 200, 1e-12}).bound == doctest::Approx(1.0));
    CHECK_THROWS(rank_increase_bound(ToyModelParams{0, 200, 0.01}));
    CHECK_THROWS(rank_increase_bound(ToyModelParams{200, 200, 0.01}));
    CHECK_THROWS(rank_increase_bound(ToyModelParams{4, 200, 0.0}));
}

TEST_CASE("rank increase bound is monotone in p' and d") {
    double prev = 2.0;
    for (const double p : {0.001, 0.005, 0.01, 0.02, 0.05}) {
        const double b = rank_increase_bound(ToyModelParams{4, 200, p}).bound;
        CHECK(b <= prev + 1e-15);
        prev = b;
    }
    prev = 2.0;
    for (const std::size_t d : {2u, 4u, 8u, 16u, 32u}) {
        const double b = rank_increase_bound(ToyModelParams{d, 200, 0.01}).bound;
        CHECK(b <= prev + 1e-15);
        prev = b;
    }
}
