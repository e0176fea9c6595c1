#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "blindrate/gf2.hpp"

namespace blindrate {

/// Upper tail of the standard normal, Q(x) = P[N(0,1) > x].
double q_function(double x);
/// Standard normal CDF; phi(x) + q_function(x) == 1.
double phi(double x);

/// Variance floor for the blind noise estimate: the averaged sample variance
/// can dip below 1 at very high SNR, which would make sigma^2 negative.
inline constexpr double kSigma2Floor = 1e-9;

/// One received vector r of length n. Under BPSK/AWGN, r is also the vector
/// of LLRs. hard_bits[i] = 1 iff symbols[i] < 0.
struct LlrFrame {
    std::vector<double> symbols;
    std::vector<std::uint8_t> hard_bits;

    explicit LlrFrame(std::vector<double> received);

    std::size_t size() const { return symbols.size(); }
};

/// Channel-side quantities for a given noise variance (sigma^2 = N0/2).
struct ChannelParams {
    double sigma2;
    double snr_linear;  // 1 / sigma2
    double snr_db;
    double n0;          // 2 sigma2
    double p_e;         // Q(sqrt(snr_linear))

    static ChannelParams from_sigma2(double sigma2);
    static ChannelParams from_snr_db(double snr_db);

    double sigma() const;
};

/// BPSK map b = 1 - 2c per codeword row, then r = b + v with v i.i.d.
/// N(0, sigma2). Frame i draws from seed + i, so frames are independent
/// streams and any one frame can be regenerated in isolation.
std::vector<LlrFrame> transmit(const BitMatrix& codewords, double sigma2, std::uint64_t seed);

/// Blind estimate from received frames:
///   sigma^2 = max(kSigma2Floor, mean_i Var(r_i) - 1)
/// with Var the per-frame unbiased sample variance (divisor n-1). SNR and
/// p_e = Q(sqrt(SNR)) follow from the estimate, never from ground truth.
ChannelParams estimate_channel(std::span<const LlrFrame> frames);

}  // namespace blindrate
