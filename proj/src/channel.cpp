#include "blindrate/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "blindrate/errors.hpp"
#include "blindrate/rng.hpp"

namespace blindrate {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

double q_function(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

double phi(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

LlrFrame::LlrFrame(std::vector<double> received) : symbols(std::move(received)) {
    hard_bits.resize(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) hard_bits[i] = symbols[i] < 0.0 ? 1 : 0;
}

ChannelParams ChannelParams::from_sigma2(double sigma2) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("sigma2 must be positive");
    ChannelParams p{};
    p.sigma2 = sigma2;
    p.snr_linear = 1.0 / sigma2;
    p.snr_db = 10.0 * std::log10(p.snr_linear);
    p.n0 = 2.0 * sigma2;
    p.p_e = q_function(std::sqrt(p.snr_linear));
    return p;
}

ChannelParams ChannelParams::from_snr_db(double snr_db) {
    return from_sigma2(std::pow(10.0, -snr_db / 10.0));
}

double ChannelParams::sigma() const { return std::sqrt(sigma2); }

std::vector<LlrFrame> transmit(const BitMatrix& codewords, double sigma2, std::uint64_t seed) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("transmit: sigma2 must be positive");
    const double sigma = std::sqrt(sigma2);
    const std::size_t n = codewords.cols();

    std::vector<LlrFrame> frames;
    frames.reserve(codewords.rows());
    for (std::size_t i = 0; i < codewords.rows(); ++i) {
        Rng rng(seed + i);
        std::vector<double> r(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double b = codewords.get(i, j) ? -1.0 : 1.0;
            r[j] = b + sigma * rng.normal();
        }
        frames.emplace_back(std::move(r));
    }
    return frames;
}

ChannelParams estimate_channel(std::span<const LlrFrame> frames) {
    if (frames.empty()) throw std::invalid_argument("estimate_channel: no frames");

    double variance_sum = 0.0;
    for (const LlrFrame& frame : frames) {
        const std::size_t n = frame.size();
        if (n < 2)
            throw std::invalid_argument("estimate_channel: frame length " + std::to_string(n) +
                                        " is too short for a sample variance");
        double mean = 0.0;
        for (const double x : frame.symbols) mean += x;
        mean /= static_cast<double>(n);
        double ss = 0.0;
        for (const double x : frame.symbols) {
            const double d = x - mean;
            ss += d * d;
        }
        variance_sum += ss / static_cast<double>(n - 1);
    }

    const double sigma2 = std::max(kSigma2Floor, variance_sum / static_cast<double>(frames.size()) - 1.0);
    return ChannelParams::from_sigma2(sigma2);
}

}  // namespace blindrate
