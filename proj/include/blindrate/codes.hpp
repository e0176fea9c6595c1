#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "blindrate/gf2.hpp"

namespace blindrate {

/// An [n, k] binary linear block code given by a full-rank k x n generator.
struct LinearCode {
    std::size_t n = 0;
    std::size_t k = 0;
    BitMatrix generator;  // k x n, rank k

    double rate() const { return static_cast<double>(k) / static_cast<double>(n); }
};

/// Generator sampled uniformly over k x n binary matrices and resampled until
/// it has rank k. Deterministic for a fixed seed. Requires 0 < k <= n.
LinearCode random_code(std::size_t n, std::size_t k, std::uint64_t seed);

/// Load a parity-check matrix H from alist text and derive a generator as a
/// basis of the null space of H; k = n - rank(H).
///
/// alist layout: line 1 "n m"; line 2 max column weight, max row weight;
/// n column weights; m row weights; n column index lists; m row index lists.
/// Indices are 1-based; zero padding (fixed-width variants) is ignored.
LinearCode code_from_alist(std::istream& in);
LinearCode code_from_alist(const std::string& text);

/// c = m G over GF(2); message.size() must equal k.
std::vector<std::uint8_t> encode(const LinearCode& code, std::span<const std::uint8_t> message);

/// Rows of `messages` encoded as rows of the result (messages * G).
BitMatrix encode_block(const LinearCode& code, const BitMatrix& messages);

}  // namespace blindrate
