#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace blindrate {

class Rng;

/// Dense bit-packed matrix over GF(2), row-major in 64-bit words.
/// Invariant: bits past `cols` in the last word of each row are zero.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);

    static BitMatrix identity(std::size_t n);
    static BitMatrix random(std::size_t rows, std::size_t cols, Rng& rng);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return words_per_row_; }

    bool get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, bool value);

    std::span<const std::uint64_t> row(std::size_t r) const;
    std::span<std::uint64_t> row(std::size_t r);

    /// row[dst] ^= row[src]
    void xor_row_into(std::size_t src, std::size_t dst);
    void swap_rows(std::size_t a, std::size_t b);

    std::size_t column_ones(std::size_t c) const;

    /// out(r, j) = (*this)(r, perm[j]); perm must be a permutation of 0..cols-1.
    BitMatrix permute_columns(std::span<const std::size_t> perm) const;

    bool operator==(const BitMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t words_per_row_ = 0;
    std::vector<std::uint64_t> words_;
};

/// GF(2) matrix product; requires a.cols == b.rows.
BitMatrix multiply(const BitMatrix& a, const BitMatrix& b);

/// Row-reduced echelon form with pivot columns permuted to the front, so
/// `reduced` is a pivot_count-by-pivot_count identity block, dependency
/// coefficients to its right, and zero rows below.
///
/// column_permutation[j] is the input column displayed at position j of
/// `reduced`; un-permuting the columns of `reduced` yields a matrix with the
/// same row space as the input.
///
/// column_means[j] is the mean of reduced column j kept exactly as the pair
/// (ones, rows) -- never floating point.
struct RrefResult {
    BitMatrix reduced;
    std::vector<std::size_t> column_permutation;
    std::size_t pivot_count = 0;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> column_means;
};

/// Deterministic elimination: columns scanned left to right, pivot = first
/// row (from the current front) holding a one; pivot-free columns are moved
/// rightward in first-encounter order. Throws DimensionError on an empty
/// matrix.
RrefResult rref(const BitMatrix& m);

/// Number of columns of r.reduced whose mean is <= 1/m_s, by exact rational
/// comparison. Requires m_s == r.reduced.rows(). Note all-zero columns (and
/// single-one dependent columns) pass the test by construction.
std::size_t rank_by_column_mean(const RrefResult& r, std::size_t m_s);

}  // namespace blindrate
