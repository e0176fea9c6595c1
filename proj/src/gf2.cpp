#include "blindrate/gf2.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "blindrate/errors.hpp"
#include "blindrate/rng.hpp"

namespace blindrate {

namespace {
constexpr std::size_t kWordBits = 64;

std::size_t words_for(std::size_t cols) { return (cols + kWordBits - 1) / kWordBits; }
}  // namespace

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_per_row_(words_for(cols)), words_(rows * words_per_row_, 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BitMatrix BitMatrix::random(std::size_t rows, std::size_t cols, Rng& rng) {
    BitMatrix m(rows, cols);
    if (cols == 0) return m;
    const std::uint64_t tail_mask = (cols % kWordBits == 0) ? ~0ULL : ((1ULL << (cols % kWordBits)) - 1);
    for (std::size_t r = 0; r < rows; ++r) {
        auto row_span = m.row(r);
        for (auto& w : row_span) w = rng.bits();
        row_span.back() &= tail_mask;
    }
    return m;
}

bool BitMatrix::get(std::size_t r, std::size_t c) const {
    return (words_[r * words_per_row_ + c / kWordBits] >> (c % kWordBits)) & 1ULL;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool value) {
    std::uint64_t& w = words_[r * words_per_row_ + c / kWordBits];
    const std::uint64_t mask = 1ULL << (c % kWordBits);
    if (value)
        w |= mask;
    else
        w &= ~mask;
}

std::span<const std::uint64_t> BitMatrix::row(std::size_t r) const {
    return {words_.data() + r * words_per_row_, words_per_row_};
}

std::span<std::uint64_t> BitMatrix::row(std::size_t r) {
    return {words_.data() + r * words_per_row_, words_per_row_};
}

void BitMatrix::xor_row_into(std::size_t src, std::size_t dst) {
    const std::uint64_t* s = words_.data() + src * words_per_row_;
    std::uint64_t* d = words_.data() + dst * words_per_row_;
    for (std::size_t w = 0; w < words_per_row_; ++w) d[w] ^= s[w];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::uint64_t* pa = words_.data() + a * words_per_row_;
    std::uint64_t* pb = words_.data() + b * words_per_row_;
    for (std::size_t w = 0; w < words_per_row_; ++w) std::swap(pa[w], pb[w]);
}

std::size_t BitMatrix::column_ones(std::size_t c) const {
    const std::size_t word = c / kWordBits;
    const std::uint64_t mask = 1ULL << (c % kWordBits);
    std::size_t count = 0;
    for (std::size_t r = 0; r < rows_; ++r) count += (words_[r * words_per_row_ + word] & mask) != 0;
    return count;
}

BitMatrix BitMatrix::permute_columns(std::span<const std::size_t> perm) const {
    if (perm.size() != cols_) throw DimensionError("permute_columns: permutation size mismatch");
    BitMatrix out(rows_, cols_);
    for (std::size_t j = 0; j < cols_; ++j) {
        const std::size_t src = perm[j];
        const std::size_t word = src / kWordBits;
        const std::uint64_t mask = 1ULL << (src % kWordBits);
        for (std::size_t r = 0; r < rows_; ++r)
            if (words_[r * words_per_row_ + word] & mask) out.set(r, j, true);
    }
    return out;
}

BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows())
        throw DimensionError("multiply: " + std::to_string(a.cols()) + " columns vs " +
                             std::to_string(b.rows()) + " rows");
    BitMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto arow = a.row(i);
        for (std::size_t w = 0; w < arow.size(); ++w) {
            std::uint64_t bits = arow[w];
            while (bits) {
                const std::size_t k = w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
                bits &= bits - 1;
                const std::uint64_t* src = b.row(k).data();
                std::uint64_t* dst = out.row(i).data();
                for (std::size_t v = 0; v < out.words_per_row(); ++v) dst[v] ^= src[v];
            }
        }
    }
    return out;
}

RrefResult rref(const BitMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) throw DimensionError("rref: empty matrix");

    BitMatrix work = m;
    const std::size_t rows = work.rows();
    const std::size_t cols = work.cols();

    std::vector<std::size_t> pivot_cols;
    std::vector<std::size_t> free_cols;
    std::size_t pivot_row = 0;

    for (std::size_t col = 0; col < cols; ++col) {
        if (pivot_row == rows) {
            free_cols.push_back(col);
            continue;
        }
        std::size_t found = rows;
        for (std::size_t r = pivot_row; r < rows; ++r) {
            if (work.get(r, col)) {
                found = r;
                break;
            }
        }
        if (found == rows) {
            free_cols.push_back(col);
            continue;
        }
        work.swap_rows(pivot_row, found);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r != pivot_row && work.get(r, col)) work.xor_row_into(pivot_row, r);
        }
        pivot_cols.push_back(col);
        ++pivot_row;
    }

    RrefResult result;
    result.pivot_count = pivot_cols.size();
    result.column_permutation = std::move(pivot_cols);
    result.column_permutation.insert(result.column_permutation.end(), free_cols.begin(), free_cols.end());
    result.reduced = work.permute_columns(result.column_permutation);

    result.column_means.reserve(cols);
    for (std::size_t c = 0; c < cols; ++c)
        result.column_means.emplace_back(result.reduced.column_ones(c), rows);
    return result;
}

std::size_t rank_by_column_mean(const RrefResult& r, std::size_t m_s) {
    if (m_s == 0 || m_s != r.reduced.rows())
        throw DimensionError("rank_by_column_mean: m_s must equal the reduced row count");
    std::size_t count = 0;
    for (const auto& [ones, rows] : r.column_means) {
        // ones/rows <= 1/m_s  <=>  ones * m_s <= rows
        if (ones * m_s <= rows) ++count;
    }
    return count;
}

}  // namespace blindrate
