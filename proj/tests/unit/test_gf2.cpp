#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "blindrate/codes.hpp"
#include "blindrate/errors.hpp"
#include "blindrate/gf2.hpp"
#include "blindrate/rng.hpp"
#include "../support/oracles.hpp"

using namespace blindrate;

namespace {

bool identity_permutation(const std::vector<std::size_t>& perm) {
    for (std::size_t i = 0; i < perm.size(); ++i)
        if (perm[i] != i) return false;
    return true;
}

/// Undo the column permutation of a reduced matrix.
BitMatrix unpermute(const RrefResult& r) {
    std::vector<std::size_t> inverse(r.column_permutation.size());
    for (std::size_t j = 0; j < inverse.size(); ++j) inverse[r.column_permutation[j]] = j;
    return r.reduced.permute_columns(inverse);
}

}  // namespace

TEST_CASE("rref of the identity is the identity") {
    for (const std::size_t n : {1u, 5u, 64u, 65u, 130u}) {
        const BitMatrix eye = BitMatrix::identity(n);
        const RrefResult r = rref(eye);
        CHECK(r.pivot_count == n);
        CHECK(identity_permutation(r.column_permutation));
        CHECK(r.reduced == eye);
        CHECK(rank_by_column_mean(r, n) == n);
    }
}

TEST_CASE("rref of an all-zero matrix has no pivots") {
    const RrefResult r = rref(BitMatrix(4, 6));
    CHECK(r.pivot_count == 0);
    CHECK(rank_by_column_mean(r, 4) == 6);  // every zero column passes the mean rule
}

TEST_CASE("rref rejects empty matrices") {
    CHECK_THROWS_AS(rref(BitMatrix(0, 5)), DimensionError);
    CHECK_THROWS_AS(rref(BitMatrix(5, 0)), DimensionError);
}

TEST_CASE("rref pivot count matches the dense elimination oracle") {
    Rng rng(0x5EED);
    const BitMatrix m = BitMatrix::random(50, 20, rng);
    CHECK(rref(m).pivot_count == oracles::dense_rank(oracles::to_dense(m)));

    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t rows = 1 + rng.bits() % 64;
        const std::size_t cols = 1 + rng.bits() % 64;
        const BitMatrix random = BitMatrix::random(rows, cols, rng);
        CAPTURE(rows);
        CAPTURE(cols);
        CHECK(rref(random).pivot_count == oracles::dense_rank(oracles::to_dense(random)));
    }
}

TEST_CASE("rref output has the identity-plus-dependency block form") {
    Rng rng(42);
    const BitMatrix m = BitMatrix::random(24, 37, rng);
    const RrefResult r = rref(m);
    const std::size_t p = r.pivot_count;
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) CHECK(r.reduced.get(i, j) == (i == j));
    for (std::size_t i = p; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) CHECK_FALSE(r.reduced.get(i, j));
}

TEST_CASE("un-permuting the reduced matrix preserves the row space") {
    Rng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const BitMatrix m = BitMatrix::random(12 + trial, 20, rng);
        const RrefResult r = rref(m);
        CHECK(oracles::same_row_space(oracles::to_dense(m), oracles::to_dense(unpermute(r))));
    }
}

TEST_CASE("rref is idempotent on its own output") {
    Rng rng(11);
    const BitMatrix m = BitMatrix::random(18, 30, rng);
    const RrefResult first = rref(m);
    const RrefResult second = rref(first.reduced);
    CHECK(second.reduced == first.reduced);
    CHECK(identity_permutation(second.column_permutation));
    CHECK(second.pivot_count == first.pivot_count);
}

TEST_CASE("rank is invariant under row permutation") {
    Rng rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const BitMatrix m = BitMatrix::random(16, 24, rng);
        BitMatrix shuffled = m;
        for (std::size_t r = shuffled.rows(); r > 1; --r)
            shuffled.swap_rows(r - 1, rng.bits() % r);
        CHECK(rref(m).pivot_count == rref(shuffled).pivot_count);
    }
}

TEST_CASE("column means are exact integer pairs") {
    BitMatrix m(4, 3);
    m.set(0, 0, true);
    m.set(1, 0, true);
    m.set(2, 0, true);
    m.set(0, 1, true);
    const RrefResult r = rref(m);
    for (const auto& [ones, rows] : r.column_means) {
        CHECK(rows == 4);
        CHECK(ones <= 4);
    }
    std::uint64_t total = 0;
    for (const auto& [ones, rows] : r.column_means) total += ones;
    std::uint64_t expected = 0;
    for (std::size_t c = 0; c < r.reduced.cols(); ++c) expected += r.reduced.column_ones(c);
    CHECK(total == expected);
}

TEST_CASE("column-mean rank counts zero and duplicate columns") {
    // Two pivots, one all-zero column, one duplicate of a pivot column.
    BitMatrix m(4, 4);
    m.set(0, 0, true);
    m.set(1, 1, true);
    m.set(0, 3, true);  // duplicate of column 0
    const RrefResult r = rref(m);
    CHECK(r.pivot_count == 2);
    // zero column and the single-pivot dependency both pass the <= 1/m_s test
    CHECK(rank_by_column_mean(r, 4) == 4);

    // and without such columns the rule equals the pivot count
    Rng rng(99);
    const LinearCode code = random_code(20, 8, 0xBEEF);
    BitMatrix messages = BitMatrix::random(40, 8, rng);
    while (rref(messages).pivot_count < 8) messages = BitMatrix::random(40, 8, rng);
    const BitMatrix words = encode_block(code, messages);
    const RrefResult wr = rref(words);
    CHECK(wr.pivot_count == 8);
    CHECK(rank_by_column_mean(wr, 40) == 8);
    CHECK(oracles::dense_rank(oracles::to_dense(words)) == 8);
}

TEST_CASE("rank_by_column_mean validates m_s") {
    const RrefResult r = rref(BitMatrix::identity(4));
    CHECK_THROWS_AS(rank_by_column_mean(r, 5), DimensionError);
    CHECK_THROWS_AS(rank_by_column_mean(r, 0), DimensionError);
}

TEST_CASE("multiply agrees with identity and hand examples") {
    Rng rng(3);
    const BitMatrix a = BitMatrix::random(6, 9, rng);
    CHECK(multiply(a, BitMatrix::identity(9)) == a);

    BitMatrix row(1, 2);
    row.set(0, 0, true);
    row.set(0, 1, true);
    BitMatrix col(2, 1);
    col.set(0, 0, true);
    col.set(1, 0, true);
    const BitMatrix product = multiply(row, col);  // 1 xor 1 = 0
    CHECK(product.rows() == 1);
    CHECK(product.cols() == 1);
    CHECK_FALSE(product.get(0, 0));
}

TEST_CASE("multiply matches the naive triple-loop oracle") {
    Rng rng(17);
    const BitMatrix a = BitMatrix::random(8, 12, rng);
    const BitMatrix b = BitMatrix::random(12, 5, rng);
    CHECK(oracles::to_dense(multiply(a, b)) ==
          oracles::naive_multiply(oracles::to_dense(a), oracles::to_dense(b)));
}

TEST_CASE("multiply is associative") {
    Rng rng(23);
    for (int trial = 0; trial < 8; ++trial) {
        const BitMatrix a = BitMatrix::random(4 + trial % 3, 6, rng);
        const BitMatrix b = BitMatrix::random(6, 5, rng);
        const BitMatrix c = BitMatrix::random(5, 7, rng);
        CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
    }
}

TEST_CASE("multiply rejects mismatched shapes") {
    CHECK_THROWS_AS(multiply(BitMatrix(2, 3), BitMatrix(4, 2)), DimensionError);
}
