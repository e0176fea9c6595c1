#include "blindrate/codes.hpp"

#include <istream>
#include <sstream>
#include <string>

#include "blindrate/errors.hpp"
#include "blindrate/rng.hpp"

namespace blindrate {

LinearCode random_code(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k == 0 || k > n) throw DimensionError("random_code: need 0 < k <= n");
    Rng rng(seed);
    // Expected attempts < 4: a uniform k x n binary matrix with k <= n is
    // full rank with probability > 0.28.
    for (;;) {
        BitMatrix g = BitMatrix::random(k, n, rng);
        if (rref(g).pivot_count == k) return LinearCode{n, k, std::move(g)};
    }
}

namespace {

/// Line-oriented integer reader so parse errors can name their line.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    std::size_t line_number() const { return line_; }

    /// Next non-empty line tokenized as integers. Throws on EOF or junk.
    std::vector<long long> next(const char* what) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_;
            std::vector<long long> values;
            std::istringstream tokens(line);
            std::string tok;
            while (tokens >> tok) {
                try {
                    std::size_t used = 0;
                    const long long v = std::stoll(tok, &used);
                    if (used != tok.size()) throw std::invalid_argument(tok);
                    values.push_back(v);
                } catch (const std::exception&) {
                    throw ParseError(line_, std::string("expected integer for ") + what + ", got '" + tok + "'");
                }
            }
            if (!values.empty()) return values;
        }
        throw ParseError(line_ + 1, std::string("unexpected end of file while reading ") + what);
    }

private:
    std::istream& in_;
    std::size_t line_ = 0;
};

/// Nonzero entries of an index list; zero padding is allowed and dropped.
std::vector<long long> strip_padding(std::vector<long long> values) {
    std::erase(values, 0LL);
    return values;
}

}  // namespace

LinearCode code_from_alist(std::istream& in) {
    LineReader reader(in);

    const auto header = reader.next("header (n m)");
    if (header.size() != 2 || header[0] < 1 || header[1] < 1)
        throw ParseError(reader.line_number(), "header must be two positive integers: n m");
    const std::size_t n = static_cast<std::size_t>(header[0]);
    const std::size_t m = static_cast<std::size_t>(header[1]);

    const auto maxima = reader.next("maximum weights");
    if (maxima.size() != 2 || maxima[0] < 0 || maxima[1] < 0)
        throw ParseError(reader.line_number(), "expected max column weight and max row weight");
    const long long max_col_weight = maxima[0];
    const long long max_row_weight = maxima[1];

    auto read_weights = [&](std::size_t count, long long max_weight, const char* what) {
        std::vector<long long> weights;
        weights.reserve(count);
        while (weights.size() < count) {
            for (const long long w : reader.next(what)) {
                if (w < 0 || w > max_weight)
                    throw ParseError(reader.line_number(), std::string(what) + " " +
                                                               std::to_string(weights.size() + 1) + " is " +
                                                               std::to_string(w) + ", outside [0, " +
                                                               std::to_string(max_weight) + "]");
                weights.push_back(w);
            }
        }
        if (weights.size() != count)
            throw ParseError(reader.line_number(), std::string("too many ") + what + " entries");
        return weights;
    };

    const auto col_weights = read_weights(n, max_col_weight, "column weight");
    const auto row_weights = read_weights(m, max_row_weight, "row weight");

    BitMatrix h(m, n);
    for (std::size_t col = 0; col < n; ++col) {
        const auto entries = strip_padding(reader.next("column index list"));
        if (entries.size() != static_cast<std::size_t>(col_weights[col]))
            throw ParseError(reader.line_number(),
                             "column " + std::to_string(col + 1) + " lists " + std::to_string(entries.size()) +
                                 " indices but declares weight " + std::to_string(col_weights[col]));
        for (const long long idx : entries) {
            if (idx < 1 || idx > static_cast<long long>(m))
                throw ParseError(reader.line_number(),
                                 "row index " + std::to_string(idx) + " out of range 1.." + std::to_string(m));
            h.set(static_cast<std::size_t>(idx - 1), col, true);
        }
    }

    for (std::size_t row = 0; row < m; ++row) {
        const auto entries = strip_padding(reader.next("row index list"));
        if (entries.size() != static_cast<std::size_t>(row_weights[row]))
            throw ParseError(reader.line_number(),
                             "row " + std::to_string(row + 1) + " lists " + std::to_string(entries.size()) +
                                 " indices but declares weight " + std::to_string(row_weights[row]));
        std::vector<bool> seen(n, false);
        for (const long long idx : entries) {
            if (idx < 1 || idx > static_cast<long long>(n))
                throw ParseError(reader.line_number(),
                                 "column index " + std::to_string(idx) + " out of range 1.." + std::to_string(n));
            seen[static_cast<std::size_t>(idx - 1)] = true;
        }
        for (std::size_t col = 0; col < n; ++col) {
            if (h.get(row, col) != seen[col])
                throw ParseError(reader.line_number(),
                                 "row list " + std::to_string(row + 1) +
                                     " disagrees with the column lists at column " + std::to_string(col + 1));
        }
    }

    // Generator = null-space basis of H, read off the reduced form: one basis
    // vector per pivot-free column.
    const RrefResult reduced = rref(h);
    const std::size_t rank = reduced.pivot_count;
    if (rank >= n)
        throw DimensionError("code_from_alist: H has full column rank, the code has no message bits");
    const std::size_t k = n - rank;

    BitMatrix g(k, n);
    for (std::size_t t = 0; t < k; ++t) {
        g.set(t, reduced.column_permutation[rank + t], true);
        for (std::size_t i = 0; i < rank; ++i)
            if (reduced.reduced.get(i, rank + t)) g.set(t, reduced.column_permutation[i], true);
    }
    return LinearCode{n, k, std::move(g)};
}

LinearCode code_from_alist(const std::string& text) {
    std::istringstream in(text);
    return code_from_alist(in);
}

std::vector<std::uint8_t> encode(const LinearCode& code, std::span<const std::uint8_t> message) {
    if (message.size() != code.k)
        throw DimensionError("encode: message has " + std::to_string(message.size()) + " bits, expected " +
                             std::to_string(code.k));
    std::vector<std::uint64_t> acc(code.generator.words_per_row(), 0);
    for (std::size_t i = 0; i < code.k; ++i) {
        if (!message[i]) continue;
        auto row = code.generator.row(i);
        for (std::size_t w = 0; w < acc.size(); ++w) acc[w] ^= row[w];
    }
    std::vector<std::uint8_t> out(code.n);
    for (std::size_t j = 0; j < code.n; ++j) out[j] = (acc[j / 64] >> (j % 64)) & 1ULL;
    return out;
}

BitMatrix encode_block(const LinearCode& code, const BitMatrix& messages) {
    return multiply(messages, code.generator);
}

}  // namespace blindrate
