#include "hsiao/bit_matrix.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace hsiao {

BitMatrix::BitMatrix(int rows, std::int64_t cols) : rows_(rows), cols_(cols) {
    assert(rows >= 0 && cols >= 0);
    const auto cells = static_cast<std::uint64_t>(rows) * static_cast<std::uint64_t>(cols);
    if (cells > (std::uint64_t{1} << 40))
        throw std::length_error("BitMatrix: refusing to allocate more than 2^40 cells");
    bits_.assign(static_cast<std::size_t>(cells), 0);
}

BitMatrix BitMatrix::constant_row(std::int64_t cols, bool value) {
    BitMatrix out(1, cols);
    if (value) std::fill(out.bits_.begin(), out.bits_.end(), 1);
    return out;
}

std::span<const std::uint8_t> BitMatrix::row(int r) const {
    assert(r >= 0 && r < rows_);
    return {bits_.data() + index(r, 0), static_cast<std::size_t>(cols_)};
}

std::span<std::uint8_t> BitMatrix::row(int r) {
    assert(r >= 0 && r < rows_);
    return {bits_.data() + index(r, 0), static_cast<std::size_t>(cols_)};
}

std::int64_t BitMatrix::row_weight(int r) const {
    const auto span = row(r);
    return std::count(span.begin(), span.end(), std::uint8_t{1});
}

std::int64_t BitMatrix::col_weight(std::int64_t c) const {
    std::int64_t w = 0;
    for (int r = 0; r < rows_; ++r) w += bits_[index(r, c)];
    return w;
}

std::int64_t BitMatrix::total_ones() const {
    return std::count(bits_.begin(), bits_.end(), std::uint8_t{1});
}

std::vector<std::int64_t> BitMatrix::row_weights() const {
    std::vector<std::int64_t> w(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r) w[static_cast<std::size_t>(r)] = row_weight(r);
    return w;
}

std::vector<std::uint8_t> BitMatrix::column(std::int64_t c) const {
    std::vector<std::uint8_t> col(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r) col[static_cast<std::size_t>(r)] = bits_[index(r, c)];
    return col;
}

BitMatrix hconcat(const BitMatrix& a, const BitMatrix& b) {
    if (a.rows() != b.rows())
        throw std::invalid_argument("hconcat: row count mismatch");
    BitMatrix out(a.rows(), a.cols() + b.cols());
    for (int r = 0; r < a.rows(); ++r) {
        auto dst = out.row(r);
        const auto left = a.row(r);
        const auto right = b.row(r);
        std::copy(left.begin(), left.end(), dst.begin());
        std::copy(right.begin(), right.end(), dst.begin() + a.cols());
    }
    return out;
}

} // namespace hsiao
