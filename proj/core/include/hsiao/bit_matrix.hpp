#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace hsiao {

// Dense {0,1} matrix, row-major, one byte per cell. Rows are contiguous so
// merges can relocate whole rows with std::copy. The empty matrix (cols == 0)
// is a legal value and keeps its row count.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(int rows, std::int64_t cols);

    // 1 x cols matrix with every cell set to `value`.
    static BitMatrix constant_row(std::int64_t cols, bool value);

    int rows() const { return rows_; }
    std::int64_t cols() const { return cols_; }

    bool get(int r, std::int64_t c) const { return bits_[index(r, c)] != 0; }
    void set(int r, std::int64_t c, bool v) { bits_[index(r, c)] = v ? 1 : 0; }

    std::span<const std::uint8_t> row(int r) const;
    std::span<std::uint8_t> row(int r);

    std::int64_t row_weight(int r) const;
    std::int64_t col_weight(std::int64_t c) const;
    std::int64_t total_ones() const;
    std::vector<std::int64_t> row_weights() const;

    std::vector<std::uint8_t> column(std::int64_t c) const;

    bool operator==(const BitMatrix&) const = default;

private:
    std::size_t index(int r, std::int64_t c) const {
        return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
               static_cast<std::size_t>(c);
    }

    int rows_ = 0;
    std::int64_t cols_ = 0;
    std::vector<std::uint8_t> bits_;
};

// [a b]: horizontal union of two matrices with equal row counts.
BitMatrix hconcat(const BitMatrix& a, const BitMatrix& b);

} // namespace hsiao
