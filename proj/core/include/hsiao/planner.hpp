#pragma once

#include <cstdint>
#include <vector>

#include "hsiao/delta.hpp"

namespace hsiao {

// Smallest R with 2^(R-1) >= k + R. Exact integer arithmetic throughout.
int compute_check_bits(std::int64_t data_bits);

// Odd-weight block decomposition of the n = k + R columns: full blocks
// (R, 2i+1, C(R,2i+1)) in ascending weight, then one partial block of the
// remaining width.
struct BlockPlan {
    std::int64_t data_bits = 0;    // k
    int check_bits = 0;            // R
    std::int64_t total_cols = 0;   // n = k + R
    int partial_index = 0;         // I: weight of the partial block is 2I+1
    std::int64_t partial_cols = 0; // width of the partial block
    std::vector<DeltaSpec> blocks; // full blocks then the partial block
};

BlockPlan plan_blocks(std::int64_t data_bits);

struct CheckMatrix {
    BitMatrix matrix;                            // R x n
    std::vector<std::int64_t> parity_positions;  // parity_positions[r] is the
                                                 // weight-1 column with its 1
                                                 // in row r
    std::vector<std::int64_t> data_positions;    // remaining columns, ascending

    std::int64_t data_bits() const {
        return static_cast<std::int64_t>(data_positions.size());
    }
    std::int64_t word_bits() const { return matrix.cols(); }
};

// Generates every planned block and joins them horizontally. Deterministic
// per strategy. The counter, when given, is threaded through block generation.
CheckMatrix build_check_matrix(std::int64_t data_bits, MergeStrategy strategy,
                               OpCounter* counter = nullptr);

// Wraps an existing matrix, locating the systematic identity block among its
// weight-1 columns. Throws when some row lacks a weight-1 column.
CheckMatrix check_matrix_from(BitMatrix matrix);

struct HsiaoReport {
    bool odd_column_weights = false;
    bool columns_distinct = false;
    std::vector<std::int64_t> row_weights;
    std::int64_t max_row_delta = 0;
    std::int64_t total_ones = 0;

    bool ok() const {
        return odd_column_weights && columns_distinct && max_row_delta <= 1;
    }
};

// Checks the structural requirements on a check matrix: odd column weights,
// pairwise-distinct columns, row weights within one of each other.
HsiaoReport verify_check_matrix(const BitMatrix&);

} // namespace hsiao
