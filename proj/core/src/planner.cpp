#include "hsiao/planner.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hsiao {

int compute_check_bits(std::int64_t data_bits) {
    if (data_bits < 1)
        throw std::invalid_argument("compute_check_bits: k must be positive");
    int r = 1;
    while (true) {
        if (r > 62)
            throw std::invalid_argument("compute_check_bits: k too large");
        const std::int64_t capacity = std::int64_t{1} << (r - 1);
        if (capacity >= data_bits + r) return r;
        ++r;
    }
}

BlockPlan plan_blocks(std::int64_t data_bits) {
    BlockPlan plan;
    plan.data_bits = data_bits;
    plan.check_bits = compute_check_bits(data_bits);
    plan.total_cols = data_bits + plan.check_bits;

    std::int64_t covered = 0;
    int index = 0;
    while (true) {
        const int weight = 2 * index + 1;
        if (weight > plan.check_bits)
            throw std::logic_error("plan_blocks: ran out of odd weights");
        const auto width = binomial(plan.check_bits, weight);
        if (!width.has_value())
            throw std::overflow_error("plan_blocks: C(R,J) exceeds the 64-bit range");
        if (covered + *width >= plan.total_cols) break;
        plan.blocks.push_back({plan.check_bits, weight, *width});
        covered += *width;
        ++index;
    }
    plan.partial_index = index;
    plan.partial_cols = plan.total_cols - covered;
    if (plan.partial_cols > 0)
        plan.blocks.push_back({plan.check_bits, 2 * index + 1, plan.partial_cols});
    return plan;
}

CheckMatrix build_check_matrix(std::int64_t data_bits, MergeStrategy strategy,
                               OpCounter* counter) {
    const BlockPlan plan = plan_blocks(data_bits);
    BitMatrix matrix(plan.check_bits, plan.total_cols);

    std::int64_t offset = 0;
    for (const auto& block : plan.blocks) {
        const BitMatrix part = generate_delta(block, strategy, counter);
        for (int r = 0; r < part.rows(); ++r) {
            const auto src = part.row(r);
            auto dst = matrix.row(r);
            std::copy(src.begin(), src.end(), dst.begin() + offset);
        }
        offset += part.cols();
    }
    return check_matrix_from(std::move(matrix));
}

CheckMatrix check_matrix_from(BitMatrix matrix) {
    CheckMatrix out;
    const int rows = matrix.rows();
    const std::int64_t cols = matrix.cols();

    out.parity_positions.assign(static_cast<std::size_t>(rows), -1);
    std::vector<bool> is_parity(static_cast<std::size_t>(cols), false);
    for (std::int64_t c = 0; c < cols; ++c) {
        if (matrix.col_weight(c) != 1) continue;
        for (int r = 0; r < rows; ++r) {
            if (matrix.get(r, c) && out.parity_positions[static_cast<std::size_t>(r)] < 0) {
                out.parity_positions[static_cast<std::size_t>(r)] = c;
                is_parity[static_cast<std::size_t>(c)] = true;
                break;
            }
        }
    }
    for (const auto p : out.parity_positions)
        if (p < 0)
            throw std::invalid_argument(
                "check_matrix_from: matrix lacks a full weight-1 parity block");

    out.data_positions.reserve(static_cast<std::size_t>(cols - rows));
    for (std::int64_t c = 0; c < cols; ++c)
        if (!is_parity[static_cast<std::size_t>(c)]) out.data_positions.push_back(c);
    out.matrix = std::move(matrix);
    return out;
}

HsiaoReport verify_check_matrix(const BitMatrix& mat) {
    HsiaoReport rep;
    rep.row_weights = mat.row_weights();
    rep.total_ones = mat.total_ones();

    if (rep.row_weights.empty()) {
        rep.max_row_delta = 0;
    } else {
        const auto [lo, hi] =
            std::minmax_element(rep.row_weights.begin(), rep.row_weights.end());
        rep.max_row_delta = *hi - *lo;
    }

    rep.odd_column_weights = true;
    for (std::int64_t c = 0; c < mat.cols(); ++c)
        if (mat.col_weight(c) % 2 == 0) {
            rep.odd_column_weights = false;
            break;
        }

    std::vector<std::vector<std::uint8_t>> cols;
    cols.reserve(static_cast<std::size_t>(mat.cols()));
    for (std::int64_t c = 0; c < mat.cols(); ++c) cols.push_back(mat.column(c));
    std::sort(cols.begin(), cols.end());
    rep.columns_distinct = std::adjacent_find(cols.begin(), cols.end()) == cols.end();
    return rep;
}

} // namespace hsiao
