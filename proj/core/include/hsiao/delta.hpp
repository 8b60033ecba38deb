#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hsiao/bit_matrix.hpp"

namespace hsiao {

// Problem instance for a balanced matrix: rows x cols over {0,1}, every
// column of weight `weight`, all columns distinct, row weights differing by
// at most one.
struct DeltaSpec {
    int rows = 0;           // R
    int weight = 0;         // column weight J
    std::int64_t cols = 0;  // m

    bool operator==(const DeltaSpec&) const = default;
};

std::string to_string(const DeltaSpec&);

// Exact C(n, k); nullopt when the value does not fit in int64.
std::optional<std::int64_t> binomial(int n, int k);
// Exact C(n, k) >= m without materializing values beyond int64.
bool binomial_at_least(int n, int k, std::int64_t m);

// Feasibility predicate: R >= 1, 0 <= J <= R and 0 <= m <= C(R, J). Total.
bool l_condition(const DeltaSpec&);
// Human-readable reason when infeasible ("m=7 > C(4,2)=6"); nullopt when fine.
std::optional<std::string> l_condition_violation(const DeltaSpec&);

struct InfeasibleSpecError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class MergeStrategy { flip, shift };
std::string to_string(MergeStrategy);
std::optional<MergeStrategy> merge_strategy_from_string(std::string_view);

// Where a recursive step cuts the column range, and how many ceiling-weight
// ("heavy") rows each child contributes.
struct SplitPoint {
    std::int64_t left_cols = 0;  // m1 = ceil(m*J / R)
    int left_heavy = 0;          // r1 = (J-1)*m1 mod (R-1)
    int right_heavy = 0;         // r2 = J*(m-m1) mod (R-1)
    int overlap = 0;             // r' = max(0, r1 + r2 - (R-1))
};

// Requires: l_condition, 2 <= J <= R-2, m >= 2 (otherwise an ending state
// applies and this throws). Both children are guaranteed feasible.
SplitPoint split_point(const DeltaSpec&);

// Closed-form base cases (m=0, J=0, J=R, m=1, J=1, J=R-1), heavy rows kept on
// top. nullopt when the spec needs the recursive construction.
std::optional<BitMatrix> ending_state(const DeltaSpec&);

// Instrumentation for the generators. element_writes counts cells placed into
// result matrices; row_moves counts whole-row relocations (flips, rotations,
// reorderings). Zero-width rows never count as moves.
struct OpCounter {
    std::uint64_t element_writes = 0;
    std::uint64_t row_moves = 0;
    int recursion_depth = 0;
};

// Flip union: place `right` upside down, join horizontally, then stably move
// heavier rows to the top. Inputs must share a row count.
BitMatrix merge_flip(const BitMatrix& left, const BitMatrix& right,
                     OpCounter* counter = nullptr);

// Shift union: cyclically rotate `right` so its heavy rows land just below
// `left`'s (or, when the heavy bands would collide, send the colliding tail
// of right's heavy rows to the bottom), then join horizontally. No post-hoc
// sorting. Operand heavy-row counts must match the split point.
BitMatrix merge_shift(const BitMatrix& left, const BitMatrix& right,
                      const SplitPoint& sp, OpCounter* counter = nullptr);

// Recursive generator. Output rows are sorted by weight descending, columns
// are distinct and all of weight J, and exactly (m*J mod R) rows carry the
// ceiling weight. Deterministic per strategy.
BitMatrix generate_delta(const DeltaSpec&, MergeStrategy,
                         OpCounter* counter = nullptr);

// Same contract, but drives an explicit work stack: the spec is decomposed
// into a post-order merge program first, then the program is replayed with
// flip unions over a value stack.
BitMatrix generate_delta_iterative(const DeltaSpec&, OpCounter* counter = nullptr);

struct BalanceReport {
    bool column_weight_ok = false;
    bool columns_distinct = false;
    std::vector<std::int64_t> row_weights;
    std::int64_t max_row_delta = 0;
    bool heavy_rows_on_top = false;

    bool balanced() const {
        return column_weight_ok && columns_distinct && max_row_delta <= 1;
    }
};

// Pure derived data; never mutates the input.
BalanceReport verify_balanced(const BitMatrix&, int weight);

} // namespace hsiao
