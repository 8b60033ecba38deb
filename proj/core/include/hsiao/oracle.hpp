#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hsiao/codec.hpp"
#include "hsiao/delta.hpp"

namespace hsiao {

// Backtracking existence search over distinct weight-J columns with
// row-balance pruning. Complete on its scale (R <= 6) and independent of the
// generators; agrees with l_condition there.
bool oracle_delta_exists(const DeltaSpec&);

struct VerifyAllSummary {
    int limit_rows = 0;
    std::int64_t instances_checked = 0;
};

// Runs both strategies over every feasible spec with R <= limit_rows (<= 10)
// and checks the full balance contract by direct counting. Throws with the
// offending spec on the first failure.
VerifyAllSummary oracle_verify_all(int limit_rows);

// Generates the matrix with instrumentation enabled and returns the counters.
OpCounter measure_generation(const DeltaSpec&, MergeStrategy);

struct ScalingPoint {
    DeltaSpec spec;
    MergeStrategy strategy = MergeStrategy::shift;
    OpCounter ops;
    double ratio = 0.0; // element_writes / (R * m * (log2(m) + 1))
};

struct StrategySummary {
    MergeStrategy strategy = MergeStrategy::shift;
    double max_ratio = 0.0;
    double fitted_ratio = 0.0; // least-squares slope of writes vs denominator
};

struct ScalingReport {
    std::vector<ScalingPoint> grid;
    std::vector<StrategySummary> summaries;
};

// Measures every feasible (R, J, m) with rows_lo <= R <= rows_hi and m >= 1,
// optionally pinned to one column weight and/or one width.
ScalingReport run_scaling_grid(int rows_lo, int rows_hi,
                               std::optional<int> weight,
                               std::optional<std::int64_t> cols,
                               const std::vector<MergeStrategy>& strategies);

// CSV columns: R,J,m,strategy,element_writes,row_moves,recursion_depth,ratio.
std::string to_csv(const ScalingReport&);

enum class FaultMode { exhaustive, random };
std::string to_string(FaultMode);
std::optional<FaultMode> fault_mode_from_string(std::string_view);

struct FaultReport {
    std::int64_t data_bits = 0;
    FaultMode mode = FaultMode::exhaustive;
    std::uint64_t trials = 0; // injections actually performed
    std::uint64_t singles_corrected = 0;
    std::uint64_t doubles_detected = 0;
    std::uint64_t miscorrections = 0;
    std::uint64_t residual = 0;
};

// Exhaustive mode (requires n <= 128) enumerates every single and double flip
// over a set of codewords: all 2^k data words when k <= 12, otherwise
// `trials` seeded samples. Random mode draws `trials` seeded fault patterns
// of one or two flips. trials == 0 yields an empty report. The PRNG is
// std::mt19937_64 seeded with `seed`, consumed via raw modulo draws, so equal
// seeds reproduce reports bit-for-bit everywhere.
FaultReport inject_faults(std::int64_t data_bits, FaultMode mode,
                          std::uint64_t trials, std::uint64_t seed,
                          MergeStrategy strategy = MergeStrategy::shift);

std::string to_kv(const FaultReport&);
std::string to_csv(const FaultReport&);

} // namespace hsiao
