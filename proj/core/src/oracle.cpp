#include "hsiao/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

namespace hsiao {

namespace {

struct ExistenceSearch {
    int rows = 0;
    int col_weight = 0;
    std::int64_t target_cols = 0;
    std::int64_t ceiling = 0;
    std::int64_t floor = 0;
    std::vector<std::uint32_t> columns; // weight-J column bitmasks, ascending
    std::vector<std::int64_t> row_weight;

    bool solve(std::size_t next, std::int64_t placed) {
        if (placed == target_cols) {
            for (const auto w : row_weight)
                if (w < floor) return false;
            return true;
        }
        const std::int64_t remaining = target_cols - placed;
        if (static_cast<std::int64_t>(columns.size() - next) < remaining) return false;

        // Rows below the floor still need ones, rows at the ceiling can take
        // no more; the remaining columns supply exactly remaining * J ones.
        std::int64_t deficit = 0;
        std::int64_t supply = 0;
        for (const auto w : row_weight) {
            deficit += std::max<std::int64_t>(0, floor - w);
            supply += std::max<std::int64_t>(0, ceiling - w);
        }
        if (deficit > remaining * col_weight || supply < remaining * col_weight)
            return false;

        for (std::size_t c = next; c < columns.size(); ++c) {
            bool fits = true;
            for (int r = 0; fits && r < rows; ++r)
                if ((columns[c] >> r) & 1u)
                    fits = row_weight[static_cast<std::size_t>(r)] + 1 <= ceiling;
            if (!fits) continue;
            apply(c, +1);
            if (solve(c + 1, placed + 1)) return true;
            apply(c, -1);
        }
        return false;
    }

    void apply(std::size_t c, int delta) {
        for (int r = 0; r < rows; ++r)
            if ((columns[c] >> r) & 1u) row_weight[static_cast<std::size_t>(r)] += delta;
    }
};

double scaling_denominator(const DeltaSpec& s) {
    return static_cast<double>(s.rows) * static_cast<double>(s.cols) *
           (std::log2(static_cast<double>(s.cols)) + 1.0);
}

// Deterministic, portable draws: raw engine outputs, no std distributions.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
    return rng() % bound;
}

Bits random_data_word(std::mt19937_64& rng, std::int64_t bits) {
    Bits data(static_cast<std::size_t>(bits));
    for (auto& b : data) b = static_cast<std::uint8_t>(rng() & 1);
    return data;
}

void classify_single(const DecodeOutcome& outcome, std::int64_t position,
                     const Bits& original, FaultReport& rep) {
    if (outcome.kind == DecodeKind::corrected && outcome.position &&
        *outcome.position == position && outcome.data && *outcome.data == original) {
        ++rep.singles_corrected;
    } else if (outcome.kind == DecodeKind::corrected) {
        ++rep.miscorrections;
    } else {
        ++rep.residual;
    }
}

void classify_double(const DecodeOutcome& outcome, FaultReport& rep) {
    if (outcome.kind == DecodeKind::double_error) ++rep.doubles_detected;
    else if (outcome.kind == DecodeKind::corrected) ++rep.miscorrections;
    else ++rep.residual;
}

} // namespace

bool oracle_delta_exists(const DeltaSpec& s) {
    if (s.rows > 6)
        throw std::invalid_argument("oracle_delta_exists: search is limited to R <= 6");
    if (s.rows < 1 || s.weight < 0 || s.weight > s.rows || s.cols < 0) return false;
    if (s.cols == 0) return true;

    ExistenceSearch search;
    search.rows = s.rows;
    search.col_weight = s.weight;
    search.target_cols = s.cols;
    const std::int64_t total = s.cols * s.weight;
    search.floor = total / s.rows;
    search.ceiling = (total + s.rows - 1) / s.rows;
    search.row_weight.assign(static_cast<std::size_t>(s.rows), 0);
    for (std::uint32_t mask = 0; mask < (1u << s.rows); ++mask)
        if (std::popcount(mask) == s.weight) search.columns.push_back(mask);
    return search.solve(0, 0);
}

VerifyAllSummary oracle_verify_all(int limit_rows) {
    if (limit_rows < 1 || limit_rows > 10)
        throw std::invalid_argument("oracle_verify_all: limit must be in 1..10");

    VerifyAllSummary summary{limit_rows, 0};
    for (int rows = 1; rows <= limit_rows; ++rows) {
        for (int weight = 0; weight <= rows; ++weight) {
            const auto width = binomial(rows, weight).value();
            for (std::int64_t m = 0; m <= width; ++m) {
                const DeltaSpec spec{rows, weight, m};
                for (const auto strategy : {MergeStrategy::flip, MergeStrategy::shift}) {
                    const BitMatrix mat = generate_delta(spec, strategy);
                    const BalanceReport rep = verify_balanced(mat, weight);
                    const std::int64_t spare = (m * weight) % rows;
                    const std::int64_t ceiling = (m * weight + rows - 1) / rows;
                    bool ok = mat.rows() == rows && mat.cols() == m &&
                              rep.column_weight_ok && rep.columns_distinct &&
                              rep.max_row_delta <= 1 && rep.heavy_rows_on_top;
                    if (ok) {
                        if (spare == 0) {
                            ok = rep.max_row_delta == 0;
                        } else {
                            const auto heavy = std::count(rep.row_weights.begin(),
                                                          rep.row_weights.end(), ceiling);
                            ok = rep.max_row_delta == 1 && heavy == spare;
                        }
                    }
                    if (!ok) {
                        std::ostringstream os;
                        os << "oracle_verify_all: balance check failed for "
                           << to_string(spec) << " strategy " << to_string(strategy);
                        throw std::runtime_error(os.str());
                    }
                }
                ++summary.instances_checked;
            }
        }
    }
    return summary;
}

OpCounter measure_generation(const DeltaSpec& spec, MergeStrategy strategy) {
    OpCounter counter;
    generate_delta(spec, strategy, &counter);
    return counter;
}

ScalingReport run_scaling_grid(int rows_lo, int rows_hi, std::optional<int> weight,
                               std::optional<std::int64_t> cols,
                               const std::vector<MergeStrategy>& strategies) {
    if (rows_lo < 1 || rows_hi < rows_lo || rows_hi > 24)
        throw std::invalid_argument("run_scaling_grid: rows range must satisfy 1 <= lo <= hi <= 24");
    if (strategies.empty())
        throw std::invalid_argument("run_scaling_grid: need at least one strategy");

    ScalingReport report;
    for (const auto strategy : strategies)
        report.summaries.push_back({strategy, 0.0, 0.0});
    std::vector<double> num(strategies.size(), 0.0);
    std::vector<double> den(strategies.size(), 0.0);

    for (int rows = rows_lo; rows <= rows_hi; ++rows) {
        const int w_lo = weight.value_or(0);
        const int w_hi = weight.value_or(rows);
        for (int w = w_lo; w <= w_hi && w <= rows; ++w) {
            const auto width = binomial(rows, w);
            if (!width.has_value())
                throw std::overflow_error("run_scaling_grid: C(R,J) exceeds the 64-bit range");
            const std::int64_t m_lo = cols.value_or(1);
            const std::int64_t m_hi = cols.value_or(*width);
            for (std::int64_t m = std::max<std::int64_t>(1, m_lo);
                 m <= m_hi && m <= *width; ++m) {
                const DeltaSpec spec{rows, w, m};
                for (std::size_t i = 0; i < strategies.size(); ++i) {
                    ScalingPoint point;
                    point.spec = spec;
                    point.strategy = strategies[i];
                    point.ops = measure_generation(spec, strategies[i]);
                    const double d = scaling_denominator(spec);
                    point.ratio = static_cast<double>(point.ops.element_writes) / d;
                    report.grid.push_back(point);
                    auto& summary = report.summaries[i];
                    summary.max_ratio = std::max(summary.max_ratio, point.ratio);
                    num[i] += d * static_cast<double>(point.ops.element_writes);
                    den[i] += d * d;
                }
            }
        }
    }
    for (std::size_t i = 0; i < strategies.size(); ++i)
        report.summaries[i].fitted_ratio = den[i] > 0.0 ? num[i] / den[i] : 0.0;
    return report;
}

std::string to_csv(const ScalingReport& report) {
    std::string out = "R,J,m,strategy,element_writes,row_moves,recursion_depth,ratio\n";
    char buffer[64];
    for (const auto& point : report.grid) {
        std::ostringstream os;
        os << point.spec.rows << ',' << point.spec.weight << ',' << point.spec.cols << ','
           << to_string(point.strategy) << ',' << point.ops.element_writes << ','
           << point.ops.row_moves << ',' << point.ops.recursion_depth << ',';
        std::snprintf(buffer, sizeof buffer, "%.6f", point.ratio);
        os << buffer << '\n';
        out += os.str();
    }
    for (const auto& summary : report.summaries) {
        std::ostringstream os;
        os << "# strategy=" << to_string(summary.strategy);
        std::snprintf(buffer, sizeof buffer, "%.6f", summary.max_ratio);
        os << " max_ratio=" << buffer;
        std::snprintf(buffer, sizeof buffer, "%.6f", summary.fitted_ratio);
        os << " fitted_ratio=" << buffer << '\n';
        out += os.str();
    }
    return out;
}

std::string to_string(FaultMode mode) {
    return mode == FaultMode::exhaustive ? "exhaustive" : "random";
}

std::optional<FaultMode> fault_mode_from_string(std::string_view text) {
    if (text == "exhaustive") return FaultMode::exhaustive;
    if (text == "random") return FaultMode::random;
    return std::nullopt;
}

FaultReport inject_faults(std::int64_t data_bits, FaultMode mode, std::uint64_t trials,
                          std::uint64_t seed, MergeStrategy strategy) {
    FaultReport rep;
    rep.data_bits = data_bits;
    rep.mode = mode;
    if (trials == 0) return rep;

    const Codec codec(build_check_matrix(data_bits, strategy));
    const std::int64_t n = codec.word_bits();
    std::mt19937_64 rng(seed);

    if (mode == FaultMode::exhaustive) {
        if (n > 128)
            throw std::invalid_argument("inject_faults: exhaustive mode requires n <= 128");
        std::vector<Bits> data_words;
        if (data_bits <= 12) {
            for (std::uint64_t v = 0; v < (std::uint64_t{1} << data_bits); ++v) {
                Bits data(static_cast<std::size_t>(data_bits));
                for (std::int64_t b = 0; b < data_bits; ++b)
                    data[static_cast<std::size_t>(b)] =
                        static_cast<std::uint8_t>((v >> b) & 1);
                data_words.push_back(std::move(data));
            }
        } else {
            for (std::uint64_t t = 0; t < trials; ++t)
                data_words.push_back(random_data_word(rng, data_bits));
        }
        for (const auto& data : data_words) {
            Bits word = codec.encode(data);
            for (std::int64_t i = 0; i < n; ++i) {
                word[static_cast<std::size_t>(i)] ^= 1;
                classify_single(codec.decode(word), i, data, rep);
                word[static_cast<std::size_t>(i)] ^= 1;
                ++rep.trials;
            }
            for (std::int64_t i = 0; i < n; ++i) {
                for (std::int64_t j = i + 1; j < n; ++j) {
                    word[static_cast<std::size_t>(i)] ^= 1;
                    word[static_cast<std::size_t>(j)] ^= 1;
                    classify_double(codec.decode(word), rep);
                    word[static_cast<std::size_t>(i)] ^= 1;
                    word[static_cast<std::size_t>(j)] ^= 1;
                    ++rep.trials;
                }
            }
        }
        return rep;
    }

    for (std::uint64_t t = 0; t < trials; ++t) {
        const Bits data = random_data_word(rng, data_bits);
        Bits word = codec.encode(data);
        const bool single = (rng() & 1) == 0;
        const auto i = static_cast<std::int64_t>(draw_below(rng, static_cast<std::uint64_t>(n)));
        word[static_cast<std::size_t>(i)] ^= 1;
        if (single) {
            classify_single(codec.decode(word), i, data, rep);
        } else {
            std::int64_t j = i;
            while (j == i)
                j = static_cast<std::int64_t>(draw_below(rng, static_cast<std::uint64_t>(n)));
            word[static_cast<std::size_t>(j)] ^= 1;
            classify_double(codec.decode(word), rep);
        }
        ++rep.trials;
    }
    return rep;
}

std::string to_kv(const FaultReport& rep) {
    std::ostringstream os;
    os << "k=" << rep.data_bits << '\n'
       << "mode=" << to_string(rep.mode) << '\n'
       << "trials=" << rep.trials << '\n'
       << "singles_corrected=" << rep.singles_corrected << '\n'
       << "doubles_detected=" << rep.doubles_detected << '\n'
       << "miscorrections=" << rep.miscorrections << '\n'
       << "residual=" << rep.residual << '\n';
    return os.str();
}

std::string to_csv(const FaultReport& rep) {
    std::ostringstream os;
    os << "# k=" << rep.data_bits << " mode=" << to_string(rep.mode)
       << " trials=" << rep.trials << '\n'
       << "class,count\n"
       << "singles_corrected," << rep.singles_corrected << '\n'
       << "doubles_detected," << rep.doubles_detected << '\n'
       << "miscorrections," << rep.miscorrections << '\n'
       << "residual," << rep.residual << '\n';
    return os.str();
}

} // namespace hsiao
