#include "hsiao/delta.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>
#include <sstream>

namespace hsiao {

namespace {

void add_writes(OpCounter* c, std::uint64_t n) {
    if (c) c->element_writes += n;
}

void add_moves(OpCounter* c, std::uint64_t n) {
    if (c) c->row_moves += n;
}

void note_depth(OpCounter* c, int depth) {
    if (c && depth > c->recursion_depth) c->recursion_depth = depth;
}

void copy_row_into(BitMatrix& dst, int dst_row, std::int64_t dst_col,
                   std::span<const std::uint8_t> src) {
    auto out = dst.row(dst_row);
    std::copy(src.begin(), src.end(), out.begin() + dst_col);
}

// Balanced with heavy rows on top means: weights are base+1 for the first
// `heavy` rows and base for the rest, where heavy = total mod rows.
void require_heavy_profile(const BitMatrix& mat, int expected, const char* side) {
    const int q = mat.rows();
    std::int64_t total = 0;
    std::vector<std::int64_t> w(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) {
        w[static_cast<std::size_t>(i)] = mat.row_weight(i);
        total += w[static_cast<std::size_t>(i)];
    }
    const std::int64_t base = q > 0 ? total / q : 0;
    const int heavy = q > 0 ? static_cast<int>(total % q) : 0;
    bool ok = heavy == expected;
    for (int i = 0; ok && i < q; ++i)
        ok = w[static_cast<std::size_t>(i)] == base + (i < heavy ? 1 : 0);
    if (!ok) {
        std::ostringstream os;
        os << "merge_shift: " << side << " operand does not match the split point"
           << " (expected " << expected << " heavy rows on top, found " << heavy << ")";
        throw std::invalid_argument(os.str());
    }
}

// Final row index of each right-child row. Rotation when the heavy bands fit
// side by side; otherwise the colliding tail of the heavy band goes to the
// bottom and the light rows close ranks.
std::vector<int> shift_placement(int q, const SplitPoint& sp) {
    std::vector<int> p(static_cast<std::size_t>(q));
    std::iota(p.begin(), p.end(), 0);
    if (sp.right_heavy == 0 || q == 0) return p;
    if (sp.overlap == 0) {
        for (int i = 0; i < q; ++i)
            p[static_cast<std::size_t>(i)] = (i + sp.left_heavy) % q;
    } else {
        const int rp = sp.overlap;
        const int r2 = sp.right_heavy;
        for (int i = 0; i < q; ++i) {
            int target = i;
            if (i >= rp && i < r2) target = q - (r2 - i);
            else if (i >= r2) target = rp + (i - r2);
            p[static_cast<std::size_t>(i)] = target;
        }
    }
    return p;
}

std::uint64_t displaced_count(const std::vector<int>& p) {
    std::uint64_t n = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != static_cast<int>(i)) ++n;
    return n;
}

// Stable descending-weight order; index of the source row for each output row.
std::vector<int> descending_weight_order(const std::vector<std::int64_t>& w) {
    std::vector<int> idx(w.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return w[static_cast<std::size_t>(a)] > w[static_cast<std::size_t>(b)];
    });
    return idx;
}

} // namespace

std::string to_string(const DeltaSpec& s) {
    std::ostringstream os;
    os << "delta(R=" << s.rows << ", J=" << s.weight << ", m=" << s.cols << ")";
    return os.str();
}

std::string to_string(MergeStrategy s) {
    return s == MergeStrategy::flip ? "flip" : "shift";
}

std::optional<MergeStrategy> merge_strategy_from_string(std::string_view text) {
    if (text == "flip") return MergeStrategy::flip;
    if (text == "shift") return MergeStrategy::shift;
    return std::nullopt;
}

std::optional<std::int64_t> binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 c = 1;
    for (int i = 1; i <= k; ++i) {
        c = c * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
        if (c > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max()))
            return std::nullopt;
    }
    return static_cast<std::int64_t>(c);
}

bool binomial_at_least(int n, int k, std::int64_t m) {
    if (m <= 0) return true;
    const auto c = binomial(n, k);
    return !c.has_value() || *c >= m;
}

std::optional<std::string> l_condition_violation(const DeltaSpec& s) {
    std::ostringstream os;
    if (s.rows < 1) {
        os << "R=" << s.rows << " < 1";
        return os.str();
    }
    if (s.weight < 0) {
        os << "J=" << s.weight << " < 0";
        return os.str();
    }
    if (s.weight > s.rows) {
        os << "J=" << s.weight << " > R=" << s.rows;
        return os.str();
    }
    if (s.cols < 0) {
        os << "m=" << s.cols << " < 0";
        return os.str();
    }
    if (!binomial_at_least(s.rows, s.weight, s.cols)) {
        // binomial_at_least failed, so C(R,J) < m <= INT64_MAX and the value fits.
        os << "m=" << s.cols << " > C(" << s.rows << "," << s.weight
           << ")=" << *binomial(s.rows, s.weight);
        return os.str();
    }
    return std::nullopt;
}

bool l_condition(const DeltaSpec& s) { return !l_condition_violation(s).has_value(); }

SplitPoint split_point(const DeltaSpec& s) {
    if (auto why = l_condition_violation(s))
        throw std::invalid_argument("split_point: infeasible " + to_string(s) + ": " + *why);
    if (s.weight < 2 || s.weight > s.rows - 2 || s.cols < 2)
        throw std::invalid_argument("split_point: " + to_string(s) + " is an ending state");

    const int rows = s.rows;
    const auto total = static_cast<__int128>(s.cols) * s.weight;
    SplitPoint sp;
    sp.left_cols = static_cast<std::int64_t>((total + rows - 1) / rows);
    sp.left_heavy = static_cast<int>(
        (static_cast<__int128>(s.weight - 1) * sp.left_cols) % (rows - 1));
    sp.right_heavy = static_cast<int>(
        (static_cast<__int128>(s.weight) * (s.cols - sp.left_cols)) % (rows - 1));
    sp.overlap = std::max(0, sp.left_heavy + sp.right_heavy - (rows - 1));
    return sp;
}

std::optional<BitMatrix> ending_state(const DeltaSpec& s) {
    const int rows = s.rows;
    const int w = s.weight;
    const std::int64_t m = s.cols;

    if (m == 0) return BitMatrix(rows, 0);
    if (w == 0) return BitMatrix(rows, 1);
    if (w == rows) {
        BitMatrix out(rows, 1);
        for (int r = 0; r < rows; ++r) out.set(r, 0, true);
        return out;
    }
    if (m == 1) {
        BitMatrix out(rows, 1);
        for (int r = 0; r < w; ++r) out.set(r, 0, true);
        return out;
    }
    if (w == 1) {
        BitMatrix out(rows, m);
        for (std::int64_t c = 0; c < m; ++c) out.set(static_cast<int>(c), c, true);
        return out;
    }
    if (w == rows - 1) {
        // All ones except one 0 per column, marching down the bottom m rows.
        BitMatrix out(rows, m);
        for (int r = 0; r < rows; ++r) {
            auto span = out.row(r);
            std::fill(span.begin(), span.end(), std::uint8_t{1});
        }
        const int top = rows - static_cast<int>(m);
        for (std::int64_t c = 0; c < m; ++c) out.set(top + static_cast<int>(c), c, false);
        return out;
    }
    return std::nullopt;
}

BitMatrix merge_flip(const BitMatrix& left, const BitMatrix& right, OpCounter* counter) {
    if (left.rows() != right.rows())
        throw std::invalid_argument("merge_flip: row count mismatch");
    const int q = left.rows();
    const std::int64_t lc = left.cols();
    const std::int64_t rc = right.cols();

    BitMatrix combined(q, lc + rc);
    for (int i = 0; i < q; ++i) {
        copy_row_into(combined, i, 0, left.row(i));
        copy_row_into(combined, i, lc, right.row(q - 1 - i));
    }
    add_writes(counter, static_cast<std::uint64_t>(q) * static_cast<std::uint64_t>(lc + rc));
    if (rc > 0 && q > 1)
        add_moves(counter, static_cast<std::uint64_t>(q - (q & 1)));

    const auto order = descending_weight_order(combined.row_weights());
    bool identity = true;
    for (int j = 0; identity && j < q; ++j)
        identity = order[static_cast<std::size_t>(j)] == j;
    if (identity) return combined;

    BitMatrix out(q, lc + rc);
    std::uint64_t displaced = 0;
    for (int j = 0; j < q; ++j) {
        copy_row_into(out, j, 0, combined.row(order[static_cast<std::size_t>(j)]));
        if (order[static_cast<std::size_t>(j)] != j) ++displaced;
    }
    add_writes(counter, displaced * static_cast<std::uint64_t>(lc + rc));
    add_moves(counter, displaced);
    return out;
}

BitMatrix merge_shift(const BitMatrix& left, const BitMatrix& right,
                      const SplitPoint& sp, OpCounter* counter) {
    if (left.rows() != right.rows())
        throw std::invalid_argument("merge_shift: row count mismatch");
    require_heavy_profile(left, sp.left_heavy, "left");
    require_heavy_profile(right, sp.right_heavy, "right");

    const int q = left.rows();
    const std::int64_t lc = left.cols();
    const std::int64_t rc = right.cols();
    BitMatrix out(q, lc + rc);
    for (int i = 0; i < q; ++i) copy_row_into(out, i, 0, left.row(i));
    const auto placement = shift_placement(q, sp);
    for (int i = 0; i < q; ++i)
        copy_row_into(out, placement[static_cast<std::size_t>(i)], lc, right.row(i));
    add_writes(counter, static_cast<std::uint64_t>(q) * static_cast<std::uint64_t>(lc + rc));
    if (rc > 0) add_moves(counter, displaced_count(placement));
    return out;
}

namespace {

// R x m level matrix: unit-prefixed top row above the merged children.
BitMatrix with_unit_top_row(const BitMatrix& merged, std::int64_t ones, OpCounter* counter) {
    BitMatrix out(merged.rows() + 1, merged.cols());
    auto top = out.row(0);
    std::fill(top.begin(), top.begin() + ones, std::uint8_t{1});
    for (int i = 0; i < merged.rows(); ++i)
        copy_row_into(out, i + 1, 0, merged.row(i));
    add_writes(counter, static_cast<std::uint64_t>(merged.rows() + 1) *
                            static_cast<std::uint64_t>(merged.cols()));
    return out;
}

// Fused shift step: children land directly in the level matrix, so each level
// writes exactly R*m cells.
BitMatrix shift_level(const DeltaSpec& s, const SplitPoint& sp, const BitMatrix& left,
                      const BitMatrix& right, OpCounter* counter) {
    require_heavy_profile(left, sp.left_heavy, "left");
    require_heavy_profile(right, sp.right_heavy, "right");

    BitMatrix out(s.rows, s.cols);
    auto top = out.row(0);
    std::fill(top.begin(), top.begin() + sp.left_cols, std::uint8_t{1});
    for (int i = 0; i < left.rows(); ++i) copy_row_into(out, i + 1, 0, left.row(i));
    const auto placement = shift_placement(s.rows - 1, sp);
    for (int i = 0; i < right.rows(); ++i)
        copy_row_into(out, placement[static_cast<std::size_t>(i)] + 1, sp.left_cols,
                      right.row(i));
    add_writes(counter, static_cast<std::uint64_t>(s.rows) *
                            static_cast<std::uint64_t>(s.cols));
    if (right.cols() > 0) add_moves(counter, displaced_count(placement));
    return out;
}

BitMatrix generate_node(const DeltaSpec& s, MergeStrategy strategy, OpCounter* counter,
                        int depth) {
    note_depth(counter, depth);
    if (auto base = ending_state(s)) {
        add_writes(counter, static_cast<std::uint64_t>(s.rows) *
                                static_cast<std::uint64_t>(s.cols));
        return std::move(*base);
    }
    const SplitPoint sp = split_point(s);
    const DeltaSpec left_spec{s.rows - 1, s.weight - 1, sp.left_cols};
    const DeltaSpec right_spec{s.rows - 1, s.weight, s.cols - sp.left_cols};
    BitMatrix left = generate_node(left_spec, strategy, counter, depth + 1);
    BitMatrix right = generate_node(right_spec, strategy, counter, depth + 1);
    if (strategy == MergeStrategy::shift)
        return shift_level(s, sp, left, right, counter);
    BitMatrix merged = merge_flip(left, right, counter);
    return with_unit_top_row(merged, sp.left_cols, counter);
}

} // namespace

BitMatrix generate_delta(const DeltaSpec& s, MergeStrategy strategy, OpCounter* counter) {
    if (auto why = l_condition_violation(s))
        throw InfeasibleSpecError("infeasible spec " + to_string(s) + ": " + *why);
    return generate_node(s, strategy, counter, 0);
}

BitMatrix generate_delta_iterative(const DeltaSpec& s, OpCounter* counter) {
    if (auto why = l_condition_violation(s))
        throw InfeasibleSpecError("infeasible spec " + to_string(s) + ": " + *why);

    struct ProgramStep {
        DeltaSpec spec;
        SplitPoint sp;
        bool leaf = false;
    };
    struct WorkItem {
        DeltaSpec spec;
        SplitPoint sp;
        int depth = 0;
        bool emit = false; // false: expand, true: append the merge step
    };

    // Phase 1: decompose fully, recording a post-order merge program whose
    // steps are the same objects later consumed by the merge phase.
    std::vector<ProgramStep> program;
    std::vector<WorkItem> work{{s, {}, 0, false}};
    while (!work.empty()) {
        WorkItem item = work.back();
        work.pop_back();
        if (item.emit) {
            program.push_back({item.spec, item.sp, false});
            continue;
        }
        note_depth(counter, item.depth);
        if (ending_state(item.spec)) {
            program.push_back({item.spec, {}, true});
            continue;
        }
        const SplitPoint sp = split_point(item.spec);
        const DeltaSpec left{item.spec.rows - 1, item.spec.weight - 1, sp.left_cols};
        const DeltaSpec right{item.spec.rows - 1, item.spec.weight,
                              item.spec.cols - sp.left_cols};
        work.push_back({item.spec, sp, item.depth, true});
        work.push_back({right, {}, item.depth + 1, false});
        work.push_back({left, {}, item.depth + 1, false});
    }

    // Phase 2: replay the program against a value stack, joining with the
    // flip union.
    std::vector<BitMatrix> values;
    for (const auto& step : program) {
        if (step.leaf) {
            auto base = ending_state(step.spec);
            add_writes(counter, static_cast<std::uint64_t>(step.spec.rows) *
                                    static_cast<std::uint64_t>(step.spec.cols));
            values.push_back(std::move(*base));
            continue;
        }
        BitMatrix right = std::move(values.back());
        values.pop_back();
        BitMatrix left = std::move(values.back());
        values.pop_back();
        BitMatrix merged = merge_flip(left, right, counter);
        values.push_back(with_unit_top_row(merged, step.sp.left_cols, counter));
    }
    assert(values.size() == 1);
    return std::move(values.back());
}

BalanceReport verify_balanced(const BitMatrix& mat, int weight) {
    BalanceReport rep;
    rep.row_weights = mat.row_weights();

    if (rep.row_weights.empty()) {
        rep.max_row_delta = 0;
        rep.heavy_rows_on_top = true;
    } else {
        const auto [lo, hi] = std::minmax_element(rep.row_weights.begin(), rep.row_weights.end());
        rep.max_row_delta = *hi - *lo;
        rep.heavy_rows_on_top =
            std::is_sorted(rep.row_weights.begin(), rep.row_weights.end(),
                           std::greater<std::int64_t>());
    }

    rep.column_weight_ok = true;
    for (std::int64_t c = 0; c < mat.cols(); ++c)
        if (mat.col_weight(c) != weight) {
            rep.column_weight_ok = false;
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
