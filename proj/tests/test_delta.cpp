#include "doctest.h"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "hsiao/delta.hpp"

using hsiao::BitMatrix;
using hsiao::DeltaSpec;
using hsiao::MergeStrategy;

namespace {

BitMatrix from_rows(const std::vector<std::vector<int>>& rows) {
    const int r = static_cast<int>(rows.size());
    const auto c = static_cast<std::int64_t>(rows.empty() ? 0 : rows.front().size());
    BitMatrix mat(r, c);
    for (int i = 0; i < r; ++i)
        for (std::int64_t j = 0; j < c; ++j)
            mat.set(i, j, rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0);
    return mat;
}

std::multiset<std::int64_t> col_weight_multiset(const BitMatrix& mat) {
    std::multiset<std::int64_t> weights;
    for (std::int64_t c = 0; c < mat.cols(); ++c) weights.insert(mat.col_weight(c));
    return weights;
}

// Every feasible spec in the recursive range, for small exhaustive sweeps.
std::vector<DeltaSpec> recursive_specs_up_to(int max_rows) {
    std::vector<DeltaSpec> specs;
    for (int rows = 4; rows <= max_rows; ++rows)
        for (int weight = 2; weight <= rows - 2; ++weight)
            for (std::int64_t m = 2; m <= hsiao::binomial(rows, weight).value(); ++m)
                specs.push_back({rows, weight, m});
    return specs;
}

std::vector<DeltaSpec> feasible_specs_up_to(int max_rows) {
    std::vector<DeltaSpec> specs;
    for (int rows = 1; rows <= max_rows; ++rows)
        for (int weight = 0; weight <= rows; ++weight)
            for (std::int64_t m = 0; m <= hsiao::binomial(rows, weight).value(); ++m)
                specs.push_back({rows, weight, m});
    return specs;
}

} // namespace

TEST_CASE("binomials are exact") {
    CHECK(hsiao::binomial(4, 2) == 6);
    CHECK(hsiao::binomial(4, 3) == 4);
    CHECK(hsiao::binomial(8, 5) == 56);
    CHECK(hsiao::binomial(12, 6) == 924);
    CHECK(hsiao::binomial(0, 0) == 1);
    CHECK(hsiao::binomial(5, 9) == 0);
    CHECK(hsiao::binomial(5, -1) == 0);
    CHECK_FALSE(hsiao::binomial(100, 50).has_value()); // past int64
    CHECK(hsiao::binomial(64, 32).has_value());
}

TEST_CASE("feasibility predicate") {
    CHECK(hsiao::l_condition({4, 2, 6})); // m right at C(4,2)
    CHECK_FALSE(hsiao::l_condition({4, 2, 7}));
    CHECK(hsiao::l_condition({6, 3, 10}));
    CHECK(hsiao::l_condition({4, 0, 1}));
    CHECK(hsiao::l_condition({4, 0, 0}));
    CHECK_FALSE(hsiao::l_condition({4, 5, 1}));
    CHECK_FALSE(hsiao::l_condition({4, -1, 0}));
    CHECK_FALSE(hsiao::l_condition({0, 0, 0}));
    CHECK_FALSE(hsiao::l_condition({4, 2, -1}));
    // Total even when the binomial leaves int64: C(100,50) dwarfs any m.
    CHECK(hsiao::l_condition({100, 50, std::int64_t{1} << 62}));

    const auto why = hsiao::l_condition_violation({4, 2, 7});
    REQUIRE(why.has_value());
    CHECK(why->find("C(4,2)=6") != std::string::npos);
}

TEST_CASE("split point follows the ceiling rule") {
    const auto sp = hsiao::split_point({4, 2, 6});
    CHECK(sp.left_cols == 3);
    CHECK(sp.left_heavy == 0);
    CHECK(sp.right_heavy == 0);
    CHECK(sp.overlap == 0);
}

TEST_CASE("worked example (6,3,10): the split takes m1=5, not 6") {
    const auto sp = hsiao::split_point({6, 3, 10});
    CHECK(sp.left_cols == 5); // ceil(30/6); both children split evenly here
    CHECK(sp.left_heavy == 0);
    CHECK(sp.right_heavy == 0);
}

TEST_CASE("split children stay feasible and can be uneven at the next level") {
    const auto sp = hsiao::split_point({5, 3, 7});
    CHECK(sp.left_cols == 5); // ceil(21/5)
    const DeltaSpec left{4, 2, 5};
    const DeltaSpec right{4, 3, 2};
    CHECK(hsiao::l_condition(left));  // 5 <= C(4,2) = 6
    CHECK(hsiao::l_condition(right)); // 2 <= C(4,3) = 4
    CHECK(sp.left_heavy == 2);        // 2*5 mod 4: imbalance shows up below
}

TEST_CASE("split children stay feasible for every spec up to 12 rows") {
    std::int64_t checked = 0;
    for (const auto& spec : recursive_specs_up_to(12)) {
        const auto sp = hsiao::split_point(spec);
        CHECK(hsiao::l_condition({spec.rows - 1, spec.weight - 1, sp.left_cols}));
        CHECK(hsiao::l_condition({spec.rows - 1, spec.weight, spec.cols - sp.left_cols}));
        CHECK(sp.overlap == std::max(0, sp.left_heavy + sp.right_heavy - (spec.rows - 1)));
        ++checked;
    }
    CHECK(checked > 1000);
}

TEST_CASE("split rejects ending states and infeasible specs") {
    CHECK_THROWS_AS(hsiao::split_point({4, 2, 7}), std::invalid_argument);
    CHECK_THROWS_AS(hsiao::split_point({3, 1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(hsiao::split_point({4, 2, 1}), std::invalid_argument);
    CHECK_THROWS_AS(hsiao::split_point({5, 4, 3}), std::invalid_argument);
}

TEST_CASE("ending states") {
    SUBCASE("no columns") {
        const auto mat = hsiao::ending_state({4, 2, 0});
        REQUIRE(mat.has_value());
        CHECK(mat->rows() == 4);
        CHECK(mat->cols() == 0);
    }
    SUBCASE("zero weight column") {
        const auto mat = hsiao::ending_state({3, 0, 1});
        REQUIRE(mat.has_value());
        CHECK(*mat == from_rows({{0}, {0}, {0}}));
    }
    SUBCASE("full weight column") {
        const auto mat = hsiao::ending_state({3, 3, 1});
        REQUIRE(mat.has_value());
        CHECK(*mat == from_rows({{1}, {1}, {1}}));
    }
    SUBCASE("single column keeps its ones on top") {
        const auto mat = hsiao::ending_state({5, 3, 1});
        REQUIRE(mat.has_value());
        CHECK(*mat == from_rows({{1}, {1}, {1}, {0}, {0}}));
    }
    SUBCASE("weight one is the identity prefix") {
        const auto mat = hsiao::ending_state({3, 1, 3});
        REQUIRE(mat.has_value());
        CHECK(*mat == from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
        const auto tall = hsiao::ending_state({5, 1, 2});
        CHECK(*tall == from_rows({{1, 0}, {0, 1}, {0, 0}, {0, 0}, {0, 0}}));
    }
    SUBCASE("weight R-1 marches a zero down the bottom rows") {
        const auto mat = hsiao::ending_state({4, 3, 3});
        REQUIRE(mat.has_value());
        CHECK(*mat == from_rows({{1, 1, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
    }
    SUBCASE("recursive range is not an ending state") {
        CHECK_FALSE(hsiao::ending_state({4, 2, 2}).has_value());
        CHECK_FALSE(hsiao::ending_state({6, 3, 10}).has_value());
    }
    SUBCASE("every ending state is balanced with heavy rows on top") {
        for (const auto& spec : feasible_specs_up_to(6)) {
            const auto mat = hsiao::ending_state(spec);
            if (!mat.has_value()) continue;
            const auto rep = hsiao::verify_balanced(*mat, spec.weight);
            CHECK(rep.balanced());
            CHECK(rep.heavy_rows_on_top);
        }
    }
}

TEST_CASE("flip union with an empty right operand is the identity") {
    const auto left = BitMatrix::constant_row(3, true);
    const BitMatrix right(1, 0);
    CHECK(hsiao::merge_flip(left, right) == left);
}

TEST_CASE("flip union of the weight-1 and weight-3 base cases") {
    const auto left = hsiao::ending_state({4, 1, 2}).value();
    const auto right = hsiao::ending_state({4, 3, 2}).value();
    const auto merged = hsiao::merge_flip(left, right);
    CHECK(merged ==
          from_rows({{1, 0, 1, 0}, {0, 1, 0, 1}, {0, 0, 1, 1}, {0, 0, 1, 1}}));
    // 2 + 6 ones over 4 rows: every row weighs 2.
    CHECK(merged.row_weights() == std::vector<std::int64_t>{2, 2, 2, 2});
}

TEST_CASE("flip union rejects mismatched row counts") {
    CHECK_THROWS_AS(hsiao::merge_flip(BitMatrix(3, 1), BitMatrix(4, 1)),
                    std::invalid_argument);
}

TEST_CASE("shift union aligns the heavy bands") {
    SUBCASE("no heavy rows means plain side-by-side union") {
        const auto left = hsiao::ending_state({3, 1, 3}).value();
        const auto right = hsiao::ending_state({3, 2, 3}).value();
        hsiao::OpCounter counter;
        const auto merged =
            hsiao::merge_shift(left, right, hsiao::SplitPoint{3, 0, 0, 0}, &counter);
        CHECK(merged == hsiao::hconcat(left, right));
        CHECK(counter.row_moves == 0);
        CHECK(merged.row_weights() == std::vector<std::int64_t>{3, 3, 3});
    }
    SUBCASE("rotation tucks right heavy rows below left ones") {
        const auto left = from_rows(
            {{1, 1, 0}, {1, 0, 1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}); // heavy 2 on top
        const auto right = from_rows(
            {{0, 1, 1}, {1, 1, 0}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}}); // heavy 2 on top
        hsiao::OpCounter counter;
        const auto merged =
            hsiao::merge_shift(left, right, hsiao::SplitPoint{3, 2, 2, 0}, &counter);
        CHECK(merged.row_weights() == std::vector<std::int64_t>{3, 3, 3, 3, 2});
        CHECK(counter.row_moves == 5); // full cyclic rotation
    }
    SUBCASE("colliding heavy bands send the tail to the bottom") {
        const auto left = from_rows(
            {{1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 0}}); // heavy 4 on top
        const auto right = from_rows(
            {{1, 1}, {1, 1}, {1, 1}, {1, 0}, {0, 1}}); // heavy 3 on top
        hsiao::OpCounter counter;
        const auto merged =
            hsiao::merge_shift(left, right, hsiao::SplitPoint{2, 4, 3, 2}, &counter);
        // r'=2 doubly loaded rows on top, every other row gets exactly one extra.
        CHECK(merged.row_weights() == std::vector<std::int64_t>{4, 4, 3, 3, 3});
        CHECK(counter.row_moves == 3);
    }
    SUBCASE("operands that do not match the split point are rejected") {
        const auto left = hsiao::ending_state({3, 1, 3}).value();
        const auto right = hsiao::ending_state({3, 2, 3}).value();
        CHECK_THROWS_AS(hsiao::merge_shift(left, right, hsiao::SplitPoint{3, 1, 0, 0}),
                        std::invalid_argument);
        CHECK_THROWS_AS(hsiao::merge_shift(left, BitMatrix(4, 3), hsiao::SplitPoint{}),
                        std::invalid_argument);
    }
}

TEST_CASE("both unions stay balanced and conserve columns on small specs") {
    for (const auto& spec : recursive_specs_up_to(6)) {
        const auto sp = hsiao::split_point(spec);
        const auto left = hsiao::generate_delta(
            {spec.rows - 1, spec.weight - 1, sp.left_cols}, MergeStrategy::shift);
        const auto right = hsiao::generate_delta(
            {spec.rows - 1, spec.weight, spec.cols - sp.left_cols}, MergeStrategy::shift);

        auto expected_cols = col_weight_multiset(left);
        for (const auto w : col_weight_multiset(right)) expected_cols.insert(w);

        const auto flipped = hsiao::merge_flip(left, right);
        const auto rep_flip = hsiao::verify_balanced(flipped, spec.weight);
        CHECK(rep_flip.max_row_delta <= 1);
        CHECK(rep_flip.heavy_rows_on_top);
        CHECK(col_weight_multiset(flipped) == expected_cols);

        const auto shifted = hsiao::merge_shift(left, right, sp);
        const auto rep_shift = hsiao::verify_balanced(shifted, spec.weight);
        CHECK(rep_shift.max_row_delta <= 1);
        CHECK(rep_shift.heavy_rows_on_top);
        CHECK(col_weight_multiset(shifted) == expected_cols);
    }
}

TEST_CASE("generation of an empty spec") {
    const auto mat = hsiao::generate_delta({4, 2, 0}, MergeStrategy::shift);
    CHECK(mat.rows() == 4);
    CHECK(mat.cols() == 0);
}

TEST_CASE("generate (4,2,6) covers every weight-2 column exactly once") {
    for (const auto strategy : {MergeStrategy::flip, MergeStrategy::shift}) {
        const auto mat = hsiao::generate_delta({4, 2, 6}, strategy);
        REQUIRE(mat.rows() == 4);
        REQUIRE(mat.cols() == 6);

        std::set<unsigned> expected;
        for (unsigned mask = 0; mask < 16; ++mask)
            if (std::popcount(mask) == 2) expected.insert(mask);
        std::set<unsigned> seen;
        for (std::int64_t c = 0; c < 6; ++c) {
            unsigned mask = 0;
            for (int r = 0; r < 4; ++r)
                if (mat.get(r, c)) mask |= 1u << r;
            seen.insert(mask);
        }
        CHECK(seen == expected);
        CHECK(mat.row_weights() == std::vector<std::int64_t>{3, 3, 3, 3});
    }
}

TEST_CASE("generate (6,3,10) balances perfectly") {
    for (const auto strategy : {MergeStrategy::flip, MergeStrategy::shift}) {
        const auto mat = hsiao::generate_delta({6, 3, 10}, strategy);
        const auto rep = hsiao::verify_balanced(mat, 3);
        CHECK(rep.column_weight_ok);
        CHECK(rep.columns_distinct);
        CHECK(rep.max_row_delta == 0); // 30 ones over 6 rows
        CHECK(rep.row_weights == std::vector<std::int64_t>(6, 5));
    }
}

TEST_CASE("the top row of the output is ones then zeros at the split") {
    for (const auto& spec : std::vector<DeltaSpec>{{6, 3, 10}, {5, 3, 7}, {8, 4, 31}}) {
        const auto sp = hsiao::split_point(spec);
        for (const auto strategy : {MergeStrategy::flip, MergeStrategy::shift}) {
            const auto mat = hsiao::generate_delta(spec, strategy);
            for (std::int64_t c = 0; c < spec.cols; ++c)
                CHECK(mat.get(0, c) == (c < sp.left_cols));
        }
    }
}

TEST_CASE("generation is deterministic") {
    const DeltaSpec spec{7, 3, 23};
    CHECK(hsiao::generate_delta(spec, MergeStrategy::flip) ==
          hsiao::generate_delta(spec, MergeStrategy::flip));
    CHECK(hsiao::generate_delta(spec, MergeStrategy::shift) ==
          hsiao::generate_delta(spec, MergeStrategy::shift));
}

TEST_CASE("strategies agree on weight profiles for every spec up to 8 rows") {
    for (const auto& spec : feasible_specs_up_to(8)) {
        const auto flip = hsiao::generate_delta(spec, MergeStrategy::flip);
        const auto shift = hsiao::generate_delta(spec, MergeStrategy::shift);
        auto flip_rows = flip.row_weights();
        auto shift_rows = shift.row_weights();
        std::sort(flip_rows.begin(), flip_rows.end());
        std::sort(shift_rows.begin(), shift_rows.end());
        CHECK(flip_rows == shift_rows);
        CHECK(col_weight_multiset(flip) == col_weight_multiset(shift));
    }
}

TEST_CASE("generation rejects infeasible specs with the violated bound") {
    CHECK_THROWS_WITH_AS(hsiao::generate_delta({4, 2, 7}, MergeStrategy::shift),
                         "infeasible spec delta(R=4, J=2, m=7): m=7 > C(4,2)=6",
                         hsiao::InfeasibleSpecError);
    CHECK_THROWS_AS(hsiao::generate_delta({4, 5, 1}, MergeStrategy::flip),
                    hsiao::InfeasibleSpecError);
    CHECK_THROWS_AS(hsiao::generate_delta_iterative({4, 2, 7}),
                    hsiao::InfeasibleSpecError);
}

TEST_CASE("stack-driven generation matches the recursive contract") {
    SUBCASE("base case reached immediately") {
        const auto mat = hsiao::generate_delta_iterative({3, 1, 3});
        CHECK(mat == from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    }
    SUBCASE("(8,5,8) balances to five per row") {
        const auto mat = hsiao::generate_delta_iterative({8, 5, 8});
        const auto rep = hsiao::verify_balanced(mat, 5);
        CHECK(rep.column_weight_ok);
        CHECK(rep.columns_distinct);
        CHECK(rep.max_row_delta == 0);
        CHECK(rep.row_weights == std::vector<std::int64_t>(8, 5));
    }
    SUBCASE("report equivalence across all small specs") {
        for (const auto& spec : feasible_specs_up_to(6)) {
            const auto iterative = hsiao::generate_delta_iterative(spec);
            const auto recursive = hsiao::generate_delta(spec, MergeStrategy::flip);
            const auto rep_a = hsiao::verify_balanced(iterative, spec.weight);
            const auto rep_b = hsiao::verify_balanced(recursive, spec.weight);
            CHECK(rep_a.balanced());
            CHECK(rep_a.heavy_rows_on_top);
            CHECK(rep_a.row_weights == rep_b.row_weights);
        }
    }
}

TEST_CASE("heavy row count equals m*J mod R") {
    for (const auto& spec : feasible_specs_up_to(7)) {
        const auto mat = hsiao::generate_delta(spec, MergeStrategy::shift);
        const auto weights = mat.row_weights();
        const std::int64_t spare = (spec.cols * spec.weight) % spec.rows;
        const std::int64_t ceiling =
            (spec.cols * spec.weight + spec.rows - 1) / spec.rows;
        if (spare == 0) {
            for (const auto w : weights) CHECK(w == ceiling);
        } else {
            CHECK(std::count(weights.begin(), weights.end(), ceiling) == spare);
        }
    }
}

TEST_CASE("balance reports") {
    SUBCASE("identity with weight one") {
        const auto rep = hsiao::verify_balanced(hsiao::ending_state({4, 1, 4}).value(), 1);
        CHECK(rep.column_weight_ok);
        CHECK(rep.columns_distinct);
        CHECK(rep.max_row_delta == 0);
        CHECK(rep.heavy_rows_on_top);
        CHECK(rep.row_weights == std::vector<std::int64_t>{1, 1, 1, 1});
    }
    SUBCASE("duplicate columns are flagged") {
        const auto rep = hsiao::verify_balanced(from_rows({{1, 1}, {1, 1}}), 2);
        CHECK_FALSE(rep.columns_distinct);
        CHECK(rep.column_weight_ok);
    }
    SUBCASE("wrong column weight is flagged") {
        const auto rep = hsiao::verify_balanced(from_rows({{1, 0}, {1, 1}}), 2);
        CHECK_FALSE(rep.column_weight_ok);
    }
    SUBCASE("heavy rows below light rows are flagged") {
        const auto rep = hsiao::verify_balanced(from_rows({{0, 0}, {1, 1}}), 1);
        CHECK_FALSE(rep.heavy_rows_on_top);
        CHECK(rep.max_row_delta == 2);
    }
    SUBCASE("the empty matrix passes vacuously") {
        const auto rep = hsiao::verify_balanced(BitMatrix(3, 0), 2);
        CHECK(rep.balanced());
        CHECK(rep.heavy_rows_on_top);
        CHECK(rep.row_weights == std::vector<std::int64_t>{0, 0, 0});
    }
}
