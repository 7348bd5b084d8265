// Copyright 2026 The hyqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "hyqec/capacity.h"
#include "hyqec/experiment.h"
#include "hyqec/placement.h"

namespace hyqec {
namespace {

int enumerated_min_erasures(const ArchitectureSpec &spec, LogicalBasis basis) {
    Axis axis = crossing_axis(basis);
    int best = spec.d + 1;
    for (const auto &path : enumerate_king_paths(spec.d, spec.d)) {
        int n = 0;
        for (Coord c : path_coords(path, axis)) {
            n += spec.is_erasure(c);
        }
        best = std::min(best, n);
    }
    return best;
}

std::set<Coord> as_set(const ArchitectureSpec &s) {
    return {s.erasures.begin(), s.erasures.end()};
}

TEST(Placement, Budget) {
    EXPECT_EQ(erasure_budget(7, 0.57), 27);
    EXPECT_EQ(erasure_budget(5, 0), 0);
    EXPECT_EQ(erasure_budget(5, 1), 25);
    EXPECT_EQ(erasure_budget(5, 0.36), 9);
    EXPECT_EQ(erasure_budget(5, 0.6), 15);
    EXPECT_THROW(erasure_budget(5, 1.1), std::invalid_argument);
    EXPECT_THROW(erasure_budget(5, -0.1), std::invalid_argument);
}

TEST(Placement, MaxFullLines) {
    EXPECT_EQ(max_full_lines(7, 27), 2);
    EXPECT_EQ(max_full_lines(5, 0), 0);
    EXPECT_EQ(max_full_lines(5, 25), 5);
    EXPECT_EQ(max_full_lines(5, 9), 1);
    for (int d : {3, 5, 7, 9}) {
        int prev = 0;
        for (int b = 0; b <= d * d; b++) {
            int k = max_full_lines(d, b);
            EXPECT_GE(k, prev);
            EXPECT_LE(2 * k * d - k * k, b);
            if (k < d) {
                EXPECT_GT(2 * (k + 1) * d - (k + 1) * (k + 1), b);
            }
            prev = k;
        }
    }
}

TEST(Placement, OptimizedMatchesFourB) {
    ArchitectureSpec s = optimized_placement(7, 0.57);
    EXPECT_EQ(s.num_erasures(), 27u);
    // Rows and columns 2 and 3 are full.
    for (int x = 0; x < 7; x++) {
        for (int line : {2, 3}) {
            EXPECT_TRUE(s.is_erasure({line, x}));
            EXPECT_TRUE(s.is_erasure({x, line}));
        }
    }
    // The remaining three are the free sites closest to the center, ties
    // broken by (row, col).
    std::set<Coord> extra;
    for (Coord c : s.erasures) {
        bool in_lines = c.row == 2 || c.row == 3 || c.col == 2 || c.col == 3;
        if (!in_lines) {
            extra.insert(c);
        }
    }
    EXPECT_EQ(extra, (std::set<Coord>{{4, 4}, {1, 4}, {4, 1}}));
    s.validate();
}

TEST(Placement, OptimizedEndpoints) {
    EXPECT_EQ(optimized_placement(5, 1).num_erasures(), 25u);
    EXPECT_EQ(optimized_placement(5, 0).num_erasures(), 0u);
    ArchitectureSpec s = optimized_placement(5, 0.36);
    EXPECT_EQ(s.num_erasures(), 9u);
    for (int x = 0; x < 5; x++) {
        EXPECT_TRUE(s.is_erasure({2, x}));
        EXPECT_TRUE(s.is_erasure({x, 2}));
    }
}

TEST(Placement, OptimizedNestsWhileLinesAreUnchanged) {
    for (int d : {3, 5, 7}) {
        for (int b = 0; b < d * d; b++) {
            double f0 = static_cast<double>(b) / (d * d), f1 = static_cast<double>(b + 1) / (d * d);
            if (max_full_lines(d, b) != max_full_lines(d, b + 1)) {
                continue;
            }
            auto small = as_set(optimized_placement(d, f0));
            auto big = as_set(optimized_placement(d, f1));
            EXPECT_TRUE(std::includes(big.begin(), big.end(), small.begin(), small.end())) << d << " " << b;
        }
    }
}

TEST(Placement, RandomIsDeterministicAndSized) {
    auto a = random_placement(5, 0.6, 42), b = random_placement(5, 0.6, 42);
    EXPECT_EQ(a.num_erasures(), 15u);
    EXPECT_EQ(a.erasures, b.erasures);
    EXPECT_EQ(random_placement(3, 1, 7).num_erasures(), 9u);
    int differ = 0;
    for (uint64_t s = 0; s < 100; s++) {
        differ += random_placement(7, 0.5, 2 * s).erasures != random_placement(7, 0.5, 2 * s + 1).erasures;
    }
    EXPECT_EQ(differ, 100);
}

TEST(Placement, RandomIsRoughlyUniform) {
    const int d = 5, trials = 4000;
    std::vector<int> hits(d * d, 0);
    for (int s = 0; s < trials; s++) {
        for (Coord c : random_placement(d, 0.4, s).erasures) {
            hits[c.row * d + c.col]++;
        }
    }
    // Each site is chosen with probability 10/25.
    double mean = trials * 0.4, sd = std::sqrt(trials * 0.4 * 0.6);
    for (int h : hits) {
        EXPECT_NEAR(h, mean, 5 * sd);
    }
}

TEST(Placement, BudgetExactnessForEveryStrategy) {
    for (int d : {3, 5, 7}) {
        for (double f : {0.0, 0.1, 0.25, 0.5, 0.57, 0.75, 1.0}) {
            optimized_placement(d, f).validate();
            for (uint64_t s = 0; s < 5; s++) {
                random_placement(d, f, s).validate();
            }
        }
    }
}

int worst_orientation(const ArchitectureSpec &s) {
    return std::min(min_erasures_per_path(s, LogicalBasis::z), min_erasures_per_path(s, LogicalBasis::x));
}

TEST(Placement, OptimizedDominatesRandomInWorstOrientation) {
    for (int d : {3, 5, 7}) {
        for (double f : {0.1, 0.25, 0.36, 0.5, 0.75, 0.9}) {
            auto opt = optimized_placement(d, f);
            EXPECT_GE(worst_orientation(opt), max_full_lines(d, erasure_budget(d, f)));
            for (uint64_t s = 0; s < 200; s++) {
                EXPECT_GE(worst_orientation(opt), worst_orientation(random_placement(d, f, s))) << d << " " << f;
            }
        }
    }
}

TEST(Placement, RandomCanBeatOptimizedInOneOrientation) {
    // A random set may line up across one axis while leaving the other open.
    ArchitectureSpec line = pattern_placement(5, {LineKind::cols, 1, Axis::rows});
    line.f_e = 0.2;
    line.validate();
    ArchitectureSpec opt = optimized_placement(5, 0.2);
    EXPECT_GT(min_erasures_per_path(line, LogicalBasis::z), min_erasures_per_path(opt, LogicalBasis::z));
}

TEST(Placement, Patterns) {
    auto col = pattern_placement(7, {LineKind::cols, 1, Axis::rows});
    EXPECT_EQ(col.num_erasures(), 7u);
    for (int r = 0; r < 7; r++) {
        EXPECT_TRUE(col.is_erasure({r, 3}));
    }
    auto alt = pattern_placement(7, {LineKind::alternating_lines, 4, Axis::rows});
    EXPECT_EQ(alt.num_erasures(), 28u);
    for (int r : {0, 2, 4, 6}) {
        for (int c = 0; c < 7; c++) {
            EXPECT_TRUE(alt.is_erasure({r, c}));
        }
    }
    auto cons = pattern_placement(7, {LineKind::consecutive_lines, 4, Axis::cols});
    for (int c : {1, 2, 3, 4}) {
        for (int r = 0; r < 7; r++) {
            EXPECT_TRUE(cons.is_erasure({r, c}));
        }
    }
    auto diag = pattern_placement(5, {LineKind::diagonals, 1, Axis::rows});
    EXPECT_EQ(diag.num_erasures(), 5u);
    for (int i = 0; i < 5; i++) {
        EXPECT_TRUE(diag.is_erasure({i, i}));
    }
    auto cross = pattern_placement(5, {LineKind::cross, 1, Axis::rows});
    EXPECT_EQ(cross.num_erasures(), 9u);
    EXPECT_THROW(pattern_placement(5, {LineKind::rows, 6, Axis::rows}), std::invalid_argument);
    EXPECT_THROW(pattern_placement(7, {LineKind::alternating_lines, 5, Axis::rows}), std::invalid_argument);
    EXPECT_DOUBLE_EQ(pattern_placement(5, {LineKind::rows, 2, Axis::rows}).f_e, 10.0 / 25);
}

TEST(Placement, MinErasuresPerPathExamples) {
    auto col = pattern_placement(5, {LineKind::cols, 1, Axis::rows});
    auto row = pattern_placement(5, {LineKind::rows, 1, Axis::rows});
    EXPECT_EQ(min_erasures_per_path(col, LogicalBasis::z), 1);
    EXPECT_EQ(min_erasures_per_path(row, LogicalBasis::z), 0);
    EXPECT_EQ(min_erasures_per_path(optimized_placement(3, 0), LogicalBasis::z), 0);
    EXPECT_EQ(min_erasures_per_path(optimized_placement(5, 1), LogicalBasis::x), 5);
}

TEST(Placement, MinErasuresPerPathMatchesEnumeration) {
    for (int d : {3, 5}) {
        for (int n = 1; n <= 2; n++) {
            for (LineKind k : {LineKind::rows, LineKind::cols, LineKind::diagonals, LineKind::cross}) {
                auto spec = pattern_placement(d, {k, n, Axis::rows});
                for (LogicalBasis b : {LogicalBasis::z, LogicalBasis::x}) {
                    EXPECT_EQ(min_erasures_per_path(spec, b), enumerated_min_erasures(spec, b));
                }
            }
        }
        for (uint64_t s = 0; s < 20; s++) {
            auto spec = random_placement(d, 0.5, s);
            for (LogicalBasis b : {LogicalBasis::z, LogicalBasis::x}) {
                EXPECT_EQ(min_erasures_per_path(spec, b), enumerated_min_erasures(spec, b));
            }
        }
    }
}

TEST(Placement, JsonRoundTrip) {
    auto s = optimized_placement(7, 0.57);
    auto t = ArchitectureSpec::from_json(s.to_json());
    EXPECT_EQ(s.erasures, t.erasures);
    EXPECT_EQ(s.d, t.d);
    auto j = s.to_json();
    j["erasures"].erase(0);
    EXPECT_THROW(ArchitectureSpec::from_json(j), std::invalid_argument);
}

TEST(Placement, StrategyNames) {
    EXPECT_EQ(make_architecture(7, 0, "cols:4", 0).num_erasures(), 28u);
    EXPECT_EQ(make_architecture(7, 0, "alternating_lines:4:cols", 0).erasures,
              pattern_placement(7, {LineKind::alternating_lines, 4, Axis::cols}).erasures);
    EXPECT_THROW(make_architecture(7, 0, "spiral:2", 0), std::invalid_argument);
    EXPECT_THROW(make_architecture(7, 0, "cols:x", 0), std::invalid_argument);
    EXPECT_THROW(make_architecture(7, 0, "cols:2:up", 0), std::invalid_argument);
}

}  // namespace
}  // namespace hyqec
