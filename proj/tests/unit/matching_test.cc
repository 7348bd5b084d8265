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

#include <limits>
#include <random>

#include "hyqec/matching.h"

namespace hyqec {
namespace {

int64_t brute_perfect(const std::vector<std::vector<int64_t>> &c, std::vector<bool> &used) {
    int n = static_cast<int>(c.size());
    int i = 0;
    while (i < n && used[i]) {
        i++;
    }
    if (i == n) {
        return 0;
    }
    used[i] = true;
    int64_t best = std::numeric_limits<int64_t>::max();
    for (int j = i + 1; j < n; j++) {
        if (!used[j]) {
            used[j] = true;
            best = std::min(best, c[i][j] + brute_perfect(c, used));
            used[j] = false;
        }
    }
    used[i] = false;
    return best;
}

// Best (cardinality, weight) over all matchings, lexicographic when `card` is set.
std::pair<int, int64_t> brute_general(int n, const std::vector<std::vector<int64_t>> &w, std::vector<bool> &used,
                                      int i, bool card) {
    while (i < n && used[i]) {
        i++;
    }
    if (i >= n) {
        return {0, 0};
    }
    auto best = brute_general(n, w, used, i + 1, card);
    used[i] = true;
    for (int j = i + 1; j < n; j++) {
        if (!used[j] && w[i][j] != std::numeric_limits<int64_t>::min()) {
            used[j] = true;
            auto r = brute_general(n, w, used, i + 1, card);
            r.first += 1;
            r.second += w[i][j];
            bool better = card ? r > best : r.second > best.second;
            if (better) {
                best = r;
            }
            used[j] = false;
        }
    }
    used[i] = false;
    return best;
}

TEST(Matching, PerfectMatchingMatchesBruteForce) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; trial++) {
        int n = 2 * (1 + static_cast<int>(rng() % 6));
        std::vector<std::vector<int64_t>> c(n, std::vector<int64_t>(n, 0));
        int64_t range = trial % 3 == 0 ? 4 : 1000;  // small ranges force ties
        for (int i = 0; i < n; i++) {
            for (int j = i + 1; j < n; j++) {
                c[i][j] = c[j][i] = static_cast<int64_t>(rng() % range);
            }
        }
        auto mate = min_weight_perfect_matching(c);
        int64_t cost = 0;
        for (int i = 0; i < n; i++) {
            ASSERT_GE(mate[i], 0);
            ASSERT_EQ(mate[mate[i]], i);
            if (mate[i] > i) {
                cost += c[i][mate[i]];
            }
        }
        std::vector<bool> used(n, false);
        EXPECT_EQ(cost, brute_perfect(c, used)) << "trial " << trial;
    }
}

TEST(Matching, GeneralMaxWeightMatchesBruteForce) {
    std::mt19937_64 rng(5);
    const int64_t none = std::numeric_limits<int64_t>::min();
    for (int trial = 0; trial < 300; trial++) {
        int n = 2 + static_cast<int>(rng() % 9);
        bool card = trial % 2;
        std::vector<std::vector<int64_t>> w(n, std::vector<int64_t>(n, none));
        std::vector<WeightedEdge> edges;
        for (int i = 0; i < n; i++) {
            for (int j = i + 1; j < n; j++) {
                if (rng() % 3 == 0) {
                    int64_t x = static_cast<int64_t>(rng() % 50) - (card ? 10 : 0);
                    w[i][j] = w[j][i] = x;
                    edges.push_back({i, j, x});
                }
            }
        }
        auto mate = max_weight_matching(n, edges, card);
        int count = 0;
        int64_t total = 0;
        for (int i = 0; i < n; i++) {
            if (mate[i] > i) {
                ASSERT_NE(w[i][mate[i]], none);
                ASSERT_EQ(mate[mate[i]], i);
                count++;
                total += w[i][mate[i]];
            }
        }
        std::vector<bool> used(n, false);
        auto best = brute_general(n, w, used, 0, card);
        if (card) {
            EXPECT_EQ(count, best.first) << "trial " << trial;
        }
        EXPECT_EQ(total, best.second) << "trial " << trial;
    }
}

TEST(Matching, Rejections) {
    EXPECT_THROW(min_weight_perfect_matching({{0, 1, 2}, {1, 0, 3}, {2, 3, 0}}), std::invalid_argument);
    EXPECT_THROW(min_weight_perfect_matching({{0, -1}, {-1, 0}}), std::invalid_argument);
    EXPECT_EQ(min_weight_perfect_matching({}).size(), 0u);
}

}  // namespace
}  // namespace hyqec
