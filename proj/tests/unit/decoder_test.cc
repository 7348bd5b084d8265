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

#include <cmath>
#include <random>

#include "hyqec/decoder.h"

namespace hyqec {
namespace {

constexpr double kTieTolerance = 1e-7;

// Repetition code on a line: qubit i joins nodes i - 1 and i, with the two
// end qubits touching the boundary. Qubit 0 carries the observable.
DecodingGraph repetition_graph(int d, double p, const std::vector<bool> &erasure) {
    std::vector<uint32_t> dets(d - 1);
    for (int i = 0; i < d - 1; i++) {
        dets[i] = i;
    }
    DecodingGraph g(PauliType::Z, dets);
    int b = g.boundary();
    for (int q = 0; q < d; q++) {
        int u = q == 0 ? b : q - 1;
        int v = q == d - 1 ? b : q;
        uint32_t e = g.add_mechanism(u, v, p, q == 0, erasure[q]);
        if (erasure[q]) {
            g.add_flag(e, q);
        }
    }
    return g;
}

TEST(Decoder, EmptySyndrome) {
    auto g = repetition_graph(5, 0.01, std::vector<bool>(5, false));
    MatchingDecoder dec(g);
    ShotView view{&g, {}};
    double cost = -1;
    EXPECT_FALSE(dec.decode(view, {}, &cost));
    EXPECT_DOUBLE_EQ(cost, 0);
}

TEST(Decoder, RepetitionMatchesMaximumLikelihood) {
    std::mt19937_64 rng(11);
    for (int d = 3; d <= 10; d++) {
        for (int trial = 0; trial < 4; trial++) {
            std::vector<bool> erasure(d);
            for (int q = 0; q < d; q++) {
                erasure[q] = trial > 0 && rng() % 2;
            }
            auto g = repetition_graph(d, 0.05, erasure);
            MatchingDecoder dec(g);
            // Some of the erasure qubits are heralded in this shot.
            std::vector<bool> erased(d, false);
            ShotView view{&g, {}};
            for (int q = 0; q < d; q++) {
                if (erasure[q] && rng() % 2) {
                    erased[q] = true;
                    view.overrides.push_back({static_cast<uint32_t>(q), 0.0});
                }
            }
            std::vector<double> w(d);
            for (int q = 0; q < d; q++) {
                w[q] = erased[q] ? 0 : erasure[q] ? kMaxEdgeWeight : probability_weight(0.05);
                EXPECT_DOUBLE_EQ(view.weight(q), w[q]);
            }
            for (uint32_t pattern = 0; pattern < (1u << d); pattern++) {
                std::vector<int> defects;
                for (int i = 0; i < d - 1; i++) {
                    if (((pattern >> i) ^ (pattern >> (i + 1))) & 1) {
                        defects.push_back(i);
                    }
                }
                double w0 = 0, w1 = 0;
                for (int q = 0; q < d; q++) {
                    ((pattern >> q) & 1 ? w0 : w1) += w[q];
                }
                if (std::abs(w0 - w1) < kTieTolerance) {
                    continue;
                }
                bool expected = w0 < w1 ? (pattern & 1) : !(pattern & 1);
                double cost = 0;
                EXPECT_EQ(dec.decode(view, defects, &cost), expected) << d << " " << pattern;
                EXPECT_NEAR(cost, std::min(w0, w1), 1e-9);
            }
        }
    }
}

TEST(Decoder, SingleFaultsCorrectedAtDistanceThree) {
    for (LogicalBasis basis : {LogicalBasis::z, LogicalBasis::x}) {
        auto c = build_memory_circuit(SurfaceCodeLayout(3), optimized_placement(3, 0), NoiseModel::from_p(0.001), 3,
                                      basis);
        auto graphs = build_decoding_graphs(c);
        const auto &g = graphs.graphs[graphs.observable_graph];
        MatchingDecoder dec(g);
        ShotView view{&g, {}};
        for (const auto &e : g.edges()) {
            std::vector<int> defects{e.u};
            if (e.v != g.boundary()) {
                defects.push_back(e.v);
            }
            double cost = 0;
            EXPECT_EQ(dec.decode(view, defects, &cost), e.observable);
            EXPECT_LE(cost, e.weight + 1e-9);
        }
    }
}

TEST(Decoder, ScaleInvariance) {
    auto c = build_memory_circuit(SurfaceCodeLayout(5), optimized_placement(5, 0), NoiseModel::from_p(0.003), 5,
                                  LogicalBasis::z);
    auto graphs = build_decoding_graphs(c);
    const auto &g = graphs.graphs[0];
    MatchingDecoder dec(g);
    ShotView base{&g, {}}, half{&g, {}};
    for (uint32_t e = 0; e < g.edges().size(); e++) {
        half.overrides.push_back({e, 0.5 * g.edges()[e].weight});
    }
    std::mt19937_64 rng(5);
    int n = g.num_nodes() - 1;
    for (int trial = 0; trial < 200; trial++) {
        std::vector<int> defects;
        for (int v = 0; v < n; v++) {
            if (rng() % 10 == 0) {
                defects.push_back(v);
            }
        }
        double c1 = 0, c2 = 0;
        bool p1 = dec.decode(base, defects, &c1);
        bool p2 = dec.decode(half, defects, &c2);
        EXPECT_NEAR(c2, 0.5 * c1, 1e-7 * (1 + c1));
        EXPECT_EQ(p1, p2);
    }
}

struct Oracle {
    double best = 1e300;
    double best_other_parity = 1e300;
    bool parity = false;
};

// Minimum-weight edge subset whose odd-degree non-boundary nodes are exactly
// the defects.
Oracle brute_force(const DecodingGraph &g, const std::vector<double> &w, const std::vector<int> &defects) {
    const auto &edges = g.edges();
    uint32_t target = 0;
    for (int v : defects) {
        target |= 1u << v;
    }
    uint32_t mask_nodes = (1u << g.boundary()) - 1;
    double best[2] = {1e300, 1e300};
    for (uint32_t s = 0; s < (1u << edges.size()); s++) {
        uint32_t syn = 0;
        double cost = 0;
        int par = 0;
        for (size_t e = 0; e < edges.size(); e++) {
            if ((s >> e) & 1) {
                syn ^= (1u << edges[e].u) ^ (1u << edges[e].v);
                cost += w[e];
                par ^= edges[e].observable;
            }
        }
        if ((syn & mask_nodes) == target) {
            best[par] = std::min(best[par], cost);
        }
    }
    Oracle o;
    o.parity = best[1] < best[0];
    o.best = std::min(best[0], best[1]);
    o.best_other_parity = std::max(best[0], best[1]);
    return o;
}

TEST(Decoder, MatchesBruteForceWithNegativeOverrides) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> prob(0.01, 0.45), unit(0, 1);
    int checked = 0;
    for (int trial = 0; trial < 300; trial++) {
        int n = 3 + static_cast<int>(rng() % 5);
        std::vector<uint32_t> dets(n);
        for (int i = 0; i < n; i++) {
            dets[i] = i;
        }
        DecodingGraph g(PauliType::Z, dets);
        // Spanning tree through the boundary, then extra random edges.
        for (int v = 0; v < n; v++) {
            int parent = v == 0 ? g.boundary() : static_cast<int>(rng() % (v + 1));
            if (parent == v) {
                parent = g.boundary();
            }
            g.add_mechanism(v, parent, prob(rng), rng() % 3 == 0, false);
        }
        int extra = static_cast<int>(rng() % 6);
        for (int k = 0; k < extra; k++) {
            int a = static_cast<int>(rng() % (n + 1)), b = static_cast<int>(rng() % (n + 1));
            if (a == b || g.find_edge(a, b) >= 0) {
                continue;
            }
            g.add_mechanism(a, b, prob(rng), rng() % 3 == 0, false);
        }
        MatchingDecoder dec(g);
        ShotView view{&g, {}};
        std::vector<double> w(g.edges().size());
        for (uint32_t e = 0; e < w.size(); e++) {
            w[e] = g.edges()[e].weight;
            if (rng() % 3 == 0) {
                w[e] = -3 + unit(rng) * (w[e] + 3);
                view.overrides.push_back({e, w[e]});
            }
        }
        for (int s = 0; s < 8; s++) {
            std::vector<int> defects;
            for (int v = 0; v < n; v++) {
                if (rng() % 2) {
                    defects.push_back(v);
                }
            }
            Oracle o = brute_force(g, w, defects);
            double cost = 0;
            bool pred = dec.decode(view, defects, &cost);
            EXPECT_NEAR(cost, o.best, 1e-6) << trial;
            if (o.best_other_parity - o.best > kTieTolerance) {
                EXPECT_EQ(pred, o.parity) << trial;
                checked++;
            }
        }
    }
    EXPECT_GT(checked, 1000);
}

TEST(Decoder, RejectsNegativeBaseWeights) {
    DecodingGraph g(PauliType::Z, {0});
    g.add_mechanism(0, 1, 0.7, false, false);
    EXPECT_THROW(MatchingDecoder{g}, std::invalid_argument);
}

}  // namespace
}  // namespace hyqec
