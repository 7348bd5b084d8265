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
#include <deque>
#include <set>

#include "hyqec/decoding_graph.h"

namespace hyqec {
namespace {

DecodingGraphs memory_graphs(int d, double f_e, double p, LogicalBasis basis = LogicalBasis::z) {
    auto c = build_memory_circuit(SurfaceCodeLayout(d), optimized_placement(d, f_e), NoiseModel::from_p(p), d, basis);
    return build_decoding_graphs(c);
}

// Fewest edges on a boundary-to-boundary walk with odd observable parity.
int graph_distance(const DecodingGraph &g) {
    int n = g.num_nodes();
    std::vector<int> dist(2 * n, -1);
    std::deque<int> queue{2 * g.boundary()};
    dist[2 * g.boundary()] = 0;
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        int node = s / 2, parity = s % 2;
        for (uint32_t e : g.adjacency()[node]) {
            const auto &edge = g.edges()[e];
            int other = edge.u == node ? edge.v : edge.u;
            int t = 2 * other + (parity ^ static_cast<int>(edge.observable));
            if (dist[t] < 0) {
                dist[t] = dist[s] + 1;
                queue.push_back(t);
            }
        }
    }
    return dist[2 * g.boundary() + 1];
}

TEST(DecodingGraph, GoldenCounts) {
    auto z = memory_graphs(3, 0, 0.001, LogicalBasis::z);
    EXPECT_TRUE(z.flag_index.edges.empty());
    EXPECT_EQ(z.observable_graph, 0);
    EXPECT_EQ(z.graphs[0].num_nodes(), 17);
    EXPECT_EQ(z.graphs[0].edges().size(), 55u);
    EXPECT_EQ(z.graphs[1].num_nodes(), 9);
    EXPECT_EQ(z.graphs[1].edges().size(), 23u);
    EXPECT_TRUE(z.graphs[0].has_observable());
    EXPECT_FALSE(z.graphs[1].has_observable());

    auto x = memory_graphs(5, 0, 0.001, LogicalBasis::x);
    EXPECT_EQ(x.observable_graph, 1);
    EXPECT_EQ(x.graphs[1].num_nodes(), 73);
    EXPECT_EQ(x.graphs[1].edges().size(), 301u);
}

TEST(DecodingGraph, EdgeWeightsFollowProbabilities) {
    auto g = memory_graphs(3, 0.5, 0.003);
    for (const auto &graph : g.graphs) {
        for (const auto &e : graph.edges()) {
            EXPECT_LT(e.u, e.v);
            ASSERT_GT(e.probability, 0);
            EXPECT_NEAR(e.weight, std::log((1 - e.probability) / e.probability), 1e-12);
            EXPECT_LE(e.unheralded_probability, e.probability + 1e-15);
            EXPECT_TRUE(std::is_sorted(e.flag_ids.begin(), e.flag_ids.end()));
            if (e.flag_ids.empty()) {
                EXPECT_DOUBLE_EQ(e.flags_off_weight(), e.weight);
            } else {
                EXPECT_GE(e.flags_off_weight(), e.weight);
            }
        }
    }
}

TEST(DecodingGraph, DistanceEqualsCodeDistance) {
    for (int d : {3, 5}) {
        for (double f_e : {0.0, 1.0}) {
            for (LogicalBasis b : {LogicalBasis::z, LogicalBasis::x}) {
                auto g = memory_graphs(d, f_e, 0.001, b);
                EXPECT_EQ(graph_distance(g.graphs[g.observable_graph]), d) << d << " " << f_e;
            }
        }
    }
}

TEST(DecodingGraph, MergeRule) {
    DecodingGraph g(PauliType::Z, {0, 1});
    uint32_t e = g.add_mechanism(0, 1, 0.1, false, false);
    EXPECT_EQ(g.add_mechanism(1, 0, 0.2, false, true), e);
    EXPECT_NEAR(g.edges()[e].probability, 0.1 * 0.8 + 0.2 * 0.9, 1e-15);
    EXPECT_NEAR(g.edges()[e].unheralded_probability, 0.1, 1e-15);
    EXPECT_THROW(g.add_mechanism(0, 1, 0.1, true, false), std::invalid_argument);
    EXPECT_EQ(g.find_edge(0, 1), static_cast<int>(e));
    EXPECT_EQ(g.find_edge(0, 2), -1);
}

TEST(ErasureReweight, Examples) {
    EXPECT_NEAR(erasure_reweight({0.25, 0.25}, 0), 0, 1e-15);
    double p = 0.01;
    EXPECT_NEAR(erasure_reweight({p, p, p}, 1), std::log(2.0), 1e-12);
    EXPECT_DOUBLE_EQ(erasure_reweight({0.4}, 0), -kMaxEdgeWeight);
    EXPECT_DOUBLE_EQ(erasure_reweight({1e-20, 1}, 0), kMaxEdgeWeight);
    EXPECT_THROW(erasure_reweight({}, 0), std::invalid_argument);
    EXPECT_THROW(erasure_reweight({0.1, 0}, 0), std::invalid_argument);
    EXPECT_THROW(erasure_reweight({0.1}, 1), std::invalid_argument);
}

TEST(ErasureReweight, MonotoneInOwnProbability) {
    double prev = 1e300;
    for (double pe = 0.001; pe < 0.2; pe *= 1.3) {
        double w = erasure_reweight({pe, 0.05, 0.02}, 0);
        EXPECT_LT(w, prev);
        prev = w;
    }
}

TEST(FlagIndex, CapacityErasureHalfRate) {
    SurfaceCodeLayout layout(3);
    ArchitectureSpec spec;
    spec.d = 3;
    spec.f_e = 1.0 / 9;
    spec.erasures = {{1, 1}};
    spec.validate();
    auto c = build_capacity_circuit(layout, spec, 0.1, LogicalBasis::z);
    auto g = build_decoding_graphs(c);
    ASSERT_EQ(g.flag_index.size(), 1u);
    ASSERT_FALSE(g.flag_index.edges[0].empty());
    std::set<int> graphs;
    for (const auto &ref : g.flag_index.edges[0]) {
        EXPECT_NEAR(ref.p_e, g.flag_index.rate[0] / 2, 1e-15);
        graphs.insert(ref.graph);
    }
    // A single noiseless round only yields detectors of the memory's type.
    EXPECT_EQ(graphs, std::set<int>{g.observable_graph});
}

TEST(FlagIndex, ChecksReachBothGraphs) {
    auto c = build_memory_circuit(SurfaceCodeLayout(3), optimized_placement(3, 0.5), NoiseModel::from_p(0.001), 3,
                                  LogicalBasis::z);
    auto g = build_decoding_graphs(c);
    ASSERT_EQ(g.flag_index.size(), c.num_flags());
    size_t both = 0, checks = 0;
    for (const auto &site : c.flags) {
        const auto &refs = g.flag_index.edges[site.flag_id];
        EXPECT_FALSE(refs.empty()) << site.flag_id;
        if (site.channel != FlagChannel::erasure_check) {
            continue;
        }
        checks++;
        std::set<int> graphs;
        for (const auto &ref : refs) {
            graphs.insert(ref.graph);
            const auto &edge = g.graphs[ref.graph].edges()[ref.edge];
            EXPECT_TRUE(std::binary_search(edge.flag_ids.begin(), edge.flag_ids.end(), site.flag_id));
        }
        both += graphs.size() == 2;
    }
    EXPECT_GT(checks, 0u);
    // Only the checks right before the final readout miss the graph that the
    // readout cannot see.
    EXPECT_GT(both, checks / 2);
}

TEST(ApplyErasureInfo, NoFlagsNoOverrides) {
    auto g = memory_graphs(3, 0.5, 0.002);
    auto view = apply_erasure_info(g, 0, {});
    EXPECT_TRUE(view.overrides.empty());
    for (uint32_t e = 0; e < g.graphs[0].edges().size(); e++) {
        EXPECT_DOUBLE_EQ(view.weight(e), g.graphs[0].edges()[e].flags_off_weight());
    }
    EXPECT_THROW(apply_erasure_info(g, 0, {static_cast<uint32_t>(g.flag_index.size())}), std::invalid_argument);
}

TEST(ApplyErasureInfo, SingleFlagTouchesItsEdges) {
    auto g = memory_graphs(3, 0.5, 0.002);
    for (uint32_t f = 0; f < g.flag_index.size(); f++) {
        for (int gi : {0, 1}) {
            auto view = apply_erasure_info(g, gi, {f});
            std::set<uint32_t> expected;
            for (const auto &ref : g.flag_index.edges[f]) {
                if (ref.graph == gi) {
                    expected.insert(ref.edge);
                }
            }
            ASSERT_EQ(view.overrides.size(), expected.size());
            double rate = g.flag_index.rate[f];
            for (auto [e, w] : view.overrides) {
                EXPECT_TRUE(expected.count(e));
                const auto &edge = g.graphs[gi].edges()[e];
                double best = 1e300;
                for (const auto &ref : g.flag_index.edges[f]) {
                    if (ref.graph == gi && ref.edge == e) {
                        double r = rate - ref.p_e > 1e-15 * rate ? erasure_reweight({ref.p_e, rate - ref.p_e}, 0)
                                                                 : -kMaxEdgeWeight;
                        best = std::min(best, r);
                    }
                }
                if (edge.unheralded_probability > 0) {
                    best = std::min(best, edge.flags_off_weight());
                }
                EXPECT_DOUBLE_EQ(w, best);
                EXPECT_LE(w, edge.flags_off_weight());
            }
        }
    }
}

TEST(ApplyErasureInfo, HeraldedOnlyEdgesSilentWhenFlagsOff) {
    auto g = memory_graphs(3, 1.0, 0.002);
    size_t heralded_only = 0;
    for (const auto &graph : g.graphs) {
        for (const auto &e : graph.edges()) {
            if (!e.flag_ids.empty() && e.unheralded_probability == 0) {
                heralded_only++;
                EXPECT_DOUBLE_EQ(e.flags_off_weight(), kMaxEdgeWeight);
            }
        }
    }
    EXPECT_GT(heralded_only, 0u);
}

}  // namespace
}  // namespace hyqec
