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

#ifndef HYQEC_DECODING_GRAPH_H
#define HYQEC_DECODING_GRAPH_H

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "hyqec/circuit.h"
#include "json.hpp"

namespace hyqec {

/// Weight given to edges that are known not to have fired, and the clamp
/// applied to every reweighted edge (about ln 1e12).
constexpr double kMaxEdgeWeight = 27.6;

inline double probability_weight(double p) {
    return std::log((1 - p) / p);
}

struct GraphEdge {
    int u;  // u < v; v is the boundary node for boundary edges
    int v;
    double probability = 0;             // all mechanisms merged
    double unheralded_probability = 0;  // mechanisms without a flag
    double weight = 0;                  // ln((1 - probability) / probability)
    bool observable = false;
    std::vector<uint32_t> flag_ids;     // sorted

    /// Weight when every associated flag is 0: the unheralded weight if any
    /// unheralded mechanism remains, else kMaxEdgeWeight. Unflagged edges keep `weight`.
    double flags_off_weight() const;
};

/// Matching graph over the detectors of one stabilizer type plus one boundary node.
class DecodingGraph {
   public:
    DecodingGraph() = default;
    DecodingGraph(PauliType type, std::vector<uint32_t> node_detectors);

    PauliType type() const {
        return type_;
    }
    int num_nodes() const {
        return static_cast<int>(node_detectors_.size()) + 1;
    }
    int boundary() const {
        return static_cast<int>(node_detectors_.size());
    }
    /// Global detector index of node n (n != boundary).
    uint32_t node_detector(int n) const {
        return node_detectors_[n];
    }
    const std::vector<uint32_t> &node_detectors() const {
        return node_detectors_;
    }

    const std::vector<GraphEdge> &edges() const {
        return edges_;
    }
    /// Edge indices incident to each node.
    const std::vector<std::vector<uint32_t>> &adjacency() const {
        return adjacency_;
    }
    /// Edge index between two nodes, or -1.
    int find_edge(int a, int b) const;

    /// Adds an edge or merges into an existing one:
    /// p = p1 (1 - p2) + p2 (1 - p1). Throws std::invalid_argument when the
    /// observable parities disagree.
    uint32_t add_mechanism(int a, int b, double probability, bool observable, bool heralded);
    void add_flag(uint32_t edge, uint32_t flag_id);

    bool has_observable() const;
    nlohmann::json to_json() const;

   private:
    PauliType type_ = PauliType::Z;
    std::vector<uint32_t> node_detectors_;
    std::vector<GraphEdge> edges_;
    std::vector<std::vector<uint32_t>> adjacency_;
};

struct FlagEdgeRef {
    uint8_t graph;  // index into DecodingGraphs::graphs
    uint32_t edge;
    double p_e;     // probability that the flag's channel toggles this edge
};

/// For each flag: the channel rate and the edges its channel can toggle.
struct FlagIndex {
    std::vector<double> rate;
    std::vector<std::vector<FlagEdgeRef>> edges;

    size_t size() const {
        return rate.size();
    }
};

struct DecodingGraphs {
    std::array<DecodingGraph, 2> graphs;  // [0] Z-type detectors, [1] X-type detectors
    FlagIndex flag_index;
    int observable_graph = 0;             // graph that carries the logical observable

    const DecodingGraph &graph(PauliType t) const {
        return graphs[t == PauliType::Z ? 0 : 1];
    }
};

/// Enumerates every single-location fault of the circuit, propagates it, and
/// assembles the two matching graphs plus the flag index.
///
/// Each channel outcome is attached whole when it flips at most two detectors
/// of a graph, otherwise it is split into per-qubit Paulis and then into X and
/// Z components. Throws std::invalid_argument when a component still flips
/// more than two detectors of one type, or flips the observable undetected.
DecodingGraphs build_decoding_graphs(const NoisyCircuit &circuit);

/// ln((sum(E) - p_e) / p_e), clamped to [-kMaxEdgeWeight, kMaxEdgeWeight].
double erasure_reweight(const std::vector<double> &probs, size_t e_index);

/// Per-shot weights. Only edges touched by a raised flag are overridden.
struct ShotView {
    const DecodingGraph *graph = nullptr;
    std::vector<std::pair<uint32_t, double>> overrides;  // (edge, weight), sorted by edge

    /// Effective weight of an edge in this shot.
    double weight(uint32_t edge) const;
};

/// Builds the view of graph `g` for a shot whose raised flags are listed.
///
/// Flags that are not raised leave their edges at flags_off_weight(). A raised
/// flag f sets edge e to erasure_reweight({p_e, rate_f - p_e}, 0); an edge
/// touched by several raised flags takes the smallest such weight, and never
/// more than its unheralded weight.
ShotView apply_erasure_info(const DecodingGraphs &graphs, int g, const std::vector<uint32_t> &raised_flags);

}  // namespace hyqec

#endif
