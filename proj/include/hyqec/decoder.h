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

#ifndef HYQEC_DECODER_H
#define HYQEC_DECODER_H

#include <cstdint>
#include <vector>

#include "hyqec/decoding_graph.h"
#include "hyqec/frame_simulator.h"

namespace hyqec {

/// Minimum-weight perfect matching decoder for one DecodingGraph.
///
/// Shortest paths under the flags-off weights are tabulated once. A shot that
/// raises flags only lowers weights, so its distances come from a small graph
/// over the defects, the boundary and the endpoints of the lowered edges,
/// whose edges are table distances plus the lowered edges themselves. Edges
/// with negative weight are flipped: their endpoints toggle defect status and
/// their observable parity is applied up front. A flipped edge that ends up
/// heavier than its base weight sends the shot to a full per-shot search.
class MatchingDecoder {
   public:
    explicit MatchingDecoder(const DecodingGraph &graph);

    const DecodingGraph &graph() const {
        return *graph_;
    }

    /// Predicted observable flip for the given defect nodes (graph node ids).
    bool decode(const ShotView &view, const std::vector<int> &defects) const;

    /// Same, returning the matching cost in weight units as well.
    bool decode(const ShotView &view, const std::vector<int> &defects, double *cost) const;

    double base_distance(int a, int b) const {
        return dist_[static_cast<size_t>(a) * n_ + b];
    }
    bool base_parity(int a, int b) const {
        return parity_[static_cast<size_t>(a) * n_ + b];
    }

   private:
    const DecodingGraph *graph_;
    int n_;
    std::vector<double> dist_;
    std::vector<uint8_t> parity_;
};

struct DecodeResult {
    uint64_t shots = 0;
    uint64_t failures = 0;
    std::vector<uint8_t> failed;  // per shot
    double flag_rate_mean = 0;    // mean fraction of raised flags per shot
};

/// Decodes every shot of a batch with the graph carrying the observable and
/// compares the prediction with the sampled observable flip.
DecodeResult decode_batch(const DecodingGraphs &graphs, const MatchingDecoder &decoder, const ShotBatch &batch,
                          size_t workers = 1);

/// Maps a shot's fired detectors to node ids of the given graph, dropping the
/// detectors of the other type.
std::vector<int> defects_for_graph(const DecodingGraph &graph, const std::vector<uint32_t> &fired,
                                   const std::vector<int> &node_of_detector);

/// Global detector index -> node id in the graph (or -1).
std::vector<int> node_lookup(const DecodingGraph &graph, size_t num_detectors);

}  // namespace hyqec

#endif
