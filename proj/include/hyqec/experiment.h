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

#ifndef HYQEC_EXPERIMENT_H
#define HYQEC_EXPERIMENT_H

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hyqec/circuit.h"
#include "hyqec/decoder.h"
#include "hyqec/decoding_graph.h"
#include "hyqec/placement.h"

namespace hyqec {

enum class NoiseLevel : uint8_t { circuit, capacity };

const char *to_string(NoiseLevel m);
NoiseLevel parse_noise_level(const std::string &s);

/// A compiled memory experiment for one basis: circuit, graphs and decoder.
class MemoryExperiment {
   public:
    MemoryExperiment(const ArchitectureSpec &spec, NoiseLevel level, double p, int rounds, LogicalBasis basis);

    const NoisyCircuit &circuit() const {
        return circuit_;
    }
    const DecodingGraphs &graphs() const {
        return graphs_;
    }
    const MatchingDecoder &decoder() const {
        return *decoder_;
    }

    /// Samples and decodes shots [first_shot, first_shot + shots).
    DecodeResult run(uint64_t shots, uint64_t seed, size_t workers, uint64_t first_shot = 0) const;

   private:
    NoisyCircuit circuit_;
    DecodingGraphs graphs_;
    std::unique_ptr<MatchingDecoder> decoder_;
};

struct PointResult {
    uint64_t shots = 0;
    uint64_t failures_x = 0;         // X-basis memory failures
    uint64_t failures_z = 0;         // Z-basis memory failures
    uint64_t failures_combined = 0;  // shots where either memory failed
    double flag_rate_mean = 0;
    std::vector<uint8_t> failed_combined;  // per shot, filled when requested
};

struct PointOptions {
    NoiseLevel level = NoiseLevel::circuit;
    double p = 0;
    int rounds = 0;  // 0 means d
    uint64_t shots = 0;
    uint64_t seed = 0;
    size_t workers = 1;
    /// Stop after the chunk in which combined failures reach this count (0 disables).
    uint64_t max_failures = 0;
    bool run_x = true;
    bool run_z = true;
    bool keep_shot_failures = false;
};

/// Runs both memories for one architecture. Shot i of each memory is a
/// function of (seed, basis, i) only, so the result is independent of
/// `workers`; the early-stop check happens at fixed chunk boundaries.
PointResult run_point(const ArchitectureSpec &spec, const PointOptions &options);

/// Code-capacity Monte Carlo: depolarizing noise on standard data qubits,
/// heralded erasure on erasure data qubits, one perfect syndrome round.
PointResult capacity_sample(const SurfaceCodeLayout &layout, const ArchitectureSpec &spec, double p, uint64_t shots,
                            uint64_t seed, size_t workers = 1);

/// Strategy names: optimized, random, or a line pattern written
/// kind:count[:axis], e.g. cols:4 or alternating_lines:4:cols.
ArchitectureSpec make_architecture(int d, double f_e, const std::string &strategy, uint64_t seed);

}  // namespace hyqec

#endif
