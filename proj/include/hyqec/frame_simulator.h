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

#ifndef HYQEC_FRAME_SIMULATOR_H
#define HYQEC_FRAME_SIMULATOR_H

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hyqec/circuit.h"

namespace hyqec {

/// Shots sampled from a circuit, stored shot-major and bit-packed.
struct ShotBatch {
    size_t shots = 0;
    uint32_t num_detectors = 0;
    uint32_t num_flags = 0;
    size_t detector_words = 0;
    size_t flag_words = 0;
    std::vector<uint64_t> detectors;   // shots * detector_words
    std::vector<uint64_t> flags;       // shots * flag_words
    std::vector<uint8_t> observable_flips;

    ShotBatch() = default;
    ShotBatch(size_t shots, uint32_t num_detectors, uint32_t num_flags);

    const uint64_t *detector_row(size_t shot) const {
        return detectors.data() + shot * detector_words;
    }
    const uint64_t *flag_row(size_t shot) const {
        return flags.data() + shot * flag_words;
    }
    bool detector(size_t shot, uint32_t k) const {
        return (detector_row(shot)[k >> 6] >> (k & 63)) & 1;
    }
    bool flag(size_t shot, uint32_t k) const {
        return (flag_row(shot)[k >> 6] >> (k & 63)) & 1;
    }
    void set_detector(size_t shot, uint32_t k) {
        detectors[shot * detector_words + (k >> 6)] ^= uint64_t{1} << (k & 63);
    }
    void set_flag(size_t shot, uint32_t k) {
        flags[shot * flag_words + (k >> 6)] ^= uint64_t{1} << (k & 63);
    }

    std::vector<uint32_t> fired_detectors(size_t shot) const;
    std::vector<uint32_t> raised_flags(size_t shot) const;
};

/// Shots are simulated in lanes of this many at a time; shot i belongs to
/// lane block i / kBatchLanes and depends only on (seed, i).
constexpr size_t kBatchLanes = 1024;

/// Samples shots [first_shot, first_shot + shots) of a Pauli-frame simulation.
///
/// The result does not depend on `workers`: each lane block draws from its own
/// generator seeded from (seed, block index).
ShotBatch sample_shots(const NoisyCircuit &circuit, size_t shots, uint64_t seed, size_t workers = 1,
                       uint64_t first_shot = 0);

/// A Pauli applied to one qubit right after a given instruction.
struct FaultInjection {
    uint32_t instruction;
    uint32_t qubit;
    bool x;
    bool z;
};

struct FaultSignature {
    std::vector<uint32_t> detectors;  // sorted
    bool observable = false;
};

/// Noiseless, deterministic propagation of isolated faults: each injection is
/// simulated on its own and its detector and observable flips are reported.
std::vector<FaultSignature> propagate_faults(const NoisyCircuit &circuit, const std::vector<FaultInjection> &faults);

}  // namespace hyqec

#endif
