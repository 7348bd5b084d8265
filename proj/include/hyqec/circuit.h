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

#ifndef HYQEC_CIRCUIT_H
#define HYQEC_CIRCUIT_H

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hyqec/lattice.h"
#include "hyqec/placement.h"

namespace hyqec {

/// Error rates for every operation, all derived from one parameter p.
struct NoiseModel {
    double p = 0;
    double std_init = 0, std_readout = 0, std_1q = 0, std_2q = 0;
    double er_init = 0, er_readout = 0, er_1q = 0, er_2q = 0, er_check = 0;
    /// Erasure-qubit init and readout faults raise a flag like gate faults
    /// instead of acting as silent flips.
    bool heralded_spam = false;

    /// Standard qubits: p, p, p/10, p. Erasure qubits: 2p, 2p, p, p, check p,
    /// with every erasure-qubit fault heralded.
    static NoiseModel from_p(double p);
    void validate() const;
};

enum class Op : uint8_t {
    R,       // reset to |0>
    RX,      // reset to |+>
    H,
    CX,      // targets are (control, target) pairs
    M,       // Z-basis measurement
    MX,      // X-basis measurement
    MR,      // Z-basis measurement followed by reset to |0>
    X_ERROR,
    Z_ERROR,
    DEPOLARIZE1,
    DEPOLARIZE2,       // pairs; uniform over the 15 non-identity Paulis
    HERALDED_ERASE1,   // flag raised, then uniform over {I, X, Y, Z}
    HERALDED_ERASE2,   // pairs; flag raised, then uniform over all 16 two-qubit Paulis
};

const char *op_name(Op op);
bool is_noise(Op op);
bool is_pair_op(Op op);
bool is_measurement(Op op);

struct Instruction {
    Op op;
    std::vector<uint32_t> targets;
    double rate = 0;
    uint32_t flag_base = 0;  // heralded ops: target group g owns flag flag_base + g
    int time_step = 0;

    size_t num_groups() const {
        return is_pair_op(op) ? targets.size() / 2 : targets.size();
    }
};

enum class FlagChannel : uint8_t { erasure_1q, erasure_2q_erasure_side, erasure_2q_mixed, erasure_check };

const char *to_string(FlagChannel c);

/// One heralded noise location. `qubits[1]` is -1 for single-qubit sites; for
/// two-qubit sites `qubits[0]` is the erasure qubit.
struct FlagSite {
    uint32_t flag_id;
    int time_step;
    std::array<int32_t, 2> qubits;
    FlagChannel channel;
    double rate;
};

struct Detector {
    std::vector<uint32_t> measurements;
    PauliType type;  // type of the stabilizer whose parity this detector checks
    int round;       // 1-based extraction round; rounds + 1 for the final data layer
    Coord corner;    // plaquette corner
};

class NoisyCircuit {
   public:
    uint32_t num_qubits = 0;
    uint32_t num_measurements = 0;
    LogicalBasis basis = LogicalBasis::z;
    std::vector<Instruction> instructions;
    std::vector<Detector> detectors;
    std::vector<uint32_t> observable;
    std::vector<FlagSite> flags;

    /// Appends an instruction and updates the measurement and flag counters.
    /// Heralded ops receive fresh flag ids; `channel` labels their registry entries.
    void append(Op op, std::vector<uint32_t> targets, double rate, int time_step,
                FlagChannel channel = FlagChannel::erasure_1q);

    uint32_t num_flags() const {
        return static_cast<uint32_t>(flags.size());
    }

    /// Copy with every noise rate set to zero. Instructions and flag ids are kept.
    NoisyCircuit without_noise() const;

    /// Throws std::invalid_argument on out-of-range qubits, measurements or flags.
    void validate() const;

    /// Line-oriented dump with one gate application per line.
    std::string str() const;
    static NoisyCircuit parse(const std::string &text);
};

std::ostream &operator<<(std::ostream &out, const NoisyCircuit &c);

/// Memory experiment: reset data in `basis`, `rounds` extraction rounds with
/// the layout's CX schedule, then transversal data measurement in `basis`.
///
/// Time step 0 is the reset, each round spans seven steps (H, four CX layers,
/// H, ancilla measure-and-reset). Every erasure data qubit passes an erasure
/// check after each step before the final measurement. The H gates act only on
/// ancillas, so erasure data qubits never see single-qubit gate noise.
NoisyCircuit build_memory_circuit(const SurfaceCodeLayout &layout, const ArchitectureSpec &spec,
                                  const NoiseModel &noise, int rounds, LogicalBasis basis);

/// Code-capacity experiment: one layer of data noise (depolarizing p on
/// standard qubits, heralded erasure p on erasure qubits) followed by a single
/// noiseless extraction round and a noiseless data measurement.
NoisyCircuit build_capacity_circuit(const SurfaceCodeLayout &layout, const ArchitectureSpec &spec, double p,
                                    LogicalBasis basis);

}  // namespace hyqec

#endif
