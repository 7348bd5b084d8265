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

#include "hyqec/frame_simulator.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "hyqec/parallel.h"
#include "hyqec/rng.h"

namespace hyqec {

ShotBatch::ShotBatch(size_t shots_, uint32_t num_detectors_, uint32_t num_flags_)
    : shots(shots_),
      num_detectors(num_detectors_),
      num_flags(num_flags_),
      detector_words((num_detectors_ + 63) / 64),
      flag_words((num_flags_ + 63) / 64),
      detectors(shots_ * detector_words, 0),
      flags(shots_ * flag_words, 0),
      observable_flips(shots_, 0) {
}

namespace {

std::vector<uint32_t> set_bits(const uint64_t *row, size_t words) {
    std::vector<uint32_t> out;
    for (size_t w = 0; w < words; w++) {
        uint64_t bits = row[w];
        while (bits) {
            out.push_back(static_cast<uint32_t>(w * 64 + __builtin_ctzll(bits)));
            bits &= bits - 1;
        }
    }
    return out;
}

constexpr size_t kWords = kBatchLanes / 64;

/// Pauli frames for kBatchLanes shots. Pauli codes: bit 0 is X, bit 1 is Z.
class FrameSim {
   public:
    FrameSim(const NoisyCircuit &c, bool noisy, bool gauge, uint64_t seed)
        : c_(c),
          noisy_(noisy),
          gauge_(gauge),
          rng_(seed),
          x_(c.num_qubits * kWords),
          z_(c.num_qubits * kWords),
          meas_(c.num_measurements * kWords),
          flags_(c.num_flags() * kWords) {
    }

    /// Runs the circuit. `after(i)` is invoked once instruction i has executed.
    template <typename After>
    void run(After after) {
        uint32_t m = 0;
        for (size_t i = 0; i < c_.instructions.size(); i++) {
            const Instruction &inst = c_.instructions[i];
            if (is_noise(inst.op)) {
                if (noisy_ && inst.rate > 0) {
                    apply_noise(inst);
                }
            } else {
                apply_gate(inst, m);
            }
            after(i);
        }
    }

    uint64_t *x(uint32_t q) {
        return &x_[q * kWords];
    }
    uint64_t *z(uint32_t q) {
        return &z_[q * kWords];
    }
    const uint64_t *meas(uint32_t m) const {
        return &meas_[m * kWords];
    }
    const uint64_t *flag(uint32_t f) const {
        return &flags_[f * kWords];
    }

    void apply_pauli(uint32_t q, size_t lane, unsigned code) {
        uint64_t bit = uint64_t{1} << (lane & 63);
        if (code & 1) {
            x(q)[lane >> 6] ^= bit;
        }
        if (code & 2) {
            z(q)[lane >> 6] ^= bit;
        }
    }

    /// XOR of measurement records for a parity group.
    void parity(const std::vector<uint32_t> &ms, uint64_t *out) const {
        std::fill(out, out + kWords, 0);
        for (uint32_t m : ms) {
            const uint64_t *r = meas(m);
            for (size_t w = 0; w < kWords; w++) {
                out[w] ^= r[w];
            }
        }
    }

   private:
    void randomize(uint64_t *words) {
        if (!gauge_) {
            std::fill(words, words + kWords, 0);
            return;
        }
        for (size_t w = 0; w < kWords; w++) {
            words[w] = rng_();
        }
    }

    void apply_gate(const Instruction &inst, uint32_t &m) {
        const auto &ts = inst.targets;
        switch (inst.op) {
            case Op::R:
                for (uint32_t q : ts) {
                    std::fill(x(q), x(q) + kWords, 0);
                    randomize(z(q));
                }
                break;
            case Op::RX:
                for (uint32_t q : ts) {
                    std::fill(z(q), z(q) + kWords, 0);
                    randomize(x(q));
                }
                break;
            case Op::H:
                for (uint32_t q : ts) {
                    std::swap_ranges(x(q), x(q) + kWords, z(q));
                }
                break;
            case Op::CX:
                for (size_t k = 0; k < ts.size(); k += 2) {
                    uint64_t *xc = x(ts[k]), *zc = z(ts[k]), *xt = x(ts[k + 1]), *zt = z(ts[k + 1]);
                    for (size_t w = 0; w < kWords; w++) {
                        xt[w] ^= xc[w];
                        zc[w] ^= zt[w];
                    }
                }
                break;
            case Op::M:
            case Op::MR:
                for (uint32_t q : ts) {
                    std::copy(x(q), x(q) + kWords, &meas_[m++ * kWords]);
                    if (inst.op == Op::MR) {
                        std::fill(x(q), x(q) + kWords, 0);
                    }
                    randomize(z(q));
                }
                break;
            case Op::MX:
                for (uint32_t q : ts) {
                    std::copy(z(q), z(q) + kWords, &meas_[m++ * kWords]);
                    randomize(x(q));
                }
                break;
            default:
                throw std::logic_error("not a gate");
        }
    }

    void apply_noise(const Instruction &inst) {
        const size_t groups = inst.num_groups();
        const uint64_t trials = groups * kBatchLanes;
        const bool pair = is_pair_op(inst.op);
        if (inst.rate >= 1) {
            for (uint64_t pos = 0; pos < trials; pos++) {
                hit(inst, pos / kBatchLanes, pos % kBatchLanes, pair);
            }
            return;
        }
        const double log_q = std::log1p(-inst.rate);
        uint64_t pos = geometric_draw(rng_, log_q);
        while (pos < trials) {
            hit(inst, pos / kBatchLanes, pos % kBatchLanes, pair);
            uint64_t skip = geometric_draw(rng_, log_q);
            if (skip >= trials) {
                break;
            }
            pos += skip + 1;
        }
    }

    void hit(const Instruction &inst, size_t g, size_t lane, bool pair) {
        uint32_t q0 = inst.targets[pair ? 2 * g : g];
        switch (inst.op) {
            case Op::X_ERROR:
                apply_pauli(q0, lane, 1);
                break;
            case Op::Z_ERROR:
                apply_pauli(q0, lane, 2);
                break;
            case Op::DEPOLARIZE1:
                apply_pauli(q0, lane, 1 + static_cast<unsigned>(bounded_draw(rng_, 3)));
                break;
            case Op::DEPOLARIZE2: {
                unsigned code = 1 + static_cast<unsigned>(bounded_draw(rng_, 15));
                apply_pauli(q0, lane, code & 3);
                apply_pauli(inst.targets[2 * g + 1], lane, code >> 2);
                break;
            }
            case Op::HERALDED_ERASE1:
                flags_[(inst.flag_base + g) * kWords + (lane >> 6)] |= uint64_t{1} << (lane & 63);
                apply_pauli(q0, lane, static_cast<unsigned>(bounded_draw(rng_, 4)));
                break;
            case Op::HERALDED_ERASE2: {
                flags_[(inst.flag_base + g) * kWords + (lane >> 6)] |= uint64_t{1} << (lane & 63);
                unsigned code = static_cast<unsigned>(bounded_draw(rng_, 16));
                apply_pauli(q0, lane, code & 3);
                apply_pauli(inst.targets[2 * g + 1], lane, code >> 2);
                break;
            }
            default:
                throw std::logic_error("not a noise channel");
        }
    }

    const NoisyCircuit &c_;
    bool noisy_;
    bool gauge_;
    std::mt19937_64 rng_;
    std::vector<uint64_t> x_, z_, meas_, flags_;
};

}  // namespace

std::vector<uint32_t> ShotBatch::fired_detectors(size_t shot) const {
    return set_bits(detector_row(shot), detector_words);
}

std::vector<uint32_t> ShotBatch::raised_flags(size_t shot) const {
    return set_bits(flag_row(shot), flag_words);
}

ShotBatch sample_shots(const NoisyCircuit &circuit, size_t shots, uint64_t seed, size_t workers, uint64_t first_shot) {
    ShotBatch out(shots, static_cast<uint32_t>(circuit.detectors.size()), circuit.num_flags());
    if (shots == 0) {
        return out;
    }
    const uint64_t first_block = first_shot / kBatchLanes;
    const uint64_t last_block = (first_shot + shots - 1) / kBatchLanes;
    run_parallel(last_block - first_block + 1, workers, [&](size_t j) {
        uint64_t block = first_block + j;
        FrameSim sim(circuit, true, true, mix_seed(seed, block));
        sim.run([](size_t) {});
        uint64_t block_start = block * kBatchLanes;
        auto scatter = [&](const uint64_t *words, auto &&emit) {
            for (size_t w = 0; w < kWords; w++) {
                uint64_t bits = words[w];
                while (bits) {
                    uint64_t shot = block_start + w * 64 + __builtin_ctzll(bits);
                    bits &= bits - 1;
                    if (shot >= first_shot && shot < first_shot + shots) {
                        emit(static_cast<size_t>(shot - first_shot));
                    }
                }
            }
        };
        uint64_t buf[kWords];
        for (uint32_t k = 0; k < out.num_detectors; k++) {
            sim.parity(circuit.detectors[k].measurements, buf);
            scatter(buf, [&](size_t s) { out.set_detector(s, k); });
        }
        for (uint32_t f = 0; f < out.num_flags; f++) {
            scatter(sim.flag(f), [&](size_t s) { out.set_flag(s, f); });
        }
        sim.parity(circuit.observable, buf);
        scatter(buf, [&](size_t s) { out.observable_flips[s] = 1; });
    });
    return out;
}

std::vector<FaultSignature> propagate_faults(const NoisyCircuit &circuit, const std::vector<FaultInjection> &faults) {
    std::vector<FaultSignature> out(faults.size());
    const size_t n_instr = circuit.instructions.size();
    for (size_t start = 0; start < faults.size(); start += kBatchLanes) {
        size_t count = std::min(kBatchLanes, faults.size() - start);
        std::vector<std::vector<size_t>> at(n_instr);
        for (size_t l = 0; l < count; l++) {
            const FaultInjection &f = faults[start + l];
            if (f.instruction >= n_instr || f.qubit >= circuit.num_qubits) {
                throw std::invalid_argument("fault injection outside the circuit");
            }
            at[f.instruction].push_back(l);
        }
        FrameSim sim(circuit, false, false, 0);
        sim.run([&](size_t i) {
            for (size_t l : at[i]) {
                const FaultInjection &f = faults[start + l];
                sim.apply_pauli(f.qubit, l, (f.x ? 1u : 0u) | (f.z ? 2u : 0u));
            }
        });
        uint64_t buf[kWords];
        for (uint32_t k = 0; k < circuit.detectors.size(); k++) {
            sim.parity(circuit.detectors[k].measurements, buf);
            for (size_t w = 0; w < kWords; w++) {
                uint64_t bits = buf[w];
                while (bits) {
                    size_t l = w * 64 + __builtin_ctzll(bits);
                    bits &= bits - 1;
                    out[start + l].detectors.push_back(k);
                }
            }
        }
        sim.parity(circuit.observable, buf);
        for (size_t l = 0; l < count; l++) {
            out[start + l].observable = (buf[l >> 6] >> (l & 63)) & 1;
        }
    }
    return out;
}

}  // namespace hyqec
