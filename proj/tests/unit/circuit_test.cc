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
#include <map>
#include <set>

#include "hyqec/circuit.h"
#include "hyqec/decoding_graph.h"
#include "hyqec/frame_simulator.h"

namespace hyqec {
namespace {

NoisyCircuit memory(int d, double f_e, double p, LogicalBasis basis = LogicalBasis::z, int rounds = 0) {
    return build_memory_circuit(SurfaceCodeLayout(d), optimized_placement(d, f_e), NoiseModel::from_p(p),
                                rounds > 0 ? rounds : d, basis);
}

bool batch_is_zero(const ShotBatch &b) {
    for (uint64_t w : b.detectors) {
        if (w) {
            return false;
        }
    }
    for (uint64_t w : b.flags) {
        if (w) {
            return false;
        }
    }
    for (uint8_t o : b.observable_flips) {
        if (o) {
            return false;
        }
    }
    return true;
}

TEST(NoiseModel, Rates) {
    auto m = NoiseModel::from_p(0.01);
    EXPECT_DOUBLE_EQ(m.std_1q, 0.001);
    EXPECT_DOUBLE_EQ(m.std_2q, 0.01);
    EXPECT_DOUBLE_EQ(m.er_init, 0.02);
    EXPECT_DOUBLE_EQ(m.er_readout, 0.02);
    EXPECT_DOUBLE_EQ(m.er_check, 0.01);
    EXPECT_THROW(NoiseModel::from_p(0.6), std::invalid_argument);
}

TEST(Circuit, DetectorCount) {
    // Round 1 checks the basis-type plaquettes only, later rounds check all of
    // them, and the final layer checks the basis type against the data readout.
    for (int d : {3, 5}) {
        for (int rounds : {1, 3, 5}) {
            for (LogicalBasis b : {LogicalBasis::z, LogicalBasis::x}) {
                auto c = memory(d, 0, 0.001, b, rounds);
                size_t half = (d * d - 1) / 2;
                EXPECT_EQ(c.detectors.size(), half * (rounds + 1) + half * (rounds - 1));
                EXPECT_EQ(c.num_flags(), 0u);
                EXPECT_EQ(c.observable.size(), static_cast<size_t>(d));
                c.validate();
            }
        }
    }
    EXPECT_EQ(memory(3, 0, 0.001, LogicalBasis::z, 3).detectors.size(), 24u);
}

TEST(Circuit, FlagRegistry) {
    auto c = memory(3, 1, 0.01);
    ASSERT_GT(c.num_flags(), 0u);
    auto spec = optimized_placement(3, 1);
    std::set<uint32_t> ids;
    for (const auto &f : c.flags) {
        ids.insert(f.flag_id);
        ASSERT_GE(f.qubits[0], 0);
        EXPECT_LT(f.qubits[0], 9) << "the first qubit of every site is an erasure data qubit";
        EXPECT_GT(f.rate, 0);
        EXPECT_NE(f.channel, FlagChannel::erasure_2q_erasure_side);
    }
    EXPECT_EQ(ids.size(), c.num_flags());
    EXPECT_EQ(*ids.rbegin(), c.num_flags() - 1);
    // Every CX touching data registers a two-qubit site; every step adds checks.
    size_t heralded_groups = 0;
    for (const auto &ins : c.instructions) {
        if (ins.op == Op::HERALDED_ERASE1 || ins.op == Op::HERALDED_ERASE2) {
            heralded_groups += ins.num_groups();
        }
    }
    EXPECT_EQ(heralded_groups, c.num_flags());
    size_t cx_pairs = 0;
    for (const auto &ins : c.instructions) {
        if (ins.op == Op::CX) {
            cx_pairs += ins.num_groups();
        }
    }
    size_t two_qubit_sites = 0;
    for (const auto &f : c.flags) {
        two_qubit_sites += f.qubits[1] >= 0;
    }
    EXPECT_EQ(two_qubit_sites, cx_pairs);
    (void)spec;
}

TEST(Circuit, SpamHeralding) {
    // Erasure data qubits see no silent flips unless SPAM heralding is off.
    auto count_flips = [](const NoisyCircuit &c) {
        size_t n = 0;
        for (const auto &ins : c.instructions) {
            if ((ins.op == Op::X_ERROR || ins.op == Op::Z_ERROR) && ins.rate > 0) {
                for (uint32_t q : ins.targets) {
                    n += q < 9;
                }
            }
        }
        return n;
    };
    auto noise = NoiseModel::from_p(0.01);
    EXPECT_TRUE(noise.heralded_spam);
    auto heralded = build_memory_circuit(SurfaceCodeLayout(3), optimized_placement(3, 1), noise, 3, LogicalBasis::z);
    EXPECT_EQ(count_flips(heralded), 0u);
    noise.heralded_spam = false;
    auto silent = build_memory_circuit(SurfaceCodeLayout(3), optimized_placement(3, 1), noise, 3, LogicalBasis::z);
    EXPECT_EQ(count_flips(silent), 18u);
    EXPECT_EQ(heralded.num_flags(), silent.num_flags() + 18);
}

TEST(Circuit, NoNoiseIsSilent) {
    for (int d : {3, 5}) {
        for (double f : {0.0, 0.5, 1.0}) {
            for (LogicalBasis b : {LogicalBasis::z, LogicalBasis::x}) {
                auto batch = sample_shots(memory(d, f, 0, b), 1000, 3);
                EXPECT_TRUE(batch_is_zero(batch)) << d << " " << f;
                auto cap = build_capacity_circuit(SurfaceCodeLayout(d), optimized_placement(d, f), 0, b);
                EXPECT_TRUE(batch_is_zero(sample_shots(cap, 1000, 3)));
            }
        }
    }
    auto c = memory(3, 0.5, 0.01);
    EXPECT_TRUE(batch_is_zero(sample_shots(c.without_noise(), 2000, 9)));
}

TEST(Circuit, DumpParseRoundTrip) {
    for (double f : {0.0, 0.5, 1.0}) {
        auto c = memory(3, f, 0.003, LogicalBasis::x);
        std::string text = c.str();
        auto back = NoisyCircuit::parse(text);
        EXPECT_EQ(back.str(), text);
        EXPECT_EQ(back.num_flags(), c.num_flags());
        EXPECT_EQ(back.detectors.size(), c.detectors.size());
        // Same sampled shots from the reparsed circuit.
        auto a = sample_shots(c, 3000, 4), b = sample_shots(back, 3000, 4);
        EXPECT_EQ(a.detectors, b.detectors);
        EXPECT_EQ(a.flags, b.flags);
        EXPECT_EQ(a.observable_flips, b.observable_flips);
    }
    EXPECT_THROW(NoisyCircuit::parse("QUBITS 2\nFROB 0\n"), std::invalid_argument);
}

TEST(Circuit, ValidateRejectsBadTargets) {
    auto c = memory(3, 0, 0.001);
    c.instructions.push_back({Op::H, {999}, 0, 0, 0});
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Sampler, DeterministicAndWorkerIndependent) {
    auto c = memory(3, 0.5, 0.01);
    auto a = sample_shots(c, 5000, 17, 1), b = sample_shots(c, 5000, 17, 3), e = sample_shots(c, 5000, 18, 1);
    EXPECT_EQ(a.detectors, b.detectors);
    EXPECT_EQ(a.flags, b.flags);
    EXPECT_EQ(a.observable_flips, b.observable_flips);
    EXPECT_NE(a.detectors, e.detectors);
    // Shot ranges compose.
    auto head = sample_shots(c, 2048, 17, 1, 0), tail = sample_shots(c, 5000 - 2048, 17, 1, 2048);
    for (size_t s = 0; s < 5000; s++) {
        const ShotBatch &part = s < 2048 ? head : tail;
        size_t i = s < 2048 ? s : s - 2048;
        EXPECT_EQ(a.fired_detectors(s), part.fired_detectors(i));
        EXPECT_EQ(a.raised_flags(s), part.raised_flags(i));
    }
}

TEST(Sampler, FlagRatesMatchChannels) {
    auto c = memory(3, 1, 0.01);
    const size_t shots = 100000;
    auto batch = sample_shots(c, shots, 23);
    std::vector<uint64_t> raised(c.num_flags(), 0);
    for (size_t s = 0; s < shots; s++) {
        for (uint32_t f : batch.raised_flags(s)) {
            raised[f]++;
        }
    }
    std::map<FlagChannel, std::pair<double, double>> pooled;  // (raised, expected)
    double chi2 = 0;
    for (const auto &site : c.flags) {
        double expect = site.rate * shots;
        double sd = std::sqrt(shots * site.rate * (1 - site.rate));
        EXPECT_NEAR(raised[site.flag_id], expect, 5 * sd) << "flag " << site.flag_id;
        chi2 += (raised[site.flag_id] - expect) * (raised[site.flag_id] - expect) / (sd * sd);
        pooled[site.channel].first += raised[site.flag_id];
        pooled[site.channel].second += expect;
    }
    for (const auto &[ch, v] : pooled) {
        EXPECT_NEAR(v.first, v.second, 3 * std::sqrt(v.second)) << to_string(ch);
    }
    // Per-site deviations behave like a chi-square with F degrees of freedom.
    double f = c.num_flags();
    EXPECT_LT(chi2, f + 4 * std::sqrt(2 * f));
}

TEST(Sampler, UnheraldedRatesMatchTheory) {
    // A lone data qubit with X_ERROR p measured directly.
    NoisyCircuit c;
    c.num_qubits = 1;
    c.append(Op::R, {0}, 0, 0);
    c.append(Op::X_ERROR, {0}, 0.2, 1);
    c.append(Op::M, {0}, 0, 2);
    c.observable = {0};
    auto b = sample_shots(c, 200000, 8);
    double n = 0;
    for (uint8_t o : b.observable_flips) {
        n += o;
    }
    EXPECT_NEAR(n / 200000, 0.2, 4 * std::sqrt(0.2 * 0.8 / 200000));
}

TEST(Sampler, DepolarizingMarginals) {
    // DEPOLARIZE1 flips Z-basis outcomes with probability 2p/3.
    NoisyCircuit c;
    c.num_qubits = 1;
    c.append(Op::R, {0}, 0, 0);
    c.append(Op::DEPOLARIZE1, {0}, 0.3, 1);
    c.append(Op::M, {0}, 0, 2);
    c.observable = {0};
    auto b = sample_shots(c, 200000, 8);
    double n = 0;
    for (uint8_t o : b.observable_flips) {
        n += o;
    }
    EXPECT_NEAR(n / 200000, 0.2, 4 * std::sqrt(0.2 * 0.8 / 200000));
    // A heralded erasure flips it half the time, and only when the flag is up.
    NoisyCircuit e;
    e.num_qubits = 1;
    e.append(Op::R, {0}, 0, 0);
    e.append(Op::HERALDED_ERASE1, {0}, 0.4, 1);
    e.append(Op::M, {0}, 0, 2);
    e.observable = {0};
    auto be = sample_shots(e, 200000, 9);
    double flips = 0, flagged = 0, unflagged_flips = 0;
    for (size_t s = 0; s < be.shots; s++) {
        flips += be.observable_flips[s];
        flagged += be.flag(s, 0);
        unflagged_flips += be.observable_flips[s] && !be.flag(s, 0);
    }
    EXPECT_NEAR(flagged / 200000, 0.4, 4 * std::sqrt(0.4 * 0.6 / 200000));
    EXPECT_NEAR(flips / 200000, 0.2, 4 * std::sqrt(0.2 * 0.8 / 200000));
    EXPECT_EQ(unflagged_flips, 0);
}

TEST(Sampler, SingleFaultsAreGraphlike) {
    for (int d : {3, 5}) {
        for (double f : {0.0, 0.5, 1.0}) {
            for (LogicalBasis b : {LogicalBasis::z, LogicalBasis::x}) {
                EXPECT_NO_THROW(build_decoding_graphs(memory(d, f, 0.001, b))) << d << " " << f;
            }
        }
    }
}

}  // namespace
}  // namespace hyqec
