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

#include "hyqec/circuit.h"

#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hyqec {

NoiseModel NoiseModel::from_p(double p) {
    NoiseModel m;
    m.p = p;
    m.std_init = p;
    m.std_readout = p;
    m.std_1q = p / 10;
    m.std_2q = p;
    m.er_init = 2 * p;
    m.er_readout = 2 * p;
    m.er_1q = p;
    m.er_2q = p;
    m.er_check = p;
    m.heralded_spam = true;
    m.validate();
    return m;
}

void NoiseModel::validate() const {
    for (double r : {std_init, std_readout, std_1q, std_2q, er_init, er_readout, er_1q, er_2q, er_check}) {
        if (!(r >= 0 && r <= 1)) {
            throw std::invalid_argument("noise rates must lie in [0, 1]");
        }
    }
}

const char *op_name(Op op) {
    switch (op) {
        case Op::R:
            return "R";
        case Op::RX:
            return "RX";
        case Op::H:
            return "H";
        case Op::CX:
            return "CX";
        case Op::M:
            return "M";
        case Op::MX:
            return "MX";
        case Op::MR:
            return "MR";
        case Op::X_ERROR:
            return "XERR";
        case Op::Z_ERROR:
            return "ZERR";
        case Op::DEPOLARIZE1:
            return "DEPOL1";
        case Op::DEPOLARIZE2:
            return "DEPOL2";
        case Op::HERALDED_ERASE1:
            return "FLAGERR";
        case Op::HERALDED_ERASE2:
            return "FLAGERR2";
    }
    return "?";
}

bool is_noise(Op op) {
    return op >= Op::X_ERROR;
}

bool is_pair_op(Op op) {
    return op == Op::CX || op == Op::DEPOLARIZE2 || op == Op::HERALDED_ERASE2;
}

bool is_measurement(Op op) {
    return op == Op::M || op == Op::MX || op == Op::MR;
}

const char *to_string(FlagChannel c) {
    switch (c) {
        case FlagChannel::erasure_1q:
            return "erasure_1q";
        case FlagChannel::erasure_2q_erasure_side:
            return "erasure_2q_erasure_side";
        case FlagChannel::erasure_2q_mixed:
            return "erasure_2q_mixed";
        case FlagChannel::erasure_check:
            return "erasure_check";
    }
    return "?";
}

namespace {

FlagChannel parse_channel(const std::string &s) {
    for (FlagChannel c : {FlagChannel::erasure_1q, FlagChannel::erasure_2q_erasure_side,
                          FlagChannel::erasure_2q_mixed, FlagChannel::erasure_check}) {
        if (s == to_string(c)) {
            return c;
        }
    }
    throw std::invalid_argument("unknown flag channel '" + s + "'");
}

Op parse_op(const std::string &s) {
    for (int k = 0; k <= static_cast<int>(Op::HERALDED_ERASE2); k++) {
        if (s == op_name(static_cast<Op>(k))) {
            return static_cast<Op>(k);
        }
    }
    throw std::invalid_argument("unknown instruction '" + s + "'");
}

std::string fmt_rate(double r) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", r);
    return buf;
}

}  // namespace

void NoisyCircuit::append(Op op, std::vector<uint32_t> targets, double rate, int time_step, FlagChannel channel) {
    if (targets.empty()) {
        return;
    }
    if (is_pair_op(op) && targets.size() % 2 != 0) {
        throw std::invalid_argument(std::string(op_name(op)) + " needs an even number of targets");
    }
    if (channel == FlagChannel::erasure_2q_erasure_side) {
        // Two erasure qubits never share a gate: ancillas are always standard.
        throw std::logic_error("a gate between two erasure qubits is not part of this architecture");
    }
    Instruction inst{op, std::move(targets), rate, 0, time_step};
    if (op == Op::HERALDED_ERASE1 || op == Op::HERALDED_ERASE2) {
        inst.flag_base = num_flags();
        bool pair = op == Op::HERALDED_ERASE2;
        for (size_t g = 0; g < inst.num_groups(); g++) {
            FlagSite site;
            site.flag_id = num_flags();
            site.time_step = time_step;
            site.qubits = {static_cast<int32_t>(inst.targets[pair ? 2 * g : g]),
                           pair ? static_cast<int32_t>(inst.targets[2 * g + 1]) : -1};
            site.channel = channel;
            site.rate = rate;
            flags.push_back(site);
        }
    }
    if (is_measurement(op)) {
        num_measurements += static_cast<uint32_t>(inst.targets.size());
    }
    instructions.push_back(std::move(inst));
}

NoisyCircuit NoisyCircuit::without_noise() const {
    NoisyCircuit out = *this;
    for (auto &inst : out.instructions) {
        if (is_noise(inst.op)) {
            inst.rate = 0;
        }
    }
    for (auto &f : out.flags) {
        f.rate = 0;
    }
    return out;
}

void NoisyCircuit::validate() const {
    uint32_t meas = 0, flag_count = 0;
    for (const auto &inst : instructions) {
        for (uint32_t q : inst.targets) {
            if (q >= num_qubits) {
                throw std::invalid_argument("instruction targets qubit " + std::to_string(q) + " out of range");
            }
        }
        if (is_noise(inst.op) && !(inst.rate >= 0 && inst.rate <= 1)) {
            throw std::invalid_argument("noise rate out of [0, 1]");
        }
        if (inst.op == Op::HERALDED_ERASE1 || inst.op == Op::HERALDED_ERASE2) {
            if (inst.flag_base != flag_count) {
                throw std::invalid_argument("flag ids must be dense and in instruction order");
            }
            flag_count += static_cast<uint32_t>(inst.num_groups());
        }
        if (is_measurement(inst.op)) {
            meas += static_cast<uint32_t>(inst.targets.size());
        }
    }
    if (meas != num_measurements || flag_count != flags.size()) {
        throw std::invalid_argument("measurement or flag registry out of sync with instructions");
    }
    for (const auto &det : detectors) {
        for (uint32_t m : det.measurements) {
            if (m >= num_measurements) {
                throw std::invalid_argument("detector references a missing measurement");
            }
        }
    }
    for (uint32_t m : observable) {
        if (m >= num_measurements) {
            throw std::invalid_argument("observable references a missing measurement");
        }
    }
}

std::string NoisyCircuit::str() const {
    std::ostringstream out;
    out << "QUBITS " << num_qubits << "\n";
    out << "BASIS " << to_string(basis) << "\n";
    for (const auto &inst : instructions) {
        bool pair = is_pair_op(inst.op);
        for (size_t g = 0; g < inst.num_groups(); g++) {
            out << op_name(inst.op) << " " << inst.time_step;
            if (pair) {
                out << " " << inst.targets[2 * g] << " " << inst.targets[2 * g + 1];
            } else {
                out << " " << inst.targets[g];
            }
            if (is_noise(inst.op)) {
                out << " " << fmt_rate(inst.rate);
            }
            if (inst.op == Op::HERALDED_ERASE1 || inst.op == Op::HERALDED_ERASE2) {
                uint32_t id = inst.flag_base + static_cast<uint32_t>(g);
                out << " " << id << " " << to_string(flags[id].channel);
            }
            out << "\n";
        }
    }
    for (const auto &det : detectors) {
        out << "DETECTOR " << to_string(det.type) << " " << det.round << " " << det.corner.row << " "
            << det.corner.col << " :";
        for (uint32_t m : det.measurements) {
            out << " " << m;
        }
        out << "\n";
    }
    out << "OBSERVABLE";
    for (uint32_t m : observable) {
        out << " " << m;
    }
    out << "\n";
    return out.str();
}

NoisyCircuit NoisyCircuit::parse(const std::string &text) {
    NoisyCircuit c;
    std::istringstream in(text);
    std::string line;
    // Consecutive lines with equal (op, time step, rate, channel) form one instruction.
    struct Pending {
        bool active = false;
        Op op{};
        int t = 0;
        double rate = 0;
        FlagChannel channel = FlagChannel::erasure_1q;
        std::vector<uint32_t> targets;
    } pending;
    auto flush = [&]() {
        if (pending.active) {
            c.append(pending.op, std::move(pending.targets), pending.rate, pending.t, pending.channel);
        }
        pending = Pending{};
    };
    size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word) || word[0] == '#') {
            continue;
        }
        try {
            if (word == "QUBITS") {
                ls >> c.num_qubits;
                continue;
            }
            if (word == "BASIS") {
                std::string b;
                ls >> b;
                c.basis = b == "X" ? LogicalBasis::x : LogicalBasis::z;
                continue;
            }
            if (word == "DETECTOR") {
                flush();
                Detector det;
                std::string type, colon;
                ls >> type >> det.round >> det.corner.row >> det.corner.col >> colon;
                det.type = type == "X" ? PauliType::X : PauliType::Z;
                uint32_t m;
                while (ls >> m) {
                    det.measurements.push_back(m);
                }
                c.detectors.push_back(std::move(det));
                continue;
            }
            if (word == "OBSERVABLE") {
                flush();
                uint32_t m;
                while (ls >> m) {
                    c.observable.push_back(m);
                }
                continue;
            }
            Op op = parse_op(word);
            int t;
            ls >> t;
            std::vector<uint32_t> qs(is_pair_op(op) ? 2 : 1);
            for (auto &q : qs) {
                ls >> q;
            }
            double rate = 0;
            FlagChannel channel = FlagChannel::erasure_1q;
            if (is_noise(op)) {
                ls >> rate;
            }
            if (op == Op::HERALDED_ERASE1 || op == Op::HERALDED_ERASE2) {
                uint32_t id;
                std::string ch;
                ls >> id >> ch;
                channel = parse_channel(ch);
            }
            if (ls.fail()) {
                throw std::invalid_argument("malformed operands");
            }
            if (!(pending.active && pending.op == op && pending.t == t && pending.rate == rate &&
                  pending.channel == channel) ||
                is_measurement(op) != is_measurement(pending.op)) {
                flush();
                pending.active = true;
                pending.op = op;
                pending.t = t;
                pending.rate = rate;
                pending.channel = channel;
            }
            pending.targets.insert(pending.targets.end(), qs.begin(), qs.end());
        } catch (const std::invalid_argument &e) {
            throw std::invalid_argument("circuit line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    flush();
    c.validate();
    return c;
}

std::ostream &operator<<(std::ostream &out, const NoisyCircuit &c) {
    return out << c.str();
}

namespace {

struct QubitSets {
    std::vector<uint32_t> std_data, er_data, ancillas, x_ancillas;
    std::vector<bool> erasure;  // by data id
};

QubitSets classify(const SurfaceCodeLayout &layout, const ArchitectureSpec &spec) {
    if (spec.d != layout.distance()) {
        throw std::invalid_argument("placement distance does not match the layout");
    }
    QubitSets s;
    s.erasure = spec.erasure_mask();
    for (uint32_t q = 0; q < layout.num_data(); q++) {
        (s.erasure[q] ? s.er_data : s.std_data).push_back(q);
    }
    for (const auto &pl : layout.plaquettes()) {
        s.ancillas.push_back(pl.ancilla);
        if (pl.type == PauliType::X) {
            s.x_ancillas.push_back(pl.ancilla);
        }
    }
    return s;
}

std::vector<uint32_t> concat(std::vector<uint32_t> a, const std::vector<uint32_t> &b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

PauliType basis_type(LogicalBasis basis) {
    return basis == LogicalBasis::z ? PauliType::Z : PauliType::X;
}

/// Final transversal data measurement plus the observable. Returns the
/// measurement index of each data qubit.
std::vector<uint32_t> measure_data(NoisyCircuit &c, const SurfaceCodeLayout &layout, LogicalBasis basis, int t) {
    std::vector<uint32_t> data(layout.num_data());
    for (uint32_t q = 0; q < layout.num_data(); q++) {
        data[q] = q;
    }
    uint32_t base = c.num_measurements;
    c.append(basis == LogicalBasis::z ? Op::M : Op::MX, data, 0, t);
    std::vector<uint32_t> index(layout.num_data());
    for (uint32_t q = 0; q < layout.num_data(); q++) {
        index[q] = base + q;
    }
    for (uint32_t q : layout.observable_support(basis)) {
        c.observable.push_back(index[q]);
    }
    return index;
}

}  // namespace

NoisyCircuit build_memory_circuit(const SurfaceCodeLayout &layout, const ArchitectureSpec &spec,
                                  const NoiseModel &noise, int rounds, LogicalBasis basis) {
    if (rounds < 1) {
        throw std::invalid_argument("a memory experiment needs at least one round");
    }
    noise.validate();
    QubitSets s = classify(layout, spec);
    NoisyCircuit c;
    c.num_qubits = layout.num_qubits();
    c.basis = basis;
    const bool zb = basis == LogicalBasis::z;
    const Op data_flip = zb ? Op::X_ERROR : Op::Z_ERROR;
    const auto &plaqs = layout.plaquettes();

    auto erasure_check = [&](int t) {
        c.append(Op::HERALDED_ERASE1, s.er_data, noise.er_check, t, FlagChannel::erasure_check);
    };

    int t = 0;
    std::vector<uint32_t> all_data = concat(s.std_data, s.er_data);
    c.append(zb ? Op::R : Op::RX, all_data, 0, t);
    c.append(Op::R, s.ancillas, 0, t);
    c.append(data_flip, s.std_data, noise.std_init, t);
    if (noise.heralded_spam) {
        c.append(Op::HERALDED_ERASE1, s.er_data, noise.er_init, t, FlagChannel::erasure_1q);
    } else {
        c.append(data_flip, s.er_data, noise.er_init, t);
    }
    c.append(Op::X_ERROR, s.ancillas, noise.std_init, t);
    erasure_check(t);

    std::vector<std::vector<uint32_t>> meas(rounds + 1);  // meas[r][plaquette index]
    for (int r = 1; r <= rounds; r++) {
        t++;
        c.append(Op::H, s.x_ancillas, 0, t);
        c.append(Op::DEPOLARIZE1, s.x_ancillas, noise.std_1q, t);
        erasure_check(t);
        for (int layer = 0; layer < 4; layer++) {
            t++;
            std::vector<uint32_t> cx, std_pairs, er_pairs;
            for (const auto &pl : plaqs) {
                int32_t q = pl.schedule[layer];
                if (q < 0) {
                    continue;
                }
                uint32_t dq = static_cast<uint32_t>(q);
                if (pl.type == PauliType::Z) {
                    cx.insert(cx.end(), {dq, pl.ancilla});
                } else {
                    cx.insert(cx.end(), {pl.ancilla, dq});
                }
                auto &bucket = s.erasure[dq] ? er_pairs : std_pairs;
                bucket.insert(bucket.end(), {dq, pl.ancilla});
            }
            c.append(Op::CX, cx, 0, t);
            c.append(Op::DEPOLARIZE2, std_pairs, noise.std_2q, t);
            c.append(Op::HERALDED_ERASE2, er_pairs, noise.er_2q, t, FlagChannel::erasure_2q_mixed);
            erasure_check(t);
        }
        t++;
        c.append(Op::H, s.x_ancillas, 0, t);
        c.append(Op::DEPOLARIZE1, s.x_ancillas, noise.std_1q, t);
        erasure_check(t);
        t++;
        c.append(Op::X_ERROR, s.ancillas, noise.std_readout, t);
        uint32_t base = c.num_measurements;
        c.append(Op::MR, s.ancillas, 0, t);
        if (r < rounds) {
            c.append(Op::X_ERROR, s.ancillas, noise.std_init, t);
        }
        erasure_check(t);
        for (size_t i = 0; i < plaqs.size(); i++) {
            meas[r].push_back(base + static_cast<uint32_t>(i));
        }
        for (size_t i = 0; i < plaqs.size(); i++) {
            const auto &pl = plaqs[i];
            if (r == 1) {
                if (pl.type == basis_type(basis)) {
                    c.detectors.push_back({{meas[1][i]}, pl.type, 1, pl.corner});
                }
            } else {
                c.detectors.push_back({{meas[r - 1][i], meas[r][i]}, pl.type, r, pl.corner});
            }
        }
    }

    t++;
    c.append(data_flip, s.std_data, noise.std_readout, t);
    if (noise.heralded_spam) {
        c.append(Op::HERALDED_ERASE1, s.er_data, noise.er_readout, t, FlagChannel::erasure_1q);
    } else {
        c.append(data_flip, s.er_data, noise.er_readout, t);
    }
    auto data_meas = measure_data(c, layout, basis, t);
    for (size_t i = 0; i < plaqs.size(); i++) {
        const auto &pl = plaqs[i];
        if (pl.type != basis_type(basis)) {
            continue;
        }
        Detector det{{}, pl.type, rounds + 1, pl.corner};
        for (uint32_t q : pl.support()) {
            det.measurements.push_back(data_meas[q]);
        }
        det.measurements.push_back(meas[rounds][i]);
        c.detectors.push_back(std::move(det));
    }
    c.validate();
    return c;
}

NoisyCircuit build_capacity_circuit(const SurfaceCodeLayout &layout, const ArchitectureSpec &spec, double p,
                                    LogicalBasis basis) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("physical error rate must lie in [0, 1]");
    }
    QubitSets s = classify(layout, spec);
    NoisyCircuit c;
    c.num_qubits = layout.num_qubits();
    c.basis = basis;
    const bool zb = basis == LogicalBasis::z;
    const auto &plaqs = layout.plaquettes();

    int t = 0;
    c.append(zb ? Op::R : Op::RX, concat(s.std_data, s.er_data), 0, t);
    c.append(Op::R, s.ancillas, 0, t);
    t++;
    c.append(Op::DEPOLARIZE1, s.std_data, p, t);
    c.append(Op::HERALDED_ERASE1, s.er_data, p, t, FlagChannel::erasure_1q);

    t++;
    c.append(Op::H, s.x_ancillas, 0, t);
    for (int layer = 0; layer < 4; layer++) {
        t++;
        std::vector<uint32_t> cx;
        for (const auto &pl : plaqs) {
            int32_t q = pl.schedule[layer];
            if (q < 0) {
                continue;
            }
            if (pl.type == PauliType::Z) {
                cx.insert(cx.end(), {static_cast<uint32_t>(q), pl.ancilla});
            } else {
                cx.insert(cx.end(), {pl.ancilla, static_cast<uint32_t>(q)});
            }
        }
        c.append(Op::CX, cx, 0, t);
    }
    t++;
    c.append(Op::H, s.x_ancillas, 0, t);
    t++;
    uint32_t base = c.num_measurements;
    c.append(Op::MR, s.ancillas, 0, t);
    for (size_t i = 0; i < plaqs.size(); i++) {
        if (plaqs[i].type == basis_type(basis)) {
            c.detectors.push_back({{base + static_cast<uint32_t>(i)}, plaqs[i].type, 1, plaqs[i].corner});
        }
    }
    t++;
    measure_data(c, layout, basis, t);
    c.validate();
    return c;
}

}  // namespace hyqec
