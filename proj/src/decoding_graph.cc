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

#include "hyqec/decoding_graph.h"

#include <algorithm>
#include <iterator>
#include <map>
#include <stdexcept>

#include "hyqec/frame_simulator.h"

namespace hyqec {

double GraphEdge::flags_off_weight() const {
    if (flag_ids.empty()) {
        return weight;
    }
    if (unheralded_probability > 0) {
        return std::min(kMaxEdgeWeight, probability_weight(unheralded_probability));
    }
    return kMaxEdgeWeight;
}

DecodingGraph::DecodingGraph(PauliType type, std::vector<uint32_t> node_detectors)
    : type_(type), node_detectors_(std::move(node_detectors)), adjacency_(node_detectors_.size() + 1) {
}

int DecodingGraph::find_edge(int a, int b) const {
    if (a < 0 || a >= num_nodes() || b < 0 || b >= num_nodes()) {
        return -1;
    }
    for (uint32_t e : adjacency_[a]) {
        if ((edges_[e].u == a && edges_[e].v == b) || (edges_[e].u == b && edges_[e].v == a)) {
            return static_cast<int>(e);
        }
    }
    return -1;
}

uint32_t DecodingGraph::add_mechanism(int a, int b, double probability, bool observable, bool heralded) {
    if (a == b || a < 0 || b < 0 || a >= num_nodes() || b >= num_nodes()) {
        throw std::invalid_argument("decoding graph edge endpoints are invalid");
    }
    if (a > b) {
        std::swap(a, b);
    }
    auto merge = [](double p1, double p2) { return p1 * (1 - p2) + p2 * (1 - p1); };
    int found = find_edge(a, b);
    uint32_t e;
    if (found < 0) {
        e = static_cast<uint32_t>(edges_.size());
        GraphEdge edge;
        edge.u = a;
        edge.v = b;
        edge.observable = observable;
        edges_.push_back(edge);
        adjacency_[a].push_back(e);
        adjacency_[b].push_back(e);
    } else {
        e = static_cast<uint32_t>(found);
        if (edges_[e].observable != observable) {
            throw std::invalid_argument("two error mechanisms on one edge disagree about the observable");
        }
    }
    GraphEdge &edge = edges_[e];
    edge.probability = merge(edge.probability, probability);
    if (!heralded) {
        edge.unheralded_probability = merge(edge.unheralded_probability, probability);
    }
    edge.weight = probability_weight(edge.probability);
    return e;
}

void DecodingGraph::add_flag(uint32_t edge, uint32_t flag_id) {
    auto &ids = edges_[edge].flag_ids;
    auto it = std::lower_bound(ids.begin(), ids.end(), flag_id);
    if (it == ids.end() || *it != flag_id) {
        ids.insert(it, flag_id);
    }
}

bool DecodingGraph::has_observable() const {
    return std::any_of(edges_.begin(), edges_.end(), [](const GraphEdge &e) { return e.observable; });
}

nlohmann::json DecodingGraph::to_json() const {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto &e : edges_) {
        edges.push_back({{"u", e.u},
                         {"v", e.v == boundary() ? nlohmann::json("boundary") : nlohmann::json(e.v)},
                         {"probability", e.probability},
                         {"unheralded_probability", e.unheralded_probability},
                         {"weight", e.weight},
                         {"observable", e.observable},
                         {"flag_ids", e.flag_ids}});
    }
    return {{"type", to_string(type_)}, {"nodes", node_detectors_}, {"boundary", boundary()}, {"edges", edges}};
}

namespace {

struct Outcome {
    std::vector<unsigned> paulis;  // per qubit of the group; bit 0 X, bit 1 Z
    double probability;
};

std::vector<Outcome> channel_outcomes(const Instruction &inst) {
    std::vector<Outcome> out;
    const double r = inst.rate;
    switch (inst.op) {
        case Op::X_ERROR:
            out.push_back({{1}, r});
            break;
        case Op::Z_ERROR:
            out.push_back({{2}, r});
            break;
        case Op::DEPOLARIZE1:
            for (unsigned c = 1; c < 4; c++) {
                out.push_back({{c}, r / 3});
            }
            break;
        case Op::DEPOLARIZE2:
            for (unsigned c = 1; c < 16; c++) {
                out.push_back({{c & 3, c >> 2}, r / 15});
            }
            break;
        case Op::HERALDED_ERASE1:
            for (unsigned c = 1; c < 4; c++) {
                out.push_back({{c}, r / 4});
            }
            break;
        case Op::HERALDED_ERASE2:
            for (unsigned c = 1; c < 16; c++) {
                out.push_back({{c & 3, c >> 2}, r / 16});
            }
            break;
        default:
            break;
    }
    return out;
}

/// Sorted-set symmetric difference.
void xor_into(std::vector<uint32_t> &acc, const std::vector<uint32_t> &add) {
    std::vector<uint32_t> out;
    std::set_symmetric_difference(acc.begin(), acc.end(), add.begin(), add.end(), std::back_inserter(out));
    acc.swap(out);
}

struct Component {
    std::vector<uint32_t> detectors;  // global ids, one detector type only
    bool observable;
};

}  // namespace

DecodingGraphs build_decoding_graphs(const NoisyCircuit &circuit) {
    circuit.validate();
    DecodingGraphs out;
    const PauliType basis_type = circuit.basis == LogicalBasis::z ? PauliType::Z : PauliType::X;
    out.observable_graph = basis_type == PauliType::Z ? 0 : 1;

    std::vector<int> node_of(circuit.detectors.size(), -1);
    std::vector<int> graph_of(circuit.detectors.size(), -1);
    for (int g = 0; g < 2; g++) {
        PauliType t = g == 0 ? PauliType::Z : PauliType::X;
        std::vector<uint32_t> nodes;
        for (uint32_t k = 0; k < circuit.detectors.size(); k++) {
            if (circuit.detectors[k].type == t) {
                node_of[k] = static_cast<int>(nodes.size());
                graph_of[k] = g;
                nodes.push_back(k);
            }
        }
        out.graphs[g] = DecodingGraph(t, std::move(nodes));
    }
    out.flag_index.rate.resize(circuit.num_flags());
    out.flag_index.edges.resize(circuit.num_flags());
    for (const auto &f : circuit.flags) {
        out.flag_index.rate[f.flag_id] = f.rate;
    }

    // One injection per (noise instruction, target slot, X/Z component).
    std::vector<FaultInjection> faults;
    std::vector<size_t> first_fault(circuit.instructions.size(), 0);
    for (uint32_t i = 0; i < circuit.instructions.size(); i++) {
        const auto &inst = circuit.instructions[i];
        first_fault[i] = faults.size();
        if (!is_noise(inst.op) || inst.rate <= 0) {
            continue;
        }
        for (uint32_t q : inst.targets) {
            faults.push_back({i, q, true, false});
            faults.push_back({i, q, false, true});
        }
    }
    const auto sigs = propagate_faults(circuit, faults);

    for (uint32_t i = 0; i < circuit.instructions.size(); i++) {
        const auto &inst = circuit.instructions[i];
        if (!is_noise(inst.op) || inst.rate <= 0) {
            continue;
        }
        const bool heralded = inst.op == Op::HERALDED_ERASE1 || inst.op == Op::HERALDED_ERASE2;
        const size_t width = is_pair_op(inst.op) ? 2 : 1;
        const auto outcomes = channel_outcomes(inst);
        for (size_t grp = 0; grp < inst.num_groups(); grp++) {
            // Per graph: edge (a, b) -> (probability this channel toggles it, observable).
            std::array<std::map<std::pair<int, int>, std::pair<double, bool>>, 2> toggles;
            for (const auto &oc : outcomes) {
                for (int g = 0; g < 2; g++) {
                    const bool carries_obs = g == out.observable_graph;
                    auto restrict = [&](const FaultSignature &s) {
                        Component c{{}, carries_obs && s.observable};
                        for (uint32_t k : s.detectors) {
                            if (graph_of[k] == g) {
                                c.detectors.push_back(k);
                            }
                        }
                        return c;
                    };
                    // Components per qubit and per Pauli bit.
                    std::vector<std::vector<Component>> parts(width);
                    for (size_t s = 0; s < width; s++) {
                        size_t base = first_fault[i] + 2 * (grp * width + s);
                        if (oc.paulis[s] & 1) {
                            parts[s].push_back(restrict(sigs[base]));
                        }
                        if (oc.paulis[s] & 2) {
                            parts[s].push_back(restrict(sigs[base + 1]));
                        }
                    }
                    auto combine = [](const std::vector<Component> &cs) {
                        Component acc{{}, false};
                        for (const auto &c : cs) {
                            xor_into(acc.detectors, c.detectors);
                            acc.observable ^= c.observable;
                        }
                        return acc;
                    };
                    std::vector<Component> pieces;
                    std::vector<Component> all;
                    for (const auto &ps : parts) {
                        all.insert(all.end(), ps.begin(), ps.end());
                    }
                    Component whole = combine(all);
                    if (whole.detectors.size() <= 2) {
                        pieces.push_back(whole);
                    } else {
                        for (const auto &ps : parts) {
                            Component per_qubit = combine(ps);
                            if (per_qubit.detectors.size() <= 2) {
                                pieces.push_back(per_qubit);
                            } else {
                                for (const auto &c : ps) {
                                    if (c.detectors.size() > 2) {
                                        throw std::invalid_argument(
                                            "a fault of " + std::string(op_name(inst.op)) + " at time step " +
                                            std::to_string(inst.time_step) + " flips " +
                                            std::to_string(c.detectors.size()) +
                                            " detectors of one type; the circuit is not graphlike");
                                    }
                                    pieces.push_back(c);
                                }
                            }
                        }
                    }
                    // Edges toggled by this outcome (duplicates cancel).
                    std::map<std::pair<int, int>, bool> hit;
                    for (const auto &c : pieces) {
                        if (c.detectors.empty()) {
                            if (c.observable) {
                                throw std::invalid_argument("a single fault flips the observable without any detector");
                            }
                            continue;
                        }
                        int a = node_of[c.detectors[0]];
                        int b = c.detectors.size() == 2 ? node_of[c.detectors[1]] : out.graphs[g].boundary();
                        auto key = std::make_pair(std::min(a, b), std::max(a, b));
                        auto it = hit.find(key);
                        if (it == hit.end()) {
                            hit[key] = c.observable;
                        } else {
                            hit.erase(it);
                        }
                    }
                    for (const auto &[key, obs] : hit) {
                        auto it = toggles[g].find(key);
                        if (it == toggles[g].end()) {
                            toggles[g][key] = {oc.probability, obs};
                        } else {
                            if (it->second.second != obs) {
                                throw std::invalid_argument(
                                    "two error mechanisms on one edge disagree about the observable");
                            }
                            it->second.first += oc.probability;
                        }
                    }
                }
            }
            for (int g = 0; g < 2; g++) {
                for (const auto &[key, val] : toggles[g]) {
                    uint32_t e = out.graphs[g].add_mechanism(key.first, key.second, val.first, val.second, heralded);
                    if (heralded) {
                        uint32_t flag = inst.flag_base + static_cast<uint32_t>(grp);
                        out.graphs[g].add_flag(e, flag);
                        out.flag_index.edges[flag].push_back({static_cast<uint8_t>(g), e, val.first});
                    }
                }
            }
        }
    }
    return out;
}

double erasure_reweight(const std::vector<double> &probs, size_t e_index) {
    if (probs.empty() || e_index >= probs.size()) {
        throw std::invalid_argument("erasure reweight needs a member of a non-empty set");
    }
    double total = 0;
    for (double p : probs) {
        if (!(p > 0)) {
            throw std::invalid_argument("erasure reweight needs positive probabilities");
        }
        total += p;
    }
    double pe = probs[e_index];
    double rest = total - pe;
    if (!(rest > 0)) {
        return -kMaxEdgeWeight;
    }
    return std::clamp(std::log(rest / pe), -kMaxEdgeWeight, kMaxEdgeWeight);
}

double ShotView::weight(uint32_t edge) const {
    auto it = std::lower_bound(overrides.begin(), overrides.end(), std::make_pair(edge, -1e300));
    if (it != overrides.end() && it->first == edge) {
        return it->second;
    }
    return graph->edges()[edge].flags_off_weight();
}

ShotView apply_erasure_info(const DecodingGraphs &graphs, int g, const std::vector<uint32_t> &raised_flags) {
    ShotView view;
    view.graph = &graphs.graphs[g];
    const auto &edges = view.graph->edges();
    for (uint32_t f : raised_flags) {
        if (f >= graphs.flag_index.size()) {
            throw std::invalid_argument("raised flag id out of range");
        }
        double rate = graphs.flag_index.rate[f];
        for (const auto &ref : graphs.flag_index.edges[f]) {
            if (ref.graph != g) {
                continue;
            }
            double w;
            if (rate - ref.p_e > 1e-15 * rate) {
                w = erasure_reweight({ref.p_e, rate - ref.p_e}, 0);
            } else {
                w = -kMaxEdgeWeight;
            }
            const GraphEdge &edge = edges[ref.edge];
            if (edge.unheralded_probability > 0) {
                w = std::min(w, edge.flags_off_weight());
            }
            view.overrides.push_back({ref.edge, w});
        }
    }
    std::sort(view.overrides.begin(), view.overrides.end());
    // Keep the smallest weight per edge.
    auto last = std::unique(view.overrides.begin(), view.overrides.end(),
                            [](const auto &a, const auto &b) { return a.first == b.first; });
    view.overrides.erase(last, view.overrides.end());
    return view;
}

}  // namespace hyqec
