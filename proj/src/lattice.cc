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

#include "hyqec/lattice.h"

#include <stdexcept>

namespace hyqec {

const char *to_string(PauliType t) {
    return t == PauliType::X ? "X" : "Z";
}

const char *to_string(LogicalBasis b) {
    return b == LogicalBasis::z ? "Z" : "X";
}

const char *to_string(Axis a) {
    return a == Axis::rows ? "rows" : "cols";
}

std::vector<uint32_t> Plaquette::support() const {
    std::vector<uint32_t> out;
    for (int32_t q : schedule) {
        if (q >= 0) {
            out.push_back(static_cast<uint32_t>(q));
        }
    }
    return out;
}

SurfaceCodeLayout::SurfaceCodeLayout(int d) : d_(d) {
    if (d < 3 || d > 15 || d % 2 == 0) {
        throw std::invalid_argument("surface code distance must be odd and in [3, 15], got " + std::to_string(d));
    }

    // Corner offsets: NW, NE, SW, SE relative to corner (i, j).
    constexpr int kNW = 0, kNE = 1, kSW = 2, kSE = 3;
    constexpr std::array<int, 4> z_order{kNW, kNE, kSW, kSE};
    constexpr std::array<int, 4> x_order{kNW, kSW, kNE, kSE};

    uint32_t next_ancilla = num_data();
    for (int i = 0; i <= d; i++) {
        for (int j = 0; j <= d; j++) {
            PauliType type = (i + j) % 2 == 0 ? PauliType::X : PauliType::Z;
            bool interior = i > 0 && i < d && j > 0 && j < d;
            bool top_bottom = (i == 0 || i == d) && j > 0 && j < d;
            bool left_right = (j == 0 || j == d) && i > 0 && i < d;
            bool keep = interior || (top_bottom && type == PauliType::Z) || (left_right && type == PauliType::X);
            if (!keep) {
                continue;
            }
            std::array<int32_t, 4> corners{};
            const std::array<std::pair<int, int>, 4> offsets{{{i - 1, j - 1}, {i - 1, j}, {i, j - 1}, {i, j}}};
            for (int k = 0; k < 4; k++) {
                auto [r, c] = offsets[k];
                corners[k] = (r >= 0 && r < d && c >= 0 && c < d) ? r * d + c : -1;
            }
            Plaquette p{type, next_ancilla++, {i, j}, {}};
            const auto &order = type == PauliType::Z ? z_order : x_order;
            for (int t = 0; t < 4; t++) {
                p.schedule[t] = corners[order[t]];
            }
            plaquettes_.push_back(p);
        }
    }

    for (int k = 0; k < d; k++) {
        logical_z_.push_back(data_id({k, 0}));
        logical_x_.push_back(data_id({0, k}));
    }
}

std::vector<const Plaquette *> SurfaceCodeLayout::stabilizers(PauliType type) const {
    std::vector<const Plaquette *> out;
    for (const auto &p : plaquettes_) {
        if (p.type == type) {
            out.push_back(&p);
        }
    }
    return out;
}

nlohmann::json SurfaceCodeLayout::to_json() const {
    using nlohmann::json;
    auto coord = [&](uint32_t q) {
        Coord c = data_coord(q);
        return json::array({c.row, c.col});
    };
    json out;
    out["d"] = d_;
    json data = json::array();
    for (uint32_t q = 0; q < num_data(); q++) {
        data.push_back(coord(q));
    }
    out["data_qubits"] = data;
    for (PauliType type : {PauliType::X, PauliType::Z}) {
        json list = json::array();
        for (const Plaquette *p : stabilizers(type)) {
            json support = json::array();
            for (uint32_t q : p->support()) {
                support.push_back(coord(q));
            }
            list.push_back({{"ancilla", p->ancilla}, {"corner", {p->corner.row, p->corner.col}}, {"data", support}});
        }
        out[type == PauliType::X ? "x_stabilizers" : "z_stabilizers"] = list;
    }
    json lx = json::array(), lz = json::array();
    for (uint32_t q : logical_x_) {
        lx.push_back(coord(q));
    }
    for (uint32_t q : logical_z_) {
        lz.push_back(coord(q));
    }
    out["logical_x"] = lx;
    out["logical_z"] = lz;
    json schedule = json::array();
    for (const auto &p : plaquettes_) {
        json order = json::array();
        for (int32_t q : p.schedule) {
            order.push_back(q >= 0 ? coord(static_cast<uint32_t>(q)) : json(nullptr));
        }
        schedule.push_back({{"ancilla", p.ancilla}, {"type", to_string(p.type)}, {"order", order}});
    }
    out["schedule"] = schedule;
    return out;
}

SurfaceCodeLayout build_layout(int d) {
    return SurfaceCodeLayout(d);
}

Axis traversing_support(const SurfaceCodeLayout &layout, LogicalBasis basis) {
    // A chain failing the Z memory is equivalent to X-bar, and vice versa.
    const auto &chain = basis == LogicalBasis::z ? layout.logical_x_support() : layout.logical_z_support();
    Coord first = layout.data_coord(chain.front());
    bool same_row = true;
    for (uint32_t q : chain) {
        same_row &= layout.data_coord(q).row == first.row;
    }
    return same_row ? Axis::cols : Axis::rows;
}

Axis crossing_axis(LogicalBasis basis) {
    return basis == LogicalBasis::z ? Axis::cols : Axis::rows;
}

}  // namespace hyqec
