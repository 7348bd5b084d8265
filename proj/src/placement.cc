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

#include "hyqec/placement.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

#include "hyqec/rng.h"

namespace hyqec {

namespace {

void check_distance(int d) {
    if (d < 1 || d % 2 == 0) {
        throw std::invalid_argument("placement distance must be odd and positive, got " + std::to_string(d));
    }
}

ArchitectureSpec from_mask(int d, const std::vector<bool> &mask, std::string strategy) {
    ArchitectureSpec spec;
    spec.d = d;
    spec.strategy = std::move(strategy);
    for (int r = 0; r < d; r++) {
        for (int c = 0; c < d; c++) {
            if (mask[r * d + c]) {
                spec.erasures.push_back({r, c});
            }
        }
    }
    spec.f_e = static_cast<double>(spec.erasures.size()) / (d * d);
    return spec;
}

}  // namespace

bool ArchitectureSpec::is_erasure(Coord c) const {
    return std::binary_search(erasures.begin(), erasures.end(), c);
}

std::vector<bool> ArchitectureSpec::erasure_mask() const {
    std::vector<bool> mask(d * d, false);
    for (Coord c : erasures) {
        mask[c.row * d + c.col] = true;
    }
    return mask;
}

void ArchitectureSpec::validate() const {
    check_distance(d);
    if (!(f_e >= 0 && f_e <= 1)) {
        throw std::invalid_argument("erasure fraction must lie in [0, 1]");
    }
    for (size_t k = 0; k < erasures.size(); k++) {
        Coord c = erasures[k];
        if (c.row < 0 || c.row >= d || c.col < 0 || c.col >= d) {
            throw std::invalid_argument("erasure coordinate outside the grid");
        }
        if (k > 0 && !(erasures[k - 1] < c)) {
            throw std::invalid_argument("erasure coordinates must be sorted and unique");
        }
    }
    if (static_cast<int>(erasures.size()) != erasure_budget(d, f_e)) {
        throw std::invalid_argument(
            "placement holds " + std::to_string(erasures.size()) + " erasures but the budget is " +
            std::to_string(erasure_budget(d, f_e)));
    }
}

nlohmann::json ArchitectureSpec::to_json() const {
    nlohmann::json list = nlohmann::json::array();
    for (Coord c : erasures) {
        list.push_back({c.row, c.col});
    }
    return {{"d", d}, {"f_e", f_e}, {"strategy", strategy}, {"erasures", list}};
}

ArchitectureSpec ArchitectureSpec::from_json(const nlohmann::json &j) {
    ArchitectureSpec spec;
    spec.d = j.at("d").get<int>();
    spec.f_e = j.at("f_e").get<double>();
    spec.strategy = j.value("strategy", std::string("custom"));
    for (const auto &e : j.at("erasures")) {
        spec.erasures.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    }
    std::sort(spec.erasures.begin(), spec.erasures.end());
    spec.validate();
    return spec;
}

const char *to_string(LineKind kind) {
    switch (kind) {
        case LineKind::rows:
            return "rows";
        case LineKind::cols:
            return "cols";
        case LineKind::diagonals:
            return "diagonals";
        case LineKind::cross:
            return "cross";
        case LineKind::alternating_lines:
            return "alternating_lines";
        case LineKind::consecutive_lines:
            return "consecutive_lines";
    }
    return "?";
}

LineKind parse_line_kind(const std::string &name) {
    for (LineKind k : {LineKind::rows, LineKind::cols, LineKind::diagonals, LineKind::cross,
                       LineKind::alternating_lines, LineKind::consecutive_lines}) {
        if (name == to_string(k)) {
            return k;
        }
    }
    throw std::invalid_argument("unknown line pattern '" + name + "'");
}

int erasure_budget(int d, double f_e) {
    if (!(f_e >= 0 && f_e <= 1)) {
        throw std::invalid_argument("erasure fraction must lie in [0, 1]");
    }
    int n = d * d;
    return std::min(n, static_cast<int>(std::floor(f_e * n + 1e-9)));
}

int max_full_lines(int d, int budget) {
    int k = 0;
    while (k < d && 2 * (k + 1) * d - (k + 1) * (k + 1) <= budget) {
        k++;
    }
    return k;
}

std::vector<int> center_out_lines(int d) {
    int c = (d - 1) / 2;
    std::vector<int> out{c};
    for (int off = 1; off <= c; off++) {
        out.push_back(c - off);
        out.push_back(c + off);
    }
    return out;
}

ArchitectureSpec optimized_placement(int d, double f_e) {
    check_distance(d);
    int budget = erasure_budget(d, f_e);
    int k = max_full_lines(d, budget);
    std::vector<bool> mask(d * d, false);
    auto lines = center_out_lines(d);
    for (int t = 0; t < k; t++) {
        for (int x = 0; x < d; x++) {
            mask[lines[t] * d + x] = true;
            mask[x * d + lines[t]] = true;
        }
    }
    int placed = 2 * k * d - k * k;

    // Remaining sites sorted by Manhattan distance to the center, then (row, col).
    int c = (d - 1) / 2;
    std::vector<std::pair<int, Coord>> free_sites;
    for (int r = 0; r < d; r++) {
        for (int col = 0; col < d; col++) {
            if (!mask[r * d + col]) {
                free_sites.push_back({std::abs(r - c) + std::abs(col - c), {r, col}});
            }
        }
    }
    std::sort(free_sites.begin(), free_sites.end());
    for (size_t t = 0; placed < budget; t++, placed++) {
        Coord s = free_sites[t].second;
        mask[s.row * d + s.col] = true;
    }

    ArchitectureSpec spec = from_mask(d, mask, "optimized");
    spec.f_e = f_e;
    return spec;
}

ArchitectureSpec random_placement(int d, double f_e, uint64_t seed) {
    check_distance(d);
    int budget = erasure_budget(d, f_e);
    std::vector<int> ids(d * d);
    for (int i = 0; i < d * d; i++) {
        ids[i] = i;
    }
    // Partial Fisher-Yates with a portable bounded draw.
    std::mt19937_64 rng(mix_seed(seed, 0x706c6163656d656eULL));
    for (int i = 0; i < budget; i++) {
        int j = i + static_cast<int>(bounded_draw(rng, static_cast<uint64_t>(d * d - i)));
        std::swap(ids[i], ids[j]);
    }
    std::vector<bool> mask(d * d, false);
    for (int i = 0; i < budget; i++) {
        mask[ids[i]] = true;
    }
    ArchitectureSpec spec = from_mask(d, mask, "random");
    spec.f_e = f_e;
    return spec;
}

ArchitectureSpec pattern_placement(int d, const LinePattern &pattern) {
    check_distance(d);
    if (pattern.count < 0 || pattern.count > d) {
        throw std::invalid_argument("line count " + std::to_string(pattern.count) + " does not fit a d=" +
                                    std::to_string(d) + " grid");
    }
    std::vector<bool> mask(d * d, false);
    auto set_row = [&](int r) {
        for (int x = 0; x < d; x++) {
            mask[r * d + x] = true;
        }
    };
    auto set_col = [&](int c) {
        for (int x = 0; x < d; x++) {
            mask[x * d + c] = true;
        }
    };
    auto set_line = [&](Axis axis, int index) {
        axis == Axis::rows ? set_row(index) : set_col(index);
    };
    auto lines = center_out_lines(d);
    int n = pattern.count;

    switch (pattern.kind) {
        case LineKind::rows:
        case LineKind::cols:
        case LineKind::consecutive_lines: {
            Axis axis = pattern.kind == LineKind::rows   ? Axis::rows
                        : pattern.kind == LineKind::cols ? Axis::cols
                                                         : pattern.axis;
            for (int t = 0; t < n; t++) {
                set_line(axis, lines[t]);
            }
            break;
        }
        case LineKind::alternating_lines: {
            int start = (d - 1) / 2 - (n - 1);
            if (start < 0) {
                throw std::invalid_argument("at most (d+1)/2 alternating lines fit the grid");
            }
            for (int t = 0; t < n; t++) {
                set_line(pattern.axis, start + 2 * t);
            }
            break;
        }
        case LineKind::diagonals: {
            // Offsets row - col in center-out order: 0, -1, +1, -2, +2, ...
            for (int t = 0; t < n; t++) {
                int off = lines[t] - (d - 1) / 2;
                for (int r = 0; r < d; r++) {
                    int c = r - off;
                    if (c >= 0 && c < d) {
                        mask[r * d + c] = true;
                    }
                }
            }
            break;
        }
        case LineKind::cross: {
            for (int t = 0; t < n; t++) {
                set_row(lines[t]);
                set_col(lines[t]);
            }
            break;
        }
    }
    std::string tag = to_string(pattern.kind);
    if (pattern.kind == LineKind::alternating_lines || pattern.kind == LineKind::consecutive_lines) {
        tag += std::string("_") + to_string(pattern.axis);
    }
    return from_mask(d, mask, tag + "_" + std::to_string(n));
}

int min_erasures_per_path(const ArchitectureSpec &spec, LogicalBasis basis) {
    int d = spec.d;
    auto mask = spec.erasure_mask();
    bool cross_cols = crossing_axis(basis) == Axis::cols;
    // cost(line, transverse) for the line-by-line dynamic program.
    auto cost = [&](int line, int t) {
        return cross_cols ? static_cast<int>(mask[t * d + line]) : static_cast<int>(mask[line * d + t]);
    };
    std::vector<int> best(d), next(d);
    for (int t = 0; t < d; t++) {
        best[t] = cost(0, t);
    }
    for (int line = 1; line < d; line++) {
        for (int t = 0; t < d; t++) {
            int m = best[t];
            if (t > 0) {
                m = std::min(m, best[t - 1]);
            }
            if (t + 1 < d) {
                m = std::min(m, best[t + 1]);
            }
            next[t] = m + cost(line, t);
        }
        best.swap(next);
    }
    return *std::min_element(best.begin(), best.end());
}

}  // namespace hyqec
