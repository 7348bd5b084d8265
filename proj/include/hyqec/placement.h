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

#ifndef HYQEC_PLACEMENT_H
#define HYQEC_PLACEMENT_H

#include <cstdint>
#include <string>
#include <vector>

#include "hyqec/lattice.h"
#include "json.hpp"

namespace hyqec {

/// A hybrid-erasure architecture: distance, erasure fraction budget, and the
/// set of data qubits implemented as erasure qubits. Ancillas are always standard.
struct ArchitectureSpec {
    int d = 3;
    double f_e = 0;
    std::vector<Coord> erasures;  // sorted, unique
    std::string strategy;

    bool is_erasure(Coord c) const;
    /// Mask indexed by data qubit id (row * d + col).
    std::vector<bool> erasure_mask() const;
    size_t num_erasures() const {
        return erasures.size();
    }

    /// Throws std::invalid_argument when coordinates fall outside the grid,
    /// repeat, or the count disagrees with erasure_budget(d, f_e).
    void validate() const;

    nlohmann::json to_json() const;
    static ArchitectureSpec from_json(const nlohmann::json &j);
};

enum class LineKind : uint8_t { rows, cols, diagonals, cross, alternating_lines, consecutive_lines };

const char *to_string(LineKind kind);
LineKind parse_line_kind(const std::string &name);

/// Structured placement made of whole grid lines.
///
/// rows / cols: `count` consecutive full lines, center-out.
/// diagonals: `count` main-direction diagonals (row - col = const), center-out.
/// cross: `count` full rows and `count` full columns sharing the center.
/// consecutive_lines / alternating_lines: `count` lines along `axis`, either
/// adjacent or spaced by one, centered on the grid.
struct LinePattern {
    LineKind kind = LineKind::rows;
    int count = 0;
    Axis axis = Axis::rows;
};

/// floor(f_e * d^2). A 1e-9 slack absorbs binary rounding of decimal fractions.
int erasure_budget(int d, double f_e);

/// Largest k with 2kd - k^2 <= budget.
int max_full_lines(int d, int budget);

/// Line indices in center-out order: c, c-1, c+1, c-2, c+2, ...
std::vector<int> center_out_lines(int d);

ArchitectureSpec optimized_placement(int d, double f_e);
ArchitectureSpec random_placement(int d, double f_e, uint64_t seed);
ArchitectureSpec pattern_placement(int d, const LinePattern &pattern);

/// Fewest erasure qubits met by any minimum-length traversing chain for the
/// given memory (one qubit per crossed line, transverse steps in {-1, 0, 1}).
int min_erasures_per_path(const ArchitectureSpec &spec, LogicalBasis basis);

}  // namespace hyqec

#endif
