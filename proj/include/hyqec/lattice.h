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

#ifndef HYQEC_LATTICE_H
#define HYQEC_LATTICE_H

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace hyqec {

/// Position of a data qubit on the d x d grid.
struct Coord {
    int row = 0;
    int col = 0;
    auto operator<=>(const Coord &) const = default;
};

enum class PauliType : uint8_t { X, Z };

/// Which logical observable a memory experiment protects.
///
/// `z` is the Z-basis memory: it fails when a chain of X errors flips the
/// Z-bar measurement. `x` is the X-basis memory, failed by Z-error chains.
enum class LogicalBasis : uint8_t { z, x };

enum class Axis : uint8_t { rows, cols };

const char *to_string(PauliType t);
const char *to_string(LogicalBasis b);
const char *to_string(Axis a);

/// A weight-2 or weight-4 parity check with its measurement ancilla.
struct Plaquette {
    PauliType type;
    uint32_t ancilla;  // qubit id (ancillas are numbered after the d*d data qubits)
    Coord corner;      // corner index (i, j), 0 <= i, j <= d
    /// Data qubit id touched in each of the four CX layers, -1 when idle.
    std::array<int32_t, 4> schedule;

    std::vector<uint32_t> support() const;
};

/// Rotated surface code of odd distance d.
///
/// Data qubit (row, col) has id row * d + col. Plaquette (i, j) sits at the
/// corner shared by data qubits (i-1, j-1), (i-1, j), (i, j-1), (i, j) and is
/// X-type when i + j is even. Weight-2 Z checks live on the top and bottom
/// edges, weight-2 X checks on the left and right edges. Consequently the
/// Z-bar operator runs down column 0 and X-bar runs along row 0.
///
/// CX order: Z plaquettes use NW, NE, SW, SE ("Z" shape); X plaquettes use
/// NW, SW, NE, SE ("N" shape). Each hook error runs perpendicular to the
/// logical operator of its own Pauli type, so it never shortens a chain.
class SurfaceCodeLayout {
   public:
    explicit SurfaceCodeLayout(int d);

    int distance() const {
        return d_;
    }
    uint32_t num_data() const {
        return static_cast<uint32_t>(d_ * d_);
    }
    uint32_t num_qubits() const {
        return static_cast<uint32_t>(2 * d_ * d_ - 1);
    }
    uint32_t data_id(Coord c) const {
        return static_cast<uint32_t>(c.row * d_ + c.col);
    }
    Coord data_coord(uint32_t id) const {
        return {static_cast<int>(id) / d_, static_cast<int>(id) % d_};
    }
    bool is_data(uint32_t qubit) const {
        return qubit < num_data();
    }

    const std::vector<Plaquette> &plaquettes() const {
        return plaquettes_;
    }
    std::vector<const Plaquette *> stabilizers(PauliType type) const;

    const std::vector<uint32_t> &logical_x_support() const {
        return logical_x_;
    }
    const std::vector<uint32_t> &logical_z_support() const {
        return logical_z_;
    }
    /// Support of the observable measured in a memory of the given basis.
    const std::vector<uint32_t> &observable_support(LogicalBasis basis) const {
        return basis == LogicalBasis::z ? logical_z_ : logical_x_;
    }

    nlohmann::json to_json() const;

   private:
    int d_;
    std::vector<Plaquette> plaquettes_;
    std::vector<uint32_t> logical_x_;
    std::vector<uint32_t> logical_z_;
};

/// Builds the layout; throws std::invalid_argument unless d is odd and 3 <= d <= 15.
SurfaceCodeLayout build_layout(int d);

/// Grid lines that every error chain failing the given memory must cross.
///
/// Chains failing the Z memory are X-bar-like and run along a row, so they
/// cross every column. Derived from the logical supports of the layout.
Axis traversing_support(const SurfaceCodeLayout &layout, LogicalBasis basis);

/// Same answer as traversing_support for the fixed orientation convention,
/// without needing a layout instance.
Axis crossing_axis(LogicalBasis basis);

}  // namespace hyqec

#endif
