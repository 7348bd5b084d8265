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

#ifndef HYQEC_CAPACITY_H
#define HYQEC_CAPACITY_H

#include <cstdint>
#include <utility>
#include <vector>

#include "hyqec/lattice.h"

namespace hyqec {

/// Bit-flip repetition code with d data qubits, k of them erasure qubits.
///
/// Standard qubits flip with probability p. Erasure qubits are erased with
/// probability p and, when erased, flip with probability 1/2; the decoder
/// knows which qubits were erased.
struct RepCodeSpec {
    int d = 1;
    int k = 0;
    double p = 0;

    /// Throws std::invalid_argument unless 0 <= k <= d, d >= 1 and 0 <= p < 0.5.
    void validate() const;
};

/// Exact logical failure probability under maximum-likelihood decoding.
///
/// A failure needs every erasure qubit erased (probability p^k); the
/// remaining n = d - k standard qubits then fail by strict majority, and an
/// exact tie fails half the time.
double rep_exact_pl(const RepCodeSpec &spec);

/// The textbook double sum over (l_d, l_e) with prefactor (1/2)^k and the
/// indicator [2 l_d < d - k], evaluated literally with l_d in 0..d-k and
/// l_e in 0..k. Kept for comparison against rep_exact_pl; it is not a
/// failure probability.
double rep_printed_pl(const RepCodeSpec &spec);

/// Brute-force oracle: enumerates all 2^(d-k) * 3^k joint outcomes and
/// decodes each by comparing the likelihoods of the two syndrome-consistent
/// explanations. Throws std::invalid_argument when d > 20.
double rep_oracle_pl(const RepCodeSpec &spec);

/// p^floor((d + k + 1) / 2).
double rep_leading_pl(const RepCodeSpec &spec);

/// Number of sequences of length m over {0..n-1} whose successive entries
/// differ by at most one.
uint64_t king_path_count(int m, int n);

/// A minimum-length traversing path: one transverse index per crossed line.
using KingPath = std::vector<int>;

/// Explicit enumeration of all king paths with m steps on a width-n board.
std::vector<KingPath> enumerate_king_paths(int m, int n);

/// Converts a king path into grid coordinates. Paths crossing columns visit
/// (path[c], c); paths crossing rows visit (r, path[r]).
std::vector<Coord> path_coords(const KingPath &path, Axis crossed);

/// Per-qubit containment counts for all minimum-length paths crossing one axis
/// of the d x d grid, indexed by row * d + col.
std::vector<uint64_t> path_containment_counts(int d, Axis crossed);

/// Fraction of minimum-length traversing paths (both orientations pooled)
/// containing each data qubit, indexed by row * d + col. Requires d <= 11.
std::vector<double> importance_map(int d);

struct UnionBound {
    double path_sum;  // min(1, king_path_count(d, d) * rep_exact_pl(d, k, p))
    double crude;     // 2^d * p^floor((d + k + 1) / 2)
};

UnionBound surface_union_bound_pl(int d, int k, double p);

struct DeffBound {
    int k = 0;                  // full rows/cols guaranteed by the budget
    int exponent = 0;           // floor((d + k + 1) / 2)
    double deff_correction = 0; // d * log_p(2), negative for p < 1
    double bound = 0;           // exponent + deff_correction
    int closed_form_exponent = 0;     // floor((d (2 - sqrt(1 - f_e)) + 1) / 2)
    double closed_form_epsilon_d = 0; // -d / log2(p)
    double closed_form = 0;           // closed_form_exponent - closed_form_epsilon_d
};

/// Throws std::invalid_argument unless 0 < p < 0.5.
DeffBound deff_lower_bound(int d, double f_e, double p);

}  // namespace hyqec

#endif
