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

#include "hyqec/capacity.h"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "hyqec/placement.h"

namespace hyqec {

namespace {

double binomial(int n, int r) {
    if (r < 0 || r > n) {
        return 0;
    }
    double out = 1;
    for (int i = 1; i <= r; i++) {
        out = out * (n - r + i) / i;
    }
    return out;
}

void check_board(int m, int n) {
    if (m < 1 || n < 1 || m > 15 || n > 15) {
        throw std::invalid_argument("king path board dimensions must lie in [1, 15]");
    }
}

}  // namespace

void RepCodeSpec::validate() const {
    if (d < 1) {
        throw std::invalid_argument("repetition code needs at least one qubit");
    }
    if (k < 0 || k > d) {
        throw std::invalid_argument("erasure count must lie in [0, d]");
    }
    if (!(p >= 0 && p < 0.5)) {
        throw std::invalid_argument("physical error rate must lie in [0, 0.5)");
    }
}

double rep_exact_pl(const RepCodeSpec &spec) {
    spec.validate();
    int n = spec.d - spec.k;
    double p = spec.p;
    double sum = 0;
    for (int l = 0; l <= n; l++) {
        double term = binomial(n, l) * std::pow(p, l) * std::pow(1 - p, n - l);
        if (2 * l > n) {
            sum += term;
        } else if (2 * l == n) {
            sum += 0.5 * term;
        }
    }
    return std::pow(p, spec.k) * sum;
}

double rep_printed_pl(const RepCodeSpec &spec) {
    spec.validate();
    int n = spec.d - spec.k;
    double p = spec.p;
    double sum = 0;
    for (int ld = 0; ld <= n; ld++) {
        if (!(2 * ld < n)) {
            continue;
        }
        for (int le = 0; le <= spec.k; le++) {
            sum += binomial(n, ld) * binomial(spec.k, le) * std::pow(p, ld) * std::pow(1 - p, n - ld) *
                   std::pow(0.5, spec.k);
        }
    }
    return sum;
}

double rep_oracle_pl(const RepCodeSpec &spec) {
    spec.validate();
    if (spec.d > 20) {
        throw std::invalid_argument("repetition oracle enumerates at most 20 qubits");
    }
    // Qubits 0..k-1 are erasure qubits; their state is 0 clean, 1 erased
    // without flip, 2 erased with flip.
    const int d = spec.d, k = spec.k;
    const double p = spec.p;
    std::vector<int> state(d, 0);
    double total = 0;
    std::function<void(int, double)> rec = [&](int q, double prob) {
        if (prob == 0) {
            return;
        }
        if (q == d) {
            // Decoder likelihood of the actual flip pattern E and its complement.
            double like_e = 1, like_c = 1;
            for (int i = 0; i < d; i++) {
                bool flipped = i < k ? state[i] == 2 : state[i] == 1;
                if (i < k) {
                    if (state[i] == 0) {
                        // Known clean: the complement would flip it, which is impossible.
                        like_c = 0;
                    } else {
                        like_e *= 0.5;
                        like_c *= 0.5;
                    }
                } else {
                    like_e *= flipped ? p : 1 - p;
                    like_c *= flipped ? 1 - p : p;
                }
            }
            if (like_c > like_e) {
                total += prob;
            } else if (like_c == like_e) {
                total += 0.5 * prob;
            }
            return;
        }
        if (q < k) {
            state[q] = 0;
            rec(q + 1, prob * (1 - p));
            state[q] = 1;
            rec(q + 1, prob * p / 2);
            state[q] = 2;
            rec(q + 1, prob * p / 2);
        } else {
            state[q] = 0;
            rec(q + 1, prob * (1 - p));
            state[q] = 1;
            rec(q + 1, prob * p);
        }
    };
    rec(0, 1.0);
    return total;
}

double rep_leading_pl(const RepCodeSpec &spec) {
    spec.validate();
    return std::pow(spec.p, (spec.d + spec.k + 1) / 2);
}

uint64_t king_path_count(int m, int n) {
    check_board(m, n);
    std::vector<uint64_t> ways(n, 1), next(n);
    for (int step = 1; step < m; step++) {
        for (int t = 0; t < n; t++) {
            next[t] = ways[t] + (t > 0 ? ways[t - 1] : 0) + (t + 1 < n ? ways[t + 1] : 0);
        }
        ways.swap(next);
    }
    uint64_t total = 0;
    for (uint64_t w : ways) {
        total += w;
    }
    return total;
}

std::vector<KingPath> enumerate_king_paths(int m, int n) {
    check_board(m, n);
    std::vector<KingPath> out;
    KingPath cur;
    std::function<void()> rec = [&]() {
        if (static_cast<int>(cur.size()) == m) {
            out.push_back(cur);
            return;
        }
        for (int t = 0; t < n; t++) {
            if (cur.empty() || std::abs(t - cur.back()) <= 1) {
                cur.push_back(t);
                rec();
                cur.pop_back();
            }
        }
    };
    rec();
    return out;
}

std::vector<Coord> path_coords(const KingPath &path, Axis crossed) {
    std::vector<Coord> out;
    for (int line = 0; line < static_cast<int>(path.size()); line++) {
        out.push_back(crossed == Axis::cols ? Coord{path[line], line} : Coord{line, path[line]});
    }
    return out;
}

std::vector<uint64_t> path_containment_counts(int d, Axis crossed) {
    check_board(d, d);
    // fwd[l][t]: paths over lines 0..l ending at t; bwd[l][t]: paths over lines l..d-1 starting at t.
    std::vector<std::vector<uint64_t>> fwd(d, std::vector<uint64_t>(d, 0)), bwd = fwd;
    for (int t = 0; t < d; t++) {
        fwd[0][t] = 1;
        bwd[d - 1][t] = 1;
    }
    for (int l = 1; l < d; l++) {
        for (int t = 0; t < d; t++) {
            fwd[l][t] = fwd[l - 1][t] + (t > 0 ? fwd[l - 1][t - 1] : 0) + (t + 1 < d ? fwd[l - 1][t + 1] : 0);
        }
    }
    for (int l = d - 2; l >= 0; l--) {
        for (int t = 0; t < d; t++) {
            bwd[l][t] = bwd[l + 1][t] + (t > 0 ? bwd[l + 1][t - 1] : 0) + (t + 1 < d ? bwd[l + 1][t + 1] : 0);
        }
    }
    std::vector<uint64_t> counts(d * d, 0);
    for (int l = 0; l < d; l++) {
        for (int t = 0; t < d; t++) {
            Coord c = crossed == Axis::cols ? Coord{t, l} : Coord{l, t};
            counts[c.row * d + c.col] = fwd[l][t] * bwd[l][t];
        }
    }
    return counts;
}

std::vector<double> importance_map(int d) {
    if (d < 1 || d > 11) {
        throw std::invalid_argument("importance map supports 1 <= d <= 11");
    }
    auto by_cols = path_containment_counts(d, Axis::cols);
    auto by_rows = path_containment_counts(d, Axis::rows);
    double total = 2.0 * static_cast<double>(king_path_count(d, d));
    std::vector<double> out(d * d);
    for (int q = 0; q < d * d; q++) {
        out[q] = static_cast<double>(by_cols[q] + by_rows[q]) / total;
    }
    return out;
}

UnionBound surface_union_bound_pl(int d, int k, double p) {
    RepCodeSpec spec{d, k, p};
    double paths = static_cast<double>(king_path_count(d, d));
    UnionBound out;
    out.path_sum = std::min(1.0, paths * rep_exact_pl(spec));
    out.crude = std::pow(2.0, d) * rep_leading_pl(spec);
    return out;
}

DeffBound deff_lower_bound(int d, double f_e, double p) {
    if (!(p > 0 && p < 0.5)) {
        throw std::invalid_argument("effective distance bound needs 0 < p < 0.5");
    }
    DeffBound out;
    out.k = max_full_lines(d, erasure_budget(d, f_e));
    out.exponent = (d + out.k + 1) / 2;
    out.deff_correction = d * std::log(2.0) / std::log(p);
    out.bound = out.exponent + out.deff_correction;
    out.closed_form_exponent = static_cast<int>(std::floor((d * (2 - std::sqrt(1 - f_e)) + 1) / 2 + 1e-9));
    out.closed_form_epsilon_d = -d / std::log2(p);
    out.closed_form = out.closed_form_exponent - out.closed_form_epsilon_d;
    return out;
}

}  // namespace hyqec
