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

#ifndef HYQEC_RNG_H
#define HYQEC_RNG_H

#include <cmath>
#include <cstdint>
#include <random>

namespace hyqec {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives an independent stream seed from (seed, stream index).
inline uint64_t mix_seed(uint64_t seed, uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

/// Uniform integer in [0, n). Rejection sampling keeps the result identical
/// across standard library implementations, unlike std::uniform_int_distribution.
inline uint64_t bounded_draw(std::mt19937_64 &rng, uint64_t n) {
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t r;
    do {
        r = rng();
    } while (r >= limit);
    return r % n;
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double unit_draw(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Number of failures before the first success of a Bernoulli(p) process,
/// given log1p(-p). Returns UINT64_MAX when the draw overflows.
inline uint64_t geometric_draw(std::mt19937_64 &rng, double log_q) {
    double u = 1.0 - unit_draw(rng);  // (0, 1]
    double g = std::floor(std::log(u) / log_q);
    return g >= 1.8e19 ? UINT64_MAX : static_cast<uint64_t>(g);
}

}  // namespace hyqec

#endif
