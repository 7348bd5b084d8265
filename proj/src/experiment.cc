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

#include "hyqec/experiment.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "hyqec/frame_simulator.h"
#include "hyqec/rng.h"

namespace hyqec {

const char *to_string(NoiseLevel m) {
    return m == NoiseLevel::circuit ? "circuit" : "capacity";
}

NoiseLevel parse_noise_level(const std::string &s) {
    if (s == "circuit") {
        return NoiseLevel::circuit;
    }
    if (s == "capacity") {
        return NoiseLevel::capacity;
    }
    throw std::invalid_argument("model must be 'circuit' or 'capacity', got '" + s + "'");
}

MemoryExperiment::MemoryExperiment(const ArchitectureSpec &spec, NoiseLevel level, double p, int rounds,
                                   LogicalBasis basis) {
    SurfaceCodeLayout layout(spec.d);
    if (level == NoiseLevel::circuit) {
        circuit_ = build_memory_circuit(layout, spec, NoiseModel::from_p(p), rounds > 0 ? rounds : spec.d, basis);
    } else {
        circuit_ = build_capacity_circuit(layout, spec, p, basis);
    }
    graphs_ = build_decoding_graphs(circuit_);
    decoder_ = std::make_unique<MatchingDecoder>(graphs_.graphs[graphs_.observable_graph]);
}

DecodeResult MemoryExperiment::run(uint64_t shots, uint64_t seed, size_t workers, uint64_t first_shot) const {
    ShotBatch batch = sample_shots(circuit_, shots, seed, workers, first_shot);
    return decode_batch(graphs_, *decoder_, batch, workers);
}

PointResult run_point(const ArchitectureSpec &spec, const PointOptions &o) {
    if (o.shots == 0) {
        throw std::invalid_argument("shots must be positive");
    }
    PointResult res;
    std::unique_ptr<MemoryExperiment> ex_x, ex_z;
    if (o.run_x) {
        ex_x = std::make_unique<MemoryExperiment>(spec, o.level, o.p, o.rounds, LogicalBasis::x);
    }
    if (o.run_z) {
        ex_z = std::make_unique<MemoryExperiment>(spec, o.level, o.p, o.rounds, LogicalBasis::z);
    }
    const uint64_t seed_x = mix_seed(o.seed, 0x58), seed_z = mix_seed(o.seed, 0x5a);
    constexpr uint64_t kChunk = 1 << 16;
    double flag_sum = 0;
    int flag_terms = 0;
    for (uint64_t start = 0; start < o.shots; start += kChunk) {
        uint64_t n = std::min(kChunk, o.shots - start);
        std::vector<uint8_t> fx(n, 0), fz(n, 0);
        if (ex_x) {
            auto r = ex_x->run(n, seed_x, o.workers, start);
            res.failures_x += r.failures;
            fx = std::move(r.failed);
            flag_sum += r.flag_rate_mean * static_cast<double>(n);
        }
        if (ex_z) {
            auto r = ex_z->run(n, seed_z, o.workers, start);
            res.failures_z += r.failures;
            fz = std::move(r.failed);
            flag_sum += r.flag_rate_mean * static_cast<double>(n);
        }
        for (uint64_t s = 0; s < n; s++) {
            uint8_t f = fx[s] | fz[s];
            res.failures_combined += f;
            if (o.keep_shot_failures) {
                res.failed_combined.push_back(f);
            }
        }
        res.shots += n;
        if (o.max_failures && res.failures_combined >= o.max_failures) {
            break;
        }
    }
    flag_terms = (ex_x ? 1 : 0) + (ex_z ? 1 : 0);
    if (flag_terms && res.shots) {
        res.flag_rate_mean = flag_sum / (static_cast<double>(res.shots) * flag_terms);
    }
    return res;
}

PointResult capacity_sample(const SurfaceCodeLayout &layout, const ArchitectureSpec &spec, double p, uint64_t shots,
                            uint64_t seed, size_t workers) {
    if (layout.distance() != spec.d) {
        throw std::invalid_argument("placement distance does not match the layout");
    }
    PointOptions o;
    o.level = NoiseLevel::capacity;
    o.p = p;
    o.shots = shots;
    o.seed = seed;
    o.workers = workers;
    return run_point(spec, o);
}

ArchitectureSpec make_architecture(int d, double f_e, const std::string &strategy, uint64_t seed) {
    if (strategy == "optimized") {
        return optimized_placement(d, f_e);
    }
    if (strategy == "random") {
        return random_placement(d, f_e, seed);
    }
    std::vector<std::string> parts;
    std::stringstream ss(strategy);
    std::string item;
    while (std::getline(ss, item, ':')) {
        parts.push_back(item);
    }
    if (parts.size() < 2 || parts.size() > 3) {
        throw std::invalid_argument("strategy '" + strategy +
                                    "' is not optimized, random, or kind:count[:axis]");
    }
    LinePattern pattern;
    pattern.kind = parse_line_kind(parts[0]);
    try {
        pattern.count = std::stoi(parts[1]);
    } catch (const std::exception &) {
        throw std::invalid_argument("strategy '" + strategy + "' has a non-integer line count");
    }
    if (parts.size() == 3) {
        if (parts[2] == "rows") {
            pattern.axis = Axis::rows;
        } else if (parts[2] == "cols") {
            pattern.axis = Axis::cols;
        } else {
            throw std::invalid_argument("line axis must be rows or cols");
        }
    }
    ArchitectureSpec spec = pattern_placement(d, pattern);
    spec.strategy = strategy;
    return spec;
}

}  // namespace hyqec
