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

#include "hyqec/decoder.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "hyqec/matching.h"
#include "hyqec/parallel.h"

namespace hyqec {

namespace {

constexpr double kUnreachable = 1e9;
constexpr double kMatchScale = 65536.0;

void toggle(std::vector<int> &set, int x) {
    auto it = std::find(set.begin(), set.end(), x);
    if (it == set.end()) {
        set.push_back(x);
    } else {
        set.erase(it);
    }
}

/// Single-source Dijkstra with explicit edge weights: distances and the
/// observable parity of the chosen paths.
std::pair<std::vector<double>, std::vector<uint8_t>> shortest_paths(const DecodingGraph &graph,
                                                                    const std::vector<double> &w, int s) {
    const auto &edges = graph.edges();
    const auto &adj = graph.adjacency();
    std::vector<double> d(graph.num_nodes(), kUnreachable);
    std::vector<uint8_t> par(graph.num_nodes(), 0);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    d[s] = 0;
    pq.push({0, s});
    while (!pq.empty()) {
        auto [du, u] = pq.top();
        pq.pop();
        if (du > d[u]) {
            continue;
        }
        for (uint32_t e : adj[u]) {
            int v = edges[e].u == u ? edges[e].v : edges[e].u;
            double nd = du + w[e];
            if (nd < d[v]) {
                d[v] = nd;
                par[v] = par[u] ^ static_cast<uint8_t>(edges[e].observable);
                pq.push({nd, v});
            }
        }
    }
    return {std::move(d), std::move(par)};
}

/// Pairs defects (and the boundary when their count is odd) at minimum cost.
/// dist(i, j) / par(i, j) index defects 0..k-1, with k meaning the boundary.
template <typename Dist, typename Par>
bool match_defects(int k, Dist dist, Par par, double *cost) {
    double total = 0;
    bool obs = false;
    auto pair_cost = [&](int i, int j, bool *parity) {
        double direct = dist(i, j);
        double via = dist(i, k) + dist(j, k);
        if (via < direct) {
            *parity = par(i, k) ^ par(j, k);
            return via;
        }
        *parity = par(i, j);
        return direct;
    };
    // Zero-cost pairs belong to some optimal matching since the pair costs
    // form a metric, so they are fixed before the general solver runs.
    std::vector<int> rest;
    std::vector<uint8_t> used(k, 0);
    for (int i = 0; i < k; i++) {
        if (used[i]) {
            continue;
        }
        if (dist(i, k) <= 0) {
            used[i] = 1;
            obs ^= par(i, k);
            continue;
        }
        for (int j = i + 1; j < k; j++) {
            if (!used[j] && dist(i, j) <= 0) {
                used[i] = used[j] = 1;
                obs ^= par(i, j);
                break;
            }
        }
        if (!used[i]) {
            rest.push_back(i);
        }
    }
    const int r = static_cast<int>(rest.size());
    if (r == 1) {
        total = dist(rest[0], k);
        obs ^= par(rest[0], k);
    } else if (r == 2) {
        bool pp;
        total = pair_cost(rest[0], rest[1], &pp);
        obs ^= pp;
    } else if (r > 2) {
        int m = r + (r % 2);
        auto id = [&](int a) { return a < r ? rest[a] : k; };
        std::vector<std::vector<int64_t>> c(m, std::vector<int64_t>(m, 0));
        std::vector<std::vector<uint8_t>> cp(m, std::vector<uint8_t>(m, 0));
        std::vector<std::vector<double>> cd(m, std::vector<double>(m, 0));
        for (int i = 0; i < m; i++) {
            for (int j = i + 1; j < m; j++) {
                double d;
                bool pp;
                if (j == r) {
                    d = dist(id(i), k);
                    pp = par(id(i), k);
                } else {
                    d = pair_cost(id(i), id(j), &pp);
                }
                cd[i][j] = cd[j][i] = d;
                cp[i][j] = cp[j][i] = pp;
                c[i][j] = c[j][i] = static_cast<int64_t>(std::llround(std::min(d, kUnreachable) * kMatchScale));
            }
        }
        auto mate = min_weight_perfect_matching(c);
        for (int i = 0; i < m; i++) {
            if (mate[i] > i) {
                total += cd[i][mate[i]];
                obs ^= cp[i][mate[i]] != 0;
            }
        }
    }
    if (cost) {
        *cost = total;
    }
    return obs;
}

}  // namespace

MatchingDecoder::MatchingDecoder(const DecodingGraph &graph) : graph_(&graph), n_(graph.num_nodes()) {
    dist_.assign(static_cast<size_t>(n_) * n_, kUnreachable);
    parity_.assign(static_cast<size_t>(n_) * n_, 0);
    const auto &edges = graph.edges();
    std::vector<double> w(edges.size());
    for (size_t e = 0; e < edges.size(); e++) {
        w[e] = edges[e].flags_off_weight();
        if (w[e] < 0) {
            throw std::invalid_argument("base edge weights must be non-negative");
        }
    }
    for (int s = 0; s < n_; s++) {
        auto [d, par] = shortest_paths(graph, w, s);
        std::copy(d.begin(), d.end(), dist_.begin() + static_cast<size_t>(s) * n_);
        std::copy(par.begin(), par.end(), parity_.begin() + static_cast<size_t>(s) * n_);
    }
}

bool MatchingDecoder::decode(const ShotView &view, const std::vector<int> &defects) const {
    return decode(view, defects, nullptr);
}

bool MatchingDecoder::decode(const ShotView &view, const std::vector<int> &defects_in, double *cost) const {
    const int boundary = graph_->boundary();
    const auto &edges = graph_->edges();
    std::vector<int> defects = defects_in;
    bool obs = false;
    double offset = 0;

    struct Changed {
        int u, v;
        double w;
        bool obs;
    };
    std::vector<Changed> changed;
    // A flipped edge heavier than its base weight invalidates the table.
    bool raised = false;
    for (const auto &[e, w_in] : view.overrides) {
        const GraphEdge &edge = edges[e];
        double w = w_in;
        if (w < 0) {
            raised |= -w > edge.flags_off_weight();
            if (edge.u != boundary) {
                toggle(defects, edge.u);
            }
            if (edge.v != boundary) {
                toggle(defects, edge.v);
            }
            obs ^= edge.observable;
            offset += w;
            w = -w;
        }
        if (w < base_distance(edge.u, edge.v)) {
            changed.push_back({edge.u, edge.v, w, edge.observable});
        }
    }
    if (defects.empty()) {
        if (cost) {
            *cost = offset;
        }
        return obs;
    }
    const int k = static_cast<int>(defects.size());
    double match_cost = 0;
    bool pred;
    if (raised) {
        std::vector<double> ew(edges.size());
        for (size_t e = 0; e < edges.size(); e++) {
            ew[e] = edges[e].flags_off_weight();
        }
        for (const auto &[e, w_in] : view.overrides) {
            ew[e] = std::abs(w_in);
        }
        std::vector<double> sd(static_cast<size_t>(k + 1) * (k + 1));
        std::vector<uint8_t> sp(sd.size());
        std::vector<int> targets = defects;
        targets.push_back(boundary);
        for (int s = 0; s <= k; s++) {
            auto [d, par] = shortest_paths(*graph_, ew, targets[s]);
            for (int j = 0; j <= k; j++) {
                sd[static_cast<size_t>(s) * (k + 1) + j] = d[targets[j]];
                sp[static_cast<size_t>(s) * (k + 1) + j] = par[targets[j]];
            }
        }
        pred = match_defects(
            k, [&](int i, int j) { return sd[static_cast<size_t>(i) * (k + 1) + j]; },
            [&](int i, int j) { return sp[static_cast<size_t>(i) * (k + 1) + j] != 0; }, &match_cost);
    } else if (changed.empty()) {
        auto node = [&](int i) { return i == k ? boundary : defects[i]; };
        pred = match_defects(
            k, [&](int i, int j) { return base_distance(node(i), node(j)); },
            [&](int i, int j) { return base_parity(node(i), node(j)); }, &match_cost);
    } else {
        // Key graph over defects, boundary and changed-edge endpoints.
        std::vector<int> key = defects;
        key.push_back(boundary);
        for (const auto &c : changed) {
            key.push_back(c.u);
            key.push_back(c.v);
        }
        std::vector<int> sorted = key;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        // Order: defects first, then the boundary, then the remaining endpoints.
        std::vector<int> extra;
        for (int x : sorted) {
            if (x != boundary && std::find(defects.begin(), defects.end(), x) == defects.end()) {
                extra.push_back(x);
            }
        }
        std::vector<int> nodes = defects;
        nodes.push_back(boundary);
        nodes.insert(nodes.end(), extra.begin(), extra.end());
        const int m = static_cast<int>(nodes.size());
        auto index_of = [&](int x) {
            return static_cast<int>(std::find(nodes.begin(), nodes.end(), x) - nodes.begin());
        };
        std::vector<double> w(static_cast<size_t>(m) * m);
        std::vector<uint8_t> wp(static_cast<size_t>(m) * m);
        for (int i = 0; i < m; i++) {
            for (int j = 0; j < m; j++) {
                w[i * m + j] = base_distance(nodes[i], nodes[j]);
                wp[i * m + j] = base_parity(nodes[i], nodes[j]);
            }
        }
        for (const auto &c : changed) {
            int a = index_of(c.u), b = index_of(c.v);
            if (c.w < w[a * m + b]) {
                w[a * m + b] = w[b * m + a] = c.w;
                wp[a * m + b] = wp[b * m + a] = c.obs;
            }
        }
        // Dense Dijkstra from each defect; row k is filled by symmetry.
        const int srcs = k + 1;
        std::vector<double> sd(static_cast<size_t>(srcs) * m);
        std::vector<uint8_t> sp(static_cast<size_t>(srcs) * m);
        std::vector<uint8_t> done(m);
        for (int s = 0; s < k; s++) {
            double *d = &sd[static_cast<size_t>(s) * m];
            uint8_t *p = &sp[static_cast<size_t>(s) * m];
            std::fill(done.begin(), done.end(), 0);
            for (int j = 0; j < m; j++) {
                d[j] = w[s * m + j];
                p[j] = wp[s * m + j];
            }
            d[s] = 0;
            p[s] = 0;
            done[s] = 1;
            // Targets are the later defects and the boundary.
            int pending = srcs - 1 - s;
            int u = -1;
            for (int j = 0; j < m; j++) {
                if (!done[j] && (u < 0 || d[j] < d[u])) {
                    u = j;
                }
            }
            while (u >= 0 && pending > 0) {
                done[u] = 1;
                if (u > s && u < srcs) {
                    pending--;
                }
                const double du = d[u];
                const double *wu = &w[static_cast<size_t>(u) * m];
                const uint8_t *pu = &wp[static_cast<size_t>(u) * m];
                int next = -1;
                for (int j = 0; j < m; j++) {
                    if (done[j]) {
                        continue;
                    }
                    if (du + wu[j] < d[j]) {
                        d[j] = du + wu[j];
                        p[j] = p[u] ^ pu[j];
                    }
                    if (next < 0 || d[j] < d[next]) {
                        next = j;
                    }
                }
                u = next;
            }
        }
        for (int j = 0; j < k; j++) {
            sd[static_cast<size_t>(k) * m + j] = sd[static_cast<size_t>(j) * m + k];
            sp[static_cast<size_t>(k) * m + j] = sp[static_cast<size_t>(j) * m + k];
        }
        sd[static_cast<size_t>(k) * m + k] = 0;
        pred = match_defects(
            k, [&](int i, int j) { return sd[static_cast<size_t>(i) * m + j]; },
            [&](int i, int j) { return sp[static_cast<size_t>(i) * m + j] != 0; }, &match_cost);
    }
    if (cost) {
        *cost = match_cost + offset;
    }
    return obs ^ pred;
}

std::vector<int> node_lookup(const DecodingGraph &graph, size_t num_detectors) {
    std::vector<int> out(num_detectors, -1);
    for (int n = 0; n < graph.boundary(); n++) {
        out[graph.node_detector(n)] = n;
    }
    return out;
}

std::vector<int> defects_for_graph(const DecodingGraph &, const std::vector<uint32_t> &fired,
                                   const std::vector<int> &node_of_detector) {
    std::vector<int> out;
    for (uint32_t k : fired) {
        int n = node_of_detector[k];
        if (n >= 0) {
            out.push_back(n);
        }
    }
    return out;
}

DecodeResult decode_batch(const DecodingGraphs &graphs, const MatchingDecoder &decoder, const ShotBatch &batch,
                          size_t workers) {
    const DecodingGraph &graph = decoder.graph();
    int g = &graph == &graphs.graphs[0] ? 0 : 1;
    if (&graph != &graphs.graphs[g]) {
        throw std::invalid_argument("decoder does not belong to these graphs");
    }
    const auto lookup = node_lookup(graph, batch.num_detectors);
    DecodeResult res;
    res.shots = batch.shots;
    res.failed.assign(batch.shots, 0);
    constexpr size_t kChunk = 4096;
    const size_t chunks = (batch.shots + kChunk - 1) / kChunk;
    std::vector<uint64_t> chunk_fail(chunks, 0), chunk_flags(chunks, 0);
    run_parallel(chunks, workers, [&](size_t c) {
        size_t end = std::min(batch.shots, (c + 1) * kChunk);
        for (size_t s = c * kChunk; s < end; s++) {
            auto flags = batch.num_flags ? batch.raised_flags(s) : std::vector<uint32_t>{};
            chunk_flags[c] += flags.size();
            ShotView view = apply_erasure_info(graphs, g, flags);
            auto defects = defects_for_graph(graph, batch.fired_detectors(s), lookup);
            bool pred = decoder.decode(view, defects);
            if (pred != (batch.observable_flips[s] != 0)) {
                res.failed[s] = 1;
                chunk_fail[c]++;
            }
        }
    });
    uint64_t flag_total = 0;
    for (size_t c = 0; c < chunks; c++) {
        res.failures += chunk_fail[c];
        flag_total += chunk_flags[c];
    }
    if (batch.num_flags && batch.shots) {
        res.flag_rate_mean = static_cast<double>(flag_total) / (static_cast<double>(batch.shots) * batch.num_flags);
    }
    return res;
}

}  // namespace hyqec
