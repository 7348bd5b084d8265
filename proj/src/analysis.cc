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

#include "hyqec/analysis.h"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hyqec/capacity.h"

namespace hyqec {

const char *to_string(FitBasis b) {
    switch (b) {
        case FitBasis::x:
            return "X";
        case FitBasis::z:
            return "Z";
        case FitBasis::combined:
            return "combined";
    }
    return "?";
}

FitBasis parse_fit_basis(const std::string &s) {
    if (s == "X" || s == "x") {
        return FitBasis::x;
    }
    if (s == "Z" || s == "z") {
        return FitBasis::z;
    }
    if (s == "combined") {
        return FitBasis::combined;
    }
    throw std::invalid_argument("basis must be X, Z or combined, got '" + s + "'");
}

uint64_t failures_of(const DataPoint &pt, FitBasis basis) {
    switch (basis) {
        case FitBasis::x:
            return pt.failures_x;
        case FitBasis::z:
            return pt.failures_z;
        case FitBasis::combined:
            return pt.failures_combined;
    }
    return 0;
}

double FitResult::log_pl(double p) const {
    return intercept + d_eff * std::log(p);
}

nlohmann::json FitResult::to_json() const {
    return {{"d", d},
            {"A", A},
            {"b", b},
            {"d_eff", d_eff},
            {"d_eff_stderr", d_eff_stderr},
            {"intercept", intercept},
            {"residual", residual},
            {"points_used", points_used}};
}

FitResult fit_deff(const std::vector<DataPoint> &points, FitBasis basis, int *skipped) {
    std::vector<double> xs, ys, ws;
    int skip = 0;
    FitResult fit;
    for (const auto &pt : points) {
        uint64_t f = failures_of(pt, basis);
        if (f == 0 || pt.shots == 0 || !(pt.p > 0)) {
            skip++;
            continue;
        }
        if (fit.d == 0) {
            fit.d = pt.d;
        }
        xs.push_back(std::log(pt.p));
        ys.push_back(std::log(static_cast<double>(f) / static_cast<double>(pt.shots)));
        ws.push_back(static_cast<double>(f));
    }
    if (skipped) {
        *skipped = skip;
    }
    if (xs.size() < 3) {
        throw std::invalid_argument("fitting d_eff needs at least 3 points with failures, got " +
                                    std::to_string(xs.size()));
    }
    double W = 0, mx = 0, my = 0;
    for (size_t i = 0; i < xs.size(); i++) {
        W += ws[i];
        mx += ws[i] * xs[i];
        my += ws[i] * ys[i];
    }
    mx /= W;
    my /= W;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); i++) {
        sxx += ws[i] * (xs[i] - mx) * (xs[i] - mx);
        sxy += ws[i] * (xs[i] - mx) * (ys[i] - my);
    }
    if (std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs.front(); }) || !(sxx > 0)) {
        throw std::invalid_argument("fitting d_eff needs at least two distinct p values");
    }
    fit.d_eff = sxy / sxx;
    fit.intercept = my - fit.d_eff * mx;
    double chi2 = 0;
    for (size_t i = 0; i < xs.size(); i++) {
        double r = ys[i] - fit.intercept - fit.d_eff * xs[i];
        chi2 += ws[i] * r * r;
    }
    fit.residual = std::sqrt(chi2 / W);
    double scale = std::max(1.0, chi2 / static_cast<double>(xs.size() - 2));
    fit.d_eff_stderr = std::sqrt(scale / sxx);
    fit.intercept_stderr = std::sqrt(scale * (1 / W + mx * mx / sxx));
    fit.slope_intercept_cov = -scale * mx / sxx;
    fit.points_used = static_cast<int>(xs.size());
    fit.A = 1;
    fit.b = fit.d_eff != 0 ? std::exp(fit.intercept / fit.d_eff) : 0;
    return fit;
}

double fit_crossing(const FitResult &a, const FitResult &b) {
    double ds = a.d_eff - b.d_eff;
    if (std::abs(ds) < 1e-12) {
        return -1;
    }
    return std::exp((b.intercept - a.intercept) / ds);
}

ThresholdResult estimate_threshold(const std::vector<FitResult> &fits) {
    if (fits.size() < 2) {
        throw std::invalid_argument("threshold estimation needs fits for at least two distances");
    }
    ThresholdResult res;
    for (size_t i = 0; i < fits.size(); i++) {
        for (size_t j = i + 1; j < fits.size(); j++) {
            double c = fit_crossing(fits[i], fits[j]);
            if (c > 0 && c < 0.5) {
                res.crossings.push_back(c);
            } else {
                res.discarded++;
            }
        }
    }
    if (res.crossings.empty()) {
        throw std::invalid_argument("no fitted lines cross inside (0, 0.5); the fits are parallel or diverge");
    }
    double sum = 0;
    for (double c : res.crossings) {
        sum += c;
    }
    res.p_th = sum / static_cast<double>(res.crossings.size());
    return res;
}

double coarse_threshold(const std::map<int, std::vector<DataPoint>> &by_distance, FitBasis basis) {
    std::vector<double> found;
    for (auto it = by_distance.begin(); it != by_distance.end(); ++it) {
        auto nx = std::next(it);
        if (nx == by_distance.end()) {
            break;
        }
        // Shared p values with failures in both curves, ascending.
        std::vector<std::pair<double, double>> diff;  // (ln p, ln pl_big - ln pl_small)
        for (const auto &a : it->second) {
            for (const auto &b : nx->second) {
                if (std::abs(a.p - b.p) > 1e-9 * a.p) {
                    continue;
                }
                uint64_t fa = failures_of(a, basis), fb = failures_of(b, basis);
                if (fa == 0 || fb == 0) {
                    continue;
                }
                double la = std::log(static_cast<double>(fa) / a.shots);
                double lb = std::log(static_cast<double>(fb) / b.shots);
                diff.push_back({std::log(a.p), lb - la});
            }
        }
        std::sort(diff.begin(), diff.end());
        for (size_t k = 0; k + 1 < diff.size(); k++) {
            double y0 = diff[k].second, y1 = diff[k + 1].second;
            if (y0 <= 0 && y1 > 0) {
                double x = diff[k].first + (diff[k + 1].first - diff[k].first) * (-y0) / (y1 - y0);
                found.push_back(std::exp(x));
                break;
            }
        }
    }
    if (found.empty()) {
        return -1;
    }
    double sum = 0;
    for (double f : found) {
        sum += f;
    }
    return sum / static_cast<double>(found.size());
}

std::vector<DataPoint> below_threshold(const std::vector<DataPoint> &points, double p_th_coarse, double factor) {
    std::vector<DataPoint> out;
    for (const auto &pt : points) {
        if (pt.p <= factor * p_th_coarse * (1 + 1e-12)) {
            out.push_back(pt);
        }
    }
    return out;
}

std::pair<double, double> wilson_interval(uint64_t failures, uint64_t shots, double confidence) {
    if (failures > shots) {
        throw std::invalid_argument("failures cannot exceed shots");
    }
    if (!(confidence > 0 && confidence < 1)) {
        throw std::invalid_argument("confidence must lie in (0, 1)");
    }
    if (shots == 0) {
        return {0, 1};
    }
    boost::math::normal_distribution<double> normal;
    double z = boost::math::quantile(normal, 0.5 + confidence / 2);
    double n = static_cast<double>(shots);
    double ph = static_cast<double>(failures) / n;
    double denom = 1 + z * z / n;
    double center = (ph + z * z / (2 * n)) / denom;
    double half = z * std::sqrt(ph * (1 - ph) / n + z * z / (4 * n * n)) / denom;
    double lo = failures == 0 ? 0.0 : std::max(0.0, center - half);
    double hi = failures == shots ? 1.0 : std::min(1.0, center + half);
    return {lo, hi};
}

int transmon_cost(int d, double f_e) {
    int n_e = erasure_budget(d, f_e);
    return d * d - n_e + 3 * n_e;
}

double chip_yield(int64_t n_transmons, double defect_rate) {
    if (!(defect_rate >= 0 && defect_rate < 1)) {
        throw std::invalid_argument("defect rate must lie in [0, 1)");
    }
    if (n_transmons < 0) {
        throw std::invalid_argument("transmon count must be non-negative");
    }
    return std::pow(1 - defect_rate, static_cast<double>(n_transmons));
}

double pearson(const std::vector<double> &a, const std::vector<double> &b) {
    if (a.size() != b.size() || a.empty()) {
        throw std::invalid_argument("pearson needs two equal, non-empty samples");
    }
    auto constant = [](const std::vector<double> &v) {
        return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
    };
    if (constant(a) || constant(b)) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    double n = static_cast<double>(a.size());
    double ma = 0, mb = 0;
    for (size_t i = 0; i < a.size(); i++) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0, saa = 0, sbb = 0;
    for (size_t i = 0; i < a.size(); i++) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (saa <= 0 || sbb <= 0) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return sab / std::sqrt(saa * sbb);
}

nlohmann::json CorrelationMap::to_json() const {
    auto grid = [&](const std::vector<double> &v) {
        nlohmann::json rows = nlohmann::json::array();
        for (int r = 0; r < d; r++) {
            nlohmann::json row = nlohmann::json::array();
            for (int c = 0; c < d; c++) {
                double x = v[r * d + c];
                row.push_back(std::isnan(x) ? nlohmann::json(nullptr) : nlohmann::json(x));
            }
            rows.push_back(row);
        }
        return rows;
    };
    nlohmann::json deg = nlohmann::json::array();
    for (size_t i = 0; i < degenerate.size(); i++) {
        if (degenerate[i]) {
            deg.push_back({static_cast<int>(i) / d, static_cast<int>(i) % d});
        }
    }
    return {{"d", d}, {"Z", grid(z)}, {"X", grid(x)}, {"combined", grid(combined)}, {"degenerate_sites", deg}};
}

CorrelationMap placement_correlation(const std::vector<EnsembleMember> &ensemble) {
    if (ensemble.size() < 2) {
        throw std::invalid_argument("placement correlation needs at least two placements");
    }
    CorrelationMap out;
    out.d = ensemble.front().spec.d;
    const int n = out.d * out.d;
    std::vector<double> px, pz, pc;
    std::vector<std::vector<bool>> masks;
    for (const auto &m : ensemble) {
        if (m.spec.d != out.d) {
            throw std::invalid_argument("ensemble mixes code distances");
        }
        px.push_back(m.pl_x);
        pz.push_back(m.pl_z);
        pc.push_back(m.pl_combined);
        masks.push_back(m.spec.erasure_mask());
    }
    out.x.resize(n);
    out.z.resize(n);
    out.combined.resize(n);
    out.degenerate.resize(n);
    for (int q = 0; q < n; q++) {
        std::vector<double> ind;
        for (const auto &mask : masks) {
            ind.push_back(mask[q] ? 1.0 : 0.0);
        }
        out.x[q] = pearson(ind, px);
        out.z[q] = pearson(ind, pz);
        out.combined[q] = pearson(ind, pc);
        out.degenerate[q] = std::isnan(out.x[q]) || std::isnan(out.z[q]) || std::isnan(out.combined[q]);
    }
    return out;
}

std::pair<double, double> ScalingProjection::best_pl(int transmon_budget) const {
    double lo = 1, hi = 1;
    for (const auto &a : architectures) {
        if (a.transmons <= transmon_budget) {
            lo = std::min(lo, a.pl_lower);
            hi = std::min(hi, a.pl_upper);
        }
    }
    return {lo, hi};
}

std::pair<int, int> ScalingProjection::min_transmons(double target_pl) const {
    int lo = -1, hi = -1;
    for (const auto &a : architectures) {
        if (a.pl_lower <= target_pl && (lo < 0 || a.transmons < lo)) {
            lo = a.transmons;
        }
        if (a.pl_upper <= target_pl && (hi < 0 || a.transmons < hi)) {
            hi = a.transmons;
        }
    }
    return {lo, hi};
}

ScalingProjection scaling_projection(double p, const std::vector<int> &distances,
                                     const std::vector<double> &erasure_fractions,
                                     const std::map<double, double> &p_th) {
    if (p_th.empty()) {
        throw std::invalid_argument("scaling projection needs at least one fitted threshold");
    }
    auto threshold_at = [&](double f) {
        auto hi = p_th.lower_bound(f);
        if (hi == p_th.end()) {
            return std::prev(hi)->second;
        }
        if (hi->first == f || hi == p_th.begin()) {
            return hi->second;
        }
        auto lo = std::prev(hi);
        double t = (f - lo->first) / (hi->first - lo->first);
        return lo->second + t * (hi->second - lo->second);
    };
    ScalingProjection out;
    for (int d : distances) {
        for (double f : erasure_fractions) {
            ProjectedArchitecture a;
            a.d = d;
            a.f_e = f;
            a.n_erasures = erasure_budget(d, f);
            a.transmons = transmon_cost(d, f);
            DeffBound bound = deff_lower_bound(d, f, p);
            a.k = bound.k;
            a.deff_upper = bound.exponent;
            a.deff_lower = bound.bound;
            double ratio = p / threshold_at(f);
            a.pl_lower = std::min(1.0, std::pow(ratio, a.deff_upper));
            a.pl_upper = std::min(1.0, std::pow(ratio, std::max(0.0, a.deff_lower)));
            out.architectures.push_back(a);
        }
    }
    return out;
}

}  // namespace hyqec
