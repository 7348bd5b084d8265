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

#ifndef HYQEC_ANALYSIS_H
#define HYQEC_ANALYSIS_H

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hyqec/placement.h"
#include "json.hpp"

namespace hyqec {

struct DataPoint {
    int d = 0;
    double f_e = 0;
    std::string strategy;
    double p = 0;
    uint64_t shots = 0;
    uint64_t failures_x = 0;
    uint64_t failures_z = 0;
    uint64_t failures_combined = 0;
};

enum class FitBasis : uint8_t { x, z, combined };

const char *to_string(FitBasis b);
FitBasis parse_fit_basis(const std::string &s);
uint64_t failures_of(const DataPoint &pt, FitBasis basis);

/// p_L = A (b p)^d_eff with A fixed to 1, fitted as a line in log-log space.
struct FitResult {
    int d = 0;
    double A = 1;
    double b = 0;
    double d_eff = 0;
    double intercept = 0;      // ln p_L at ln p = 0
    double residual = 0;       // weighted RMS residual in ln p_L
    int points_used = 0;
    double d_eff_stderr = 0;
    double intercept_stderr = 0;
    double slope_intercept_cov = 0;

    double log_pl(double p) const;
    nlohmann::json to_json() const;
};

/// Weighted least squares of ln p_L on ln p. Each point is weighted by its
/// failure count, the inverse of the binomial variance of ln p_L. Points with
/// no failures are skipped (and counted in *skipped when given). Throws
/// std::invalid_argument when fewer than three points remain.
FitResult fit_deff(const std::vector<DataPoint> &points, FitBasis basis, int *skipped = nullptr);

/// Crossing location of two fitted lines, or a negative value for parallel lines.
double fit_crossing(const FitResult &a, const FitResult &b);

struct ThresholdResult {
    double p_th = 0;
    std::vector<double> crossings;  // accepted pairwise crossings
    int discarded = 0;              // outside (0, 0.5) or parallel
};

/// Mean of the pairwise crossings of the fitted lines that fall in (0, 0.5).
/// Throws std::invalid_argument with fewer than two fits or no valid crossing.
ThresholdResult estimate_threshold(const std::vector<FitResult> &fits);

/// Crossing of raw logical-error curves of adjacent distances, by linear
/// interpolation in log-log space. Returns a negative value when none cross.
double coarse_threshold(const std::map<int, std::vector<DataPoint>> &by_distance, FitBasis basis);

/// Points with p <= factor * p_th_coarse.
std::vector<DataPoint> below_threshold(const std::vector<DataPoint> &points, double p_th_coarse,
                                       double factor = 0.5);

/// Wilson score interval at the given two-sided confidence.
std::pair<double, double> wilson_interval(uint64_t failures, uint64_t shots, double confidence = 0.95);

/// d^2 - n_e + 3 n_e with n_e = erasure_budget(d, f_e).
int transmon_cost(int d, double f_e);

/// (1 - defect_rate)^n.
double chip_yield(int64_t n_transmons, double defect_rate);

/// One architecture in a placement ensemble with its measured logical rates.
struct EnsembleMember {
    ArchitectureSpec spec;
    double pl_x = 0;
    double pl_z = 0;
    double pl_combined = 0;
};

struct CorrelationMap {
    int d = 0;
    std::vector<double> x, z, combined;  // per site, row-major; NaN when degenerate
    std::vector<bool> degenerate;        // site indicator or a logical rate has no variance

    nlohmann::json to_json() const;
};

/// Pearson correlation between each site's erasure indicator and the logical
/// error rates across the ensemble.
CorrelationMap placement_correlation(const std::vector<EnsembleMember> &ensemble);

/// Pearson correlation of two equal-length samples; NaN when either is constant.
double pearson(const std::vector<double> &a, const std::vector<double> &b);

struct ProjectedArchitecture {
    int d = 0;
    double f_e = 0;
    int n_erasures = 0;
    int transmons = 0;
    int k = 0;
    double deff_upper = 0;  // floor((d + k + 1) / 2)
    double deff_lower = 0;  // deff_lower_bound(d, f_e, p).bound
    double pl_upper = 0;    // (p / p_th)^deff_lower, the pessimistic rate
    double pl_lower = 0;    // (p / p_th)^deff_upper, the optimistic rate
};

struct ScalingProjection {
    std::vector<ProjectedArchitecture> architectures;

    /// Best (lowest) projected rate among architectures within the budget, for
    /// the optimistic and pessimistic estimates. Returns {1, 1} when none fits.
    std::pair<double, double> best_pl(int transmon_budget) const;

    /// Fewest transmons reaching the target rate under each estimate; -1 when
    /// no architecture reaches it.
    std::pair<int, int> min_transmons(double target_pl) const;
};

/// Projects every (d, f_e) combination. `p_th` maps erasure fraction to the
/// fitted threshold; fractions in between are interpolated linearly.
ScalingProjection scaling_projection(double p, const std::vector<int> &distances,
                                     const std::vector<double> &erasure_fractions,
                                     const std::map<double, double> &p_th);

}  // namespace hyqec

#endif
