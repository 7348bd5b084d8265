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


#ifndef HYQEC_SWEEP_H
#define HYQEC_SWEEP_H

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyqec/analysis.h"
#include "hyqec/experiment.h"

namespace hyqec {

/// Invalid configuration; `field` names the offending key, e.g. "shots" or
/// "physical_error_rates[2]".
class ConfigError : public std::runtime_error {
   public:
    ConfigError(std::string field, const std::string &message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
    const std::string &field() const {
        return field_;
    }

   private:
    std::string field_;
};

enum class BasisSelection : uint8_t { z, x, both };

/// A Cartesian sweep over distances, erasure fractions, strategies and rates.
///
/// Text form is one `key = value` per line; lists are written `[a, b, c]` and
/// `#` starts a comment. HYQEC_SEED and HYQEC_OUTPUT_PATH in the environment
/// override `seed` and `output_path`.
struct ExperimentConfig {
    std::vector<int> distances;
    std::vector<double> erasure_fractions;
    std::vector<std::string> strategies;
    std::vector<double> physical_error_rates;
    uint64_t shots = 0;
    int rounds = 0;  // 0 means d
    NoiseLevel model = NoiseLevel::circuit;
    BasisSelection basis = BasisSelection::both;
    uint64_t seed = 0;
    double defect_rate = 0;
    std::string output_path;
    uint64_t max_failures = 0;  // per-cell early stop, 0 disables
    size_t workers = 1;

    /// Throws ConfigError on syntax errors, unknown keys or invalid values.
    static ExperimentConfig parse(const std::string &text);
    static ExperimentConfig load(const std::string &path);

    void apply_environment();
    void validate() const;
};

/// One row of the sample table.
struct SweepRow {
    std::string model;
    int d = 0;
    double f_e = 0;
    std::string strategy;
    uint64_t seed = 0;
    double p = 0;
    int rounds = 0;
    uint64_t shots = 0;
    uint64_t failures_x = 0;
    uint64_t failures_z = 0;
    uint64_t failures_combined = 0;
    double flag_rate_mean = 0;

    /// Identity of the sweep cell: model, d, f_e, strategy, seed, p, rounds.
    std::string key() const;
    DataPoint to_data_point() const;
};

extern const char *const kCsvHeader;

/// Shortest text that parses back to the same double.
std::string format_double(double v);

std::string format_row(const SweepRow &row);
/// Throws std::invalid_argument on malformed lines.
SweepRow parse_row(const std::string &line);

/// Reads a sample table. Malformed lines (for instance a line cut short by an
/// interrupted write) are skipped and counted in *dropped when given. A
/// missing file yields an empty table.
std::vector<SweepRow> read_csv(const std::string &path, int *dropped = nullptr);

/// Sorts rows by key, removes duplicate keys (first wins) and replaces the
/// file atomically through a temporary sibling.
void write_csv(const std::string &path, std::vector<SweepRow> rows);

void sort_rows(std::vector<SweepRow> &rows);

struct SweepCell {
    int d = 0;
    double f_e = 0;
    std::string strategy;
    double p = 0;
};

/// The cells of the Cartesian product in sweep order.
std::vector<SweepCell> expand_cells(const ExperimentConfig &config);

/// Placement for a cell. Plain line kinds ("rows", "cross", ...) use the
/// largest line count whose erasures fit the budget of f_e.
ArchitectureSpec cell_architecture(const SweepCell &cell, uint64_t seed);

/// Runs one cell.
SweepRow run_cell(const ExperimentConfig &config, const SweepCell &cell);

struct SweepOptions {
    std::ostream *log = nullptr;
    /// Stop after this many newly computed cells (negative: no limit).
    int max_new_cells = -1;
};

struct SweepSummary {
    size_t total_cells = 0;
    size_t skipped = 0;   // already present in the output
    size_t computed = 0;
    std::vector<SweepRow> rows;  // final table, canonical order
};

/// Runs every missing cell, appending each finished row to output_path, then
/// rewrites the table in canonical order.
SweepSummary run_sweep(const ExperimentConfig &config, const SweepOptions &options = {});

/// Fits of one (model, f_e, strategy) family across distances.
struct GroupFit {
    std::string model;
    double f_e = 0;
    std::string strategy;
    double p_th_coarse = -1;  // negative when raw curves do not cross
    std::vector<FitResult> fits;
    std::vector<std::string> notes;  // distances that could not be fitted, and why
    double p_th = -1;                // negative when fewer than two fits cross
    nlohmann::json to_json() const;
};

/// Groups rows by (model, f_e, strategy), keeps points with
/// p <= below_factor * coarse threshold (all points when the raw curves do
/// not cross), fits d_eff per distance and the threshold per group.
std::vector<GroupFit> fit_sweep(const std::vector<SweepRow> &rows, FitBasis basis, double below_factor = 0.5);

/// Member `member` of the ensemble below; members are independent of each other.
EnsembleMember run_ensemble_member(int d, double f_e, int member, const PointOptions &options);

/// Random placements of a fixed (d, f_e) and their measured logical rates.
std::vector<EnsembleMember> run_placement_ensemble(int d, double f_e, int members, const PointOptions &options);

}  // namespace hyqec

#endif
