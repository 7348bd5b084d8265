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


#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hyqec/analysis.h"
#include "hyqec/capacity.h"
#include "hyqec/experiment.h"
#include "hyqec/lattice.h"
#include "hyqec/placement.h"
#include "hyqec/sweep.h"
#include "json.hpp"

namespace {

using namespace hyqec;

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

void emit(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    out << text;
}

std::string placement_grid(const ArchitectureSpec &spec) {
    std::string s;
    auto mask = spec.erasure_mask();
    for (int r = 0; r < spec.d; r++) {
        for (int c = 0; c < spec.d; c++) {
            s += mask[r * spec.d + c] ? 'E' : '.';
        }
        s += '\n';
    }
    return s;
}

LogicalBasis parse_basis(const std::string &s) {
    if (s == "Z") {
        return LogicalBasis::z;
    }
    if (s == "X") {
        return LogicalBasis::x;
    }
    throw ConfigError("basis", "must be Z or X");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Hybrid erasure surface code experiments"};
    app.require_subcommand(1);

    // place
    int place_d = 7;
    double place_fe = 0;
    std::string place_strategy = "optimized", place_out;
    uint64_t place_seed = 0;
    bool place_layout = false;
    auto *place = app.add_subcommand("place", "Erasure placement as JSON");
    place->add_option("--d", place_d, "Code distance")->required();
    place->add_option("--fe", place_fe, "Erasure fraction")->required();
    place->add_option("--strategy", place_strategy, "optimized, random or kind:count[:axis]");
    place->add_option("--seed", place_seed, "Seed for random placements");
    place->add_flag("--layout", place_layout, "Include the code layout");
    place->add_option("--out", place_out, "Output file (default stdout)");

    // paths
    int paths_d = 7;
    std::string paths_out;
    auto *paths = app.add_subcommand("paths", "Per-qubit minimum-length path counts as CSV");
    paths->add_option("--d", paths_d, "Code distance")->required();
    paths->add_option("--out", paths_out, "Output file (default stdout)");

    // capacity
    std::vector<int> cap_d{3, 5, 7};
    std::vector<double> cap_fe{0, 0.25, 0.5, 0.75, 1}, cap_p{0.01};
    std::string cap_out;
    auto *capacity = app.add_subcommand("capacity", "Analytic capacity-level estimates as CSV");
    capacity->add_option("--d", cap_d, "Code distances")->delimiter(',');
    capacity->add_option("--fe", cap_fe, "Erasure fractions")->delimiter(',');
    capacity->add_option("--p", cap_p, "Physical error rates")->delimiter(',');
    capacity->add_option("--out", cap_out, "Output file (default stdout)");

    // sample
    int s_d = 3, s_rounds = 0;
    double s_fe = 0, s_p = 0.001;
    std::string s_strategy = "optimized", s_model = "circuit", s_basis = "both", s_out;
    uint64_t s_shots = 10000, s_seed = 0, s_max_failures = 0;
    size_t s_workers = 1;
    auto *sample = app.add_subcommand("sample", "Monte Carlo logical error rate of one architecture");
    sample->add_option("--d", s_d, "Code distance")->required();
    sample->add_option("--fe", s_fe, "Erasure fraction");
    sample->add_option("--strategy", s_strategy, "Placement strategy");
    sample->add_option("--p", s_p, "Physical error rate")->required();
    sample->add_option("--rounds", s_rounds, "Syndrome rounds (0 means d)");
    sample->add_option("--shots", s_shots, "Shots per basis");
    sample->add_option("--model", s_model, "circuit or capacity");
    sample->add_option("--basis", s_basis, "Z, X or both");
    sample->add_option("--seed", s_seed, "Seed");
    sample->add_option("--max-failures", s_max_failures, "Early stop after this many failures");
    sample->add_option("--workers", s_workers, "Worker threads");
    sample->add_option("--out", s_out, "Output CSV (default stdout)");

    // fit
    std::string fit_in, fit_out, fit_basis = "combined";
    double fit_factor = 0.5;
    auto *fit = app.add_subcommand("fit", "Fit d_eff and thresholds from a sample CSV");
    fit->add_option("--in", fit_in, "Sample CSV")->required();
    fit->add_option("--out", fit_out, "Output JSON (default stdout)");
    fit->add_option("--basis", fit_basis, "X, Z or combined");
    fit->add_option("--below", fit_factor, "Keep p <= below * coarse threshold");

    // correlate
    int c_d = 5, c_members = 100, c_rounds = 0;
    double c_fe = 0.5, c_p = 0.005;
    std::string c_model = "circuit", c_out;
    uint64_t c_shots = 20000, c_seed = 0;
    size_t c_workers = 1;
    auto *correlate = app.add_subcommand("correlate", "Site-wise correlation over random placements");
    correlate->add_option("--d", c_d, "Code distance");
    correlate->add_option("--fe", c_fe, "Erasure fraction");
    correlate->add_option("--members", c_members, "Number of random placements");
    correlate->add_option("--p", c_p, "Physical error rate");
    correlate->add_option("--rounds", c_rounds, "Syndrome rounds (0 means d)");
    correlate->add_option("--shots", c_shots, "Shots per placement and basis");
    correlate->add_option("--model", c_model, "circuit or capacity");
    correlate->add_option("--seed", c_seed, "Seed");
    correlate->add_option("--workers", c_workers, "Worker threads");
    correlate->add_option("--out", c_out, "Output JSON (default stdout)");

    // cost
    std::vector<int> cost_d{3, 5, 7};
    std::vector<double> cost_fe{0, 1};
    double cost_defect = 0.01, cost_p = 0;
    std::string cost_pth, cost_out;
    auto *cost = app.add_subcommand("cost", "Transmon cost, chip yield and scaling projection as CSV");
    cost->add_option("--d", cost_d, "Code distances")->delimiter(',');
    cost->add_option("--fe", cost_fe, "Erasure fractions")->delimiter(',');
    cost->add_option("--defect-rate", cost_defect, "Per-transmon fabrication defect rate");
    cost->add_option("--p", cost_p, "Physical error rate for the projection");
    cost->add_option("--pth", cost_pth, "Thresholds per erasure fraction, written f:p_th,f:p_th");
    cost->add_option("--out", cost_out, "Output CSV (default stdout)");

    // run
    std::string run_config;
    auto *run = app.add_subcommand("run", "Run a sweep described by a config file");
    run->add_option("config", run_config, "Config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*place) {
            ArchitectureSpec spec = make_architecture(place_d, place_fe, place_strategy, place_seed);
            nlohmann::json j = spec.to_json();
            j["grid"] = placement_grid(spec);
            j["n_erasures"] = spec.num_erasures();
            j["min_erasures_per_path"] = {{"Z", min_erasures_per_path(spec, LogicalBasis::z)},
                                          {"X", min_erasures_per_path(spec, LogicalBasis::x)}};
            if (place_layout) {
                j["layout"] = build_layout(place_d).to_json();
            }
            emit(place_out, j.dump(2) + "\n");
        } else if (*paths) {
            auto cols = path_containment_counts(paths_d, Axis::cols);
            auto rows = path_containment_counts(paths_d, Axis::rows);
            std::vector<double> imp = paths_d <= 11 ? importance_map(paths_d) : std::vector<double>{};
            std::ostringstream os;
            os << "row,col,paths_crossing_cols,paths_crossing_rows,importance\n";
            for (int r = 0; r < paths_d; r++) {
                for (int c = 0; c < paths_d; c++) {
                    int q = r * paths_d + c;
                    os << r << "," << c << "," << cols[q] << "," << rows[q] << ",";
                    if (!imp.empty()) {
                        os << format_double(imp[q]);
                    }
                    os << "\n";
                }
            }
            emit(paths_out, os.str());
        } else if (*capacity) {
            std::ostringstream os;
            os << "d,f_e,p,k,rep_exact,rep_leading,union_bound,union_bound_crude,deff_exponent,deff_bound,"
                  "deff_closed_form\n";
            for (int d : cap_d) {
                for (double f : cap_fe) {
                    for (double p : cap_p) {
                        DeffBound b = deff_lower_bound(d, f, p);
                        RepCodeSpec rep{d, b.k, p};
                        UnionBound u = surface_union_bound_pl(d, b.k, p);
                        os << d << "," << format_double(f) << "," << format_double(p) << "," << b.k << ","
                           << format_double(rep_exact_pl(rep)) << "," << format_double(rep_leading_pl(rep)) << ","
                           << format_double(u.path_sum) << "," << format_double(u.crude) << "," << b.exponent
                           << "," << format_double(b.bound) << "," << format_double(b.closed_form) << "\n";
                    }
                }
            }
            emit(cap_out, os.str());
        } else if (*sample) {
            ExperimentConfig cfg;
            cfg.distances = {s_d};
            cfg.erasure_fractions = {s_fe};
            cfg.strategies = {s_strategy};
            cfg.physical_error_rates = {s_p};
            cfg.shots = s_shots;
            cfg.rounds = s_rounds;
            cfg.seed = s_seed;
            cfg.max_failures = s_max_failures;
            cfg.workers = s_workers;
            cfg.output_path = "-";
            try {
                cfg.model = parse_noise_level(s_model);
            } catch (const std::invalid_argument &e) {
                throw ConfigError("model", e.what());
            }
            cfg.basis = s_basis == "both" ? BasisSelection::both
                                          : (parse_basis(s_basis) == LogicalBasis::z ? BasisSelection::z
                                                                                     : BasisSelection::x);
            cfg.validate();
            SweepRow row = run_cell(cfg, expand_cells(cfg).front());
            auto [lo, hi] = wilson_interval(row.failures_combined, row.shots);
            std::cerr << "p_L = " << static_cast<double>(row.failures_combined) / row.shots << " in [" << lo << ", "
                      << hi << "]\n";
            emit(s_out, std::string(kCsvHeader) + "\n" + format_row(row) + "\n");
        } else if (*fit) {
            std::ifstream probe(fit_in);
            if (!probe) {
                throw ConfigError("--in", "cannot read '" + fit_in + "'");
            }
            int dropped = 0;
            auto rows = read_csv(fit_in, &dropped);
            if (rows.empty()) {
                throw ConfigError("--in", "'" + fit_in + "' holds no sample rows");
            }
            FitBasis basis;
            try {
                basis = parse_fit_basis(fit_basis);
            } catch (const std::invalid_argument &e) {
                throw ConfigError("--basis", e.what());
            }
            nlohmann::json out = nlohmann::json::array();
            for (const auto &g : fit_sweep(rows, basis, fit_factor)) {
                out.push_back(g.to_json());
            }
            emit(fit_out, out.dump(2) + "\n");
        } else if (*correlate) {
            PointOptions o;
            try {
                o.level = parse_noise_level(c_model);
            } catch (const std::invalid_argument &e) {
                throw ConfigError("model", e.what());
            }
            o.p = c_p;
            o.rounds = c_rounds;
            o.shots = c_shots;
            o.seed = c_seed;
            o.workers = c_workers;
            auto ensemble = run_placement_ensemble(c_d, c_fe, c_members, o);
            nlohmann::json j = placement_correlation(ensemble).to_json();
            j["f_e"] = c_fe;
            j["p"] = c_p;
            j["members"] = c_members;
            emit(c_out, j.dump(2) + "\n");
        } else if (*cost) {
            std::map<double, double> pth;
            if (!cost_pth.empty()) {
                std::stringstream ss(cost_pth);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    auto colon = item.find(':');
                    if (colon == std::string::npos) {
                        throw ConfigError("--pth", "expected f:p_th pairs");
                    }
                    pth[std::stod(item.substr(0, colon))] = std::stod(item.substr(colon + 1));
                }
            }
            bool project = cost_p > 0 && !pth.empty();
            ScalingProjection proj;
            if (project) {
                proj = scaling_projection(cost_p, cost_d, cost_fe, pth);
            }
            std::ostringstream os;
            os << "d,f_e,n_erasures,transmons,yield";
            if (project) {
                os << ",k,deff_upper,deff_lower,pl_optimistic,pl_pessimistic";
            }
            os << "\n";
            size_t idx = 0;
            for (int d : cost_d) {
                for (double f : cost_fe) {
                    int t = transmon_cost(d, f);
                    os << d << "," << format_double(f) << "," << erasure_budget(d, f) << "," << t << ","
                       << format_double(chip_yield(t, cost_defect));
                    if (project) {
                        const auto &a = proj.architectures[idx];
                        os << "," << a.k << "," << format_double(a.deff_upper) << "," << format_double(a.deff_lower)
                           << "," << format_double(a.pl_lower) << "," << format_double(a.pl_upper);
                    }
                    os << "\n";
                    idx++;
                }
            }
            emit(cost_out, os.str());
        } else if (*run) {
            ExperimentConfig cfg = ExperimentConfig::load(run_config);
            cfg.apply_environment();
            cfg.validate();
            SweepOptions opt;
            opt.log = &std::cerr;
            SweepSummary s = run_sweep(cfg, opt);
            std::cerr << "computed " << s.computed << " cells, skipped " << s.skipped << ", wrote "
                      << s.rows.size() << " rows to " << cfg.output_path << "\n";
        }
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument &e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
