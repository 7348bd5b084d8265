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


#include "hyqec/sweep.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "hyqec/rng.h"

namespace hyqec {

const char *const kCsvHeader =
    "model,d,f_e,strategy,seed,p,rounds,shots,failures_x,failures_z,failures_combined,flag_rate_mean";

namespace {

std::string trim(const std::string &s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) {
        return "";
    }
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string unquote(const std::string &s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') || (s.front() == '\'' && s.back() == '\''))) {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

template <typename T>
bool parse_number(const std::string &s, T &out) {
    const char *end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc() && ptr == end;
}

template <typename T>
T number_field(const std::string &field, const std::string &text) {
    T v{};
    if (!parse_number(text, v)) {
        throw ConfigError(field, "expected a number, got '" + text + "'");
    }
    return v;
}

std::vector<std::string> split_list(const std::string &field, const std::string &value) {
    std::string v = trim(value);
    if (v.size() < 2 || v.front() != '[' || v.back() != ']') {
        throw ConfigError(field, "expected a list written [a, b, ...]");
    }
    std::vector<std::string> out;
    std::string inner = v.substr(1, v.size() - 2);
    if (trim(inner).empty()) {
        return out;
    }
    std::stringstream ss(inner);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(unquote(trim(item)));
    }
    return out;
}

std::vector<std::string> split_csv(const std::string &line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

auto sort_key(const SweepRow &r) {
    return std::tie(r.model, r.d, r.f_e, r.strategy, r.seed, r.p, r.rounds);
}

uint64_t fnv1a(const std::string &s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

bool is_line_kind(const std::string &name) {
    try {
        parse_line_kind(name);
        return true;
    } catch (const std::invalid_argument &) {
        return false;
    }
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(const std::string &text) {
    ExperimentConfig cfg;
    std::set<std::string> seen;
    std::stringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        line_no++;
        std::string line = raw.substr(0, raw.find('#'));
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!seen.insert(key).second) {
            throw ConfigError(key, "given twice");
        }
        if (key == "distances") {
            auto items = split_list(key, value);
            for (size_t i = 0; i < items.size(); i++) {
                cfg.distances.push_back(number_field<int>(key + "[" + std::to_string(i) + "]", items[i]));
            }
        } else if (key == "erasure_fractions") {
            auto items = split_list(key, value);
            for (size_t i = 0; i < items.size(); i++) {
                cfg.erasure_fractions.push_back(number_field<double>(key + "[" + std::to_string(i) + "]", items[i]));
            }
        } else if (key == "physical_error_rates") {
            auto items = split_list(key, value);
            for (size_t i = 0; i < items.size(); i++) {
                cfg.physical_error_rates.push_back(
                    number_field<double>(key + "[" + std::to_string(i) + "]", items[i]));
            }
        } else if (key == "strategies") {
            cfg.strategies = split_list(key, value);
        } else if (key == "shots") {
            cfg.shots = number_field<uint64_t>(key, value);
        } else if (key == "rounds") {
            cfg.rounds = unquote(value) == "auto" ? 0 : number_field<int>(key, value);
            if (cfg.rounds <= 0 && unquote(value) != "auto") {
                throw ConfigError(key, "must be positive or auto");
            }
        } else if (key == "model") {
            try {
                cfg.model = parse_noise_level(unquote(value));
            } catch (const std::invalid_argument &e) {
                throw ConfigError(key, e.what());
            }
        } else if (key == "basis") {
            std::string b = unquote(value);
            if (b == "Z") {
                cfg.basis = BasisSelection::z;
            } else if (b == "X") {
                cfg.basis = BasisSelection::x;
            } else if (b == "both") {
                cfg.basis = BasisSelection::both;
            } else {
                throw ConfigError(key, "must be Z, X or both, got '" + b + "'");
            }
        } else if (key == "seed") {
            cfg.seed = number_field<uint64_t>(key, value);
        } else if (key == "defect_rate") {
            cfg.defect_rate = number_field<double>(key, value);
        } else if (key == "output_path") {
            cfg.output_path = unquote(value);
        } else if (key == "max_failures") {
            cfg.max_failures = number_field<uint64_t>(key, value);
        } else if (key == "workers") {
            cfg.workers = number_field<size_t>(key, value);
        } else {
            throw ConfigError(key, "unknown key on line " + std::to_string(line_no));
        }
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config", "cannot read '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

void ExperimentConfig::apply_environment() {
    if (const char *s = std::getenv("HYQEC_SEED"); s && *s) {
        seed = number_field<uint64_t>("HYQEC_SEED", s);
    }
    if (const char *s = std::getenv("HYQEC_OUTPUT_PATH"); s && *s) {
        output_path = s;
    }
}

void ExperimentConfig::validate() const {
    auto require_nonempty = [](const std::string &field, size_t n) {
        if (n == 0) {
            throw ConfigError(field, "must list at least one value");
        }
    };
    require_nonempty("distances", distances.size());
    require_nonempty("erasure_fractions", erasure_fractions.size());
    require_nonempty("strategies", strategies.size());
    require_nonempty("physical_error_rates", physical_error_rates.size());
    for (size_t i = 0; i < distances.size(); i++) {
        int d = distances[i];
        if (d < 3 || d > 15 || d % 2 == 0) {
            throw ConfigError("distances[" + std::to_string(i) + "]", "must be odd and in [3, 15]");
        }
    }
    for (size_t i = 0; i < erasure_fractions.size(); i++) {
        double f = erasure_fractions[i];
        if (!(f >= 0 && f <= 1)) {
            throw ConfigError("erasure_fractions[" + std::to_string(i) + "]", "must lie in [0, 1]");
        }
    }
    for (size_t i = 0; i < physical_error_rates.size(); i++) {
        double p = physical_error_rates[i];
        if (!(p >= 0 && p <= 0.5)) {
            throw ConfigError("physical_error_rates[" + std::to_string(i) + "]", "must lie in [0, 0.5]");
        }
    }
    for (size_t i = 0; i < strategies.size(); i++) {
        const std::string &s = strategies[i];
        std::string field = "strategies[" + std::to_string(i) + "]";
        if (s.empty() || s.find(',') != std::string::npos) {
            throw ConfigError(field, "must be a non-empty name without commas");
        }
        if (s == "optimized" || s == "random" || is_line_kind(s)) {
            continue;
        }
        try {
            make_architecture(distances.front(), 0, s, 0);
        } catch (const std::invalid_argument &e) {
            // Line counts that do not fit the smallest distance surface in run_cell.
            if (!is_line_kind(s.substr(0, s.find(':')))) {
                throw ConfigError(field, e.what());
            }
        }
    }
    if (shots < 1) {
        throw ConfigError("shots", "must be at least 1");
    }
    if (!(defect_rate >= 0 && defect_rate < 1)) {
        throw ConfigError("defect_rate", "must lie in [0, 1)");
    }
    if (output_path.empty()) {
        throw ConfigError("output_path", "must be set");
    }
    if (workers < 1) {
        throw ConfigError("workers", "must be at least 1");
    }
}

std::string SweepRow::key() const {
    return model + "," + std::to_string(d) + "," + format_double(f_e) + "," + strategy + "," + std::to_string(seed) +
           "," + format_double(p) + "," + std::to_string(rounds);
}

DataPoint SweepRow::to_data_point() const {
    DataPoint pt;
    pt.d = d;
    pt.f_e = f_e;
    pt.strategy = strategy;
    pt.p = p;
    pt.shots = shots;
    pt.failures_x = failures_x;
    pt.failures_z = failures_z;
    pt.failures_combined = failures_combined;
    return pt;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string format_row(const SweepRow &r) {
    return r.key() + "," + std::to_string(r.shots) + "," + std::to_string(r.failures_x) + "," +
           std::to_string(r.failures_z) + "," + std::to_string(r.failures_combined) + "," +
           format_double(r.flag_rate_mean);
}

SweepRow parse_row(const std::string &line) {
    auto cols = split_csv(trim(line));
    if (cols.size() != 12) {
        throw std::invalid_argument("expected 12 columns, got " + std::to_string(cols.size()));
    }
    SweepRow r;
    bool ok = true;
    r.model = cols[0];
    ok &= parse_number(cols[1], r.d);
    ok &= parse_number(cols[2], r.f_e);
    r.strategy = cols[3];
    ok &= parse_number(cols[4], r.seed);
    ok &= parse_number(cols[5], r.p);
    ok &= parse_number(cols[6], r.rounds);
    ok &= parse_number(cols[7], r.shots);
    ok &= parse_number(cols[8], r.failures_x);
    ok &= parse_number(cols[9], r.failures_z);
    ok &= parse_number(cols[10], r.failures_combined);
    ok &= parse_number(cols[11], r.flag_rate_mean);
    if (!ok || r.strategy.empty() || (r.model != "circuit" && r.model != "capacity")) {
        throw std::invalid_argument("malformed row '" + line + "'");
    }
    return r;
}

std::vector<SweepRow> read_csv(const std::string &path, int *dropped) {
    std::vector<SweepRow> rows;
    int bad = 0;
    std::ifstream in(path);
    if (in) {
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
            if (trim(line).empty()) {
                continue;
            }
            if (first) {
                first = false;
                if (trim(line) == kCsvHeader) {
                    continue;
                }
            }
            try {
                rows.push_back(parse_row(line));
            } catch (const std::invalid_argument &) {
                bad++;
            }
        }
    }
    if (dropped) {
        *dropped = bad;
    }
    return rows;
}

void sort_rows(std::vector<SweepRow> &rows) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const SweepRow &a, const SweepRow &b) { return sort_key(a) < sort_key(b); });
    rows.erase(std::unique(rows.begin(), rows.end(),
                           [](const SweepRow &a, const SweepRow &b) { return sort_key(a) == sort_key(b); }),
               rows.end());
}

void write_csv(const std::string &path, std::vector<SweepRow> rows) {
    sort_rows(rows);
    std::filesystem::path target(path);
    if (target.has_parent_path()) {
        std::filesystem::create_directories(target.parent_path());
    }
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write '" + tmp + "'");
        }
        out << kCsvHeader << "\n";
        for (const auto &r : rows) {
            out << format_row(r) << "\n";
        }
        out.flush();
        if (!out) {
            throw std::runtime_error("write to '" + tmp + "' failed");
        }
    }
    std::filesystem::rename(tmp, target);
}

std::vector<SweepCell> expand_cells(const ExperimentConfig &config) {
    std::vector<SweepCell> cells;
    for (int d : config.distances) {
        for (double f : config.erasure_fractions) {
            for (const auto &s : config.strategies) {
                for (double p : config.physical_error_rates) {
                    cells.push_back({d, f, s, p});
                }
            }
        }
    }
    return cells;
}

ArchitectureSpec cell_architecture(const SweepCell &cell, uint64_t seed) {
    if (!is_line_kind(cell.strategy)) {
        return make_architecture(cell.d, cell.f_e, cell.strategy, seed);
    }
    LinePattern pattern;
    pattern.kind = parse_line_kind(cell.strategy);
    pattern.axis = Axis::cols;
    int budget = erasure_budget(cell.d, cell.f_e);
    ArchitectureSpec best = pattern_placement(cell.d, pattern);
    for (int n = 1; n <= cell.d; n++) {
        pattern.count = n;
        ArchitectureSpec spec;
        try {
            spec = pattern_placement(cell.d, pattern);
        } catch (const std::invalid_argument &) {
            break;
        }
        if (static_cast<int>(spec.num_erasures()) > budget) {
            break;
        }
        best = spec;
    }
    best.strategy = cell.strategy;
    return best;
}

SweepRow run_cell(const ExperimentConfig &config, const SweepCell &cell) {
    ArchitectureSpec spec = cell_architecture(cell, config.seed);
    SweepRow row;
    row.model = to_string(config.model);
    row.d = cell.d;
    row.f_e = spec.f_e;
    row.strategy = cell.strategy;
    row.seed = config.seed;
    row.p = cell.p;
    row.rounds = config.model == NoiseLevel::capacity ? 1 : (config.rounds > 0 ? config.rounds : cell.d);

    PointOptions o;
    o.level = config.model;
    o.p = cell.p;
    o.rounds = row.rounds;
    o.shots = config.shots;
    o.workers = config.workers;
    o.max_failures = config.max_failures;
    o.run_x = config.basis != BasisSelection::z;
    o.run_z = config.basis != BasisSelection::x;
    // Seed depends on the cell identity only, never on sweep order.
    SweepRow id = row;
    id.seed = 0;
    o.seed = mix_seed(config.seed, fnv1a(id.key()));
    PointResult res = run_point(spec, o);
    row.shots = res.shots;
    row.failures_x = res.failures_x;
    row.failures_z = res.failures_z;
    row.failures_combined = res.failures_combined;
    row.flag_rate_mean = res.flag_rate_mean;
    return row;
}

SweepSummary run_sweep(const ExperimentConfig &config, const SweepOptions &options) {
    config.validate();
    SweepSummary summary;
    int dropped = 0;
    std::vector<SweepRow> rows = read_csv(config.output_path, &dropped);
    if (dropped && options.log) {
        *options.log << "dropped " << dropped << " malformed rows from " << config.output_path << "\n";
    }
    std::set<std::string> done;
    for (const auto &r : rows) {
        done.insert(r.key());
    }
    // Rewrite first so appends land after a clean header and complete lines.
    write_csv(config.output_path, rows);

    auto cells = expand_cells(config);
    summary.total_cells = cells.size();
    std::set<std::string> visited;
    for (const auto &cell : cells) {
        ArchitectureSpec spec = cell_architecture(cell, config.seed);
        SweepRow probe;
        probe.model = to_string(config.model);
        probe.d = cell.d;
        probe.f_e = spec.f_e;
        probe.strategy = cell.strategy;
        probe.seed = config.seed;
        probe.p = cell.p;
        probe.rounds = config.model == NoiseLevel::capacity ? 1 : (config.rounds > 0 ? config.rounds : cell.d);
        std::string key = probe.key();
        if (!visited.insert(key).second) {
            continue;
        }
        if (done.count(key)) {
            summary.skipped++;
            continue;
        }
        if (options.max_new_cells >= 0 && static_cast<int>(summary.computed) >= options.max_new_cells) {
            break;
        }
        SweepRow row = run_cell(config, cell);
        {
            std::ofstream out(config.output_path, std::ios::app);
            out << format_row(row) << "\n";
            out.flush();
            if (!out) {
                throw std::runtime_error("append to '" + config.output_path + "' failed");
            }
        }
        rows.push_back(row);
        summary.computed++;
        if (options.log) {
            auto [lo, hi] = wilson_interval(row.failures_combined, row.shots);
            *options.log << "[" << summary.computed + summary.skipped << "/" << cells.size() << "] d=" << row.d
                         << " f_e=" << format_double(row.f_e) << " " << row.strategy << " p=" << format_double(row.p)
                         << " shots=" << row.shots << " failures=" << row.failures_combined << " p_L in ["
                         << lo << ", " << hi << "]\n";
        }
    }
    write_csv(config.output_path, rows);
    summary.rows = read_csv(config.output_path);
    return summary;
}

nlohmann::json GroupFit::to_json() const {
    nlohmann::json list = nlohmann::json::array();
    for (const auto &f : fits) {
        nlohmann::json j = f.to_json();
        j["f_e"] = f_e;
        j["strategy"] = strategy;
        j["p_th"] = p_th > 0 ? nlohmann::json(p_th) : nlohmann::json(nullptr);
        list.push_back(j);
    }
    return {{"model", model},
            {"f_e", f_e},
            {"strategy", strategy},
            {"p_th", p_th > 0 ? nlohmann::json(p_th) : nlohmann::json(nullptr)},
            {"p_th_coarse", p_th_coarse > 0 ? nlohmann::json(p_th_coarse) : nlohmann::json(nullptr)},
            {"fits", list},
            {"notes", notes}};
}

std::vector<GroupFit> fit_sweep(const std::vector<SweepRow> &rows, FitBasis basis, double below_factor) {
    std::map<std::tuple<std::string, double, std::string>, std::map<int, std::vector<DataPoint>>> groups;
    for (const auto &r : rows) {
        groups[{r.model, r.f_e, r.strategy}][r.d].push_back(r.to_data_point());
    }
    std::vector<GroupFit> out;
    for (auto &[key, by_d] : groups) {
        GroupFit g;
        std::tie(g.model, g.f_e, g.strategy) = key;
        g.p_th_coarse = by_d.size() >= 2 ? coarse_threshold(by_d, basis) : -1;
        for (auto &[d, pts] : by_d) {
            auto used = g.p_th_coarse > 0 ? below_threshold(pts, g.p_th_coarse, below_factor) : pts;
            try {
                g.fits.push_back(fit_deff(used, basis));
            } catch (const std::invalid_argument &e) {
                g.notes.push_back("d=" + std::to_string(d) + ": " + e.what());
            }
        }
        if (g.fits.size() >= 2) {
            try {
                g.p_th = estimate_threshold(g.fits).p_th;
            } catch (const std::invalid_argument &e) {
                g.notes.push_back(std::string("threshold: ") + e.what());
            }
        }
        out.push_back(std::move(g));
    }
    return out;
}

EnsembleMember run_ensemble_member(int d, double f_e, int member, const PointOptions &options) {
    EnsembleMember e;
    e.spec = random_placement(d, f_e, mix_seed(options.seed, static_cast<uint64_t>(member)));
    PointOptions o = options;
    o.seed = mix_seed(options.seed ^ 0x656e73ULL, static_cast<uint64_t>(member));
    PointResult r = run_point(e.spec, o);
    double n = static_cast<double>(r.shots);
    e.pl_x = r.failures_x / n;
    e.pl_z = r.failures_z / n;
    e.pl_combined = r.failures_combined / n;
    return e;
}

std::vector<EnsembleMember> run_placement_ensemble(int d, double f_e, int members, const PointOptions &options) {
    if (members < 2) {
        throw std::invalid_argument("an ensemble needs at least two placements");
    }
    std::vector<EnsembleMember> out;
    for (int m = 0; m < members; m++) {
        out.push_back(run_ensemble_member(d, f_e, m, options));
    }
    return out;
}

}  // namespace hyqec
