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


#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace {

struct Output {
    int status = -1;
    std::string text;
};

Output run(const std::string &args) {
    std::string cmd = std::string(HYQEC_CLI_PATH) + " " + args + " 2>/dev/null";
    Output out;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        return out;
    }
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        out.text.append(buf.data(), n);
    }
    int raw = pclose(pipe);
    out.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return out;
}

std::vector<std::string> lines(const std::string &text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        out.push_back(line);
    }
    return out;
}

std::vector<std::string> split(const std::string &line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        out.push_back(cell);
    }
    return out;
}

TEST(Cli, Cost) {
    auto out = run("cost --d 7 --fe 0,1 --defect-rate 0.01");
    ASSERT_EQ(out.status, 0);
    auto rows = lines(out.text);
    ASSERT_GE(rows.size(), 3u);
    auto a = split(rows[1]);
    auto b = split(rows[2]);
    EXPECT_EQ(a[3], "49");
    EXPECT_NEAR(std::stod(a[4]), 0.6111172395, 1e-9);
    EXPECT_EQ(b[2], "49");
    EXPECT_EQ(b[3], "147");
}

TEST(Cli, PathsCoverEverySite) {
    auto out = run("paths --d 5");
    ASSERT_EQ(out.status, 0);
    auto rows = lines(out.text);
    ASSERT_EQ(rows.size(), 26u);
    EXPECT_EQ(rows[0], "row,col,paths_crossing_cols,paths_crossing_rows,importance");
    long cols = 0, rws = 0;
    for (size_t i = 1; i < rows.size(); i++) {
        auto c = split(rows[i]);
        cols += std::stol(c[2]);
        rws += std::stol(c[3]);
    }
    EXPECT_EQ(cols, rws);
    EXPECT_GT(cols, 0);
}

TEST(Cli, PlaceJson) {
    auto out = run("place --d 5 --fe 0.36 --strategy optimized");
    ASSERT_EQ(out.status, 0);
    auto j = nlohmann::json::parse(out.text);
    EXPECT_EQ(j["n_erasures"], 9);
    EXPECT_EQ(j["erasures"].size(), 9u);
    EXPECT_EQ(j["min_erasures_per_path"]["Z"], 1);
    EXPECT_EQ(j["min_erasures_per_path"]["X"], 1);
}

TEST(Cli, BadInputsExitTwo) {
    std::string cfg = testing::TempDir() + "/hyqec_bad.cfg";
    {
        std::ofstream out(cfg);
        out << "distances = [3]\nshots = -4\n";
    }
    EXPECT_EQ(run("run " + cfg).status, 2);
    EXPECT_EQ(run("fit --in /nonexistent/table.csv").status, 2);
    EXPECT_EQ(run("place --d 4 --fe 0.5").status, 2);
    EXPECT_NE(run("no-such-command").status, 0);
}

TEST(Cli, SampleIsDeterministic) {
    std::string csv = testing::TempDir() + "/hyqec_cli_sample.csv";
    std::remove(csv.c_str());
    const std::string args = "sample --d 3 --fe 0 --p 0.05 --model capacity --shots 5000 --seed 3";
    auto out = run(args);
    ASSERT_EQ(out.status, 0);
    auto rows = lines(out.text);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(split(rows[1]).size(), 12u);
    ASSERT_EQ(run(args + " --out " + csv).status, 0);
    std::ifstream in(csv);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(lines(ss.str()), rows);
}

}  // namespace
