// Copyright 2026 The betacoal Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Runs the command-line tool as a subprocess.

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace {

struct Result {
  int status = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(BETACOAL_CLI_PATH) + " " + args + " 2>&1";
  Result r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    return r;
  }
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    r.out.append(buf.data(), got);
  }
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

TEST(Cli, RatesTable) {
  const auto r = run("rates table --alpha 1.5 --b 3");
  ASSERT_EQ(r.status, 0) << r.out;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "k,lambda_bk,binom_weight,pmf");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 7), "2,0.75,");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 7), "3,0.25,");
}

TEST(Cli, SimulateIsDeterministic) {
  const auto a = run("simulate --n 500 --alpha 1.5 --seed 9");
  const auto b = run("simulate --n 500 --alpha 1.5 --seed 9");
  ASSERT_EQ(a.status, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  const auto doc = nlohmann::json::parse(a.out);
  EXPECT_EQ(doc["n"], 500);
  EXPECT_GT(doc["tau"].get<int>(), 0);
  EXPECT_LE(doc["ell"].get<double>(), doc["L"].get<double>());
  EXPECT_FALSE(doc.contains("x"));
}

TEST(Cli, SimulateStoresTrajectory) {
  const auto r = run("simulate --n 40 --alpha 1.7 --seed 2 --store-trajectory");
  ASSERT_EQ(r.status, 0) << r.out;
  const auto doc = nlohmann::json::parse(r.out);
  const auto tau = doc["tau"].get<std::size_t>();
  EXPECT_EQ(doc["x"].size(), tau + 1);
  EXPECT_EQ(doc["y"].size(), tau + 1);
  EXPECT_EQ(doc["u"].size(), tau);
  EXPECT_EQ(doc["x"][0], 40);
  EXPECT_EQ(doc["x"][tau], 1);
}

TEST(Cli, OracleWritesCsvAndHistory) {
  const auto path = std::filesystem::temp_directory_path() / "betacoal_hist.json";
  std::filesystem::remove(path);
  const auto r = run("oracle --n 6 --alpha 1.5 --reps 3 --seed 1 --store-history"
                     " --history-out " + path.string());
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(first_line(r.out), "replicate,seed,n,tau,L,ell");
  ASSERT_TRUE(std::filesystem::exists(path));
  std::ifstream in(path);
  const auto doc = nlohmann::json::parse(in);
  EXPECT_FALSE(doc.empty());
  std::filesystem::remove(path);
}

TEST(Cli, StableSample) {
  const auto r = run("stable sample --alpha 1.5 --count 5 --seed 3");
  ASSERT_EQ(r.status, 0) << r.out;
  std::istringstream in(r.out);
  int lines = 0;
  for (std::string line; std::getline(in, line);) {
    EXPECT_NO_THROW((void)std::stod(line));
    ++lines;
  }
  EXPECT_EQ(lines, 5);
}

TEST(Cli, Constants) {
  const auto r = run("constants --alpha 1.5");
  ASSERT_EQ(r.status, 0) << r.out;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_NEAR(doc["c1"].get<double>(), 0.6646701940895685, 1e-15);
  EXPECT_EQ(doc["gamma"].get<double>(), 2.0);
}

TEST(Cli, ExperimentBytesIndependentOfWorkers) {
  const std::string base =
      "experiment theorem1 --alpha 1.5 --n-grid 100,300 --reps 30 --seed 5 "
      "--reference-samples 500 --format json --out ";
  const auto dir = std::filesystem::temp_directory_path();
  const auto p1 = dir / "betacoal_w1.json";
  const auto p4 = dir / "betacoal_w4.json";
  ASSERT_EQ(run(base + p1.string() + " --workers 1").status, 0);
  ASSERT_EQ(run(base + p4.string() + " --workers 4").status, 0);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  const std::string a = slurp(p1);
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(p4));
  std::filesystem::remove(p1);
  std::filesystem::remove(p4);
}

TEST(Cli, ExperimentCsvToStdout) {
  const auto r = run("experiment fig1 --alpha 1.8 --n 100 --reps 4 --seed 1");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("replicate,seed,n,tau,L,ell,tau_pow"), std::string::npos);
}

TEST(Cli, ErrorsExitNonZero) {
  EXPECT_NE(run("simulate --n 10 --alpha 2.5 --seed 1").status, 0);
  const auto bad = run("experiment theorem4 --alpha 1.5 --n 10 --reps 1 --seed 1");
  EXPECT_NE(bad.status, 0);
  const auto io = run("experiment ratio --alpha 1.5 --n 10 --reps 1 --seed 1 "
                      "--out /nonexistent-dir/x.csv");
  EXPECT_NE(io.status, 0);
  EXPECT_NE(io.out.find("/nonexistent-dir/x.csv"), std::string::npos);
  EXPECT_NE(run("experiment theorem3 --alpha 1.5 --n 10 --reps 1 --seed 1 "
                "--storage summary").status,
            0);
}

}  // namespace
