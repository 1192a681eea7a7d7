// Copyright 2026 The gibbstree Authors
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

#include "commands.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace gibbstree::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Invoke(const std::string& command, const RunConfig& cfg) {
  std::ostringstream out, err;
  const int code = RunCommand(command, cfg, out, err);
  return {code, out.str(), err.str()};
}

RunConfig Config(const std::string& text) {
  RunConfig cfg;
  ApplyConfigText(cfg, text);
  return cfg;
}

std::vector<std::string> Lines(const std::string& s) {
  std::vector<std::string> lines;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<double> Fields(const std::string& line) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) out.push_back(std::stod(f));
  return out;
}

TEST(ConfigTest, ParsesKeyValueFile) {
  const auto cfg = Config(
      "# comment\n"
      "kind = plane\n"
      "bound = 4\n"
      "beta = -0.5\n"
      "c = [0, 1.5, -2, 3, 4]\n"
      "n = 12\n"
      "n_list = [10, 20]\n"
      "eps = 0.02\n"
      "delta = 0.2\n"
      "samples = 7\n"
      "seed = 18446744073709551615\n"
      "workers = 3\n"
      "out = report.csv\n");
  EXPECT_EQ(cfg.kind, Kind::kPlane);
  EXPECT_EQ(cfg.bound, 4);
  EXPECT_EQ(cfg.beta, -0.5);
  EXPECT_EQ(cfg.energy, (std::vector<double>{0, 1.5, -2, 3, 4}));
  EXPECT_EQ(cfg.n, 12);
  EXPECT_EQ(cfg.n_list, (std::vector<std::int64_t>{10, 20}));
  EXPECT_EQ(cfg.eps, 0.02);
  EXPECT_EQ(cfg.delta, 0.2);
  EXPECT_EQ(cfg.samples, 7);
  EXPECT_EQ(cfg.seed, 18446744073709551615ull);
  EXPECT_EQ(cfg.workers, 3);
  EXPECT_EQ(cfg.out, "report.csv");
}

TEST(ConfigTest, LaterSettingsWin) {
  auto cfg = Config("beta = 2\nbound = 5\n");
  ApplySetting(cfg, "beta", "0.25");
  ApplySetting(cfg, "energy", "1,2,3");
  EXPECT_EQ(cfg.beta, 0.25);
  EXPECT_EQ(cfg.bound, 5);
  EXPECT_EQ(cfg.energy, (std::vector<double>{1, 2, 3}));
}

TEST(ConfigTest, RejectsMalformedInput) {
  EXPECT_THROW(Config("kind = cyclic\n"), ConfigError);
  EXPECT_THROW(Config("beta = fast\n"), ConfigError);
  EXPECT_THROW(Config("bound = 3.5\n"), ConfigError);
  EXPECT_THROW(Config("seed = -1\n"), ConfigError);
  EXPECT_THROW(Config("colour = red\n"), ConfigError);
  EXPECT_THROW(Config("just words\n"), ConfigError);
  EXPECT_THROW(Config("c = [1, 2\n"), ConfigError);
}

TEST(ConfigTest, ValidationErrorsExitTwo) {
  for (const char* text :
       {"bound = 1\n", "kind = plane\nbound = 0\n", "c = [1, 2]\n",
        "samples = 0\nn = 5\n", "n_list = [200, 100]\n", "workers = 0\n"}) {
    const auto r = Invoke("ldp-table", Config(text));
    EXPECT_EQ(r.code, kExitConfig) << text;
    EXPECT_TRUE(r.out.empty());
    EXPECT_NE(r.err.find("config error"), std::string::npos) << r.err;
  }
  EXPECT_EQ(Invoke("sample", Config("bound = 3\n")).code, kExitConfig);
  EXPECT_EQ(Invoke("frobnicate", RunConfig{}).code, kExitConfig);
}

TEST(PstarCommandTest, ClosedForms) {
  auto r = Invoke("pstar", Config("kind = plane\nbound = 2\nbeta = 0\n"));
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("pstar = [0.333333333333, 0.333333333333, "
                       "0.333333333333]"),
            std::string::npos)
      << r.out;

  r = Invoke("pstar", Config("bound = 2\n"));
  EXPECT_NE(r.out.find("pstar = [0, 1]"), std::string::npos);
  EXPECT_NE(r.out.find("boundary = true"), std::string::npos);
  EXPECT_EQ(r.out.find("tilt"), std::string::npos);

  r = Invoke("pstar", Config("bound = 3\nbeta = 0\n"));
  EXPECT_NE(r.out.find("pstar = [0.292893218813, 0.414213562373, "
                       "0.292893218813]"),
            std::string::npos)
      << r.out;
  EXPECT_NE(r.out.find("tilt = 1.41421356237"), std::string::npos) << r.out;
}

TEST(SampleCommandTest, LabeledPathsOnly) {
  const auto r = Invoke("sample", Config("bound = 2\nn = 5\nsamples = 50\nseed = 9\n"));
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto summary = r.out.find("# summary\n");
  ASSERT_NE(summary, std::string::npos);
  std::istringstream blocks(r.out.substr(0, summary));
  std::string line, block;
  int trees = 0;
  auto check = [&] {
    if (block.empty()) return;
    const auto tree = ParseLabeledTree(block);
    for (int d : tree.Degrees()) EXPECT_LE(d, 2);
    ++trees;
    block.clear();
  };
  while (std::getline(blocks, line)) {
    if (line.empty()) {
      check();
    } else {
      block += line + '\n';
    }
  }
  check();
  EXPECT_EQ(trees, 50);
  EXPECT_NE(r.out.find("class,frequency,pstar\n1,0.4,0\n2,0.6,1\n"),
            std::string::npos);
}

TEST(SampleCommandTest, PlaneProfileFrequency) {
  const auto r = Invoke("sample", Config("kind = plane\nbound = 2\nbeta = 0\n"
                                      "n = 4\nsamples = 100000\nseed = 3\n"
                                      "workers = 4\n"));
  ASSERT_EQ(r.code, kExitOk) << r.err;
  int total = 0, hits = 0;
  for (const auto& line : Lines(r.out)) {
    if (line.starts_with("#") || line.starts_with("class")) break;
    const auto tree = ParsePlaneTree(line + "\n");
    const auto chi = ChiOf(tree, UniformSpec(Kind::kPlane, 2));
    ++total;
    hits += chi == CountVector(Kind::kPlane, {2, 1, 1});
  }
  EXPECT_EQ(total, 100000);
  EXPECT_NEAR(static_cast<double>(hits) / total, 0.75, 0.01);
}

TEST(SampleCommandTest, DeterministicAcrossRunsAndWorkers) {
  const std::string base = "kind = plane\nbound = 3\nbeta = 0.7\n"
                           "c = [0, 1, -1, 0.5]\nn = 30\nsamples = 200\n";
  const auto a = Invoke("sample", Config(base + "seed = 11\nworkers = 1\n"));
  const auto b = Invoke("sample", Config(base + "seed = 11\nworkers = 1\n"));
  const auto c = Invoke("sample", Config(base + "seed = 11\nworkers = 5\n"));
  const auto d = Invoke("sample", Config(base + "seed = 12\nworkers = 1\n"));
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  EXPECT_NE(a.out, d.out);
}

TEST(SampleCommandTest, OversizeExitsThree) {
  EXPECT_EQ(Invoke("sample", Config("n = 500000\n")).code, kExitInfeasible);
}

TEST(SampleCommandTest, WritesOutFile) {
  const auto path =
      std::filesystem::temp_directory_path() / "gibbstree_cli_test_out.txt";
  auto cfg = Config("n = 6\nsamples = 3\n");
  const auto direct = Invoke("sample", cfg);
  cfg.out = path.string();
  const auto r = Invoke("sample", cfg);
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), direct.out);
  std::filesystem::remove(path);
}

TEST(LdpTableCommandTest, GapShrinksAlongDoublingSchedule) {
  const auto r = Invoke("ldp-table", Config("bound = 3\nbeta = 1\nc = [0, 1, -1]\n"
                                         "eps = 0.05\nworkers = 2\n"));
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto lines = Lines(r.out);
  ASSERT_EQ(lines.size(), 7u);
  EXPECT_EQ(lines[0], "N,eps,log_prob,rate,I,gap");
  std::vector<double> gaps;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = Fields(lines[i]);
    ASSERT_EQ(f.size(), 6u);
    EXPECT_NEAR(f[3] - f[4], f[5], 1e-11);
    gaps.push_back(f[5]);
  }
  for (std::size_t i = 3; i < gaps.size(); ++i) EXPECT_LT(gaps[i], gaps[i - 1]);
  EXPECT_LT(gaps.back(), 0.01);
}

TEST(LdpTableCommandTest, OffManifoldTargetIsConfigError) {
  auto cfg = Config("bound = 3\nn = 100\ntarget = [0.5, 0.5, 0]\n");
  EXPECT_EQ(Invoke("ldp-table", cfg).code, kExitConfig);
  cfg.target = {0.5, 0.0, 0.5};
  EXPECT_EQ(Invoke("ldp-table", cfg).code, kExitOk);
}

TEST(LdpTableCommandTest, LatticeCapExitsThree) {
  const auto r = Invoke("ldp-table", Config("bound = 7\nn = 3000\n"));
  EXPECT_EQ(r.code, kExitInfeasible);
  EXPECT_NE(r.err.find("LatticeTooLarge"), std::string::npos) << r.err;
}

TEST(LlnCommandTest, SchemaAndMonotoneTail) {
  const auto r = Invoke("lln", Config("bound = 3\nbeta = 0\ndelta = 0.1\n"
                                   "n_list = [250, 500, 1000]\n"));
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto lines = Lines(r.out);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], "N,delta,tail_prob,empirical_rate,inf_I");
  double prev = 1.0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = Fields(lines[i]);
    EXPECT_LT(f[2], prev);
    prev = f[2];
    EXPECT_NEAR(f[3], -std::log(f[2]) / f[0], 1e-9);
    EXPECT_GT(f[3], f[4]);
  }
}

TEST(OracleCheckCommandTest, PassesSmallCases) {
  const auto r =
      Invoke("oracle-check", Config("bound = 3\nbeta = 1\nc = [0, 0, 1]\nn = 4\n"));
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  const auto lines = Lines(r.out);
  ASSERT_EQ(lines.size(), 4u);
  for (std::size_t i = 1; i < 4; ++i) {
    EXPECT_TRUE(lines[i].ends_with(",PASS")) << lines[i];
    const auto comma = lines[i].find(',');
    EXPECT_LT(std::stod(lines[i].substr(comma + 1)), 1e-9);
  }
  EXPECT_EQ(Invoke("oracle-check", Config("kind = plane\nbound = 2\nbeta = 0.3\n"
                                       "c = [1, -1, 2]\nn = 10\n"))
                .code,
            kExitOk);
}

TEST(OracleCheckCommandTest, SizeLimits) {
  EXPECT_EQ(Invoke("oracle-check", Config("n = 9\n")).code, kExitConfig);
  EXPECT_EQ(Invoke("oracle-check", Config("kind = plane\nbound = 2\nn = 11\n")).code,
            kExitConfig);
}

TEST(FormatTest, TwelveSignificantDigits) {
  EXPECT_EQ(Num(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(Num(1e-20), "1e-20");
  EXPECT_EQ(Num(INFINITY), "inf");
  EXPECT_EQ(Num(2.0), "2");
}

}  // namespace
}  // namespace gibbstree::cli
