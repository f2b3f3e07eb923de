// Copyright 2026 The gqd Authors
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
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "commands.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = gqd::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string &name) { return std::string(GQD_SAMPLE_STATES) + "/" + name; }

std::vector<std::string> split_lines(const std::string &s) {
  std::vector<std::string> lines;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST(CliExact, WernerValues) {
  Result r = run({"exact", "--family", "werner", "--params", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_NEAR(j["estimate"]["value"].get<double>(), 0.5, 1e-15);
  EXPECT_TRUE(j.contains("bloch"));
  EXPECT_EQ(j["estimate"]["eigenvalues"].size(), 3u);

  r = run({"exact", "--family", "werner", "--params", "0"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["estimate"]["value"].get<double>(), 0.0);
}

TEST(CliExact, BadStateFileCitesInvariant) {
  Result r = run({"exact", "--file", sample("bad_trace.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("unit trace"), std::string::npos) << r.err;
  r = run({"exact", "--file", sample("bad_negative.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("positive semidefinite"), std::string::npos) << r.err;
  r = run({"exact", "--file", sample("missing.json")});
  EXPECT_EQ(r.code, 2);
}

TEST(CliExact, StateSourceRules) {
  EXPECT_EQ(run({"exact"}).code, 2);
  EXPECT_EQ(run({"exact", "--family", "werner", "--params", "0.3", "--file", sample("werner_0.6.json")}).code, 2);
  EXPECT_EQ(run({"exact", "--family", "werner", "--params", "3"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"exact", "--family", "werner", "--params", "0.3", "--side", "C"}).code, 2);
}

TEST(CliScheme, ExactAndSideB) {
  Result r = run({"scheme", "--family", "werner", "--params", "0.6"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_NEAR(j["value"].get<double>(), 0.18, 1e-8);
  EXPECT_EQ(j["outcomes"].size(), 11u);

  r = run({"scheme", "--file", sample("bell_diagonal.json"), "--side", "B"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto s = gqd::make_family("bell_diagonal", {-0.6, -0.4, -0.2});
  EXPECT_NEAR(json::parse(r.out)["value"].get<double>(), gqd::gqd_exact(s, gqd::Side::B).value, 1e-8);

  r = run({"scheme", "--file", sample("classical_quantum.json"), "--side", "B"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto cq = gqd::io::read_state_file(sample("classical_quantum.json"));
  EXPECT_NEAR(json::parse(r.out)["value"].get<double>(), gqd::gqd_exact(cq, gqd::Side::B).value, 1e-8);
}

TEST(CliScheme, SampledNeedsSeedAndIsDeterministic) {
  EXPECT_EQ(run({"scheme", "--family", "werner", "--params", "0.6", "--shots", "1000"}).code, 2);
  const std::vector<std::string> args{"scheme", "--family", "werner", "--params", "0.6",
                                      "--shots", "1000000", "--repeats", "20", "--seed", "7"};
  const Result a = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, run(args).out);
  const json j = json::parse(a.out);
  EXPECT_EQ(j["route"], "scheme-sampled");
  EXPECT_LE(std::abs(j["value"].get<double>() - 0.18), 3 * j["std_err"].get<double>());
}

TEST(CliScheme, CsvOutput) {
  const Result r = run({"scheme", "--family", "werner", "--params", "0.5", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  const auto lines = split_lines(r.out);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0], "route,side,value,std_err,lambda1,lambda2,lambda3,M1,M2,M3");
  EXPECT_EQ(lines[1].rfind("scheme-exact,A,", 0), 0u);
}

TEST(CliSweep, WernerGrid) {
  const Result r = run({"sweep", "--family", "werner", "--from", "0", "--to", "1", "--step", "0.1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = split_lines(r.out);
  ASSERT_EQ(lines.size(), 12u);
  EXPECT_EQ(lines[0], "param,D_exact,D_scheme_exact,D_sampled_mean,D_sampled_stderr");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    double p, exact, scheme;
    ASSERT_EQ(std::sscanf(lines[i].c_str(), "%lf,%lf,%lf", &p, &exact, &scheme), 3) << lines[i];
    EXPECT_NEAR(exact, p * p / 2.0, 1e-12);
    EXPECT_LE(std::abs(scheme - exact), 1e-8);
    EXPECT_EQ(lines[i].substr(lines[i].size() - 2), ",,");
  }
}

TEST(CliSweep, SampledColumnsAndDeterminism) {
  const std::vector<std::string> args{"sweep", "--family", "werner", "--from", "0.2", "--to", "0.6",
                                      "--step", "0.2", "--shots", "20000", "--repeats", "4", "--seed", "3"};
  const Result a = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, run(args).out);
  const auto lines = split_lines(a.out);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[1].find(",,"), std::string::npos);
}

TEST(CliSweep, EmptyGridAndBadIndex) {
  EXPECT_EQ(run({"sweep", "--family", "werner", "--from", "1", "--to", "0"}).code, 2);
  EXPECT_EQ(run({"sweep", "--family", "werner", "--step", "0"}).code, 2);
  EXPECT_EQ(run({"sweep", "--family", "werner", "--index", "2"}).code, 2);
}

TEST(CliLayouts, AllAndNamed) {
  Result r = run({"layouts"});
  ASSERT_EQ(r.code, 0);
  for (int i = 1; i <= 11; ++i) EXPECT_NE(r.out.find("P" + std::to_string(i) + " ("), std::string::npos) << i;

  r = run({"layouts", "--name", "P11"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("I(a1,a6)"), std::string::npos);
  EXPECT_NE(r.out.find("I(b5,b6)"), std::string::npos);
  EXPECT_EQ(r.out.find("P10"), std::string::npos);

  r = run({"layouts", "--name", "P12"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("P12"), std::string::npos);

  r = run({"layouts", "--name", "P4", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["n_copies"], 4);
}

TEST(CliCompare, ReportsBothRoutesAndResources) {
  const std::vector<std::string> args{"compare", "--family", "werner", "--params", "0.7",
                                      "--shots", "1000000", "--seed", "5"};
  const Result r = run(args);
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["resources"]["r_scheme"], 132);
  EXPECT_EQ(j["resources"]["r_qst"], 225);
  const double exact = j["exact"].get<double>();
  EXPECT_NEAR(exact, 0.245, 1e-15);
  EXPECT_LE(std::abs(j["scheme"]["value"].get<double>() - exact), 3 * j["scheme"]["std_err"].get<double>());
  EXPECT_LE(std::abs(j["qst"]["value"].get<double>() - exact), 3 * j["qst"]["std_err"].get<double>());
  EXPECT_EQ(r.out, run(args).out);

  const Result text = run({"compare", "--family", "werner", "--params", "0.7", "--shots", "10000", "--seed",
                           "5", "--format", "text"});
  ASSERT_EQ(text.code, 0);
  EXPECT_NE(text.out.find("132"), std::string::npos);
  EXPECT_NE(text.out.find("225"), std::string::npos);
}

TEST(CliAudit, EmitsCorrectedTable) {
  const Result r = run({"audit", "--trials", "40", "--seed", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_TRUE(j["corrected"].get<bool>());
  ASSERT_EQ(j["diff"].size(), 1u);
  EXPECT_EQ(j["diff"][0]["monomial"], "c3");
}

TEST(CliOutput, WritesFile) {
  const std::string path = ::testing::TempDir() + "gqd_cli_out.json";
  const Result r = run({"resources", "--output", path});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const json j = json::parse(in);
  EXPECT_EQ(j["projector_count_scheme"], 11);
  std::remove(path.c_str());
}
