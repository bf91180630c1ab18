// Copyright 2026 The QSL Authors
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
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "qsl/cli/commands.hpp"
#include "qsl/cli/state_io.hpp"

namespace qsl::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run qsl(std::vector<std::string> args) {
  args.insert(args.begin(), "qsl");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qsl_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << content;
    return p;
  }

  fs::path dir_;
};

const char* kSaturatingQubit = R"({
  "dims": [2],
  "amplitudes": [[0.7071067811865476, 0], [0.7071067811865476, 0]],
  "hamiltonian": [[0, 0], [0, 0], [0, 0], [1, 0]]
})";

TEST(FormatG12, Values) {
  EXPECT_EQ(format_g12(std::numbers::pi), "3.14159265359");
  EXPECT_EQ(format_g12(3.0), "3");
  EXPECT_EQ(format_g12(0.25), "0.25");
  EXPECT_EQ(format_g12(INFINITY), "inf");
}

TEST_F(CliTest, BoundExamples) {
  auto r = qsl({"bound", "--energy", "1", "--spread", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1.57079632679, branch=Equal\n");
  r = qsl({"bound", "--energy", "2", "--spread", "0.5"});
  EXPECT_EQ(r.out, "3.14159265359, branch=TimeEnergyUncertainty\n");
  r = qsl({"bound", "--energy", "0", "--spread", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("unbounded", 0), 0u);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(qsl({}).code, kExitUsage);
  EXPECT_EQ(qsl({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(qsl({"bound", "--energy", "1"}).code, kExitUsage);
  EXPECT_EQ(qsl({"bound", "--energy", "-1", "--spread", "1"}).code, kExitUsage);
  EXPECT_EQ(qsl({"bound", "--energy", "x", "--spread", "1"}).code, kExitUsage);
  EXPECT_EQ(qsl({"fig1", "--step", "0"}).code, kExitUsage);
  EXPECT_EQ(qsl({"fig1", "--start", "5", "--stop", "1"}).code, kExitUsage);
  EXPECT_EQ(qsl({"groups", "--groups", "4", "--per-group", "4"}).code, kExitUsage);
  EXPECT_EQ(qsl({"ent-scan", "--n", "1"}).code, kExitUsage);
  EXPECT_EQ(qsl({"--horizon", "-2", "groups"}).code, kExitUsage);
}

TEST_F(CliTest, HelpExitsZero) {
  const auto r = qsl({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("fig1"), std::string::npos);
}

TEST_F(CliTest, TperpSaturatingQubit) {
  const auto r = qsl({"tperp", write("q.json", kSaturatingQubit).string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "Found t_perp=3.14159265359 bound=3.14159265359 ratio=1.000\n");
}

TEST_F(CliTest, TperpEigenstate) {
  const auto r = qsl({"tperp", write("e.json", R"({"dims":[2],
    "amplitudes":[[0,0],[1,0]], "hamiltonian":[[0,0],[0,0],[0,0],[1,0]]})").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("NotFound min_overlap=1.0 ", 0), 0u) << r.out;
}

TEST_F(CliTest, TperpEntangledPair) {
  // (|00> + |11>)/sqrt 2 with H = diag(0,1) on each qubit.
  const auto r = qsl({"tperp", write("ent.json", R"({"dims":[2,2],
    "amplitudes":[[0.7071067811865476,0],[0,0],[0,0],[0.7071067811865476,0]],
    "hamiltonian":[[0,0],[0,0],[0,0],[0,0], [0,0],[1,0],[0,0],[0,0],
                   [0,0],[0,0],[1,0],[0,0], [0,0],[0,0],[0,0],[2,0]]})").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("Found t_perp=1.5707", 0), 0u) << r.out;
}

TEST_F(CliTest, TperpDensityMatrixAndJson) {
  const auto r = qsl({"--json", "tperp", write("m.json", R"({"dims":[2],
    "matrix":[[0.5,0],[0.5,0],[0.5,0],[0.5,0]],
    "hamiltonian":[[0,0],[0,0],[0,0],[1,0]]})").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["command"], "tperp");
  EXPECT_EQ(j["status"], "ok");
  EXPECT_EQ(j["result"]["status"], "Found");
  EXPECT_NEAR(j["result"]["t_perp"].get<double>(), std::numbers::pi, 1e-9);
}

TEST_F(CliTest, TperpSchemaErrorsNameTheField) {
  const auto missing = qsl({"tperp", write("a.json", R"({"dims":[2],
    "hamiltonian":[[0,0],[0,0],[0,0],[1,0]]})").string()});
  EXPECT_EQ(missing.code, kExitUsage);
  EXPECT_NE(missing.err.find("amplitudes"), std::string::npos);

  const auto short_h = qsl({"tperp", write("b.json", R"({"dims":[2],
    "amplitudes":[[1,0],[0,0]], "hamiltonian":[[0,0],[1,0]]})").string()});
  EXPECT_EQ(short_h.code, kExitUsage);
  EXPECT_NE(short_h.err.find("hamiltonian"), std::string::npos);

  const auto bad_dims = qsl({"tperp", write("c.json", R"({"dims":[0],
    "amplitudes":[], "hamiltonian":[]})").string()});
  EXPECT_EQ(bad_dims.code, kExitUsage);
  EXPECT_NE(bad_dims.err.find("dims"), std::string::npos);

  EXPECT_EQ(qsl({"tperp", write("d.json", "{not json").string()}).code, kExitUsage);
  EXPECT_EQ(qsl({"tperp", (dir_ / "absent.json").string()}).code, kExitUsage);
}

TEST_F(CliTest, TperpInvariantViolationsExitThree) {
  const auto unnormalized = qsl({"tperp", write("u.json", R"({"dims":[2],
    "amplitudes":[[1,0],[1,0]], "hamiltonian":[[0,0],[0,0],[0,0],[1,0]]})").string()});
  EXPECT_EQ(unnormalized.code, kExitInvariant);
  const auto nonherm = qsl({"tperp", write("h.json", R"({"dims":[2],
    "amplitudes":[[1,0],[0,0]], "hamiltonian":[[0,0],[1,0],[0,0],[1,0]]})").string()});
  EXPECT_EQ(nonherm.code, kExitInvariant);
  const fs::path unshifted = write("s.json", R"({"dims":[2],
    "amplitudes":[[0.7071067811865476,0],[0.7071067811865476,0]],
    "hamiltonian":[[1,0],[0,0],[0,0],[2,0]]})");
  EXPECT_EQ(qsl({"tperp", unshifted.string()}).code, kExitInvariant);
  const auto shifted = qsl({"tperp", unshifted.string(), "--ground-shift"});
  EXPECT_EQ(shifted.code, 0);
  EXPECT_EQ(shifted.out.rfind("Found t_perp=3.14159265359", 0), 0u);
}

TEST_F(CliTest, StateJsonRoundTrip) {
  const StateFile f = parse_state_file(json::parse(kSaturatingQubit));
  const auto& p = std::get<PureState>(f.state);
  const StateFile back = parse_state_file(to_json(p, f.hamiltonian));
  EXPECT_LT((std::get<PureState>(back.state).amplitudes() - p.amplitudes()).norm(), 1e-15);
  const DensityMatrix rho = DensityMatrix::projector(p);
  const StateFile back2 = parse_state_file(to_json(rho, f.hamiltonian));
  EXPECT_LT((std::get<DensityMatrix>(back2.state).matrix() - rho.matrix()).norm(), 1e-15);
}

TEST_F(CliTest, Fig1DefaultMatchesGolden) {
  const fs::path a = dir_ / "a.csv";
  const fs::path b = dir_ / "b.csv";
  ASSERT_EQ(qsl({"fig1", "--out", a.string()}).code, 0);
  ASSERT_EQ(qsl({"--out", b.string(), "fig1"}).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(slurp(a), slurp(fs::path(QSL_GOLDEN_DIR) / "fig1_default.csv"));
}

TEST_F(CliTest, Fig1RowsAndLimit) {
  const auto r = qsl({"fig1", "--limit-row"});
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "omega_ratio,t_perp,t_qsl,ratio");
  std::getline(lines, line);
  EXPECT_EQ(line, "0,1.57079632679,0.523598775598,3");
  std::string last;
  int rows = 0;
  while (std::getline(lines, line)) last = line, ++rows;
  EXPECT_EQ(rows, 41);
  EXPECT_EQ(last, "inf,1.57079632679,1.57079632679,1");
  EXPECT_EQ(r.out.find('\r'), std::string::npos);
}

TEST_F(CliTest, Fig1NotFoundRowsAreEmpty) {
  // Even M with both terms on never reaches orthogonality.
  const auto r = qsl({"fig1", "--m", "2", "--start", "1", "--stop", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "omega_ratio,t_perp,t_qsl,ratio\n1,,0.906899682117,\n");
}

TEST_F(CliTest, Fig1Svg) {
  const fs::path svg = dir_ / "f.svg";
  ASSERT_EQ(qsl({"fig1", "--svg", svg.string(), "--out", (dir_ / "f.csv").string()}).code, 0);
  const std::string s = slurp(svg);
  EXPECT_EQ(s.rfind("<svg", 0), 0u);
  EXPECT_NE(s.find("width=\"800\" height=\"600\""), std::string::npos);
  EXPECT_NE(s.find("stroke-dasharray"), std::string::npos);
  EXPECT_NE(s.find("<polygon"), std::string::npos);
  const fs::path svg2 = dir_ / "g.svg";
  ASSERT_EQ(qsl({"fig1", "--svg", svg2.string(), "--out", (dir_ / "g.csv").string()}).code, 0);
  EXPECT_EQ(s, slurp(svg2));
}

TEST_F(CliTest, FailedRunsLeaveNoFile) {
  const fs::path out = dir_ / "never.csv";
  EXPECT_EQ(qsl({"fig1", "--step", "-1", "--out", out.string()}).code, kExitUsage);
  EXPECT_FALSE(fs::exists(out));
  const fs::path bad = write("bad.json", R"({"dims":[2]})");
  EXPECT_EQ(qsl({"tperp", bad.string(), "--out", out.string()}).code, kExitUsage);
  EXPECT_FALSE(fs::exists(out));
  EXPECT_EQ(qsl({"ent-scan", "--n", "1", "--m", "2", "--out", out.string()}).code, kExitUsage);
  EXPECT_FALSE(fs::exists(out));
  for (const auto& e : fs::directory_iterator(dir_)) {
    EXPECT_EQ(e.path().string().find(".partial"), std::string::npos);
  }
}

TEST_F(CliTest, EntScan) {
  const auto r = qsl({"ent-scan", "--n", "2,3", "--m", "1,2,4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("N,M,t_perp_entangled,separable_bound,qsl_time\n", 0), 0u);
  EXPECT_NE(r.out.find("\n2,1,3.14159265359,3.14159265359,"), std::string::npos);
  EXPECT_NE(r.out.find("\n2,4,0.785398163397,3.14159265359,"), std::string::npos);
  EXPECT_NE(r.out.find("\n3,2,1.0471975512,"), std::string::npos);
  for (const auto& row : ent_scan_rows({2, 3, 5}, {2, 3, 4}, 1.0)) {
    EXPECT_GE(row.separable_bound, std::sqrt(double(row.m)) * row.t_perp_entangled * (1 - 1e-6));
    EXPECT_GE(row.t_perp_entangled, row.qsl_time * (1 - 1e-9));
    EXPECT_EQ(row.verified, std::pow(double(row.n), double(row.m)) <= 1024.0);
  }
}

TEST_F(CliTest, MixtureDemo) {
  const fs::path csv = dir_ / "s.csv";
  const auto r = qsl({"mixture-demo", "--out", csv.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("SaturatingStructure, t_perp=3.14159265359=bound\n", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("term 1: evolving k=1"), std::string::npos);
  EXPECT_NE(r.out.find("term 2: evolving k=2"), std::string::npos);
  std::istringstream lines(slurp(csv));
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "t,survival");
  std::getline(lines, line);
  EXPECT_EQ(line, "0,0.5");
  // 201 samples on [0, 2 pi]: sample 100 is t = pi.
  for (int i = 1; i <= 100; ++i) std::getline(lines, line);
  const double s = std::stod(line.substr(line.find(',') + 1));
  EXPECT_LE(s, 1e-9);
}

TEST_F(CliTest, MixtureSurvivalStartsAtPurity) {
  // Tr[rho^2] of the equal mixture of two orthogonal products is 1/2.
  const auto rep = mixture_demo_report(1.0, 5);
  EXPECT_NEAR(rep.survival_curve.front().second, 0.5, 1e-15);
}

TEST_F(CliTest, Groups) {
  const auto r = qsl({"groups", "--groups", "3", "--per-group", "3", "--omega0", "0", "--omega", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out,
            "t_perp=1.57079632679 t_qsl=0.906899682117 ratio=1.73205080757 "
            "sqrt(M/Q)=1.73205080757\n");
  const auto two = groups_report({2, 2, 0.0, 1.0});
  ASSERT_TRUE(two.ratio);
  EXPECT_NEAR(*two.ratio, std::sqrt(2.0), 1e-8 * std::sqrt(2.0));
}

TEST_F(CliTest, SingleGroupMatchesFig1Point) {
  const auto g = groups_report({1, 9, 1.0, 1.5});
  SweepConfig c;
  c.start = c.stop = 1.5;
  const auto rows = fig1_rows(c);
  ASSERT_TRUE(g.ratio && rows[0].ratio);
  EXPECT_NEAR(*g.ratio, *rows[0].ratio, 1e-12);
}

TEST_F(CliTest, JsonErrorEnvelope) {
  const auto r = qsl({"--json", "bound", "--energy", "-1", "--spread", "1"});
  EXPECT_EQ(r.code, kExitUsage);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["status"], "error");
  EXPECT_EQ(j["exit_code"], kExitUsage);
}

TEST_F(CliTest, TinyHorizonGivesNotFound) {
  const auto r = qsl({"--horizon", "1", "tperp", write("q.json", kSaturatingQubit).string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("NotFound", 0), 0u);
}

}  // namespace
}  // namespace qsl::cli
