#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "dgro/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
  json j() const { return json::parse(out); }
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = dgro::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tempFile(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST(Charges, Examples) {
  auto r = run({"charges", "--theorem", "1", "--n", "2", "--p", "1", "--preset", "unit"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.j()["charges"]["c1"], "-3");
  EXPECT_EQ(r.j()["status"], "pass");

  r = run({"charges", "--theorem", "2", "--n", "3", "--p", "0", "--preset", "zero"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.j()["charges"]["c4"], "6");
}

TEST(Charges, OverridesAndRationalStrings) {
  const auto file = tempFile("dgro_cli_params.json", R"({"table": {"k5": "1/3", "k8": "2"}})");
  const auto r = run({"charges", "--theorem", "1", "--n", "1", "--p", "1", "--params", file, "--set", "k8=-1/2"});
  ASSERT_EQ(r.code, 0) << r.err;
  // C(2, 1) = 2 jets of order <= 1 in one dimension.
  EXPECT_EQ(r.j()["charges"]["c5"], "2/3");
  EXPECT_EQ(r.j()["charges"]["c8"], "-1");
  EXPECT_EQ(r.j()["table"]["k8"], "-1/2");
}

TEST(Charges, DeltaShiftAndStaging) {
  auto r = run({"charges", "--theorem", "1", "--n", "1", "--p", "0", "--set", "k4=1", "--lambda", "1"});
  ASSERT_EQ(r.code, 0);
  // c4 = 2N + 12(lambda d0 - lambda^2 k4) C(N+p, N) = 2 - 12
  EXPECT_EQ(r.j()["charges"]["c4"], "-10");

  r = run({"charges", "--theorem", "3", "--r", "1", "--n", "1", "--p", "4", "--set", "k5=3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.j()["charges"]["c5"], "3");
  EXPECT_EQ(r.j()["stages"].size(), 2u);
}

TEST(Usage, ErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"charges", "--n", "2"}).code, 2);
  EXPECT_EQ(run({"charges", "--theorem", "4"}).code, 2);
  EXPECT_EQ(run({"charges", "--theorem", "1", "--bogus"}).code, 2);
  EXPECT_EQ(run({"charges", "--theorem", "1", "--set", "k9=1"}).code, 2);
  EXPECT_EQ(run({"charges", "--theorem", "1", "--set", "k1=x"}).code, 2);
  EXPECT_EQ(run({"charges", "--theorem", "2", "--lambda", "1"}).code, 2);
  EXPECT_EQ(run({"charges", "--theorem", "3", "--r", "0", "--preset", "unit"}).code, 2);
  EXPECT_EQ(run({"lemmas", "--max-n", "9"}).code, 2);
  EXPECT_EQ(run({"oracle", "--cutoff", "2"}).code, 2);
  EXPECT_EQ(run({"kreal", "--algebra", "su2", "--m", "u1:1"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Lemmas, SmallRunPasses) {
  const auto r = run({"lemmas", "--max-n", "2", "--max-p", "3", "--trials", "100"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.j()["closedFormSums"].size(), 8u);
  EXPECT_EQ(r.j()["closedFormSums"][0]["C"], nullptr);
}

TEST(Kreal, ChargeRepresentation) {
  const auto r = run({"kreal", "--algebra", "u1", "--m", "u1:3/2", "--rho", "vector", "--n", "2", "--p", "1"});
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.j()["table"]["k5"], "9/2");
  EXPECT_EQ(r.j()["table"]["k6"], "3");
}

TEST(Finiteness, IndependentOfPAtNEqualsR) {
  const auto r = run({"finiteness", "--r", "2", "--n", "2", "--p-max", "5", "--preset", "unit"});
  ASSERT_EQ(r.code, 0);
  const auto rows = r.j()["staged"];
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& row : rows) EXPECT_EQ(row["charges"], rows[0]["charges"]);
  // Unstaged c1 grows like p^(N+2).
  EXPECT_EQ(r.j()["unstagedGrowthExponents"]["c1"], 4);
}

TEST(Sugawara, Cases) {
  auto r = run({"sugawara", "--case", "toy"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.j()["c"], "2");
  EXPECT_EQ(r.j()["closedForm"], "2");
  r = run({"sugawara", "--case", "su2"});
  EXPECT_EQ(r.j()["c"], "1");
  r = run({"sugawara", "--case", "um", "--p", "1"});
  EXPECT_EQ(r.j()["c"], "4");
  EXPECT_EQ(r.j()["casimirCondition"], false);
}

TEST(Cocycle, ExitStatusFollowsAssertions) {
  auto r = run({"cocycle", "--n", "2", "--p", "1", "--algebra", "u1+su2", "--sector", "JJ", "--preset", "unit"});
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.j()["charges"]["c5"], "3");
  EXPECT_EQ(r.j()["charges"]["c1"], nullptr);

  // The reparametrization sectors of the Theorem 2 realization do not close.
  r = run({"cocycle", "--variant", "theorem2", "--n", "1", "--p", "1", "--sector", "RL"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.j()["status"], "fail");
  EXPECT_FALSE(r.j()["failures"].empty());
}

TEST(Oracle, TsvTable) {
  const auto r = run({"oracle", "--m", "fundamental", "--rho", "vector", "--n", "1", "--p", "0"});
  ASSERT_EQ(r.code, 0) << r.out;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "param\tmeasured\tpredicted\tmatch");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    if (line.rfind("virasoro_c", 0) == 0) EXPECT_EQ(line, "virasoro_c\t-4\t-2\tratio=2");
    else EXPECT_EQ(line.substr(line.size() - 3), "yes") << line;
  }
  EXPECT_EQ(rows, 12);

  const auto j = run({"oracle", "--format", "json"});
  EXPECT_EQ(j.j()["parameters"]["k4"]["measured"], "1");
}

TEST(Determinism, RepeatedRunsAreIdentical) {
  const std::vector<std::string> args = {"cocycle", "--n", "2", "--p", "2", "--preset", "unit"};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(All, MatchesGoldenAndReportsStatus) {
  const auto r = run({"all"});
  std::ifstream in(std::string(DGRO_GOLDEN_DIR) + "/all.json");
  std::stringstream golden;
  golden << in.rdbuf();
  EXPECT_EQ(r.out, golden.str());
  const auto j = r.j();
  EXPECT_EQ(j["criteria"].size(), 9u);
  EXPECT_EQ(r.code, j["status"] == "pass" ? 0 : 1);
  EXPECT_EQ(j["failed"], json::array({6}));
}
