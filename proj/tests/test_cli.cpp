#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

using Json = nlohmann::json;

const std::string kCli = LGK_CLI;
const std::string kData = LGK_DATA;

struct Run {
  int code = -1;
  std::string out;
};

Run lgk(const std::string& args) {
  static int counter = 0;
  std::string out = ::testing::TempDir() + "lgk_cli_" + std::to_string(counter++) + ".json";
  std::string cmd = kCli + " " + args + " > " + out + " 2>/dev/null";
  int st = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

std::string data(const std::string& f) { return kData + "/" + f; }

const Json& check(const Json& rep, const std::string& name) {
  for (const auto& c : rep["checks"])
    if (c["check"] == name) return c;
  throw std::runtime_error("no check " + name);
}

}  // namespace

TEST(Cli, KstabOnXSquared) {
  auto r = lgk("kstab " + data("x2.json"));
  ASSERT_EQ(r.code, 0);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["version"], "0.1.0");
  EXPECT_EQ(j["potential"]["text"], "x^2");
  EXPECT_TRUE(j.contains("caps"));
  EXPECT_EQ(check(j, "q-squared-equals-w")["values"]["factorization"]["matrix"],
            Json::parse(R"([["0","x"],["x","0"]])"));
}

TEST(Cli, MilnorOfFermatCubic) {
  auto r = lgk("milnor " + data("fermat3.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(check(Json::parse(r.out), "milnor")["values"]["mu"], 4);
}

TEST(Cli, CorruptedFactorizationFails) {
  auto r = lgk("verify-mf " + data("x2.json") + " " + data("x2_corrupt_mf.json"));
  ASSERT_EQ(r.code, 1);
  auto c = check(Json::parse(r.out), "q-squared-equals-w");
  EXPECT_EQ(c["status"], "fail");
  EXPECT_FALSE(c["witness"].get<std::string>().empty());
  EXPECT_EQ(lgk("verify-mf " + data("x2.json") + " " + data("x2_mf.json")).code, 0);
}

TEST(Cli, KstabReportFeedsVerify) {
  std::string out = ::testing::TempDir() + "lgk_kstab_report.json";
  ASSERT_EQ(lgk("kstab " + data("fermat3.json") + " -o " + out).code, 0);
  EXPECT_EQ(lgk("verify-mf " + data("fermat3.json") + " " + out).code, 0);
  EXPECT_EQ(lgk("verify-mf " + data("x2.json") + " " + out).code, 2);  // wrong arity of exponents
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(lgk("milnor " + data("decimal_coefficient.json")).code, 2);
  EXPECT_EQ(lgk("milnor " + data("truncated.json")).code, 2);
  EXPECT_EQ(lgk("milnor " + data("missing.json")).code, 2);
  EXPECT_EQ(lgk("milnor").code, 2);
  EXPECT_EQ(lgk("kstab " + data("x2.json") + " --split sideways").code, 2);
  EXPECT_EQ(lgk("kstab " + data("x2.json") + " --weights 1,2").code, 2);
  EXPECT_EQ(lgk("equivariant " + data("x2.json") + " --group-order 3").code, 2);
}

TEST(Cli, StrictTurnsInconclusiveIntoThree) {
  std::string f = ::testing::TempDir() + "lgk_x4.json";
  std::ofstream(f) << R"({"vars":["x"],"terms":[{"exponents":[4],"coefficient":"1"}]})";
  auto loose = lgk("hochschild " + f + " --window 8");
  EXPECT_EQ(loose.code, 0);
  EXPECT_EQ(Json::parse(loose.out)["status"], "inconclusive");
  EXPECT_EQ(lgk("hochschild " + f + " --window 8 --strict").code, 3);
  EXPECT_EQ(lgk("hochschild " + f + " --window 12 --strict").code, 0);
}

TEST(Cli, ReportsAreDeterministic) {
  auto a = lgk("hpl-check " + data("x2.json") + " --seed 11 --count 10");
  auto b = lgk("hpl-check " + data("x2.json") + " --seed 11 --count 10");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  auto j = Json::parse(a.out);
  EXPECT_EQ(j["caps"]["seed"], 11);
  EXPECT_EQ(check(j, "hpl-random")["values"]["instances"], 10);
}

TEST(Cli, QuadricAInfinity) {
  auto r = lgk("ainfty " + data("quadric.json") + " --arity-cap 3");
  ASSERT_EQ(r.code, 0);
  auto j = Json::parse(r.out);
  EXPECT_EQ(check(j, "clifford")["status"], "pass");
  EXPECT_EQ(check(j, "stasheff")["values"]["arity_checked"], 3);
}

TEST(Cli, EquivariantUsesFileGroupOrder) {
  auto r = lgk("equivariant " + data("x3_z3.json"));
  ASSERT_EQ(r.code, 0);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["caps"]["group_order"], 3);
  EXPECT_EQ(check(j, "equivariant-generators")["values"]["count"], 3);
  EXPECT_EQ(check(j, "smash-hh-vs-fixed-points")["status"], "pass");
}

TEST(Cli, GradedAndChecks) {
  for (const char* sub : {"graded", "cobar-check", "hodge-check", "cobar-homology"})
    EXPECT_EQ(lgk(std::string(sub) + " " + data("fermat3.json") + " --window 4").code, 0) << sub;
}
