#include "collatz/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace collatz;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(CliGen, StairThree) {
  const auto r = run({"gen", "--k", "2", "--j", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out), (std::vector<std::string>{
                              R"({"value":"20","k":2,"j":3,"q":1,"bvc":"0","status":"accepted","reason":null})",
                              R"({"value":"3","k":2,"j":3,"q":2,"bvc":"1","status":"accepted","reason":null})",
                          }));
}

TEST(CliGen, Root) {
  const auto r = run({"gen", "--k", "2", "--j", "1"});
  EXPECT_EQ(r.out, R"({"value":"5","k":2,"j":1,"q":1,"bvc":"","status":"accepted","reason":null})"
                   "\n");
}

TEST(CliGen, IncludeRejected) {
  const auto r = run({"gen", "--k", "2", "--j", "6", "--include-rejected"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out).size(), 16u);
  EXPECT_NE(r.out.find(R"({"value":"4","k":2,"j":6,"q":3,)"), std::string::npos);
  EXPECT_NE(r.out.find(R"("status":"rejected","reason":"power-of-two"})"), std::string::npos);
  EXPECT_NE(r.out.find(R"({"value":null,)"), std::string::npos);
  EXPECT_NE(r.out.find(R"("reason":"non-integer-numerator")"), std::string::npos);
}

TEST(CliGen, CsvMirrorsColumns) {
  const auto r = run({"gen", "--k", "2", "--j", "4", "--format", "csv", "--include-rejected"});
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 5u);
  EXPECT_EQ(ls[0], "value,k,j,q,bvc,status,reason");
  EXPECT_NE(std::find(ls.begin(), ls.end(), "40,2,4,1,00,accepted,"), ls.end());
  EXPECT_NE(std::find(ls.begin(), ls.end(), ",2,4,2,01,rejected,non-integer-numerator"), ls.end());
}

TEST(CliGen, RangesAndWorkersAreDeterministic) {
  const auto a = run({"gen", "--k", "2..4", "--j", "1..11", "--workers", "1"});
  const auto b = run({"gen", "--k", "2..4", "--j", "1..11", "--workers", "3"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(CliGen, EveryAcceptedRecordReverifies) {
  const auto r = run({"gen", "--k", "2..3", "--j", "1..10", "--format", "csv"});
  const auto ls = lines(r.out);
  for (std::size_t i = 1; i < ls.size(); ++i) {
    std::istringstream row(ls[i]);
    std::string value;
    std::string k, j, q, bvc;
    std::getline(row, value, ',');
    std::getline(row, k, ',');
    std::getline(row, j, ',');
    std::getline(row, q, ',');
    std::getline(row, bvc, ',');
    ASSERT_EQ(run({"verify", "--value", value, "--bvc", bvc}).code, 0) << ls[i];
  }
}

TEST(CliGen, BadArguments) {
  EXPECT_EQ(run({"gen", "--k", "1", "--j", "3"}).code, 2);
  EXPECT_EQ(run({"gen", "--k", "2", "--j", "0"}).code, 2);
  EXPECT_EQ(run({"gen", "--k", "2", "--j", "x"}).code, 2);
  EXPECT_EQ(run({"gen", "--k", "2", "--j", "5..3"}).code, 2);
  EXPECT_EQ(run({"gen", "--k", "2", "--j", "3", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"gen", "--k", "2"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(CliGen, WritesToFile) {
  const auto path = std::filesystem::temp_directory_path() / "collatz_cli_gen_test.jsonl";
  const auto r = run({"gen", "--k", "2", "--j", "3", "--out", path.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(lines(ss.str()).size(), 2u);
  std::filesystem::remove(path);
}

TEST(CliVerify, Results) {
  auto r = run({"verify", "--value", "20", "--bvc", "0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "valid\n");

  r = run({"verify", "--value", "4", "--bvc", "1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "invalid: power-of-two\n");

  r = run({"verify", "--value", "6", "--bvc", "11"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "invalid: parity violation at bit 2 (evenUnder1)\n");

  r = run({"verify", "--value", "5", "--bvc", ""});
  EXPECT_EQ(r.code, 0);
}

TEST(CliVerify, Malformed) {
  EXPECT_EQ(run({"verify", "--value", "2.5", "--bvc", "0"}).code, 2);
  EXPECT_EQ(run({"verify", "--value", "-3", "--bvc", "0"}).code, 2);
  EXPECT_EQ(run({"verify", "--value", "20", "--bvc", "0a"}).code, 2);
}

TEST(CliVerify, HugeValues) {
  // 2^{j-1} * Y_k / 3 for k = 40, j = 30 is far beyond 64 bits.
  const Nat v = pow2(29) * (pow2(80) - 1) / 3;
  const auto r = run({"verify", "--value", to_decimal(v), "--bvc", std::string(28, '0')});
  EXPECT_EQ(r.code, 0) << r.out;
}

TEST(CliIndex, Results) {
  EXPECT_EQ(run({"index", "--n", "5", "--invariant", "icltz"}).out, "3\n");
  EXPECT_EQ(run({"index", "--n", "5", "--invariant", "iu"}).out, "j=1 k=2\n");
  EXPECT_EQ(run({"index", "--n", "16", "--invariant", "iu"}).out, "invariant\n");
  EXPECT_EQ(run({"index", "--n", "2", "--invariant", "icltz"}).out, "invariant\n");
  EXPECT_EQ(run({"index", "--n", "0"}).code, 2);
  EXPECT_EQ(run({"index", "--n", "5", "--invariant", "other"}).code, 2);
}

TEST(CliIndex, BudgetExceeded) {
  const auto r = run({"index", "--n", "27", "--invariant", "iu", "--budget", "10"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.out, "budget exceeded after 10 steps\n");
}

TEST(CliIndex, BudgetFromEnvironment) {
  ::setenv(cli::kBudgetEnv, "10", 1);
  const auto r = run({"index", "--n", "27"});
  ::unsetenv(cli::kBudgetEnv);
  EXPECT_EQ(r.code, 3);
}

TEST(CliCoverage, Reports) {
  auto r = run({"coverage", "--max", "1000"});
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["placed"], 990u);
  EXPECT_EQ(j["in_invariant"], 9u);

  r = run({"coverage", "--max", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["in_invariant"], 1u);

  EXPECT_EQ(run({"coverage", "--max", "100", "--budget", "20"}).code, 4);
  EXPECT_EQ(run({"coverage", "--max", "1"}).code, 2);
}

TEST(CliCoverage, WorkerCountDoesNotChangeReport) {
  const auto a = run({"coverage", "--max", "100000", "--workers", "1"});
  const auto b = run({"coverage", "--max", "100000", "--workers", "8"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(CliTree, Outputs) {
  auto r = run({"tree", "--icltz", "--depth", "5"});
  ASSERT_EQ(r.code, 0);
  for (int v : {8, 16, 32, 5, 64, 10, 128, 3, 20, 21}) {
    EXPECT_NE(r.out.find("\"" + std::to_string(v) + "\" [label"), std::string::npos) << v;
  }
  r = run({"tree", "--k", "2", "--depth", "4"});
  EXPECT_NE(r.out.find("\"3\" -> \"6\""), std::string::npos);
  r = run({"tree", "--k", "2", "--depth", "1"});
  EXPECT_EQ(r.out.find("->"), std::string::npos);

  EXPECT_EQ(run({"tree", "--depth", "3"}).code, 2);
  EXPECT_EQ(run({"tree", "--icltz", "--k", "2", "--depth", "3"}).code, 2);
  EXPECT_EQ(run({"tree", "--k", "1", "--depth", "3"}).code, 2);
  EXPECT_EQ(run({"tree", "--icltz", "--depth", "0"}).code, 2);
}
