#include "cli.hpp"

#include "rzeta/bigreal.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using rzeta::BigReal;
namespace cli = rzeta::cli;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation run(std::vector<std::string> args) {
  args.insert(args.begin(), "rzeta");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

BigReal value_of(const Invocation& r) { return BigReal(200, nlohmann::json::parse(r.out)["value"].get<std::string>()); }

double rel_diff(const BigReal& a, const BigReal& b) { return (abs(a - b) / abs(b)).to_double(); }

}  // namespace

TEST(Cli, TauLimits) {
  const Invocation one = run({"tau", "--limit", "1"});
  ASSERT_EQ(one.code, cli::kOk) << one.err;
  const auto j = nlohmann::json::parse(one.out);
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["tau"], "1");

  const Invocation six = run({"tau", "--limit", "6", "--format", "text"});
  ASSERT_EQ(six.code, cli::kOk);
  EXPECT_EQ(six.out, "1 1\n2 -24\n3 252\n4 -1472\n5 4830\n6 -6048\n");

  const Invocation csv = run({"tau", "--limit", "2", "--format", "csv"});
  EXPECT_EQ(csv.out, "n,tau\n1,1\n2,-24\n");

  EXPECT_EQ(run({"tau", "--limit", "0"}).code, cli::kUsage);
  EXPECT_EQ(run({"tau"}).code, cli::kUsage);
}

TEST(Cli, LvalueRangeErrors) {
  const Invocation r = run({"lvalue", "--k", "12", "--method", "corollary"});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find("13"), std::string::npos) << r.err;
  EXPECT_EQ(run({"lvalue", "--k", "5", "--method", "dirichlet"}).code, cli::kUsage);
  EXPECT_EQ(run({"lvalue", "--k", "21", "--method", "theorem31"}).code, cli::kUsage);
  EXPECT_EQ(run({"lvalue", "--k", "12", "--method", "guess"}).code, cli::kUsage);
}

TEST(Cli, CriticalAgreesWithMellin) {
  const Invocation a = run({"lvalue", "--k", "6", "--method", "critical", "-q"});
  const Invocation b = run({"lvalue", "--k", "6", "--method", "mellin", "-q"});
  ASSERT_EQ(a.code, cli::kOk) << a.err;
  ASSERT_EQ(b.code, cli::kOk) << b.err;
  EXPECT_LT(rel_diff(value_of(a), value_of(b)), 1e-30);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["k"], 6);
  EXPECT_EQ(j["method"], "critical");
  EXPECT_EQ(j["precision_bits"], 160);
  EXPECT_EQ(j["converged"], true);
}

TEST(Cli, Theorem11AgreesWithDirichlet) {
  const Invocation a = run({"lvalue", "--k", "12", "--method", "theorem11"});
  const Invocation b = run({"lvalue", "--k", "12"});
  ASSERT_EQ(a.code, cli::kOk) << a.err;
  EXPECT_LT(rel_diff(value_of(a), value_of(b)), 1e-18);
}

TEST(Cli, VerifyExitCodes) {
  const Invocation exact = run({"verify", "--suite", "exact", "-q"});
  EXPECT_EQ(exact.code, cli::kOk) << exact.err;
  EXPECT_EQ(nlohmann::json::parse(exact.out).size(), 3u);
  EXPECT_EQ(run({"verify", "--suite", "nonsense"}).code, cli::kUsage);
  EXPECT_EQ(run({"verify", "--id", "nonsense"}).code, cli::kUsage);
  EXPECT_EQ(run({"verify"}).code, cli::kUsage);
  EXPECT_EQ(run({"verify", "--suite", "exact", "--id", "lemma21"}).code, cli::kUsage);
  EXPECT_EQ(run({"verify", "--id", "theorem11", "--tolerance", "1e-15", "-q"}).code, cli::kOk);
  const Invocation tight = run({"verify", "--id", "l12_extra1", "--tolerance", "1e-200", "-q"});
  EXPECT_EQ(tight.code, cli::kFailureBase + 1);
  EXPECT_EQ(run({"verify", "--id", "critical_6", "--quad-max-level", "2", "-q"}).code, cli::kUnconverged);
}

TEST(Cli, VerifyProgressOnStderr) {
  const Invocation r = run({"verify", "--id", "lemma21"});
  EXPECT_NE(r.err.find("[1/1] lemma21"), std::string::npos) << r.err;
  EXPECT_EQ(r.out.find("[1/1]"), std::string::npos);
}

TEST(Cli, NoTimingIsByteIdentical) {
  const Invocation a = run({"verify", "--suite", "exact", "--no-timing", "-q"});
  const Invocation b = run({"verify", "--suite", "exact", "--no-timing", "-q"});
  EXPECT_EQ(a.out, b.out);
  const Invocation c = run({"verify", "--suite", "exact", "--no-timing", "--format", "csv", "-q"});
  const Invocation d = run({"verify", "--suite", "exact", "--no-timing", "--format", "csv", "-q"});
  EXPECT_EQ(c.out, d.out);
}

TEST(Cli, PrecisionOptionAndEnvironment) {
  EXPECT_EQ(run({"--precision", "32", "tau", "--limit", "1"}).code, cli::kUsage);
  EXPECT_EQ(run({"lvalue", "--k", "13", "--precision", "32"}).code, cli::kUsage);
  setenv("RZETA_PRECISION", "200", 1);
  const Invocation env = run({"lvalue", "--k", "13"});
  unsetenv("RZETA_PRECISION");
  ASSERT_EQ(env.code, cli::kOk) << env.err;
  EXPECT_EQ(nlohmann::json::parse(env.out)["precision_bits"], 232);
  setenv("RZETA_PRECISION", "200", 1);
  const Invocation flag = run({"lvalue", "--k", "13", "--precision", "96"});
  unsetenv("RZETA_PRECISION");
  EXPECT_EQ(nlohmann::json::parse(flag.out)["precision_bits"], 128);
}

TEST(Cli, FormatAndOutputFile) {
  EXPECT_EQ(run({"tau", "--limit", "3", "--format", "xml"}).code, cli::kUsage);
  const auto path = std::filesystem::temp_directory_path() / "rzeta_cli_test.csv";
  std::filesystem::remove(path);
  const Invocation r = run({"verify", "--id", "lemma21", "--format", "csv", "-o", path.string(), "-q"});
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  std::string header;
  std::getline(f, header);
  EXPECT_EQ(header.rfind("identity,k,lhs", 0), 0u);
  std::filesystem::remove(path);
}

TEST(Cli, TextReport) {
  const Invocation r = run({"verify", "--id", "ramanujan1728", "--format", "text", "-q"});
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out.rfind("[pass] ramanujan1728", 0), 0u) << r.out;
}

TEST(Cli, Help) {
  const Invocation r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}
