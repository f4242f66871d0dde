#include "rzeta/report.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

using namespace rzeta;

namespace {

VerificationReport sample() {
  VerificationReport r;
  r.identity = "critical_k";
  r.k = 6;
  r.lhs = "1.25e+00";
  r.rhs = "1.25e+00";
  r.abs_err = "3.1e-40";
  r.rel_err = "2.5e-40";
  r.tolerance = "1e-20";
  r.precision_bits = 160;
  r.nodes = 1234;
  r.terms = 0;
  r.elapsed_ms = 12.34567;
  r.status = Status::pass;
  r.policy = Policy::relative;
  return r;
}

}  // namespace

TEST(Report, EnumNames) {
  EXPECT_EQ(to_string(Status::unconverged), "unconverged");
  EXPECT_EQ(to_string(Status::fail), "fail");
  EXPECT_EQ(to_string(Policy::abs_or_rel), "abs_or_rel");
}

TEST(Report, JsonSchema) {
  VerificationReport exact = sample();
  exact.identity = "lemma21";
  exact.k.reset();
  exact.precision_bits = 0;
  exact.policy = Policy::exact;
  const auto j = nlohmann::json::parse(to_json({sample(), exact}));
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 2u);
  const std::vector<std::string> keys = {"identity", "k",     "lhs",        "rhs",    "abs_err",
                                         "rel_err",  "tolerance", "precision_bits", "nodes", "terms",
                                         "elapsed_ms", "status", "policy",   "detail"};
  const auto ordered = nlohmann::ordered_json::parse(to_json({sample()}));
  std::vector<std::string> seen;
  for (const auto& [key, value] : ordered[0].items()) seen.push_back(key);
  EXPECT_EQ(seen, keys);
  EXPECT_EQ(j[0]["k"], 6);
  EXPECT_TRUE(j[1]["k"].is_null());
  EXPECT_EQ(j[0]["lhs"], "1.25e+00");
  EXPECT_TRUE(j[0]["elapsed_ms"].is_number());
  EXPECT_DOUBLE_EQ(j[0]["elapsed_ms"].get<double>(), 12.346);
  EXPECT_EQ(j[0]["status"], "pass");
  EXPECT_EQ(j[1]["policy"], "exact");
}

TEST(Report, TimingCanBeSuppressed) {
  SerializeOptions quiet;
  quiet.include_timing = false;
  VerificationReport a = sample(), b = sample();
  b.elapsed_ms = 999.0;
  EXPECT_EQ(to_json({a}, quiet), to_json({b}, quiet));
  EXPECT_EQ(to_csv({a}, quiet), to_csv({b}, quiet));
  EXPECT_NE(to_json({a}), to_json({b}));
  EXPECT_EQ(nlohmann::json::parse(to_json({a}, quiet))[0]["elapsed_ms"], 0.0);
}

TEST(Report, EmptyListIsEmptyArray) {
  EXPECT_EQ(to_json({}), "[]\n");
  EXPECT_EQ(to_csv({}).find('\n'), to_csv({}).size() - 1);
}

TEST(Report, CsvQuotesAwkwardFields) {
  VerificationReport r = sample();
  r.detail = "first mismatch, at q^7 \"x\"";
  const std::string csv = to_csv({r});
  const auto nl = csv.find('\n');
  EXPECT_EQ(csv.substr(0, nl),
            "identity,k,lhs,rhs,abs_err,rel_err,tolerance,precision_bits,nodes,terms,elapsed_ms,status,policy,detail");
  EXPECT_NE(csv.find("\"first mismatch, at q^7 \"\"x\"\"\""), std::string::npos) << csv;
  EXPECT_NE(csv.find("critical_k,6,"), std::string::npos);
  EXPECT_NE(csv.find(",12.346,pass,relative,"), std::string::npos) << csv;
}

TEST(Report, TextMentionsStatusAndDetail) {
  VerificationReport r = sample();
  r.status = Status::fail;
  r.detail = "off by one";
  const std::string t = to_text({r});
  EXPECT_EQ(t.rfind("[fail] critical_k k=6\n", 0), 0u) << t;
  EXPECT_NE(t.find("off by one"), std::string::npos);
}
