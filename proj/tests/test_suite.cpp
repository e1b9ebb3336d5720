#include <gtest/gtest.h>

#include "diffhom/suite.hpp"

using namespace diffhom;

namespace {

SuiteConfig small_config() {
  SuiteConfig c;
  c.N = {1};
  c.d = {2};
  c.k = {1};
  c.property_instances = 20;
  return c;
}

}  // namespace

TEST(SuiteConfig, Validation) {
  SuiteConfig c;
  EXPECT_NO_THROW(c.validate());
  c.N.clear();
  EXPECT_THROW(c.validate(), ConfigError);
  c = SuiteConfig{};
  c.limits.max_box = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = SuiteConfig{};
  c.format = "xml";
  EXPECT_THROW(c.validate(), ConfigError);
  c = SuiteConfig{};
  c.d = {0, 1};
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(SuiteConfig, JsonRoundTrip) {
  SuiteConfig c = small_config();
  c.seed = 42;
  c.membership_cap = 7;
  const auto back = SuiteConfig::from_json(c.to_json());
  EXPECT_EQ(back.to_json(), c.to_json());
  EXPECT_THROW(SuiteConfig::from_json(nlohmann::json{{"bogus", 1}}), ConfigError);
  EXPECT_THROW(SuiteConfig::from_json(nlohmann::json{{"N", "two"}}), ConfigError);
  EXPECT_THROW(SuiteConfig::from_json(nlohmann::json::array()), ConfigError);
}

TEST(SuiteConfig, EnvironmentOverrides) {
  SuiteConfig c;
  std::map<std::string, std::string> env{{"DIFFHOM_MAX_BOX", "77"}, {"DIFFHOM_MEMBERSHIP_CAP", "5"}};
  auto fake = [&](const char* n) -> const char* {
    auto it = env.find(n);
    return it == env.end() ? nullptr : it->second.c_str();
  };
  apply_environment(c, fake);
  EXPECT_EQ(c.limits.max_box, 77u);
  EXPECT_EQ(c.membership_cap, 5);
  env["DIFFHOM_MAX_MONOMIALS"] = "lots";
  EXPECT_THROW(apply_environment(c, fake), ConfigError);
  env["DIFFHOM_MAX_MONOMIALS"] = "0";
  EXPECT_THROW(apply_environment(c, fake), ConfigError);
}

TEST(Suite, SmallRunPassesAndIsDeterministic) {
  const auto a = run_suite(small_config());
  EXPECT_EQ(a.count(CheckStatus::Fail), 0u) << export_report(a, "text");
  EXPECT_EQ(a.exit_code(), 0);
  EXPECT_GT(a.records.size(), 20u);
  const auto b = run_suite(small_config());
  EXPECT_EQ(export_report(a, "json"), export_report(b, "json"));
}

TEST(Suite, ResourceLimitsAreSkipsNotFailures) {
  SuiteConfig c = small_config();
  c.limits.max_box = 1;
  const auto r = run_suite(c);
  EXPECT_GT(r.count(CheckStatus::Skipped), 0u);
  EXPECT_EQ(r.count(CheckStatus::Fail), 0u);
  EXPECT_EQ(r.exit_code(), 0);
  bool harmonic_skipped = false;
  for (const auto& rec : r.records)
    if (rec.check_id.starts_with("harmonic.perp") && rec.status == CheckStatus::Skipped) harmonic_skipped = true;
  EXPECT_TRUE(harmonic_skipped);
}

TEST(Suite, EveryModuleIsExercised) {
  const auto r = run_suite(small_config());
  std::set<std::string> prefixes;
  for (const auto& rec : r.records) prefixes.insert(rec.check_id.substr(0, rec.check_id.find('.')));
  EXPECT_EQ(prefixes, (std::set<std::string>{"catalog", "harmonic", "jet", "poly", "tensor"}));
}

TEST(Export, CsvColumnsAndQuoting) {
  SuiteReport rep;
  rep.records.push_back(CheckRecord{"a.b[x=1,y=2]", "says \"hi\"", "in", "1", "1", CheckStatus::Pass, "definition", 0});
  const std::string csv = export_report(rep, "csv");
  EXPECT_EQ(csv, "checkId,paperRef,inputs,expected,computed,status\n"
                 "\"a.b[x=1,y=2]\",\"says \"\"hi\"\"\",in,1,1,pass\n");
}

TEST(Export, TextShowsExpectedAndComputedOnFailure) {
  SuiteReport rep;
  rep.records.push_back(CheckRecord{"x", "r", "", "Z1 - Z2", "Z1", CheckStatus::Fail, "definition", 0});
  const std::string text = export_report(rep, "text");
  EXPECT_NE(text.find("[FAIL] x"), std::string::npos);
  EXPECT_NE(text.find("expected: Z1 - Z2"), std::string::npos);
  EXPECT_NE(text.find("computed: Z1"), std::string::npos);
  EXPECT_EQ(rep.exit_code(), 1);
}

TEST(Export, JsonHasSortedKeysAndNoTimingByDefault) {
  const auto r = run_suite(small_config());
  const std::string j = export_report(r, "json");
  EXPECT_EQ(j.find("elapsed"), std::string::npos);
  const auto parsed = nlohmann::json::parse(j);
  EXPECT_EQ(parsed["summary"]["fail"], 0);
  EXPECT_LT(j.find("\"checks\""), j.find("\"config\""));
  EXPECT_THROW(export_report(r, "yaml"), ConfigError);
}
