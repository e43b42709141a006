#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "ctxembed/errors.hpp"
#include "ctxembed/report.hpp"

using namespace ctxembed;

TEST(Report, SortedKeyValueLines) {
  Report r;
  r.set("zeta", 2);
  r.set("auc", 0.5);
  r.set("method", "hope");
  EXPECT_EQ(r.text(), "auc=0.500000\nmethod=hope\nzeta=2\n");
}

TEST(Report, RejectsBadInput) {
  Report r;
  EXPECT_THROW(r.set("a b", 1), PreconditionError);
  EXPECT_THROW(r.set("a=b", 1), PreconditionError);
  EXPECT_THROW(r.set("x", std::nan("")), PreconditionError);
  EXPECT_THROW(r.set("x", INFINITY), PreconditionError);
}

TEST(Report, FormatMetric) {
  EXPECT_EQ(format_metric(MetricValue{0.123456789}), "0.123457");
  EXPECT_EQ(format_metric(MetricValue{std::int64_t{-4}}), "-4");
  EXPECT_EQ(format_metric(MetricValue{std::string("n/a")}), "n/a");
}

TEST(Report, WritesTextAndJson) {
  Report r;
  r.set("nodes", 3);
  const auto dir = std::filesystem::temp_directory_path() / "ctxembed_test_report";
  std::filesystem::remove_all(dir);
  r.write(dir / "stats.txt", {{"seed", 1}});
  std::ifstream text(dir / "stats.txt");
  std::string line;
  std::getline(text, line);
  EXPECT_EQ(line, "nodes=3");
  std::ifstream js(dir / "stats.txt.json");
  nlohmann::json j = nlohmann::json::parse(js);
  EXPECT_EQ(j["metrics"]["nodes"], 3);
  EXPECT_EQ(j["config"]["seed"], 1);
  EXPECT_EQ(j["version"], std::string(kVersion));
  EXPECT_TRUE(j.contains("timestamp"));
  std::filesystem::remove_all(dir);
}
