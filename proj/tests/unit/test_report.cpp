#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "thermowiener/config.hpp"
#include "thermowiener/report.hpp"

using namespace thermowiener;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Csv, RoundTripsReals) {
  CsvTable t({"k", "value"});
  t.row({1, 0.1});
  t.row({2, 1.0 / 3.0});
  const std::string text = t.text();
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "k,value");
  std::getline(in, line);
  std::getline(in, line);
  const double back = std::stod(line.substr(line.find(',') + 1));
  EXPECT_EQ(back, 1.0 / 3.0);
}

TEST(Csv, PartialSums) {
  const std::string text = partial_sums_csv({0.5, 1.5}).text();
  EXPECT_NE(text.find("1.5"), std::string::npos);
}

TEST(Json, KeysAreSorted) {
  CapacityEstimate e;
  e.value = 2;
  const std::string dumped = to_json(e).dump();
  EXPECT_LT(dumped.find("\"dual_value\""), dumped.find("\"value\""));
  EXPECT_LT(dumped.find("\"gap\""), dumped.find("\"n_atoms\""));
}

TEST(Bundle, ManifestMatchesStoredConfig) {
  const fs::path dir = fs::temp_directory_path() / "thermowiener_report_test";
  fs::remove_all(dir);
  const RunConfig cfg = RunConfig::parse("seed = 5\nwiener.K_max = 20\n");
  ReportBundle b(dir, "series", cfg);
  CsvTable t({"x"});
  t.row({1});
  b.csv("t.csv", t);
  b.json("r.json", Json{{"a", 1}});
  b.finish("ok", 0);
  const Json m = Json::parse(slurp(dir / "manifest.json"));
  EXPECT_EQ(m["command"], "series");
  EXPECT_EQ(m["status"], "ok");
  EXPECT_EQ(m["config_hash"], cfg.hash_hex());
  EXPECT_EQ(m["version"], library_version());
  const std::string stored = slurp(dir / "config.txt");
  EXPECT_EQ(stored, cfg.canonical());
  EXPECT_EQ(RunConfig::parse(stored).hash_hex(), m["config_hash"].get<std::string>());
  const auto files = m["files"].dump();
  EXPECT_NE(files.find("t.csv"), std::string::npos);
  EXPECT_NE(files.find("r.json"), std::string::npos);
  fs::remove_all(dir);
}
