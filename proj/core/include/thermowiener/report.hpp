#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "thermowiener/config.hpp"
#include "thermowiener/pde.hpp"
#include "thermowiener/regularity.hpp"

namespace thermowiener {

using Json = nlohmann::json;  // std::map objects, so keys come out sorted

Json to_json(const CapacityEstimate& e);
Json to_json(const RefinementReport& r);
Json to_json(const SeriesTable& t);
Json to_json(const SeriesReport& r);
Json to_json(const ComparabilityReport& r);
Json to_json(const IntegralReport& r);
Json to_json(const WienerFunctionEstimate& w);
Json to_json(const BoundCheckReport& r);
Json to_json(const ConeReport& r);
Json to_json(const Classification& c);
Json to_json(const SolutionEstimate& s);
Json to_json(const HolderFit& f);

// CSV with a header row; reals use the shortest round-trip text.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void row(const std::vector<double>& values);
  std::string text() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

CsvTable series_csv(const SeriesTable& t);
CsvTable partial_sums_csv(const std::vector<double>& S);

// Output directory with a manifest (command, config hash, version,
// timestamps, file list) and a copy of the canonical config.
class ReportBundle {
 public:
  ReportBundle(std::filesystem::path dir, std::string command, const RunConfig& config);

  void json(const std::string& name, const Json& payload);
  void csv(const std::string& name, const CsvTable& table);
  // Writes manifest.json; status is "ok", "partial" or "failed".
  void finish(const std::string& status, int exit_code, const std::string& message = {});

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::string command_;
  std::string config_hash_;
  std::string started_;
  std::vector<std::string> files_;

  void write(const std::string& name, const std::string& text);
};

std::string library_version();

}  // namespace thermowiener
