#include "thermowiener/report.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

#include "thermowiener/numerics.hpp"

#ifndef THERMOWIENER_VERSION
#define THERMOWIENER_VERSION "0.0.0"
#endif

namespace thermowiener {

std::string library_version() { return THERMOWIENER_VERSION; }

namespace {

Json point_json(const SpaceTimePoint& z) {
  Json x = Json::array();
  for (int i = 0; i < z.x.dim; ++i) x.push_back(z.x[i]);
  return {{"x", x}, {"t", z.t}};
}

}  // namespace

Json to_json(const CapacityEstimate& e) {
  return {{"value", e.value},
          {"dual_value", e.dual_value},
          {"gap", e.gap},
          {"n_atoms", e.n_atoms},
          {"n_constraints", e.n_constraints},
          {"resolution", e.resolution},
          {"iterations", e.iterations},
          {"max_constraint_potential", e.max_constraint_potential}};
}

Json to_json(const RefinementReport& r) {
  Json levels = Json::array();
  for (std::size_t i = 0; i < r.levels.size(); ++i) {
    Json j = to_json(r.levels[i]);
    j["measure"] = r.measures[i];
    levels.push_back(j);
  }
  return {{"levels", levels}, {"last_relative_change", r.last_relative_change}};
}

Json to_json(const SeriesTable& t) {
  Json terms = Json::array();
  for (const auto& row : t.terms)
    for (const auto& c : row)
      terms.push_back({{"k", c.k},
                       {"h", c.h},
                       {"capacity", c.capacity},
                       {"capacity_gap", c.capacity_gap},
                       {"n_atoms", c.n_atoms},
                       {"ball_volume", c.ball_volume},
                       {"weight", c.weight},
                       {"term", c.term},
                       {"failed", c.failed}});
  return {{"lambda", t.lambda},         {"a", t.a},
          {"b", t.b},                   {"variant", variant_name(t.variant)},
          {"K_max", t.K_max},           {"H_max", t.H_max},
          {"resolution", t.resolution}, {"partial", t.partial},
          {"term_bound_C", t.term_bound_C}, {"h_tail_bound", t.h_tail_bound},
          {"partial_sums", t.partial_sums()}, {"terms", terms}};
}

Json to_json(const SeriesReport& r) {
  return {{"verdict", verdict_name(r.verdict)},
          {"partial_sums", r.partial_sums},
          {"truncation", {{"K_max", r.K_max}, {"H_max", r.H_max}}},
          {"median_tail_increment", r.median_tail_increment},
          {"max_increment", r.max_increment},
          {"doubling_ratio", r.doubling_ratio},
          {"growth_slope", r.growth_slope},
          {"geometric_ratio", r.geometric_ratio},
          {"geometric_r2", r.geometric_r2},
          {"geometric_tail_bound", r.geometric_tail_bound},
          {"zero_tail", r.zero_tail},
          {"partial", r.partial},
          {"reason", r.reason}};
}

Json to_json(const ComparabilityReport& r) {
  return {{"lambda", r.lambda}, {"mu", r.mu},       {"sigma", r.sigma},       {"s_values", r.s_values},
          {"z_lambda", r.z_lambda}, {"z_mu", r.z_mu}, {"c_per_s", r.c_per_s}, {"C", r.C},
          {"c_spread", r.c_spread}};
}

Json to_json(const IntegralReport& r) {
  Json probes = Json::array();
  for (const auto& p : r.probes) probes.push_back({{"offset", point_json(p.offset)}, {"dhat", p.dhat}, {"M", p.M}});
  return {{"lambda", r.lambda},
          {"b", r.b},
          {"quadrature",
           {{"inner_nodes", r.quadrature.inner_nodes},
            {"u_max", r.quadrature.u_max},
            {"outer_nodes", r.quadrature.outer_nodes},
            {"panel_width", r.quadrature.panel_width},
            {"resolution", r.quadrature.resolution}}},
          {"probes", probes},
          {"inner_truncation_bound", r.inner_truncation_bound},
          {"outer_truncation_bound", r.outer_truncation_bound},
          {"section_evaluations", r.section_evaluations},
          {"slope", r.slope},
          {"divergent", r.divergent},
          {"flagged", r.flagged},
          {"note", r.note}};
}

Json to_json(const WienerFunctionEstimate& w) {
  Json probes = Json::array();
  for (const auto& p : w.probes) probes.push_back(point_json(p));
  return {{"rho", w.rho},
          {"L_max", w.L_max},
          {"lambda", w.lambda},
          {"probes", probes},
          {"one_minus_v", w.one_minus_v},
          {"W", w.W},
          {"truncation_bound", w.truncation_bound},
          {"kernel", w.kernel}};
}

Json to_json(const BoundCheckReport& r) {
  return {{"s_values", r.s_values}, {"Z", r.Z},           {"W", r.W},
          {"c_per_probe", r.c_per_probe}, {"C", r.C},     {"spearman", r.spearman},
          {"holds", r.holds},       {"K_used", r.K_used}};
}

Json to_json(const ConeReport& r) {
  return {{"M0", r.M0},
          {"r0", r.r0},
          {"theta_min", r.theta_min},
          {"resolution", r.resolution},
          {"radii", r.radii},
          {"theta_hat", r.theta_hat},
          {"skipped", r.skipped},
          {"theta", r.theta},
          {"satisfied", r.satisfied}};
}

Json to_json(const Classification& c) {
  const auto& o = c.options;
  Json j = {{"verdict", verdict_name(c.verdict)},
            {"basis", basis_name(c.basis)},
            {"notes", c.notes},
            {"inputs",
             {{"lambda", o.lambda},
              {"a", o.a},
              {"b", o.b},
              {"a0", o.a0},
              {"b0", o.b0},
              {"K_max", o.series.K_max},
              {"H_max", o.series.H_max},
              {"resolution", o.series.resolution},
              {"tolerance", o.series.tolerance},
              {"use_cone", o.use_cone}}}};
  if (c.cone) j["cone"] = to_json(*c.cone);
  if (c.sufficient) j["sufficient"] = {{"report", to_json(*c.sufficient)}, {"table", to_json(*c.sufficient_table)}};
  if (c.necessary) j["necessary"] = {{"report", to_json(*c.necessary)}, {"table", to_json(*c.necessary_table)}};
  return j;
}

Json to_json(const SolutionEstimate& s) {
  return {{"value", s.value},
          {"std_error", s.std_error},
          {"walkers", s.walkers},
          {"unreliable", s.unreliable},
          {"exit_statistics",
           {{"mean_exit_time", s.exits.mean_exit_time},
            {"lateral", s.exits.lateral},
            {"bottom", s.exits.bottom},
            {"cap", s.exits.cap},
            {"unexited", s.exits.unexited}}}};
}

Json to_json(const HolderFit& f) {
  Json probes = Json::array();
  for (const auto& p : f.probes)
    probes.push_back({{"offset", point_json(p.offset)},
                      {"dhat", p.dhat},
                      {"value", p.value},
                      {"std_error", p.std_error},
                      {"gap", p.gap},
                      {"usable", p.usable}});
  return {{"status", holder_status_name(f.status)}, {"alpha0", f.alpha0}, {"c", f.c},
          {"r2", f.r2},                             {"note", f.note},     {"probes", probes}};
}

void CsvTable::row(const std::vector<double>& values) { rows_.push_back(values); }

std::string CsvTable::text() const {
  std::string out;
  for (std::size_t i = 0; i < header_.size(); ++i) out += (i ? "," : "") + header_[i];
  out += "\n";
  for (const auto& r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + format_real(r[i]);
    out += "\n";
  }
  return out;
}

CsvTable series_csv(const SeriesTable& t) {
  CsvTable csv({"k", "h", "capacity", "ball_volume", "weight", "term"});
  for (const auto& row : t.terms)
    for (const auto& c : row)
      csv.row({static_cast<double>(c.k), static_cast<double>(c.h), c.capacity, c.ball_volume, c.weight, c.term});
  return csv;
}

CsvTable partial_sums_csv(const std::vector<double>& S) {
  CsvTable csv({"K", "S"});
  for (std::size_t i = 0; i < S.size(); ++i) csv.row({static_cast<double>(i + 1), S[i]});
  return csv;
}

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

ReportBundle::ReportBundle(std::filesystem::path dir, std::string command, const RunConfig& config)
    : dir_(std::move(dir)), command_(std::move(command)), config_hash_(config.hash_hex()), started_(utc_now()) {
  std::filesystem::create_directories(dir_);
  write("config.txt", config.canonical());
}

void ReportBundle::write(const std::string& name, const std::string& text) {
  std::ofstream out(dir_ / name, std::ios::binary);
  if (!out) throw InputError("cannot write " + (dir_ / name).string());
  out << text;
  files_.push_back(name);
}

void ReportBundle::json(const std::string& name, const Json& payload) { write(name, payload.dump(2) + "\n"); }

void ReportBundle::csv(const std::string& name, const CsvTable& table) { write(name, table.text()); }

void ReportBundle::finish(const std::string& status, int exit_code, const std::string& message) {
  Json m = {{"command", command_},
            {"config_hash", config_hash_},
            {"config_file", "config.txt"},
            {"version", library_version()},
            {"started", started_},
            {"finished", utc_now()},
            {"status", status},
            {"exit_code", exit_code},
            {"files", files_}};
  if (!message.empty()) m["message"] = message;
  std::ofstream out(dir_ / "manifest.json", std::ios::binary);
  out << m.dump(2) << "\n";
}

}  // namespace thermowiener
