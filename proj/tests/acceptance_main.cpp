// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
//
//   thermowiener_acceptance [--seed N] [--json FILE] [id ...]

#include <cstdlib>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "thermowiener/acceptance.hpp"

using namespace thermowiener;

int main(int argc, char** argv) {
  AcceptanceOptions opt;
  std::string json_path;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--seed" && i + 1 < argc) {
      opt.seed = std::stoull(argv[++i]);
    } else if (arg == "--json" && i + 1 < argc) {
      json_path = argv[++i];
    } else {
      const int id = std::atoi(arg.c_str());
      if (id < 1 || id > kCriterionCount) {
        std::cerr << "unknown criterion '" << arg << "'\n";
        return 64;
      }
      opt.only.push_back(id);
    }
  }
  const auto results = run_acceptance(opt, [](const CriterionResult& r) {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.1f s", r.seconds);
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.id << "  " << r.title << "  (" << secs << ")  " << r.detail
              << std::endl;
  });
  int failed = 0;
  Json all = Json::array();
  for (const auto& r : results) {
    failed += !r.pass;
    all.push_back(to_json(r));
  }
  if (!json_path.empty()) std::ofstream(json_path) << all.dump(2) << "\n";
  std::cout << results.size() - failed << "/" << results.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
