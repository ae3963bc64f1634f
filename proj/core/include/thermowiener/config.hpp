#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thermowiener/errors.hpp"
#include "thermowiener/pde.hpp"
#include "thermowiener/regularity.hpp"

namespace thermowiener {

// Invalid configuration; line is 0 when the problem is not tied to one line.
class ConfigError : public InputError {
 public:
  ConfigError(const std::string& what, int line) : InputError(format(what, line)), line_(line) {}
  int line() const { return line_; }

 private:
  static std::string format(const std::string& what, int line);
  int line_;
};

struct ConfigKeyDoc {
  std::string key;
  std::string default_value;
  std::string doc;
};

// Flat "key = value" text, '#' starts a comment. Keys are validated
// against a fixed schema; only keys given explicitly are stored.
class RunConfig {
 public:
  static RunConfig parse(const std::string& text);
  static RunConfig read(const std::string& path);
  static const std::vector<ConfigKeyDoc>& schema();

  // Sorted "key = value" lines of the explicit keys.
  std::string canonical() const;
  std::uint64_t hash() const;
  std::string hash_hex() const;

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  void set(const std::string& key, const std::string& value);

  std::string str(const std::string& key) const;
  double real(const std::string& key) const;
  long integer(const std::string& key) const;
  bool boolean(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;

  std::uint64_t seed() const { return static_cast<std::uint64_t>(integer("seed")); }

  // Typed views over the sections.
  MetricSpace metric() const;
  GaussBounds bounds() const;
  DomainSpec domain() const;
  SeriesOptions series_options() const;
  QuadratureSpec quadrature() const;
  ConeOptions cone_options() const;
  ClassifyOptions classify_options() const;
  WalkConfig walk_config() const;

 private:
  std::map<std::string, std::string> values_;
  std::map<std::string, int> lines_;

  int line_of(const std::string& key) const;
  void check(const std::string& key, const std::string& value, int line) const;
  void check_relations() const;
};

}  // namespace thermowiener
