#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace waveortho {

/// Flat key/value configuration of one scenario. Every scenario has a fixed key set with
/// shipped defaults; unknown keys are rejected.
class Config {
 public:
  /// Defaults for a named scenario (usage error for unknown names).
  static Config defaults(const std::string& scenario);

  const std::string& scenario() const { return scenario_; }
  const std::map<std::string, std::string>& values() const { return values_; }

  void set(const std::string& key, const std::string& value);
  /// Reads `key = value` lines; '#' starts a comment.
  void load_file(const std::filesystem::path& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::string str(const std::string& key) const;
  /// Accepts a trailing "pi" multiplier, e.g. "16pi".
  double number(const std::string& key) const;
  int integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  /// Radians; a trailing "deg" converts from degrees.
  double angle(const std::string& key) const;
  /// Comma-separated numbers.
  std::vector<double> numbers(const std::string& key) const;

 private:
  std::string scenario_;
  std::map<std::string, std::string> values_;
};

std::vector<std::string> scenario_names();

struct Metric {
  std::string name;
  double value{0.0};
  /// One of "<=", ">=", "<", ">" or "info" (always passes).
  std::string relation{"info"};
  double threshold{0.0};
  bool pass{true};
};

struct RunReport {
  std::string scenario;
  std::map<std::string, std::string> config;
  std::vector<Metric> metrics;
  std::map<std::string, double> residuals;
  double epsilon{0.0};
  std::vector<std::string> warnings;
  std::vector<std::string> files;
  double wall_seconds{0.0};

  void check(const std::string& name, double value, const std::string& relation, double threshold);
  void info(const std::string& name, double value);
  const Metric* find(const std::string& name) const;
  /// Value of a metric; throws if absent.
  double value(const std::string& name) const;
  bool passed() const;
};

/// Runs the scenario; writes the data file to cfg "out" (if non-empty) and the report to
/// cfg "report" (if non-empty).
RunReport run_scenario(const Config& cfg);

std::string render_report(const RunReport& report);

}  // namespace waveortho
