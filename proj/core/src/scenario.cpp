#include "waveortho/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "scenario_impl.hpp"
#include "waveortho/errors.hpp"
#include "waveortho/output.hpp"
#include "waveortho/types.hpp"

namespace waveortho {
namespace {

using Defaults = std::map<std::string, std::string>;

const std::map<std::string, Defaults>& default_table() {
  static const std::map<std::string, Defaults> table = [] {
    const Defaults common{{"out", ""}, {"report", ""}, {"format", "csv"}};
    const Defaults strip{
        {"kd", "8pi"},           {"width", "2"},           {"bc", "hard"},
        {"basis", "plane-waves"}, {"basis_size", "0"},      {"per_wavelength", "4"},
        {"quad_resolution", "600"}, {"incidence", "0"},     {"solver", "diagonal"},
        {"lambda", "0"},         {"iterate_steps", "50"},  {"bem_order", "0"},
        {"threshold_kirchhoff", "0.999"}, {"threshold_null_steps", "1"}, {"threshold_lobe_steps", "1"},
        {"threshold_limit", "1e-6"}, {"threshold_monotone", "1e-12"},
    };
    std::map<std::string, Defaults> t;
    t["sphere"] = {
        {"ka", "5"},          {"bc", "soft"},          {"basis", "spherical-modes"},
        {"basis_size", "0"},  {"quad_resolution", "0"}, {"azimuthal", "0"},
        {"solver", "diagonal"}, {"lambda", "0"},       {"iterate_steps", "50"},
        {"angles", "181"},    {"refine_factor", "2"},  {"threshold_mie_l2", "1e-8"},
        {"threshold_residual_gap", "1e-8"}, {"threshold_limit", "1e-6"}, {"threshold_monotone", "1e-12"},
    };
    t["strip"] = strip;
    t["slit"] = strip;
    t["spheroid"] = {
        {"ka", "5"},           {"c_over_a", "2"},     {"bc", "hard"},
        {"basis", "point-sources"}, {"basis_size", "8"}, {"source_fraction", "1"},
        {"quad_resolution", "200"}, {"solver", "diagonal"}, {"lambda", "0"},
        {"iterate_steps", "50"}, {"angles", "181"},   {"threshold_ratio", "3"},
        {"threshold_residual", "0.2"},
    };
    t["born"] = {
        {"k", "2pi"},          {"dim", "2"},           {"grid", "24"},
        {"half_extent", "1.2"}, {"sigma", "0.3"},      {"strength", "0.05"},
        {"eval_distance", "10"}, {"eval_angle", "0"},  {"phase", "0.7"},
        {"order", "second-modified"}, {"born_alt_reading", "false"}, {"angles", "12"},
        {"threshold_first", "1e-12"}, {"threshold_phase", "1e-12"}, {"threshold_ls_residual", "1e-8"},
    };
    t["kernel-profile"] = {
        {"ka", "10"},          {"bc", "soft"},          {"basis", "spherical-modes"},
        {"basis_size", "18"},  {"quad_resolution", "64"}, {"azimuthal", "0"},
        {"anchor", "-1"},      {"decay_wavelengths", "2"},
        {"threshold_hermitian", "1e-12"},
    };
    t["riemann-decay"] = {
        {"ka_list", "10,20,40"}, {"bc", "hard"},         {"dir_angle_1", "0"},
        {"dir_angle_2", "90deg"}, {"quad_resolution", "0"}, {"threshold_ratio", "2"},
    };
    for (auto& [name, d] : t) d.insert(common.begin(), common.end());
    return t;
  }();
  return table;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_plain(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::Usage, "key '" + key + "': cannot parse '" + text + "' as a number");
  }
  if (used != text.size()) throw Error(ErrorCode::Usage, "key '" + key + "': trailing characters in '" + text + "'");
  return v;
}

double parse_scaled(const std::string& key, std::string text, const std::string& suffix, double factor) {
  text = trim(text);
  if (text.size() >= suffix.size() && text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0) {
    const std::string head = trim(text.substr(0, text.size() - suffix.size()));
    return (head.empty() ? 1.0 : parse_plain(key, head)) * factor;
  }
  return parse_plain(key, text);
}

}  // namespace

std::vector<std::string> scenario_names() {
  std::vector<std::string> names;
  for (const auto& [name, d] : default_table()) names.push_back(name);
  return names;
}

Config Config::defaults(const std::string& scenario) {
  const auto& table = default_table();
  const auto it = table.find(scenario);
  if (it == table.end()) {
    std::string known;
    for (const auto& n : scenario_names()) known += (known.empty() ? "" : ", ") + n;
    throw Error(ErrorCode::Usage, "unknown scenario '" + scenario + "' (known: " + known + ")");
  }
  Config c;
  c.scenario_ = scenario;
  c.values_ = it->second;
  return c;
}

void Config::set(const std::string& key, const std::string& value) {
  std::string k = key;
  std::replace(k.begin(), k.end(), '-', '_');
  if (!values_.count(k)) throw Error(ErrorCode::Usage, "unknown key '" + key + "' for scenario " + scenario_);
  values_[k] = value;
}

void Config::load_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::Io, "cannot read config " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::Usage, path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    }
    set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

std::string Config::str(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw Error(ErrorCode::Usage, "missing key '" + key + "'");
  return it->second;
}

double Config::number(const std::string& key) const { return parse_scaled(key, str(key), "pi", kPi); }

int Config::integer(const std::string& key) const {
  const double v = parse_plain(key, trim(str(key)));
  if (v != std::floor(v) || std::abs(v) > 1e9) throw Error(ErrorCode::Usage, "key '" + key + "' must be an integer");
  return static_cast<int>(v);
}

bool Config::flag(const std::string& key) const {
  const std::string v = trim(str(key));
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw Error(ErrorCode::Usage, "key '" + key + "' must be true or false, got '" + v + "'");
}

double Config::angle(const std::string& key) const { return parse_scaled(key, str(key), "deg", kPi / 180.0); }

std::vector<double> Config::numbers(const std::string& key) const {
  std::vector<double> out;
  std::stringstream ss(str(key));
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_scaled(key, item, "pi", kPi));
  if (out.empty()) throw Error(ErrorCode::Usage, "key '" + key + "' needs at least one value");
  return out;
}

void RunReport::check(const std::string& name, double value, const std::string& relation, double threshold) {
  bool pass = false;
  if (relation == "<=") pass = value <= threshold;
  else if (relation == ">=") pass = value >= threshold;
  else if (relation == "<") pass = value < threshold;
  else if (relation == ">") pass = value > threshold;
  else throw Error(ErrorCode::Usage, "unknown metric relation " + relation);
  metrics.push_back({name, value, relation, threshold, pass});
}

void RunReport::info(const std::string& name, double value) { metrics.push_back({name, value, "info", 0.0, true}); }

const Metric* RunReport::find(const std::string& name) const {
  for (const auto& m : metrics) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

double RunReport::value(const std::string& name) const {
  const Metric* m = find(name);
  if (!m) throw Error(ErrorCode::Usage, "report has no metric '" + name + "'");
  return m->value;
}

bool RunReport::passed() const {
  return std::all_of(metrics.begin(), metrics.end(), [](const Metric& m) { return m.pass; });
}

std::string render_report(const RunReport& report) {
  using nlohmann::ordered_json;
  auto num = [](double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); };
  ordered_json j;
  j["scenario"] = report.scenario;
  j["config"] = report.config;
  ordered_json metrics = ordered_json::array();
  for (const auto& m : report.metrics) {
    ordered_json e;
    e["name"] = m.name;
    e["value"] = num(m.value);
    e["relation"] = m.relation;
    if (m.relation != "info") e["threshold"] = num(m.threshold);
    e["pass"] = m.pass;
    metrics.push_back(e);
  }
  j["metrics"] = metrics;
  ordered_json res = ordered_json::object();
  for (const auto& [k, v] : report.residuals) res[k] = num(v);
  j["residuals"] = res;
  j["epsilon"] = num(report.epsilon);
  j["warnings"] = report.warnings;
  j["files"] = report.files;
  j["wall_seconds"] = report.wall_seconds;
  j["passed"] = report.passed();
  return j.dump(2) + "\n";
}

RunReport run_scenario(const Config& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const OutputFormat format = parse_format(cfg.str("format"));
  detail::ScenarioOutput out;
  RunReport report;
  report.scenario = cfg.scenario();
  report.config = cfg.values();

  const std::string& name = cfg.scenario();
  if (name == "sphere") detail::run_sphere(cfg, report, out);
  else if (name == "strip") detail::run_strip(cfg, report, out, false);
  else if (name == "slit") detail::run_strip(cfg, report, out, true);
  else if (name == "spheroid") detail::run_spheroid(cfg, report, out);
  else if (name == "born") detail::run_born(cfg, report, out);
  else if (name == "kernel-profile") detail::run_kernel_profile(cfg, report, out);
  else if (name == "riemann-decay") detail::run_riemann_decay(cfg, report, out);
  else throw Error(ErrorCode::Usage, "unknown scenario '" + name + "'");

  const std::string path = cfg.str("out");
  if (!path.empty()) {
    write_atomic(path, detail::render_primary(out, format));
    report.files.push_back(path);
    if (!out.residual_history.empty()) {
      const std::filesystem::path p(path);
      const std::filesystem::path hist = p.parent_path() / (p.stem().string() + "_residuals" + p.extension().string());
      emit_residuals(out.residual_history, format, hist);
      report.files.push_back(hist.string());
    }
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string report_path = cfg.str("report");
  if (!report_path.empty()) {
    write_atomic(report_path, render_report(report));
    report.files.push_back(report_path);
  }
  return report;
}

}  // namespace waveortho
