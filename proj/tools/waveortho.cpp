#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "waveortho/errors.hpp"
#include "waveortho/scenario.hpp"

namespace {

std::string scenario_list() {
  std::string out;
  for (const auto& n : waveortho::scenario_names()) out += (out.empty() ? "" : ", ") + n;
  return out;
}

// "--key value" and "--key=value" pairs after the scenario name; keys use - or _.
void apply_overrides(waveortho::Config& cfg, const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) != 0) {
      throw waveortho::Error(waveortho::ErrorCode::Usage, "unexpected argument '" + a + "'");
    }
    std::string key = a.substr(2);
    const auto eq = key.find('=');
    if (eq != std::string::npos) {
      cfg.set(key.substr(0, eq), key.substr(eq + 1));
    } else if (i + 1 < args.size() && args[i + 1].rfind("--", 0) != 0) {
      cfg.set(key, args[++i]);
    } else {
      cfg.set(key, "true");
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate-orthogonality scattering solver. Scenarios: " + scenario_list()};
  std::string scenario;
  std::string config_path;
  std::string out_path;
  std::string format;
  std::string report_path;
  bool list_keys = false;
  app.add_option("scenario", scenario, "Scenario name")->required();
  app.add_option("--config", config_path, "key = value file applied before command-line overrides");
  app.add_option("--out", out_path, "Data file (far field, profile or table)");
  app.add_option("--format", format, "csv or json");
  app.add_option("--report", report_path, "Write the JSON run report to this file as well");
  app.add_flag("--list-keys", list_keys, "Print the scenario keys with defaults and exit");
  app.allow_extras();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    waveortho::Config cfg = waveortho::Config::defaults(scenario);
    if (!config_path.empty()) cfg.load_file(config_path);
    apply_overrides(cfg, app.remaining());
    if (!out_path.empty()) cfg.set("out", out_path);
    if (!format.empty()) cfg.set("format", format);
    if (!report_path.empty()) cfg.set("report", report_path);
    if (list_keys) {
      for (const auto& [k, v] : cfg.values()) std::cout << k << " = " << v << "\n";
      return 0;
    }
    const waveortho::RunReport report = waveortho::run_scenario(cfg);
    std::cout << waveortho::render_report(report);
    return report.passed() ? 0 : 1;
  } catch (const waveortho::Error& e) {
    std::cerr << "waveortho: " << e.what() << "\n";
    return e.code() == waveortho::ErrorCode::Usage ? 2 : 3;
  }
}
