#pragma once

#include <string>
#include <vector>

#include "waveortho/method.hpp"
#include "waveortho/output.hpp"
#include "waveortho/scenario.hpp"

namespace waveortho::detail {

struct ScenarioOutput {
  enum class Kind { None, Pattern, Profile, Table } kind{Kind::None};
  FarFieldPattern pattern;
  std::vector<ProfilePoint> profile;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<double> residual_history;
};

std::string render_primary(const ScenarioOutput& out, OutputFormat format);

void run_sphere(const Config& cfg, RunReport& report, ScenarioOutput& out);
void run_strip(const Config& cfg, RunReport& report, ScenarioOutput& out, bool slit);
void run_spheroid(const Config& cfg, RunReport& report, ScenarioOutput& out);
void run_born(const Config& cfg, RunReport& report, ScenarioOutput& out);
void run_kernel_profile(const Config& cfg, RunReport& report, ScenarioOutput& out);
void run_riemann_decay(const Config& cfg, RunReport& report, ScenarioOutput& out);

}  // namespace waveortho::detail
