#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "waveortho/errors.hpp"
#include "waveortho/scenario.hpp"
#include "waveortho/types.hpp"

using namespace waveortho;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::OracleFailure;
}

}  // namespace

TEST(Config, ParsesUnitsAndLists) {
  Config c = Config::defaults("strip");
  c.set("kd", "16pi");
  EXPECT_DOUBLE_EQ(c.number("kd"), 16.0 * kPi);
  c.set("incidence", "30deg");
  EXPECT_DOUBLE_EQ(c.angle("incidence"), kPi / 6.0);
  Config r = Config::defaults("riemann-decay");
  EXPECT_EQ(r.numbers("ka_list"), (std::vector<double>{10.0, 20.0, 40.0}));
  Config b = Config::defaults("born");
  b.set("born-alt-reading", "true");
  EXPECT_TRUE(b.flag("born_alt_reading"));
}

TEST(Config, RejectsUnknownKeysAndScenarios) {
  Config c = Config::defaults("sphere");
  EXPECT_EQ(code_of([&] { c.set("no_such_key", "1"); }), ErrorCode::Usage);
  EXPECT_EQ(code_of([] { Config::defaults("cube"); }), ErrorCode::Usage);
  c.set("ka", "abc");
  EXPECT_EQ(code_of([&] { c.number("ka"); }), ErrorCode::Usage);
  c.set("basis_size", "2.5");
  EXPECT_EQ(code_of([&] { c.integer("basis_size"); }), ErrorCode::Usage);
}

TEST(Config, LoadsKeyValueFiles) {
  const auto path = std::filesystem::temp_directory_path() / "waveortho_cfg_test.cfg";
  {
    std::ofstream f(path);
    f << "# comment\nka = 7   # trailing\n\nbc=hard\n";
  }
  Config c = Config::defaults("sphere");
  c.load_file(path);
  EXPECT_EQ(c.number("ka"), 7.0);
  EXPECT_EQ(c.str("bc"), "hard");
  {
    std::ofstream f(path);
    f << "bogus = 1\n";
  }
  EXPECT_EQ(code_of([&] { c.load_file(path); }), ErrorCode::Usage);
  std::filesystem::remove(path);
  EXPECT_EQ(code_of([&] { c.load_file(path); }), ErrorCode::Io);
}

TEST(Scenario, SphereReportHasResidualsAndMetrics) {
  Config c = Config::defaults("sphere");
  c.set("ka", "3");
  const RunReport r = run_scenario(c);
  EXPECT_TRUE(r.passed());
  EXPECT_LT(r.value("mie_relative_l2"), 1e-8);
  EXPECT_EQ(r.residuals.count("galerkin"), 1u);
  const auto j = nlohmann::json::parse(render_report(r));
  EXPECT_EQ(j["scenario"], "sphere");
  EXPECT_TRUE(j["passed"].get<bool>());
}

TEST(Scenario, KernelProfileIsByteIdenticalAcrossRuns) {
  const auto dir = std::filesystem::temp_directory_path() / "waveortho_profile_test";
  std::filesystem::create_directories(dir);
  Config c = Config::defaults("kernel-profile");
  c.set("out", (dir / "a.csv").string());
  run_scenario(c);
  c.set("out", (dir / "b.csv").string());
  run_scenario(c);
  const std::string a = slurp(dir / "a.csv");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(dir / "b.csv"));
  std::filesystem::remove_all(dir);
}

TEST(Scenario, WritesResidualHistoryNextToData) {
  const auto dir = std::filesystem::temp_directory_path() / "waveortho_hist_test";
  std::filesystem::create_directories(dir);
  Config c = Config::defaults("strip");
  c.set("kd", "4pi");
  c.set("out", (dir / "strip.json").string());
  c.set("format", "json");
  const RunReport r = run_scenario(c);
  ASSERT_EQ(r.files.size(), 2u);
  const auto hist = nlohmann::json::parse(slurp(dir / "strip_residuals.json"));
  EXPECT_EQ(hist.size(), 50u);
  std::filesystem::remove_all(dir);
}

TEST(Scenario, InvalidChoicesAreUsageErrors) {
  Config c = Config::defaults("strip");
  c.set("basis", "point-sources");
  EXPECT_EQ(code_of([&] { run_scenario(c); }), ErrorCode::Usage);
  Config s = Config::defaults("sphere");
  s.set("solver", "cholesky");
  EXPECT_EQ(code_of([&] { run_scenario(s); }), ErrorCode::Usage);
  s.set("solver", "diagonal");
  s.set("format", "xml");
  EXPECT_EQ(code_of([&] { run_scenario(s); }), ErrorCode::Usage);
}

TEST(Scenario, IteratedSolverIsSelectable) {
  Config c = Config::defaults("sphere");
  c.set("solver", "iterate:3");
  const RunReport r = run_scenario(c);
  EXPECT_LT(r.value("mie_relative_l2"), 1e-8);
}
