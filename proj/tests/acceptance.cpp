#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "waveortho/errors.hpp"
#include "waveortho/scenario.hpp"

using namespace waveortho;

namespace {

// Pinned tolerances.
constexpr double kMieL2 = 1e-8;
constexpr double kSphereSeconds = 5.0;
constexpr double kKirchhoffCorrelation = 0.999;
constexpr double kFeatureSteps = 1.0;
constexpr double kStripSeconds = 60.0;
constexpr double kDecayRatio = 2.0;
constexpr double kMonotoneSlack = 1e-12;
constexpr double kLimitVsGalerkin = 1e-6;
constexpr double kSpheroidRatio = 3.0;
constexpr double kSpheroidResidual = 0.2;
constexpr double kImRatioFloor = 1e-12;
constexpr double kBornFirst = 1e-12;
constexpr double kBornPhase = 1e-12;
constexpr double kBornSeconds = 60.0;
constexpr double kHermitian = 1e-12;

struct Timed {
  RunReport report;
  double seconds;
};

Timed run(const std::string& scenario, const std::vector<std::pair<std::string, std::string>>& overrides) {
  Config c = Config::defaults(scenario);
  for (const auto& [k, v] : overrides) c.set(k, v);
  const auto t0 = std::chrono::steady_clock::now();
  RunReport r = run_scenario(c);
  return {std::move(r), std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()};
}

struct Outcome {
  bool pass{true};
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "!") + what;
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Outcome criterion1() {
  Outcome o;
  for (const char* bc : {"soft", "hard"}) {
    const Timed t = run("sphere", {{"bc", bc}, {"ka", "5"}, {"basis", "spherical-modes"}, {"solver", "diagonal"}});
    const double err = t.report.value("mie_relative_l2");
    o.require(err <= kMieL2, std::string(bc) + " mie_l2=" + fmt(err));
    o.require(t.seconds < kSphereSeconds, std::string(bc) + " t=" + fmt(t.seconds) + "s");
  }
  return o;
}

Outcome criterion2() {
  Outcome o;
  const Timed t = run("strip", {{"bc", "hard"}, {"kd", "16pi"}, {"solver", "diagonal"}});
  const double c = t.report.value("kirchhoff_correlation");
  o.require(c >= kKirchhoffCorrelation, "correlation=" + fmt(c));
  o.require(t.report.value("w1_projection_consistency") <= 1e-12, "w1 projects onto diagonal solve");
  o.detail += "; constant=" + fmt(t.report.value("kirchhoff_constant_re")) + "+" +
              fmt(t.report.value("kirchhoff_constant_im")) + "i";
  o.detail += "; smoothed-trace correlation=" + fmt(t.report.value("smoothed_trace_correlation"));
  return o;
}

Outcome criterion3() {
  Outcome o;
  for (const char* bc : {"hard", "soft"}) {
    double prev = INFINITY;
    std::string errs;
    for (const char* kd : {"4pi", "8pi", "16pi"}) {
      const Timed t = run("strip", {{"bc", bc}, {"kd", kd}});
      const std::string tag = std::string(bc) + "/" + kd;
      o.require(t.report.value("first_null_index_difference") <= kFeatureSteps &&
                    t.report.value("main_lobe_width_index_difference") <= kFeatureSteps,
                tag + " features");
      o.require(t.seconds < kStripSeconds, tag + " t=" + fmt(t.seconds) + "s");
      const double e = t.report.value("bem_relative_l2");
      errs += (errs.empty() ? "" : ",") + fmt(e);
      if (e > prev) o.require(false, tag + " L2 increased");
      prev = e;
    }
    o.detail += "; " + std::string(bc) + " L2=[" + errs + "]";
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  const Timed t = run("riemann-decay", {{"ka_list", "10,20,40"}});
  for (const char* name : {"decay_ratio_10_to_20", "decay_ratio_20_to_40"}) {
    const double r = t.report.value(name);
    o.require(r >= kDecayRatio, std::string(name) + "=" + fmt(r));
  }
  return o;
}

void iteration_checks(Outcome& o, const RunReport& r, const std::string& tag) {
  o.require(r.value("iterate_history_increase") <= kMonotoneSlack, tag + " monotone");
  o.require(r.value("iterate_step1_minus_diagonal") == 0.0, tag + " step1");
  const double rho = r.value("iteration_spectral_radius");
  if (rho < 1.0) {
    const double d = r.value("iterate_limit_vs_galerkin");
    o.require(d <= kLimitVsGalerkin, tag + " limit=" + fmt(d));
  } else {
    o.detail += "; " + tag + " rho>=1, limit n/a";
  }
}

Outcome criterion5() {
  Outcome o;
  for (const char* bc : {"soft", "hard"}) {
    iteration_checks(o, run("sphere", {{"bc", bc}, {"iterate_steps", "50"}}).report, std::string("sphere/") + bc);
  }
  for (const char* bc : {"hard", "soft"}) {
    for (const char* kd : {"4pi", "8pi", "16pi"}) {
      iteration_checks(o, run("strip", {{"bc", bc}, {"kd", kd}, {"iterate_steps", "50"}}).report,
                       std::string("strip/") + bc + "/" + kd);
    }
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  const Timed t = run("spheroid", {{"c_over_a", "2"}, {"ka", "5"}, {"basis_size", "8"}, {"bc", "hard"}});
  const double rd = t.report.residuals.at("diagonal");
  const double rg = t.report.residuals.at("galerkin");
  o.require(rd <= kSpheroidRatio * rg, "diag/galerkin=" + fmt(rd / rg));
  o.require(rd <= kSpheroidResidual, "diag=" + fmt(rd));
  o.require(rg <= kSpheroidResidual, "galerkin=" + fmt(rg));
  return o;
}

Outcome criterion7() {
  Outcome o;
  const Timed t = run("sphere", {{"bc", "hard"}, {"basis", "plane-waves"}, {"ka", "5"}});
  const double coarse = t.report.value("im_ratio_coarse");
  const double fine = t.report.value("im_ratio_refined");
  const bool at_floor = coarse <= kImRatioFloor && fine <= kImRatioFloor;
  o.require(at_floor || fine <= coarse, "im ratio " + fmt(coarse) + " -> " + fmt(fine) +
                                            (at_floor ? " (both at rounding level)" : ""));
  return o;
}

Outcome criterion8() {
  Outcome o;
  const Timed t = run("born", {{"dim", "2"}});
  const RunReport& r = t.report;
  o.require(r.value("first_unit_beta_vs_standard_first") <= kBornFirst, "(a)");
  o.require(r.value("modified_second_phase_change") <= kBornPhase &&
                r.value("standard_second_phase_change") > kBornPhase,
            "(b)");
  o.require(r.value("second_term_sign_correlation") < 0.0,
            "(c) sign corr=" + fmt(r.value("second_term_sign_correlation")));
  o.require(r.value("ls_residual") <= 1e-8, "(d) errors first/std/mod=" + fmt(r.value("error_first")) + "/" +
                                                fmt(r.value("error_second_standard")) + "/" +
                                                fmt(r.value("error_second_modified")));
  o.require(t.seconds < kBornSeconds, "t=" + fmt(t.seconds) + "s");
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Outcome criterion9() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "waveortho_acceptance_profile";
  std::filesystem::create_directories(dir);
  const Timed a = run("kernel-profile", {{"ka", "10"}, {"out", (dir / "a.csv").string()}});
  const Timed b = run("kernel-profile", {{"ka", "10"}, {"out", (dir / "b.csv").string()}});
  o.require(a.report.value("peak_at_zero_distance") >= 1.0, "peak at 0");
  o.require(a.report.value("hermitian_error") <= kHermitian, "hermitian=" + fmt(a.report.value("hermitian_error")));
  const std::string sa = slurp(dir / "a.csv");
  o.require(!sa.empty() && sa == slurp(dir / "b.csv"), "byte-identical");
  std::filesystem::remove_all(dir);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                       criterion6, criterion7, criterion8, criterion9};
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::fprintf(stderr, "criterion must be 1..%zu\n", criteria.size());
    return 2;
  }
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const Error& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    std::printf("criterion %zu: %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
