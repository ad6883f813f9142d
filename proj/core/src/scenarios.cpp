#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "scenario_impl.hpp"
#include "waveortho/basis.hpp"
#include "waveortho/bem.hpp"
#include "waveortho/born.hpp"
#include "waveortho/errors.hpp"
#include "waveortho/geometry.hpp"
#include "waveortho/kirchhoff.hpp"
#include "waveortho/method.hpp"
#include "waveortho/mie.hpp"
#include "waveortho/volume.hpp"

namespace waveortho::detail {
namespace {

BoundaryCondition parse_bc(const std::string& s) {
  if (s == "soft") return BoundaryCondition::Soft;
  if (s == "hard") return BoundaryCondition::Hard;
  throw Error(ErrorCode::Usage, "bc must be soft or hard, got '" + s + "'");
}

BoundaryCondition complement(BoundaryCondition bc) {
  return bc == BoundaryCondition::Soft ? BoundaryCondition::Hard : BoundaryCondition::Soft;
}

struct SolverChoice {
  SolverKind kind{SolverKind::Diagonal};
  int steps{0};
};

SolverChoice parse_solver(const Config& cfg) {
  const std::string s = cfg.str("solver");
  if (s == "diagonal") return {SolverKind::Diagonal, 0};
  if (s == "galerkin") return {SolverKind::Galerkin, 0};
  if (s == "iterate") return {SolverKind::Iterated, cfg.integer("iterate_steps")};
  if (s.rfind("iterate:", 0) == 0) {
    Config tmp = cfg;
    tmp.set("iterate_steps", s.substr(8));
    return {SolverKind::Iterated, tmp.integer("iterate_steps")};
  }
  throw Error(ErrorCode::Usage, "solver must be diagonal, galerkin or iterate[:N], got '" + s + "'");
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 2) throw Error(ErrorCode::Usage, "need at least 2 angles");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[i] = a + (b - a) * i / (n - 1);
  return out;
}

double l2(const std::vector<Complex>& a) {
  double s = 0.0;
  for (const auto& x : a) s += std::norm(x);
  return std::sqrt(s);
}

double relative_l2(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double num = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) num += std::norm(a[i] - b[i]);
  return std::sqrt(num) / l2(b);
}

struct Fit {
  Complex constant;
  double error;
};

// Best constant c with c a ~ b, and the relative L2 misfit.
Fit best_fit(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  Complex ab = 0.0;
  double aa = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += std::conj(a[i]) * b[i];
    aa += std::norm(a[i]);
  }
  const Complex c = ab / aa;
  std::vector<Complex> ca(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) ca[i] = c * a[i];
  return {c, relative_l2(ca, b)};
}

// |<f, g>_w| / (|f|_w |g|_w).
double correlation(const std::vector<Complex>& f, const std::vector<Complex>& g, const std::vector<double>& w) {
  Complex fg = 0.0;
  double ff = 0.0, gg = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    fg += w[i] * std::conj(f[i]) * g[i];
    ff += w[i] * std::norm(f[i]);
    gg += w[i] * std::norm(g[i]);
  }
  return std::abs(fg) / std::sqrt(ff * gg);
}

CVector to_eigen(const std::vector<Complex>& v) {
  return Eigen::Map<const CVector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

double incident_norm(const Surface& s, const CVector& inc) {
  double acc = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) acc += s.nodes[j].weight * std::norm(inc(j));
  return std::sqrt(acc);
}

struct Solves {
  DensitySpectrum diagonal;
  std::optional<DensitySpectrum> galerkin;
  DensitySpectrum selected;
  RefineResult refine;
};

DensitySpectrum galerkin_or_regularized(const GramSystem& sys, double lambda, RunReport& report) {
  try {
    return solve_galerkin(sys, lambda);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularSystem) throw;
    const double reg = 1e-12 * sys.G.diagonal().real().maxCoeff();
    report.warnings.push_back("Galerkin system singular at lambda = " + format_number(lambda) +
                              "; regularized with lambda = " + format_number(reg));
    return solve_galerkin(sys, reg);
  }
}

// Diagonal, Galerkin and iterated solves, residuals and epsilon into the report.
Solves solve_all(const Config& cfg, const GramSystem& sys, const Surface& s, const BasisTraces& tr,
                 const CVector& inc, RunReport& report) {
  const SolverChoice choice = parse_solver(cfg);
  const int steps = cfg.integer("iterate_steps");
  if (steps < 1) throw Error(ErrorCode::Usage, "iterate_steps must be >= 1");
  Solves out;
  out.diagonal = solve_diagonal(sys);
  out.galerkin = galerkin_or_regularized(sys, cfg.number("lambda"), report);
  out.refine = refine_iterate(sys, choice.kind == SolverKind::Iterated ? choice.steps : steps);
  switch (choice.kind) {
    case SolverKind::Diagonal: out.selected = out.diagonal; break;
    case SolverKind::Galerkin: out.selected = *out.galerkin; break;
    case SolverKind::Iterated: out.selected = out.refine.spectrum; break;
  }
  report.residuals["diagonal"] = boundary_residual(s, tr, inc, out.diagonal.v);
  report.residuals["galerkin"] = boundary_residual(s, tr, inc, out.galerkin->v);
  report.residuals["iterate"] = boundary_residual(s, tr, inc, out.refine.spectrum.v);
  report.epsilon = epsilon_diagnostic(sys, out.diagonal);
  report.info("epsilon", report.epsilon);
  if (report.residuals["iterate"] > report.residuals["diagonal"] * (1.0 + 1e-9)) {
    report.warnings.push_back("iterated residual exceeds the diagonal residual");
  }
  return out;
}

// Stability metrics of refine_iterate against diagonal and Galerkin solves.
void iteration_metrics(const Config& cfg, const GramSystem& sys, const Surface& s, const BasisTraces& tr,
                       const CVector& inc, const Solves& solves, RunReport& report) {
  const int steps = cfg.integer("iterate_steps");
  const RefineResult run = refine_iterate(sys, steps);
  const auto& h = run.residual_history;
  double worst = 0.0;
  for (std::size_t m = 1; m < h.size(); ++m) worst = std::max(worst, h[m] - h[m - 1]);
  const double scale = sys.b.norm();
  const double increase = scale > 0.0 ? worst / scale : worst;
  const double rho = iteration_spectral_radius(sys);
  report.info("iteration_spectral_radius", rho);
  if (rho < 1.0) {
    report.check("iterate_history_increase", increase, "<=", cfg.number("threshold_monotone"));
  } else {
    report.info("iterate_history_increase", increase);
  }

  const RefineResult first = refine_iterate(sys, 1);
  report.check("iterate_step1_minus_diagonal", (first.spectrum.v - solves.diagonal.v).cwiseAbs().maxCoeff(), "<=",
               0.0);

  if (rho >= 1.0) {
    report.warnings.push_back("iteration matrix spectral radius >= 1; limit comparison skipped");
    return;
  }
  const IterationLimit lim = iterate_limit(sys);
  report.info("iterate_limit_doublings", lim.doublings);
  if (!lim.converged) {
    report.warnings.push_back("iteration limit not reached within the doubling budget");
    report.check("iterate_limit_vs_galerkin", std::numeric_limits<double>::infinity(), "<=",
                 cfg.number("threshold_limit"));
    return;
  }
  const double diff = trace_norm(s, tr, lim.spectrum.v - solves.galerkin->v) / incident_norm(s, inc);
  report.check("iterate_limit_vs_galerkin", diff, "<=", cfg.number("threshold_limit"));
}

void residual_ordering(const RunReport& in, RunReport& report) {
  const double gap = in.residuals.at("galerkin") - in.residuals.at("diagonal");
  report.check("galerkin_minus_diagonal_residual", gap, "<=", 1e-12);
}

// ---------------------------------------------------------------- sphere

struct SphereSetup {
  BasisFamily basis;
  Surface surface;
};

SphereSetup sphere_setup(const Config& cfg, double ka, const std::string& basis_name, int basis_size,
                         int quad, int azimuthal) {
  const double k = ka;
  const int cka = static_cast<int>(std::ceil(ka));
  if (basis_name == "spherical-modes") {
    const int n = basis_size > 0 ? basis_size : cka + 8;
    const int res = quad > 0 ? quad : n + cka + 24;
    return {make_spherical_modes(n, k), make_surface(Sphere{1.0}, res, azimuthal > 0 ? azimuthal : 1)};
  }
  if (basis_name == "plane-waves") {
    const int n = basis_size > 0 ? basis_size : 4 * cka + 8;
    const int res = quad > 0 ? quad : cka + 24;
    const int m = azimuthal > 0 ? azimuthal : 2 * cka + 32;
    return {make_plane_waves(great_circle_directions(n), k, 3), make_surface(Sphere{1.0}, res, m)};
  }
  if (basis_name == "point-sources") {
    const int n = basis_size > 0 ? basis_size : 8;
    std::vector<Vec3> loc;
    for (int i = 0; i < n; ++i) {
      const double z = n == 1 ? 0.0 : -0.5 + static_cast<double>(i) / (n - 1);
      loc.emplace_back(0.0, 0.0, z);
    }
    const int res = quad > 0 ? quad : 2 * cka + 40;
    return {make_point_sources(loc, k, 3), make_surface(Sphere{1.0}, res, azimuthal > 0 ? azimuthal : 1)};
  }
  (void)cfg;
  throw Error(ErrorCode::Usage, "basis must be spherical-modes, plane-waves or point-sources, got '" +
                                    basis_name + "'");
}

double im_ratio(const CVector& v) {
  const double vmax = v.cwiseAbs().maxCoeff();
  return vmax > 0.0 ? v.imag().cwiseAbs().maxCoeff() / vmax : 0.0;
}

}  // namespace

std::string render_primary(const ScenarioOutput& out, OutputFormat format) {
  switch (out.kind) {
    case ScenarioOutput::Kind::Pattern: return render_pattern(out.pattern, format);
    case ScenarioOutput::Kind::Profile: return render_profile(out.profile, format);
    case ScenarioOutput::Kind::Table: return render_table(out.columns, out.rows, format);
    case ScenarioOutput::Kind::None: break;
  }
  return render_table({}, {}, format);
}

void run_sphere(const Config& cfg, RunReport& report, ScenarioOutput& out) {
  const double ka = cfg.number("ka");
  if (!(ka > 0.0)) throw Error(ErrorCode::Domain, "ka must be positive");
  const BoundaryCondition bc = parse_bc(cfg.str("bc"));
  const std::string basis_name = cfg.str("basis");
  const int basis_size = cfg.integer("basis_size");
  const SphereSetup setup =
      sphere_setup(cfg, ka, basis_name, basis_size, cfg.integer("quad_resolution"), cfg.integer("azimuthal"));
  const IncidentField u0{Vec3(0.0, 0.0, 1.0), 1.0, ka};
  const BasisTraces tr = eval_basis_trace(setup.basis, bc, setup.surface);
  const GramSystem sys = build_system(tr, setup.surface, u0);
  const CVector inc = incident_trace(u0, bc, setup.surface);
  const Solves solves = solve_all(cfg, sys, setup.surface, tr, inc, report);
  report.info("basis_size", static_cast<double>(setup.basis.size()));
  report.info("surface_nodes", static_cast<double>(setup.surface.size()));

  const std::vector<double> angles = linspace(0.0, kPi, cfg.integer("angles"));
  out.kind = ScenarioOutput::Kind::Pattern;
  out.pattern = far_field(setup.basis, solves.selected, angles);
  out.residual_history = solves.refine.residual_history;

  if (basis_name != "plane-waves") {
    const MieResult mie = mie_series(bc, ka, angles);
    const double err = relative_l2(out.pattern.amplitude, mie.pattern.amplitude);
    if (basis_name == "spherical-modes") {
      report.check("mie_relative_l2", err, "<=", cfg.number("threshold_mie_l2"));
      report.check("residual_gap", std::abs(report.residuals["diagonal"] - report.residuals["galerkin"]), "<=",
                   cfg.number("threshold_residual_gap"));
    } else {
      report.info("mie_relative_l2", err);
    }
  } else {
    // Reflection-coefficient diagnostic at the chosen grid and a refined one.
    const int n = static_cast<int>(setup.basis.size());
    const int refined_n = n * cfg.integer("refine_factor");
    const SphereSetup fine = sphere_setup(cfg, ka, basis_name, refined_n, cfg.integer("quad_resolution"),
                                          cfg.integer("azimuthal"));
    const BasisTraces ftr = eval_basis_trace(fine.basis, bc, fine.surface);
    const GramSystem fsys = build_system(ftr, fine.surface, u0);
    const double coarse = im_ratio(solves.diagonal.v);
    const double refined = im_ratio(solve_diagonal(fsys).v);
    report.info("im_ratio_coarse", coarse);
    report.info("im_ratio_refined", refined);
    report.info("refined_basis_size", refined_n);
    const double floor = 1e-12;
    const double change = (coarse <= floor && refined <= floor) ? 0.0 : refined - coarse;
    report.check("im_ratio_change_under_refinement", change, "<=", 0.0);
  }
  residual_ordering(report, report);
  iteration_metrics(cfg, sys, setup.surface, tr, inc, solves, report);
}

// ---------------------------------------------------------------- strip and slit

namespace {

struct LobeFeatures {
  int peak{0};
  int left{0};
  int right{0};
};

LobeFeatures lobe_features(const std::vector<Complex>& f) {
  const int n = static_cast<int>(f.size());
  LobeFeatures out;
  for (int i = 1; i < n; ++i) {
    if (std::abs(f[i]) > std::abs(f[out.peak])) out.peak = i;
  }
  out.right = n - 1;
  for (int i = out.peak + 1; i < n - 1; ++i) {
    if (std::abs(f[i]) <= std::abs(f[i - 1]) && std::abs(f[i]) <= std::abs(f[i + 1])) {
      out.right = i;
      break;
    }
  }
  out.left = 0;
  for (int i = out.peak - 1; i > 0; --i) {
    if (std::abs(f[i]) <= std::abs(f[i - 1]) && std::abs(f[i]) <= std::abs(f[i + 1])) {
      out.left = i;
      break;
    }
  }
  return out;
}

// Reorders a pattern by ascending angle.
FarFieldPattern sorted(FarFieldPattern p) {
  std::vector<std::size_t> idx(p.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return p.angles[a] < p.angles[b]; });
  FarFieldPattern q;
  for (const auto i : idx) {
    q.angles.push_back(p.angles[i]);
    q.amplitude.push_back(p.amplitude[i]);
  }
  return q;
}

void compare_features(const FarFieldPattern& method, const FarFieldPattern& bem, const Config& cfg,
                      RunReport& report) {
  const LobeFeatures m = lobe_features(method.amplitude);
  const LobeFeatures b = lobe_features(bem.amplitude);
  const double null_diff = std::max(std::abs(m.right - b.right), std::abs(m.left - b.left));
  const double lobe_diff = std::abs((m.right - m.left) - (b.right - b.left));
  report.check("first_null_index_difference", null_diff, "<=", cfg.number("threshold_null_steps"));
  report.check("main_lobe_width_index_difference", lobe_diff, "<=", cfg.number("threshold_lobe_steps"));
  report.info("first_null_angle_method", method.angles[m.right]);
  report.info("first_null_angle_bem", bem.angles[b.right]);
  report.info("main_lobe_width_method", method.angles[m.right] - method.angles[m.left]);
  report.info("main_lobe_width_bem", bem.angles[b.right] - bem.angles[b.left]);
  const Fit fit = best_fit(method.amplitude, bem.amplitude);
  report.info("bem_relative_l2", fit.error);
  report.info("bem_fit_constant_abs", std::abs(fit.constant));
  report.info("bem_fit_constant_arg", std::arg(fit.constant));
}

}  // namespace

void run_strip(const Config& cfg, RunReport& report, ScenarioOutput& out, bool slit) {
  const double kd = cfg.number("kd");
  const double width = cfg.number("width");
  if (!(kd > 0.0) || !(width > 0.0)) throw Error(ErrorCode::Domain, "kd and width must be positive");
  if (cfg.str("basis") != "plane-waves") {
    throw Error(ErrorCode::Usage, "strip and slit scenarios support the plane-waves basis only");
  }
  const double k = kd / width;
  const BoundaryCondition screen_bc = parse_bc(cfg.str("bc"));
  const BoundaryCondition bc = slit ? complement(screen_bc) : screen_bc;
  const double inc_angle = cfg.angle("incidence");
  const IncidentField u0{Vec3(std::sin(inc_angle), -std::cos(inc_angle), 0.0), 1.0, k};

  const Surface s = make_surface(Strip{width}, cfg.integer("quad_resolution"));
  const std::vector<Vec3> dirs = strip_direction_grid(k, width, cfg.number("per_wavelength"));
  const BasisFamily basis = make_plane_waves(dirs, k, 2);
  const BasisTraces tr = eval_basis_trace(basis, bc, s);
  const GramSystem sys = build_system(tr, s, u0);
  const CVector inc = incident_trace(u0, bc, s);
  const Solves solves = solve_all(cfg, sys, s, tr, inc, report);
  report.info("basis_size", static_cast<double>(basis.size()));

  // Diagonal-approximation boundary density and the Kirchhoff aperture field.
  std::vector<Complex> aperture(s.size()), w1(s.size()), smoothed(s.size());
  std::vector<double> weights(s.size());
  const CVector rec = tr.trace * solves.diagonal.v;
  for (std::size_t j = 0; j < s.size(); ++j) {
    aperture[j] = u0.value(s.nodes[j].position);
    w1[j] = -inc(j);
    smoothed[j] = rec(j);
    weights[j] = s.nodes[j].weight;
  }
  const CVector proj = tr.trace.adjoint() * (to_eigen(w1).array() * to_eigen(std::vector<Complex>(
                                                                          weights.begin(), weights.end()))
                                                                             .array())
                                                .matrix();
  const CVector v_from_w1 = sys.beta.cast<Complex>().cwiseProduct(proj);
  report.check("w1_projection_consistency",
               (v_from_w1 - solves.diagonal.v).cwiseAbs().maxCoeff() / solves.diagonal.v.cwiseAbs().maxCoeff(),
               "<=", 1e-12);
  report.check("kirchhoff_correlation", correlation(aperture, w1, weights), ">=",
               cfg.number("threshold_kirchhoff"));
  const Fit wfit = best_fit(aperture, w1);
  report.info("kirchhoff_constant_re", wfit.constant.real());
  report.info("kirchhoff_constant_im", wfit.constant.imag());
  report.info("smoothed_trace_correlation", correlation(aperture, smoothed, weights));
  report.info("smoothed_trace_constant_abs", std::abs(best_fit(aperture, smoothed).constant));

  FarFieldPattern method = sorted(far_field(basis, solves.selected, {}));
  {
    // Kirchhoff angular spectrum at the direction grid; sin(theta) = cos(alpha).
    std::vector<double> theta(method.size());
    for (std::size_t i = 0; i < theta.size(); ++i) theta[i] = kPi / 2.0 - method.angles[i];
    const FarFieldPattern kir = kirchhoff_pattern(kd, inc_angle, theta);
    report.info("angular_spectrum_correlation",
                correlation(kir.amplitude, method.amplitude, std::vector<double>(theta.size(), 1.0)));
  }

  BemOptions opts;
  opts.strip_order = cfg.integer("bem_order");
  const BemSolution bem_sol = bem_dense_solve(s, bc, k, u0, opts);
  report.info("bem_condition", bem_sol.condition_number());
  report.info("bem_unknowns", bem_sol.unknowns());

  if (!slit) {
    const FarFieldPattern bem = bem_sol.far_field(method.angles);
    compare_features(method, bem, cfg, report);
    out.pattern = method;
  } else {
    // Babinet: transmission angle -alpha. The complementary strip pattern is odd (hard)
    // or even (soft) under reflection in the strip plane.
    const double sign = screen_bc == BoundaryCondition::Soft ? 1.0 : -1.0;
    FarFieldPattern slit_method;
    std::vector<double> phi;
    for (std::size_t i = 0; i < method.size(); ++i) {
      slit_method.angles.push_back(-method.angles[i]);
      slit_method.amplitude.push_back(sign * method.amplitude[i]);
      phi.push_back(-method.angles[i]);
    }
    slit_method = sorted(slit_method);
    std::sort(phi.begin(), phi.end());
    FarFieldPattern slit_bem = bem_sol.far_field(phi);
    for (auto& a : slit_bem.amplitude) a = -a;
    compare_features(slit_method, slit_bem, cfg, report);
    std::vector<double> theta(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) theta[i] = phi[i] + kPi / 2.0;
    const FarFieldPattern kir = kirchhoff_pattern(kd, inc_angle, theta);
    report.info("slit_kirchhoff_correlation",
                correlation(kir.amplitude, slit_method.amplitude, std::vector<double>(phi.size(), 1.0)));
    out.pattern = slit_method;
  }
  out.kind = ScenarioOutput::Kind::Pattern;
  out.residual_history = solves.refine.residual_history;
  residual_ordering(report, report);
  iteration_metrics(cfg, sys, s, tr, inc, solves, report);
}

// ---------------------------------------------------------------- spheroid

void run_spheroid(const Config& cfg, RunReport& report, ScenarioOutput& out) {
  const double ka = cfg.number("ka");
  const double ratio = cfg.number("c_over_a");
  if (!(ka > 0.0)) throw Error(ErrorCode::Domain, "ka must be positive");
  const double a = 1.0;
  const double c = ratio * a;
  const double k = ka / a;
  const BoundaryCondition bc = parse_bc(cfg.str("bc"));
  const Surface s = make_surface(Spheroid{a, c}, cfg.integer("quad_resolution"), 1);
  if (cfg.str("basis") != "point-sources") {
    throw Error(ErrorCode::Usage, "spheroid scenario supports the point-sources basis only");
  }
  const int n = cfg.integer("basis_size");
  if (n < 1) throw Error(ErrorCode::Usage, "basis_size must be >= 1");
  const double reach = std::sqrt(c * c - a * a) * cfg.number("source_fraction");
  std::vector<Vec3> loc;
  for (int i = 0; i < n; ++i) {
    const double z = n == 1 ? 0.0 : -reach + 2.0 * reach * i / (n - 1);
    loc.emplace_back(0.0, 0.0, z);
  }
  const BasisFamily basis = make_point_sources(loc, k, 3);
  const IncidentField u0{Vec3(0.0, 0.0, 1.0), 1.0, k};
  const BasisTraces tr = eval_basis_trace(basis, bc, s);
  const GramSystem sys = build_system(tr, s, u0);
  const CVector inc = incident_trace(u0, bc, s);
  const Solves solves = solve_all(cfg, sys, s, tr, inc, report);

  const double rd = report.residuals["diagonal"];
  const double rg = report.residuals["galerkin"];
  report.check("diagonal_over_galerkin_residual", rd / rg, "<=", cfg.number("threshold_ratio"));
  report.check("diagonal_residual", rd, "<=", cfg.number("threshold_residual"));
  report.check("galerkin_residual", rg, "<=", cfg.number("threshold_residual"));
  report.info("iteration_spectral_radius", iteration_spectral_radius(sys));

  out.kind = ScenarioOutput::Kind::Pattern;
  out.pattern = far_field(basis, solves.selected, linspace(0.0, kPi, cfg.integer("angles")));
  out.residual_history = solves.refine.residual_history;
}

// ---------------------------------------------------------------- born

namespace {

BornOrder parse_order(const std::string& s) {
  if (s == "first") return BornOrder::First;
  if (s == "second-standard") return BornOrder::SecondStandard;
  if (s == "second-modified") return BornOrder::SecondModified;
  throw Error(ErrorCode::Usage, "order must be first, second-standard or second-modified, got '" + s + "'");
}

Vec3 planar_point(double distance, double angle) {
  return {distance * std::cos(angle), distance * std::sin(angle), 0.0};
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

void run_born(const Config& cfg, RunReport& report, ScenarioOutput& out) {
  const double k = cfg.number("k");
  const int dim = cfg.integer("dim");
  if (dim != 2 && dim != 3) throw Error(ErrorCode::Usage, "dim must be 2 or 3");
  if (!(k > 0.0)) throw Error(ErrorCode::Domain, "k must be positive");
  const Complex amplitude = cfg.number("strength") * k * k;
  const VolumePotential pot = make_gaussian_potential(dim, cfg.integer("grid"), cfg.number("half_extent"),
                                                      amplitude, cfg.number("sigma"));
  const IncidentField u0{Vec3(1.0, 0.0, 0.0), 1.0, k};
  const double dist = cfg.number("eval_distance");
  const std::vector<Vec3> pts{planar_point(dist, cfg.angle("eval_angle"))};
  if (pot.covers(pts[0])) throw Error(ErrorCode::UnsupportedRegion, "evaluation point lies inside the lattice");
  BornOptions opts;
  opts.alt_reading = cfg.flag("born_alt_reading");

  const BornResult first = born_approximation(pot, u0, k, BornOrder::First, pts, opts);
  BornOptions unit = opts;
  unit.unit_beta = true;
  const BornResult first_unit = born_approximation(pot, u0, k, BornOrder::First, pts, unit);
  const BornResult standard = born_approximation(pot, u0, k, BornOrder::SecondStandard, pts, opts);
  const BornResult modified = born_approximation(pot, u0, k, BornOrder::SecondModified, pts, opts);

  report.check("first_unit_beta_vs_standard_first", rel(first_unit.first_term[0], standard.first_term[0]), "<=",
               cfg.number("threshold_first"));

  const Complex rot = std::polar(1.0, cfg.number("phase"));
  const VolumePotential rotated = pot.scaled(rot);
  const BornResult mod_rot = born_approximation(rotated, u0, k, BornOrder::SecondModified, pts, opts);
  const BornResult std_rot = born_approximation(rotated, u0, k, BornOrder::SecondStandard, pts, opts);
  report.check("modified_second_phase_change", rel(mod_rot.second_term[0], modified.second_term[0]), "<=",
               cfg.number("threshold_phase"));
  report.check("standard_second_phase_change", rel(std_rot.second_term[0], standard.second_term[0]), ">=", 1e-3);
  report.info("standard_second_phase_follows_rot2",
              rel(std_rot.second_term[0], rot * rot * standard.second_term[0]));

  const Complex sm = modified.second_term[0];
  const Complex ss = standard.second_term[0];
  const double sign_corr = std::real(sm * std::conj(ss)) / (std::abs(sm) * std::abs(ss));
  report.check("second_term_sign_correlation", sign_corr, "<", 0.0);
  report.info("modified_second_re", sm.real());
  report.info("modified_second_im", sm.imag());
  report.info("standard_second_re", ss.real());
  report.info("standard_second_im", ss.imag());
  {
    BornOptions alt = opts;
    alt.alt_reading = !opts.alt_reading;
    const BornResult other = born_approximation(pot, u0, k, BornOrder::SecondModified, pts, alt);
    const Complex so = other.second_term[0];
    report.info("alt_reading_sign_correlation", std::real(so * std::conj(ss)) / (std::abs(so) * std::abs(ss)));
  }

  // Lippmann-Schwinger oracle.
  const LippmannSchwingerResult ls = lippmann_schwinger(pot, u0, k);
  report.check("ls_residual", ls.residual, "<=", cfg.number("threshold_ls_residual"));
  report.info("ls_contraction", ls.contraction);
  report.info("ls_dense", ls.dense ? 1.0 : 0.0);
  const Complex u_ls = lippmann_schwinger_field_at(pot, u0, k, ls.field, pts)[0];
  const Complex scat = u_ls - u0.value(pts[0]);
  report.info("error_first", std::abs(first.field[0] - u_ls) / std::abs(scat));
  report.info("error_second_standard", std::abs(standard.field[0] - u_ls) / std::abs(scat));
  report.info("error_second_modified", std::abs(modified.field[0] - u_ls) / std::abs(scat));
  {
    const BornResult plain_first = born_approximation(pot, u0, k, BornOrder::First, pts, unit);
    report.info("error_first_unit_beta", std::abs(plain_first.field[0] - u_ls) / std::abs(scat));
  }

  // Ring of evaluation points for the requested order.
  const std::vector<double> ring = linspace(0.0, 2.0 * kPi, cfg.integer("angles") + 1);
  std::vector<Vec3> ring_pts;
  std::vector<double> ring_angles(ring.begin(), ring.end() - 1);
  for (const double a : ring_angles) ring_pts.push_back(planar_point(dist, a));
  const BornResult chosen = born_approximation(pot, u0, k, parse_order(cfg.str("order")), ring_pts, opts);
  const BornResult ring_std = born_approximation(pot, u0, k, BornOrder::SecondStandard, ring_pts, opts);
  const BornResult ring_mod = born_approximation(pot, u0, k, BornOrder::SecondModified, ring_pts, opts);
  int opposite = 0;
  for (std::size_t i = 0; i < ring_pts.size(); ++i) {
    if (std::real(ring_mod.second_term[i] * std::conj(ring_std.second_term[i])) < 0.0) ++opposite;
  }
  report.info("ring_opposite_sign_fraction", static_cast<double>(opposite) / ring_pts.size());

  out.kind = ScenarioOutput::Kind::Pattern;
  out.pattern.angles = ring_angles;
  for (std::size_t i = 0; i < ring_pts.size(); ++i) {
    out.pattern.amplitude.push_back(chosen.field[i] - u0.value(ring_pts[i]));
  }
}

// ---------------------------------------------------------------- kernel profile

void run_kernel_profile(const Config& cfg, RunReport& report, ScenarioOutput& out) {
  const double ka = cfg.number("ka");
  if (!(ka > 0.0)) throw Error(ErrorCode::Domain, "ka must be positive");
  const BoundaryCondition bc = parse_bc(cfg.str("bc"));
  const SphereSetup setup = sphere_setup(cfg, ka, cfg.str("basis"), cfg.integer("basis_size"),
                                         cfg.integer("quad_resolution"), cfg.integer("azimuthal"));
  const BasisTraces tr = eval_basis_trace(setup.basis, bc, setup.surface);
  const GramSystem sys = assemble_gram(tr, setup.surface);
  const int m = static_cast<int>(setup.surface.size());
  int anchor = cfg.integer("anchor");
  if (anchor < 0) anchor = m / 2;
  if (anchor >= m) throw Error(ErrorCode::Usage, "anchor outside the surface node range");

  const std::vector<ProfilePoint> profile = kernel_profile(setup.surface, tr, sys.beta, anchor);
  double peak_other = 0.0;
  for (std::size_t i = 1; i < profile.size(); ++i) peak_other = std::max(peak_other, profile[i].abs_phi);
  const double at_zero = profile.front().abs_phi;
  report.check("peak_at_zero_distance",
               (profile.front().distance == 0.0 && at_zero >= peak_other) ? 1.0 : 0.0, ">=", 1.0);

  // Hermitian symmetry Phi(r_j, r_a) = conj(Phi(r_a, r_j)) over all node pairs.
  std::vector<CVector> cols(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) cols[j] = kernel_column(tr, sys.beta, j);
  double herm = 0.0, scale = 0.0;
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      herm = std::max(herm, std::abs(cols[j](i) - std::conj(cols[i](j))));
      scale = std::max(scale, std::abs(cols[j](i)));
    }
  }
  report.check("hermitian_error", herm / scale, "<=", cfg.number("threshold_hermitian"));

  const double lambda = 2.0 * kPi / ka;
  const double cutoff = cfg.number("decay_wavelengths") * lambda;
  double far = 0.0;
  for (const auto& p : profile) {
    if (p.distance > cutoff) far = std::max(far, p.abs_phi);
  }
  report.info("far_over_peak", far / at_zero);
  report.info("anchor", anchor);

  out.kind = ScenarioOutput::Kind::Profile;
  out.profile = profile;
}

// ---------------------------------------------------------------- riemann decay

void run_riemann_decay(const Config& cfg, RunReport& report, ScenarioOutput& out) {
  const std::vector<double> kas = cfg.numbers("ka_list");
  const BoundaryCondition bc = parse_bc(cfg.str("bc"));
  const Vec3 d1 = direction_from_angle(cfg.angle("dir_angle_1"), 3);
  const Vec3 d2 = direction_from_angle(cfg.angle("dir_angle_2"), 3);
  if ((d1 - d2).norm() < 1e-12) throw Error(ErrorCode::Usage, "the two directions must differ");
  const int quad = cfg.integer("quad_resolution");

  out.kind = ScenarioOutput::Kind::Table;
  out.columns = {"ka", "abs_offdiag_normalized", "abs_offdiag"};
  std::vector<double> values;
  for (const double ka : kas) {
    if (!(ka > 0.0)) throw Error(ErrorCode::Domain, "ka values must be positive");
    const int cka = static_cast<int>(std::ceil(ka));
    const int res = quad > 0 ? quad : cka + 24;
    const int az = quad > 0 ? 2 * quad : 2 * cka + 32;
    const Surface s = make_surface(Sphere{1.0}, res, az);
    const BasisFamily basis = make_plane_waves({d1, d2}, ka, 3);
    const GramSystem g = assemble_gram(eval_basis_trace(basis, bc, s), s);
    const double raw = std::abs(g.G(0, 1));
    const double norm = raw / std::sqrt(g.G(0, 0).real() * g.G(1, 1).real());
    values.push_back(norm);
    out.rows.push_back({ka, norm, raw});
    report.info("offdiag_normalized_ka_" + format_number(ka), norm);
  }
  for (std::size_t i = 1; i < values.size(); ++i) {
    report.check("decay_ratio_" + format_number(kas[i - 1]) + "_to_" + format_number(kas[i]),
                 values[i - 1] / values[i], ">=", cfg.number("threshold_ratio"));
  }
}

}  // namespace waveortho::detail
