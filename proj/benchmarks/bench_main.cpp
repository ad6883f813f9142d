#include <benchmark/benchmark.h>

#include "waveortho/basis.hpp"
#include "waveortho/bem.hpp"
#include "waveortho/geometry.hpp"
#include "waveortho/method.hpp"
#include "waveortho/specfun.hpp"

using namespace waveortho;

static void BM_SphBesselArray(benchmark::State& state) {
  const int nmax = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(specfun::sph_bessel_j_array(nmax, 0.7 * nmax + 1.0));
}
BENCHMARK(BM_SphBesselArray)->Arg(16)->Arg(64)->Arg(200);

static void BM_CylHankel(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::cyl_hankel1_0(x));
    x = x > 40.0 ? 0.1 : x + 0.37;
  }
}
BENCHMARK(BM_CylHankel);

static void BM_StripGram(benchmark::State& state) {
  const double kd = static_cast<double>(state.range(0)) * kPi;
  const double k = kd / 2.0;
  const Surface s = make_surface(Strip{2.0}, 600);
  const BasisFamily b = make_plane_waves(strip_direction_grid(k, 2.0, 4.0), k, 2);
  const IncidentField u0{Vec3(0.0, -1.0, 0.0), 1.0, k};
  for (auto _ : state) {
    const BasisTraces tr = eval_basis_trace(b, BoundaryCondition::Hard, s);
    benchmark::DoNotOptimize(build_system(tr, s, u0));
  }
}
BENCHMARK(BM_StripGram)->Arg(4)->Arg(16);

static void BM_SphereGram(benchmark::State& state) {
  const double ka = static_cast<double>(state.range(0));
  const int n = static_cast<int>(ka) + 8;
  const Surface s = make_surface(Sphere{1.0}, n + static_cast<int>(ka) + 24);
  const BasisFamily b = make_spherical_modes(n, ka);
  const IncidentField u0{Vec3(0.0, 0.0, 1.0), 1.0, ka};
  for (auto _ : state) {
    const BasisTraces tr = eval_basis_trace(b, BoundaryCondition::Soft, s);
    benchmark::DoNotOptimize(solve_diagonal(build_system(tr, s, u0)));
  }
}
BENCHMARK(BM_SphereGram)->Arg(5)->Arg(20);

static void BM_StripBem(benchmark::State& state) {
  const double k = static_cast<double>(state.range(0)) * kPi / 2.0;
  const Surface s = make_surface(Strip{2.0}, 64);
  const IncidentField u0{Vec3(0.0, -1.0, 0.0), 1.0, k};
  for (auto _ : state) benchmark::DoNotOptimize(bem_dense_solve(s, BoundaryCondition::Hard, k, u0));
}
BENCHMARK(BM_StripBem)->Arg(4)->Arg(16);

static void BM_CircleBem(benchmark::State& state) {
  const Surface s = make_surface(Circle{1.0}, static_cast<int>(state.range(0)));
  const IncidentField u0{Vec3(1.0, 0.0, 0.0), 1.0, 5.0};
  for (auto _ : state) benchmark::DoNotOptimize(bem_dense_solve(s, BoundaryCondition::Soft, 5.0, u0));
}
BENCHMARK(BM_CircleBem)->Arg(64)->Arg(128);
BENCHMARK_MAIN();
