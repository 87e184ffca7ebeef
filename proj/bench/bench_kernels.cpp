// Serial reference kernels against their OpenMP versions, plus the derivative
// and a full bracket application for scale.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "bracketlab/calculus.hpp"
#include "bracketlab/checks.hpp"
#include "bracketlab/kernels.hpp"
#include "bracketlab/spectral.hpp"
#include "bracketlab/systems.hpp"

namespace k = bracketlab::kernels;

namespace {

std::vector<double> noise(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

template <void (*Axpy)(double, k::cspan, k::mspan)>
void bm_axpy(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto x = noise(n, 1);
  auto y = noise(n, 2);
  for (auto _ : st) {
    Axpy(1e-3, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  st.SetBytesProcessed(st.iterations() * static_cast<std::int64_t>(3 * n * sizeof(double)));
}

template <double (*Dot)(k::cspan, k::cspan)>
void bm_dot(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = noise(n, 3), b = noise(n, 4);
  for (auto _ : st) benchmark::DoNotOptimize(Dot(a, b));
  st.SetBytesProcessed(st.iterations() * static_cast<std::int64_t>(2 * n * sizeof(double)));
}

template <void (*Cross)(k::cspan, k::cspan, k::cspan, k::cspan, k::cspan, k::cspan, k::mspan, k::mspan,
                        k::mspan)>
void bm_cross(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a0 = noise(n, 5), a1 = noise(n, 6), a2 = noise(n, 7);
  const auto b0 = noise(n, 8), b1 = noise(n, 9), b2 = noise(n, 10);
  std::vector<double> o0(n), o1(n), o2(n);
  for (auto _ : st) {
    Cross(a0, a1, a2, b0, b1, b2, o0, o1, o2);
    benchmark::DoNotOptimize(o0.data());
  }
}

template <void (*Moment)(k::cspan, k::cspan, std::size_t, std::size_t, k::mspan)>
void bm_moment(benchmark::State& st) {
  const std::size_t nx = 512, nv = static_cast<std::size_t>(st.range(0));
  const auto f = noise(nx * nv, 11), w = noise(nv, 12);
  std::vector<double> out(nx);
  for (auto _ : st) {
    Moment(f, w, nx, nv, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void bm_derivative(benchmark::State& st) {
  using namespace bracketlab;
  const GridPtr g = Grid::phase(3, 8, kTwoPi, 3, 6, 3.0);
  const Field f = random_field(g, Support::phase, 1, {1, 2, false, 1.0});
  const auto axes = spectral::axes_of(*g, Support::phase);
  Field out(g, Support::phase, 1);
  const int axis = static_cast<int>(st.range(0));
  for (auto _ : st) {
    spectral::derivative(axes, f.values(), out.values(), axis);
    benchmark::DoNotOptimize(out.values().data());
  }
}

void bm_vm_bracket(benchmark::State& st) {
  using namespace bracketlab;
  const SystemSpec S = vlasov_maxwell_system(Grid::phase(3, 8, kTwoPi, 3, 6, 3.0));
  const State chi = S.random_state_for(1);
  const Cotangent a = S.random_cotangent(2);
  const BracketOperator& J = S.brackets.at("projected");
  for (auto _ : st) benchmark::DoNotOptimize(J.apply(chi, a));
}

constexpr std::int64_t kSmall = 1 << 12, kLarge = 1 << 22;

}  // namespace

BENCHMARK(bm_axpy<k::serial::axpy>)->Name("axpy/serial")->Range(kSmall, kLarge);
BENCHMARK(bm_axpy<k::omp::axpy>)->Name("axpy/omp")->Range(kSmall, kLarge);
BENCHMARK(bm_dot<k::serial::dot>)->Name("dot/serial")->Range(kSmall, kLarge);
BENCHMARK(bm_dot<k::omp::dot>)->Name("dot/omp")->Range(kSmall, kLarge);
BENCHMARK(bm_cross<k::serial::cross>)->Name("cross/serial")->Range(kSmall, kLarge);
BENCHMARK(bm_cross<k::omp::cross>)->Name("cross/omp")->Range(kSmall, kLarge);
BENCHMARK(bm_moment<k::serial::velocity_moment>)->Name("velocity_moment/serial")->Arg(216)->Arg(4096);
BENCHMARK(bm_moment<k::omp::velocity_moment>)->Name("velocity_moment/omp")->Arg(216)->Arg(4096);
BENCHMARK(bm_derivative)->Name("derivative/8^3x6^3")->DenseRange(0, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_vm_bracket)->Name("vlasov_maxwell/J_apply")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
