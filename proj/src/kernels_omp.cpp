#include "bracketlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <omp.h>

namespace bracketlab::kernels::omp {

namespace {

using index_t = std::ptrdiff_t;

// Below this size the fork/join overhead dominates.
constexpr std::size_t kParallelThreshold = 4096;

index_t ssize(std::size_t n) { return static_cast<index_t>(n); }

template <class BlockFn>
double blocked_reduce(std::size_t n, BlockFn&& block_sum) {
  const std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<double> partial(blocks, 0.0);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (index_t b = 0; b < ssize(blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    partial[b] = block_sum(lo, hi);
  }
  double s = 0.0;
  for (double p : partial) s += p;
  return s;
}

}  // namespace

void axpy(double a, cspan x, mspan y) {
  const index_t n = ssize(y.size());
#pragma omp parallel for simd schedule(static) if (y.size() >= kParallelThreshold)
  for (index_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale(double a, mspan x) {
  const index_t n = ssize(x.size());
#pragma omp parallel for simd schedule(static) if (x.size() >= kParallelThreshold)
  for (index_t i = 0; i < n; ++i) x[i] *= a;
}

void multiply(cspan a, cspan b, mspan out) {
  const index_t n = ssize(out.size());
#pragma omp parallel for simd schedule(static) if (out.size() >= kParallelThreshold)
  for (index_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void multiply_add(double alpha, cspan a, cspan b, mspan out) {
  const index_t n = ssize(out.size());
#pragma omp parallel for simd schedule(static) if (out.size() >= kParallelThreshold)
  for (index_t i = 0; i < n; ++i) out[i] += alpha * a[i] * b[i];
}

void divide(cspan a, cspan b, mspan out) {
  const index_t n = ssize(out.size());
#pragma omp parallel for simd schedule(static) if (out.size() >= kParallelThreshold)
  for (index_t i = 0; i < n; ++i) out[i] = a[i] / b[i];
}

void cross(cspan a0, cspan a1, cspan a2, cspan b0, cspan b1, cspan b2, mspan o0, mspan o1,
           mspan o2) {
  const index_t n = ssize(o0.size());
#pragma omp parallel for schedule(static) if (o0.size() >= kParallelThreshold)
  for (index_t i = 0; i < n; ++i) {
    const double x = a1[i] * b2[i] - a2[i] * b1[i];
    const double y = a2[i] * b0[i] - a0[i] * b2[i];
    const double z = a0[i] * b1[i] - a1[i] * b0[i];
    o0[i] = x;
    o1[i] = y;
    o2[i] = z;
  }
}

double sum(cspan x) {
  return blocked_reduce(x.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += x[i];
    return s;
  });
}

double dot(cspan a, cspan b) {
  return blocked_reduce(a.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += a[i] * b[i];
    return s;
  });
}

double max_abs(cspan x) {
  double m = 0.0;
  const index_t n = ssize(x.size());
#pragma omp parallel for reduction(max : m) schedule(static) if (x.size() >= kParallelThreshold)
  for (index_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
  return m;
}

void velocity_moment(cspan phase, cspan weight, std::size_t nx, std::size_t nv, mspan out) {
#pragma omp parallel for schedule(static) if (nx * nv >= kParallelThreshold)
  for (index_t x = 0; x < ssize(nx); ++x) {
    double s = 0.0;
    const double* row = phase.data() + static_cast<std::size_t>(x) * nv;
    if (weight.empty())
      for (std::size_t v = 0; v < nv; ++v) s += row[v];
    else
      for (std::size_t v = 0; v < nv; ++v) s += weight[v] * row[v];
    out[x] = s;
  }
}

void lift(cspan spatial, std::size_t nx, std::size_t nv, mspan phase) {
#pragma omp parallel for schedule(static) if (nx * nv >= kParallelThreshold)
  for (index_t x = 0; x < ssize(nx); ++x)
    std::fill_n(phase.data() + static_cast<std::size_t>(x) * nv, nv, spatial[x]);
}

void scale_by_profile(cspan phase, cspan profile, std::size_t nx, std::size_t nv, mspan out) {
#pragma omp parallel for schedule(static) if (nx * nv >= kParallelThreshold)
  for (index_t x = 0; x < ssize(nx); ++x) {
    const std::size_t base = static_cast<std::size_t>(x) * nv;
    for (std::size_t v = 0; v < nv; ++v) out[base + v] = phase[base + v] * profile[v];
  }
}

void complex_multiply(std::span<complex> z, cspan m) {
  const index_t n = ssize(z.size());
#pragma omp parallel for schedule(static) if (z.size() >= kParallelThreshold)
  for (index_t i = 0; i < n; ++i) z[i] *= m[i];
}

}  // namespace bracketlab::kernels::omp
