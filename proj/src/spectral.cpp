#include "bracketlab/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <map>
#include <mutex>
#include <new>
#include <stdexcept>
#include <tuple>

#include "bracketlab/kernels.hpp"

namespace bracketlab::spectral {

template <class T>
T* AlignedAllocator<T>::allocate(std::size_t n) {
  void* p = fftw_malloc(n * sizeof(T));
  if (!p) throw std::bad_alloc();
  return static_cast<T*>(p);
}

template <class T>
void AlignedAllocator<T>::deallocate(T* p, std::size_t) noexcept {
  fftw_free(p);
}

template struct AlignedAllocator<complex>;

namespace {

// (kind, extents, axis, sign); kind 0 = all axes, 1 = single axis.
using PlanKey = std::tuple<int, std::vector<int>, int, int>;

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(const PlanKey& key) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const auto& [kind, n, axis, sign] = key;
    std::size_t total = 1;
    for (int e : n) total *= static_cast<std::size_t>(e);
    ComplexVector probe(total);
    auto* buf = reinterpret_cast<fftw_complex*>(probe.data());
    fftw_plan plan = nullptr;
    if (kind == 0) {
      plan = fftw_plan_dft(static_cast<int>(n.size()), n.data(), buf, buf, sign, FFTW_ESTIMATE);
    } else {
      int outer = 1, inner = 1;
      for (int a = 0; a < axis; ++a) outer *= n[a];
      for (std::size_t a = axis + 1; a < n.size(); ++a) inner *= n[a];
      fftw_iodim dim{n[axis], inner, inner};
      fftw_iodim loops[2] = {{outer, n[axis] * inner, n[axis] * inner}, {inner, 1, 1}};
      plan = fftw_plan_guru_dft(1, &dim, 2, loops, buf, buf, sign, FFTW_ESTIMATE);
    }
    if (!plan) throw std::runtime_error("spectral: FFTW planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<PlanKey, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void execute(const PlanKey& key, ComplexVector& data) {
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(cache().get(key), buf, buf);
}

ComplexVector to_complex(std::span<const double> samples) {
  ComplexVector z(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) z[i] = complex(samples[i], 0.0);
  return z;
}

}  // namespace

std::size_t Axes::size() const {
  std::size_t s = 1;
  for (int e : n) s *= static_cast<std::size_t>(e);
  return s;
}

Axes axes_of(const Grid& grid, Support support) {
  Axes a;
  const int count = support == Support::spatial ? grid.spatial_dims() : grid.axes();
  for (int i = 0; i < count; ++i) {
    a.n.push_back(grid.points(i));
    a.length.push_back(grid.length(i));
  }
  return a;
}

int signed_index(int m, int n) { return m <= n / 2 ? m : m - n; }

double derivative_wavenumber(int m, int n, double length) {
  const int s = signed_index(m, n);
  if (n % 2 == 0 && s == n / 2) return 0.0;
  return kTwoPi * s / length;
}

ComplexVector forward(const Axes& axes, std::span<const double> samples) {
  ComplexVector z = to_complex(samples);
  execute({0, axes.n, -1, FFTW_FORWARD}, z);
  return z;
}

void inverse_complex(const Axes& axes, ComplexVector& spectrum) {
  execute({0, axes.n, -1, FFTW_BACKWARD}, spectrum);
}

void inverse_real(const Axes& axes, ComplexVector& spectrum, std::span<double> out) {
  inverse_complex(axes, spectrum);
  const double inv = 1.0 / static_cast<double>(spectrum.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = spectrum[i].real() * inv;
}

void derivative(const Axes& axes, std::span<const double> in, std::span<double> out, int axis) {
  if (axis < 0 || axis >= axes.count()) throw std::invalid_argument("spectral: bad axis");
  // Reused per thread: fresh megabyte buffers cost more than the transform.
  thread_local ComplexVector z;
  z.resize(in.size());
  double* d = reinterpret_cast<double*>(z.data());
  for (std::size_t i = 0; i < in.size(); ++i) {
    d[2 * i] = in[i];
    d[2 * i + 1] = 0.0;
  }
  execute({1, axes.n, axis, FFTW_FORWARD}, z);
  const int n = axes.n[axis];
  std::size_t inner = 1;
  for (int a = axis + 1; a < axes.count(); ++a) inner *= static_cast<std::size_t>(axes.n[a]);
  const std::size_t outer = z.size() / (inner * static_cast<std::size_t>(n));
  // multiply by i k / n: (re, im) -> (-k im, k re)
  std::vector<double> k(n);
  for (int m = 0; m < n; ++m) k[m] = derivative_wavenumber(m, n, axes.length[axis]) / n;
  double* p = d;
  for (std::size_t o = 0; o < outer; ++o)
    for (int m = 0; m < n; ++m) {
      const double km = k[m];
      for (std::size_t i = 0; i < inner; ++i, p += 2) {
        const double re = p[0];
        p[0] = -km * p[1];
        p[1] = km * re;
      }
    }
  execute({1, axes.n, axis, FFTW_BACKWARD}, z);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = d[2 * i];
}

}  // namespace bracketlab::spectral
