#pragma once

// Discrete Fourier machinery behind the exact multiplier operators.
// Transforms are complex-to-complex over all axes of a support (or along one
// axis for derivatives); FFTW plans are cached and executed on aligned
// scratch buffers so results are bitwise reproducible.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "bracketlab/field.hpp"

namespace bracketlab::spectral {

using complex = std::complex<double>;

template <class T>
struct AlignedAllocator {
  using value_type = T;
  AlignedAllocator() = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) {}
  T* allocate(std::size_t n);
  void deallocate(T* p, std::size_t) noexcept;
  template <class U>
  bool operator==(const AlignedAllocator<U>&) const { return true; }
};

using ComplexVector = std::vector<complex, AlignedAllocator<complex>>;

/// Axis extents of one support.
struct Axes {
  std::vector<int> n;
  std::vector<double> length;
  std::size_t size() const;
  int count() const { return static_cast<int>(n.size()); }
};

Axes axes_of(const Grid& grid, Support support);

/// Signed mode index of DFT bin m on an n-point axis.
int signed_index(int m, int n);
/// Wavenumber used for first derivatives: 2*pi*m/L, zero on the Nyquist bin.
double derivative_wavenumber(int m, int n, double length);

/// Unnormalised forward DFT over every axis.
ComplexVector forward(const Axes& axes, std::span<const double> samples);
/// Normalised inverse DFT; writes the real part.
void inverse_real(const Axes& axes, ComplexVector& spectrum, std::span<double> out);
/// Unnormalised inverse DFT in place (complex output).
void inverse_complex(const Axes& axes, ComplexVector& spectrum);

/// d/dx_axis by Fourier multiplication along a single axis.
void derivative(const Axes& axes, std::span<const double> in, std::span<double> out, int axis);

/// Calls fn(flat_index, kd) for every bin, with kd the derivative wavevector.
template <class Fn>
void for_each_mode(const Axes& axes, Fn&& fn) {
  const int d = axes.count();
  std::vector<int> idx(d, 0);
  std::vector<double> kd(d);
  const std::size_t total = axes.size();
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (int a = 0; a < d; ++a) kd[a] = derivative_wavenumber(idx[a], axes.n[a], axes.length[a]);
    fn(flat, std::span<const double>(kd));
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < axes.n[a]) break;
      idx[a] = 0;
    }
  }
}

/// Calls fn(flat_index, signed_indices) for every bin.
template <class Fn>
void for_each_index(const Axes& axes, Fn&& fn) {
  const int d = axes.count();
  std::vector<int> idx(d, 0), s(d);
  const std::size_t total = axes.size();
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (int a = 0; a < d; ++a) s[a] = signed_index(idx[a], axes.n[a]);
    fn(flat, std::span<const int>(s));
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < axes.n[a]) break;
      idx[a] = 0;
    }
  }
}

}  // namespace bracketlab::spectral
