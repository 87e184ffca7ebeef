#pragma once

// Pointwise and reduction kernels over flat sample arrays.
//
// Two implementations with identical signatures: `serial` is the plain
// reference kept for testing, `omp` is the OpenMP-parallel version the
// library uses. Reductions in `omp` sum fixed-size blocks, then combine the
// block sums in order, so results do not depend on the thread count.

#include <complex>
#include <cstddef>
#include <span>

namespace bracketlab::kernels {

using cspan = std::span<const double>;
using mspan = std::span<double>;
using complex = std::complex<double>;

inline constexpr std::size_t kReductionBlock = 2048;

#define BRACKETLAB_KERNEL_DECLS                                                          \
  void axpy(double a, cspan x, mspan y);                                                 \
  void scale(double a, mspan x);                                                         \
  void multiply(cspan a, cspan b, mspan out);                                            \
  void multiply_add(double alpha, cspan a, cspan b, mspan out);                          \
  void divide(cspan a, cspan b, mspan out);                                              \
  void cross(cspan a0, cspan a1, cspan a2, cspan b0, cspan b1, cspan b2, mspan o0,       \
             mspan o1, mspan o2);                                                        \
  double sum(cspan x);                                                                   \
  double dot(cspan a, cspan b);                                                          \
  double max_abs(cspan x);                                                               \
  void velocity_moment(cspan phase, cspan weight, std::size_t nx, std::size_t nv,        \
                       mspan out);                                                       \
  void lift(cspan spatial, std::size_t nx, std::size_t nv, mspan phase);                 \
  void scale_by_profile(cspan phase, cspan profile, std::size_t nx, std::size_t nv,      \
                        mspan out);                                                      \
  void complex_multiply(std::span<complex> z, cspan m);

namespace serial {
BRACKETLAB_KERNEL_DECLS
}
namespace omp {
BRACKETLAB_KERNEL_DECLS
}

#undef BRACKETLAB_KERNEL_DECLS

}  // namespace bracketlab::kernels
