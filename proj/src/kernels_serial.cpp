#include "bracketlab/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace bracketlab::kernels::serial {

void axpy(double a, cspan x, mspan y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

void scale(double a, mspan x) {
  for (auto& v : x) v *= a;
}

void multiply(cspan a, cspan b, mspan out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
}

void multiply_add(double alpha, cspan a, cspan b, mspan out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += alpha * a[i] * b[i];
}

void divide(cspan a, cspan b, mspan out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] / b[i];
}

void cross(cspan a0, cspan a1, cspan a2, cspan b0, cspan b1, cspan b2, mspan o0, mspan o1,
           mspan o2) {
  for (std::size_t i = 0; i < o0.size(); ++i) {
    const double x = a1[i] * b2[i] - a2[i] * b1[i];
    const double y = a2[i] * b0[i] - a0[i] * b2[i];
    const double z = a0[i] * b1[i] - a1[i] * b0[i];
    o0[i] = x;
    o1[i] = y;
    o2[i] = z;
  }
}

double sum(cspan x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s;
}

double dot(cspan a, cspan b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_abs(cspan x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

void velocity_moment(cspan phase, cspan weight, std::size_t nx, std::size_t nv, mspan out) {
  for (std::size_t x = 0; x < nx; ++x) {
    double s = 0.0;
    const double* row = phase.data() + x * nv;
    if (weight.empty())
      for (std::size_t v = 0; v < nv; ++v) s += row[v];
    else
      for (std::size_t v = 0; v < nv; ++v) s += weight[v] * row[v];
    out[x] = s;
  }
}

void lift(cspan spatial, std::size_t nx, std::size_t nv, mspan phase) {
  for (std::size_t x = 0; x < nx; ++x)
    std::fill_n(phase.data() + x * nv, nv, spatial[x]);
}

void scale_by_profile(cspan phase, cspan profile, std::size_t nx, std::size_t nv, mspan out) {
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t v = 0; v < nv; ++v) out[x * nv + v] = phase[x * nv + v] * profile[v];
}

void complex_multiply(std::span<complex> z, cspan m) {
  for (std::size_t i = 0; i < z.size(); ++i) z[i] *= m[i];
}

}  // namespace bracketlab::kernels::serial
