#include <omp.h>

#include <random>
#include <vector>

#include "doctest.h"

#include "bracketlab/kernels.hpp"

namespace k = bracketlab::kernels;

namespace {

std::vector<double> noise(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

// Sizes straddling the reduction block so the blocked sums are exercised.
constexpr std::size_t kSizes[] = {1, 7, k::kReductionBlock, 3 * k::kReductionBlock + 5};

}  // namespace

TEST_CASE("omp pointwise kernels match the serial reference bitwise") {
  for (std::size_t n : kSizes) {
    const auto a = noise(n, 1), b = noise(n, 2), c = noise(n, 3);
    auto y1 = c, y2 = c;
    k::serial::axpy(0.3, a, y1);
    k::omp::axpy(0.3, a, y2);
    CHECK(y1 == y2);

    k::serial::scale(-1.7, y1);
    k::omp::scale(-1.7, y2);
    CHECK(y1 == y2);

    std::vector<double> o1(n), o2(n);
    k::serial::multiply(a, b, o1);
    k::omp::multiply(a, b, o2);
    CHECK(o1 == o2);

    k::serial::multiply_add(0.5, a, b, o1);
    k::omp::multiply_add(0.5, a, b, o2);
    CHECK(o1 == o2);

    auto denom = b;
    for (double& x : denom) x += 3.0;
    k::serial::divide(a, denom, o1);
    k::omp::divide(a, denom, o2);
    CHECK(o1 == o2);
  }
}

TEST_CASE("cross product kernels agree and are antisymmetric") {
  const std::size_t n = 5000;
  std::vector<std::vector<double>> a, b;
  for (unsigned i = 0; i < 3; ++i) {
    a.push_back(noise(n, 10 + i));
    b.push_back(noise(n, 20 + i));
  }
  std::vector<std::vector<double>> s(3, std::vector<double>(n)), o(3, std::vector<double>(n)),
      r(3, std::vector<double>(n));
  k::serial::cross(a[0], a[1], a[2], b[0], b[1], b[2], s[0], s[1], s[2]);
  k::omp::cross(a[0], a[1], a[2], b[0], b[1], b[2], o[0], o[1], o[2]);
  k::omp::cross(b[0], b[1], b[2], a[0], a[1], a[2], r[0], r[1], r[2]);
  for (int c = 0; c < 3; ++c) {
    CHECK(s[c] == o[c]);
    for (std::size_t i = 0; i < n; ++i) REQUIRE(r[c][i] == -o[c][i]);
  }
}

TEST_CASE("blocked reductions agree with the serial sums and ignore the thread count") {
  const int threads = omp_get_max_threads();
  for (std::size_t n : kSizes) {
    const auto a = noise(n, 4), b = noise(n, 5);
    CHECK(k::omp::sum(a) == doctest::Approx(k::serial::sum(a)).epsilon(1e-13));
    CHECK(k::omp::dot(a, b) == doctest::Approx(k::serial::dot(a, b)).epsilon(1e-13));
    CHECK(k::serial::max_abs(a) == k::omp::max_abs(a));
    omp_set_num_threads(1);
    const double s1 = k::omp::sum(a), d1 = k::omp::dot(a, b);
    omp_set_num_threads(4);
    CHECK(k::omp::sum(a) == s1);
    CHECK(k::omp::dot(a, b) == d1);
    omp_set_num_threads(threads);
  }
  std::vector<double> ones(10000, 1.0);
  CHECK(k::omp::sum(ones) == 10000.0);
}

TEST_CASE("velocity moment, lift and profile scaling agree") {
  const std::size_t nx = 37, nv = 64;
  const auto phase = noise(nx * nv, 6), weight = noise(nv, 7), spatial = noise(nx, 8);
  std::vector<double> m1(nx), m2(nx);
  k::serial::velocity_moment(phase, weight, nx, nv, m1);
  k::omp::velocity_moment(phase, weight, nx, nv, m2);
  CHECK(m1 == m2);

  std::vector<double> l1(nx * nv), l2(nx * nv);
  k::serial::lift(spatial, nx, nv, l1);
  k::omp::lift(spatial, nx, nv, l2);
  CHECK(l1 == l2);
  CHECK(l2[5 * nv + 3] == spatial[5]);

  std::vector<double> p1(nx * nv), p2(nx * nv);
  k::serial::scale_by_profile(phase, weight, nx, nv, p1);
  k::omp::scale_by_profile(phase, weight, nx, nv, p2);
  CHECK(p1 == p2);
  CHECK(p2[2 * nv + 9] == phase[2 * nv + 9] * weight[9]);
}

TEST_CASE("complex multiply by a real multiplier") {
  const std::size_t n = 3001;
  const auto re = noise(n, 9), im = noise(n, 10), m = noise(n, 11);
  std::vector<k::complex> z1(n), z2(n);
  for (std::size_t i = 0; i < n; ++i) z1[i] = z2[i] = {re[i], im[i]};
  k::serial::complex_multiply(z1, m);
  k::omp::complex_multiply(z2, m);
  CHECK(z1 == z2);
  CHECK(z2[17] == k::complex(re[17] * m[17], im[17] * m[17]));
}
