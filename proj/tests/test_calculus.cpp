#include <cmath>

#include "doctest.h"

#include "bracketlab/calculus.hpp"
#include "bracketlab/spectral.hpp"

using namespace bracketlab;
namespace c = calculus;

namespace {

// sin(a x + b y + cz z + phase) on a 3-D spatial grid
Field plane_wave(const GridPtr& g, int a, int b, int cz, double phase = 0.0) {
  Field f(g, Support::spatial, 1);
  auto v = f.values();
  const int n0 = g->points(0), n1 = g->points(1), n2 = g->points(2);
  for (int i = 0; i < n0; ++i)
    for (int j = 0; j < n1; ++j)
      for (int k = 0; k < n2; ++k)
        v[(static_cast<std::size_t>(i) * n1 + j) * n2 + k] =
            std::sin(a * g->coordinate(0, i) + b * g->coordinate(1, j) + cz * g->coordinate(2, k) + phase);
  return f;
}

double diff(const Field& a, const Field& b) { return norm(a - b); }

Field random_vector(const GridPtr& g, std::uint64_t seed, int band = 3) {
  return random_field(g, Support::spatial, 3, {seed, band, false, 1.0});
}

}  // namespace

TEST_CASE("derivatives of plane waves are exact") {
  const GridPtr g = Grid::cube(3, 8);
  const Field f = plane_wave(g, 1, 2, -3);
  const Field df = plane_wave(g, 1, 2, -3, M_PI / 2);  // cos
  const Field grad = c::grad(f);
  CHECK(diff(c::component(grad, 0), 1.0 * df) < 1e-12);
  CHECK(diff(c::component(grad, 1), 2.0 * df) < 1e-12);
  CHECK(diff(c::component(grad, 2), -3.0 * df) < 1e-12);
  CHECK(diff(c::lap(f), -14.0 * f) < 1e-11);
}

TEST_CASE("the Nyquist bin has zero derivative") {
  CHECK(spectral::derivative_wavenumber(4, 8, kTwoPi) == 0.0);
  CHECK(spectral::derivative_wavenumber(3, 8, kTwoPi) == doctest::Approx(3.0));
  CHECK(spectral::derivative_wavenumber(5, 8, kTwoPi) == doctest::Approx(-3.0));
  CHECK(spectral::signed_index(7, 8) == -1);
  const GridPtr g = Grid::cube(3, 8);
  // cos(4 x) lives entirely on the Nyquist bin along x
  const Field f = plane_wave(g, 4, 0, 0, M_PI / 2);
  CHECK(norm(c::partial(f, 0)) < 1e-12);
}

TEST_CASE("lap equals div grad and vector identities hold exactly") {
  const GridPtr g = Grid::cube(3, 8);
  const Field f = random_field(g, Support::spatial, 1, {5, 3, false, 1.0});
  CHECK(diff(c::lap(f), c::div(c::grad(f))) < 1e-11 * norm(f));
  CHECK(norm(c::curl(c::grad(f))) < 1e-11 * norm(f));
  const Field v = random_vector(g, 6, 3);
  CHECK(norm(c::div(c::curl(v))) < 1e-11 * norm(v));
}

TEST_CASE("pseudo-inverses are Moore-Penrose") {
  const GridPtr g = Grid::cube(3, 8);
  Field f = random_field(g, Support::spatial, 1, {7, 3, false, 1.0});
  const Field mean_free = c::remove_mean(f);
  CHECK(diff(c::lap(c::inv_lap(f)), mean_free) < 1e-12 * norm(f));
  CHECK(std::abs(integrate(c::inv_lap(f))) < 1e-12);
  const Field h = c::inv_sqrt_neg_lap(f);
  CHECK(diff(-1.0 * c::lap(c::inv_sqrt_neg_lap(h)), mean_free) < 1e-11 * norm(f));
  // constants go to zero
  const Field one = c::constant_field(g, Support::spatial, 1, 2.5);
  CHECK(norm(c::inv_lap(one)) == 0.0);
}

TEST_CASE("Helmholtz parts split a vector field") {
  const GridPtr g = Grid::cube(3, 8);
  Field v = random_vector(g, 8);
  for (int k = 0; k < 3; ++k)
    for (double& x : v.component(k)) x += 0.3 * (k + 1);  // nonzero mean
  const Field sol = c::solenoidal_part(v);
  const Field comp = c::compressible_part(v);
  CHECK(diff(sol + comp, v) < 1e-12 * norm(v));
  CHECK(norm(c::div(sol)) < 1e-11 * norm(v));
  CHECK(norm(c::curl(comp)) < 1e-11 * norm(v));
  CHECK(std::abs(pairing(sol, comp)) < 1e-12 * norm(v) * norm(v));
  CHECK(diff(c::solenoidal_part(sol), sol) < 1e-12 * norm(v));
  // the mean stays with the solenoidal part
  for (int k = 0; k < 3; ++k) CHECK(std::abs(integrate(c::component(comp, k))) < 1e-12);
  CHECK(diff(c::grad_star(v), c::grad(c::inv_sqrt_neg_lap(c::div(v)))) < 1e-12 * norm(v));
}

TEST_CASE("every operator in the table has a consistent adjoint") {
  const GridPtr g = Grid::cube(3, 8);
  for (auto op : {c::DiffOp::grad, c::DiffOp::div, c::DiffOp::curl, c::DiffOp::lap, c::DiffOp::inv_lap,
                  c::DiffOp::inv_sqrt_neg_lap, c::DiffOp::grad_star, c::DiffOp::solenoidal_part,
                  c::DiffOp::compressible_part}) {
    CAPTURE(c::to_string(op));
    CHECK(c::diff_op_from_string(c::to_string(op)) == op);
    const auto L = c::linear_map(op);
    const int dc = L.domain_components < 0 ? 3 : L.domain_components;
    const int rc = L.range_components < 0 ? 3 : L.range_components;
    const Field u = random_field(g, Support::spatial, dc, {11, 3, false, 1.0});
    const Field w = random_field(g, Support::spatial, rc, {12, 3, false, 1.0});
    CHECK(c::adjoint_residual(L, u, w) < 1e-13);
  }
  CHECK_THROWS_AS(c::diff_op_from_string("nabla"), std::invalid_argument);
}

TEST_CASE("velocity operators on phase space") {
  const GridPtr g = Grid::phase(1, 8, kTwoPi, 2, 8, 2.0);
  const Field f = random_field(g, Support::phase, 1, {13, 2, false, 1.0});
  const Field vg = c::velocity_grad(f);
  CHECK(vg.components() == 2);
  // the velocity gradient of a function of x alone vanishes
  const Field spatial = random_field(g, Support::spatial, 1, {14, 2, false, 1.0});
  CHECK(norm(c::velocity_grad(c::lift(spatial))) < 1e-13);
  // int dv div_v (.) = 0 on the periodic velocity box
  CHECK(norm(c::velocity_integral(c::velocity_div(vg))) < 1e-12);
  // lift and the velocity integral are adjoint
  const double lhs = pairing(c::lift(spatial), f);
  const double rhs = pairing(spatial, c::velocity_integral(f));
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  // odd moments of an even profile vanish on the cell-centred velocity grid
  const auto v0 = c::velocity_profile(*g, 0);
  const Field even = c::lift(c::constant_field(g, Support::spatial, 1, 1.0));
  CHECK(norm(c::velocity_integral(even, v0)) < 1e-13);
}

TEST_CASE("grid coordinates and volumes") {
  const GridPtr g = Grid::phase(3, 8, kTwoPi, 3, 6, 3.0);
  CHECK(g->phase_size() == 512u * 216u);
  CHECK(g->velocity_max(0) == 3.0);
  CHECK(g->coordinate(3, 0) == doctest::Approx(-2.5));
  CHECK(g->velocity_volume() == doctest::Approx(216.0));
  CHECK(g->spatial_volume() == doctest::Approx(std::pow(kTwoPi, 3)));
  CHECK_THROWS(Grid(1, 0, {2}, {1.0}));
}
