#include <cmath>

#include "doctest.h"

#include "bracketlab/calculus.hpp"
#include "bracketlab/checks.hpp"
#include "bracketlab/harness.hpp"
#include "bracketlab/kernels.hpp"

using namespace bracketlab;
namespace c = calculus;

TEST_CASE("vorticity: tainted Jacobi needs div omega = 0, the corrected bracket does not") {
  const SystemSpec S = vorticity_system(Grid::cube(3, 16));
  State raw = S.random_state_for(5);
  State sol = raw;
  sol[0] = c::solenoidal_part(raw[0]);
  REQUIRE(norm(c::div(raw[0])) > 0.1 * norm(raw));

  const auto tainted_raw = checks::jacobi_batch(S, S.brackets.at("tainted"), raw, 8, 0);
  CHECK(checks::max_of(tainted_raw) > 1e-4);
  CHECK(checks::max_of(checks::jacobi_batch(S, S.brackets.at("tainted"), sol, 8, 0)) <= 1e-9);
  CHECK(checks::max_of(checks::jacobi_batch(S, S.brackets.at("corrected"), raw, 8, 0)) <= 1e-9);

  const auto probes = checks::cotangents(S, 10, 7);
  CHECK(checks::max_antisymmetry(S.brackets.at("tainted"), raw, probes) <= 1e-12);
  CHECK(checks::max_antisymmetry(S.brackets.at("corrected"), raw, probes) <= 1e-12);
}

TEST_CASE("vorticity: div omega is a Casimir of both brackets") {
  const SystemSpec S = vorticity_system(Grid::cube(3, 16));
  const State chi = S.random_state_for(9);
  // C = <w, div omega> has kernel -grad w
  Cotangent k = chi.zeros_like();
  k[0] = -1.0 * c::grad(random_field(S.grid, Support::spatial, 1, {3, 3, false, 1.0}));
  const Functional C = Functional::linear(k);
  CHECK(checks::casimir_batch(S, S.brackets.at("corrected"), C, chi, 5, 11) <= 1e-9);
  // J a is a curl for either bracket, so div omega never moves
  CHECK(checks::casimir_batch(S, S.brackets.at("tainted"), C, chi, 5, 11) <= 1e-9);
}

TEST_CASE("state gradients match finite differences") {
  const SystemSpec S = compressible_mhd_system(Grid::cube(3, 16));
  const State chi = S.random_state_for(1);
  const Cotangent a = S.random_cotangent(2), b = S.random_cotangent(3);
  const State d = S.random_state_for(4) - chi;
  for (const auto& [name, J] : S.brackets) {
    CAPTURE(name);
    const double r = state_gradient_residual(J, chi, a, b, d, 1e-4);
    CHECK(r / (norm(a) * norm(b) * norm(d)) < 1e-6);
  }
}

// Ideal MHD written out directly:
//   rho_t = -div(rho v), v_t = -(v.grad)v - grad(p)/rho + (curl B x B)/rho,
//   B_t = curl(v x B), s_t = -v.grad s, p = (gamma - 1) kappa rho^gamma exp(s / c_v).
TEST_CASE("the MHD bracket reproduces the ideal MHD equations") {
  const MhdParams p;
  const SystemSpec S = compressible_mhd_system(Grid::cube(3, 16), p);
  const State chi = S.sample_state(21);
  const Field& rho = chi[0];
  const Field& v = chi[1];
  const Field& B = chi[2];
  const Field& s = chi[3];
  const Field inv = c::quotient(c::constant_field(S.grid, Support::spatial, 1, 1.0), rho);

  Field pressure = rho;
  for (std::size_t i = 0; i < pressure.points(); ++i)
    pressure.values()[i] = (p.gamma - 1.0) * p.kappa * std::pow(rho.values()[i], p.gamma) *
                           std::exp(s.values()[i] / p.c_v);

  State expected = chi.zeros_like();
  expected[0] = -1.0 * c::div(c::times(rho, v));
  Field advect(S.grid, Support::spatial, 3);
  for (int j = 0; j < 3; ++j) {
    const Field vj = c::component(v, j);
    for (int i = 0; i < 3; ++i) {
      const Field term = c::times(vj, c::partial(c::component(v, i), j));
      kernels::omp::axpy(1.0, term.values(), advect.component(i));
    }
  }
  Field vt = -1.0 * advect;
  vt -= c::times(inv, c::grad(pressure));
  vt += c::times(inv, c::cross(c::curl(B), B));
  expected[1] = vt;
  expected[2] = c::curl(c::cross(v, B));
  expected[3] = -1.0 * c::dot(v, c::grad(s));

  CHECK(checks::relative_difference(rhs(S, "tainted", chi), expected) <= 1e-7);

  // the projected bracket sees only the solenoidal part of B
  State sol = chi;
  sol[2] = c::solenoidal_part(B);
  State expected_sol = expected;
  expected_sol[1] = -1.0 * advect - c::times(inv, c::grad(pressure)) +
                    c::times(inv, c::cross(c::curl(sol[2]), sol[2]));
  expected_sol[2] = c::curl(c::cross(v, sol[2]));
  CHECK(checks::relative_difference(rhs(S, "projected", sol), expected_sol) <= 1e-7);
}

TEST_CASE("Vlasov-Maxwell brackets are antisymmetric on a small grid") {
  const SystemSpec S = vlasov_maxwell_system(Grid::phase(3, 4, kTwoPi, 3, 4, 2.0));
  const State chi = S.random_state_for(3);
  const auto probes = checks::cotangents(S, 6, 4);
  for (const auto& [name, J] : S.brackets) {
    CAPTURE(name);
    CHECK(checks::max_antisymmetry(J, chi, probes) <= 1e-12);
  }
}
