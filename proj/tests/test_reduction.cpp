#include <cmath>

#include "doctest.h"

#include "dense_oracle.hpp"

#include "bracketlab/calculus.hpp"
#include "bracketlab/checks.hpp"
#include "bracketlab/harness.hpp"

using namespace bracketlab;
namespace c = calculus;

TEST_CASE("toy operators match their dense SVD counterparts") {
  for (const auto& [name, diff] : oracle::toy_equivalence(3, 16)) {
    CAPTURE(name);
    CHECK(diff <= 1e-10);
  }
  // a different constraint matrix and size
  for (const auto& [name, diff] : oracle::toy_equivalence(11, 8)) {
    CAPTURE(name);
    CHECK(diff <= 1e-10);
  }
}

TEST_CASE("dense oracle sanity") {
  const auto d = oracle::dense_toy(3, 16);
  const Eigen::MatrixXd D = oracle::derivative_matrix(16);
  CHECK((D + D.transpose()).norm() < 1e-12);
  CHECK((d.J + d.J.transpose()).norm() < 1e-12);
  CHECK((d.P_star * d.P_star - d.P_star).norm() < 1e-10 * d.P_star.norm());
  CHECK((d.P_star * d.Qt).norm() < 1e-10);
  CHECK((d.Q * d.J_star).norm() < 1e-10 * d.J.norm());
  CHECK((d.P_perp * d.P_star - d.P_perp).norm() < 1e-10);
}

TEST_CASE("toy projector identities") {
  const SystemSpec S = toy_system(3, 16);
  const AOperator& A = S.reductions.at("dirac");
  const ConstraintSet& Q = A.constraint;
  const State chi(S.grid, S.schema);
  const Projector Ps = dirac_projector(A, chi);
  const Projector Pp = orthogonal_projector(Q, chi);
  const auto probes = checks::cotangents(S, 10, 1);
  const auto g = checks::constraint_samples(Q, S.grid, 10, 2);
  const ProjectorResiduals r = projector_residuals(Ps, &Pp, Q, chi, probes, g);
  CHECK(r.max() <= 1e-9);
  const ProjectorResiduals rp = projector_residuals(Pp, nullptr, Q, chi, probes, g);
  CHECK(rp.perp_after == -1.0);
  CHECK(rp.max() <= 1e-9);
  const auto id = checks::dirac_identities(A, chi, probes);
  CHECK(id.max() <= 1e-9);
}

TEST_CASE("incompressible MHD: generic and closed-form projectors") {
  const SystemSpec S = incompressible_mhd_reduction(Grid::cube(3, 16));
  const AOperator& A = S.reductions.at("dirac");
  const State chi = S.random_state_for(42);
  const Projector P = dirac_projector(A, chi);
  const auto& cf = S.closed_forms;
  const auto probes = checks::cotangents(S, 3, 5);
  for (const auto& a : probes) {
    const Cotangent generic = P.apply(a);
    CHECK(checks::relative_difference(generic, cf.cotangent_maps.at("P_star")(chi, a)) <= 1e-9);
    // the sign-flipped first slot differs ...
    const Cotangent flipped = cf.cotangent_maps.at("P_star_flipped")(chi, a);
    CHECK(checks::relative_difference(flipped, generic) > 1e-3);
    // ... but is invisible to the reduced bracket
    for (const auto& b : probes) {
      const double want = cf.brackets.at("dirac")(chi, a, b);
      const Cotangent pb = cf.cotangent_maps.at("P_star_flipped")(chi, b);
      const double got = pairing(flipped, apply_J(A.J, chi, pb));
      CHECK(std::abs(got - want) <= 1e-9 * norm(a) * norm(b) * state_scale(chi));
    }
  }
}

TEST_CASE("singular directions raise SolveFailure") {
  const SystemSpec S = incompressible_mhd_reduction(Grid::cube(3, 8));
  const AOperator& A = S.reductions.at("dirac");
  const State chi = S.random_state_for(1);
  // a constant density constraint is outside the range of A
  State w = A.constraint.zero_constraint(S.grid);
  for (double& x : w[0].values()) x = 1.0;
  CHECK_THROWS_AS(a_solve(A, chi, w), SolveFailure);
}

TEST_CASE("quasineutrality offers no orthogonal projector") {
  SuiteConfig cfg;
  cfg.system = "quasineutral";
  const SystemSpec S = make_system(cfg);
  const State chi(S.grid, S.schema);
  CHECK_THROWS_AS(orthogonal_projector(S.constraints.at("quasineutrality"), chi), ProjectorUnavailable);
  // the Dirac projector is fine
  const Projector P = dirac_projector(S.reductions.at("dirac"), chi);
  const auto a = checks::cotangents(S, 2, 3);
  CHECK(checks::relative_difference(P.apply(P.apply(a[0])), P.apply(a[0])) <= 1e-9);
}

TEST_CASE("custom and projected operators") {
  const SystemSpec S = vorticity_system(Grid::cube(3, 8));
  const Projector P = custom_projector(
      "solenoidal",
      [](const Cotangent& a) {
        Cotangent p = a;
        p[0] = c::solenoidal_part(a[0]);
        return p;
      },
      [](const Tangent& u) {
        Tangent p = u;
        p[0] = c::solenoidal_part(u[0]);
        return p;
      });
  CHECK(P.kind == ProjectorKind::custom);
  const BracketOperator J = projected_operator(S.brackets.at("tainted"), P);
  const State chi = S.random_state_for(2);
  const auto probes = checks::cotangents(S, 4, 3);
  CHECK(checks::max_antisymmetry(J, chi, probes) <= 1e-12);
  const Functional F = Functional::linear(probes[0]), G = Functional::linear(probes[1]);
  CHECK(projected_bracket(S.brackets.at("tainted"), P, F, G, chi) ==
        doctest::Approx(bracket(J, probes[0], probes[1], chi)).epsilon(1e-12));
}
