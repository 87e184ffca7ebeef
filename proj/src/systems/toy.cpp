#include <cmath>
#include <random>
#include <stdexcept>

#include "bracketlab/calculus.hpp"
#include "bracketlab/systems.hpp"

namespace bracketlab {

namespace c = calculus;

namespace {

const Schema kSchema{{"u1", Support::spatial, 1}, {"u2", Support::spatial, 1}};
const Schema kConstraintSchema{{"c", Support::spatial, 1}};

}  // namespace

namespace toy {

std::vector<double> constraint_matrix(std::uint64_t seed, int points) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(points)));
  std::vector<double> R(static_cast<std::size_t>(points) * 2 * points);
  for (double& r : R) r = normal(rng);
  return R;
}

}  // namespace toy

// u = (u1, u2) on a periodic line, J = [[d/dx, 1], [-1, d/dx]], c = R1 u1 + R2 u2.
SystemSpec toy_system(std::uint64_t seed, int points) {
  if (points < 4 || points % 2) throw std::invalid_argument("toy system: even point count >= 4 expected");
  const GridPtr grid = Grid::cube(1, points);
  const auto R = toy::constraint_matrix(seed, points);
  const auto n = static_cast<std::size_t>(points);

  SystemSpec S;
  S.name = "toy";
  S.description = "two-field line system with one dense random linear constraint";
  S.grid = grid;
  S.schema = kSchema;
  S.parameters["seed"] = static_cast<double>(seed);
  S.parameters["points"] = points;

  BracketOperator J;
  J.name = "canonical";
  J.description = "[[d/dx, 1], [-1, d/dx]]";
  J.schema = kSchema;
  J.affine_in_state = true;
  J.apply = [grid](const State&, const Cotangent& a) {
    Tangent out(grid, kSchema);
    out[0] = c::partial(a[0], 0) + a[1];
    out[1] = c::partial(a[1], 0) - a[0];
    return out;
  };
  J.state_gradient = [grid](const State&, const Cotangent&, const Cotangent&) {
    return Cotangent(grid, kSchema);
  };
  S.brackets.emplace(J.name, J);

  ConstraintSet Q;
  Q.name = "dense";
  Q.state_schema = kSchema;
  Q.constraint_schema = kConstraintSchema;
  Q.linear = true;
  auto q_lin = [grid, R, n](const State& u) {
    State w(grid, kConstraintSchema);
    auto out = w[0].values();
    const auto u1 = u[0].values(), u2 = u[1].values();
    for (std::size_t i = 0; i < n; ++i) {
      const double* row = &R[i * 2 * n];
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += row[j] * u1[j] + row[n + j] * u2[j];
      out[i] = s;
    }
    return w;
  };
  Q.q_apply = q_lin;
  Q.frechet_apply = [q_lin](const State&, const Tangent& u) { return q_lin(u); };
  Q.frechet_adjoint = [grid, R, n](const State&, const State& w) {
    Cotangent a(grid, kSchema);
    auto a1 = a[0].values(), a2 = a[1].values();
    const auto wv = w[0].values();
    for (std::size_t i = 0; i < n; ++i) {
      const double* row = &R[i * 2 * n];
      for (std::size_t j = 0; j < n; ++j) {
        a1[j] += row[j] * wv[i];
        a2[j] += row[n + j] * wv[i];
      }
    }
    return a;
  };
  S.constraints.emplace(Q.name, Q);

  AOperator A;
  A.constraint = Q;
  A.J = J;
  S.reductions.emplace("dirac", A);
  S.default_bracket = "dirac";

  S.hamiltonian = Functional::quadratic([](const State& chi) { return chi; });
  S.state_probe = {1, points / 2 - 1, false, 1.0};
  S.cotangent_probe = {1, points / 2 - 1, false, 1.0};
  return S;
}

}  // namespace bracketlab
