#include <cmath>
#include <stdexcept>

#include "bracketlab/calculus.hpp"
#include "bracketlab/systems.hpp"

namespace bracketlab {

namespace c = calculus;

namespace {

enum Slot { F = 0, E = 1, B = 2 };

// Constraint order follows the state: (B - B0, curl E).
const Schema kConstraintSchema{{"B_minus_B0", Support::spatial, 3},
                               {"curl_E", Support::spatial, 3}};

State constraint_state(const GridPtr& grid, Field a, Field b) {
  State w(grid, kConstraintSchema);
  w[0] = std::move(a);
  w[1] = std::move(b);
  return w;
}

// B0 = amp (sin z, sin x, sin y)
Field background_field(const GridPtr& grid, double amp) {
  Field b0(grid, Support::spatial, 3);
  const int nx = grid->points(0), ny = grid->points(1), nz = grid->points(2);
  auto bx = b0.component(0), by = b0.component(1), bz = b0.component(2);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      for (int k = 0; k < nz; ++k) {
        const std::size_t n = (static_cast<std::size_t>(i) * ny + j) * nz + k;
        bx[n] = amp * std::sin(grid->coordinate(2, k));
        by[n] = amp * std::sin(grid->coordinate(0, i));
        bz[n] = amp * std::sin(grid->coordinate(1, j));
      }
  return b0;
}

// [g, h] = grad g . dv h - dv g . grad h + B~ . (dv g x dv h), B~ phase-lifted
Field small_bracket(const Field& g, const Field& h, const Field& Bt) {
  const Field dvg = c::velocity_grad(g);
  const Field dvh = c::velocity_grad(h);
  Field out = c::dot(c::grad(g), dvh);
  out -= c::dot(dvg, c::grad(h));
  out += c::dot(Bt, c::cross(dvg, dvh));
  return out;
}

}  // namespace

SystemSpec vlasov_poisson_reduction(GridPtr grid, const VlasovPoissonParams& params) {
  SystemSpec S = vlasov_maxwell_system(grid);
  S.name = "vlasov_poisson";
  S.description = "Dirac reduction of Vlasov-Maxwell by (B - B0, curl E)";
  S.parameters["b0_amplitude"] = params.b0_amplitude;
  const Field b0 = background_field(grid, params.b0_amplitude);

  ConstraintSet Q;
  Q.name = "poisson";
  Q.locality = Locality::local;
  Q.state_schema = vm::schema();
  Q.constraint_schema = kConstraintSchema;
  Q.linear = true;
  Q.q_apply = [grid, b0](const State& chi) {
    return constraint_state(grid, chi[B] - b0, c::curl(chi[E]));
  };
  Q.frechet_apply = [grid](const State&, const Tangent& u) {
    return constraint_state(grid, u[B], c::curl(u[E]));
  };
  Q.frechet_adjoint = [grid](const State&, const State& w) {
    Cotangent a(grid, vm::schema());
    a[E] = c::curl(w[1]);
    a[B] = w[0];
    return a;
  };
  S.constraints.emplace(Q.name, Q);

  // A = [[0, -curl^2], [curl^2, 0]] is singular; only A^{-1} Q^ is needed.
  AOperator A;
  A.constraint = Q;
  A.J = S.brackets.at("projected");
  A.inverse_q = [grid](const State&, const Tangent& u) {
    return constraint_state(grid, -1.0 * c::inv_lap(c::curl(u[E])),
                            c::inv_lap(c::solenoidal_part(u[B])));
  };
  S.reductions.emplace("dirac", A);
  S.default_bracket = "dirac";

  auto& cf = S.closed_forms;
  cf.constraint_maps["A"] = [grid](const State&, const State& w) {
    return constraint_state(grid, -1.0 * c::curl(c::curl(w[1])), c::curl(c::curl(w[0])));
  };
  cf.cotangent_maps["A_inverse_Q"] = A.inverse_q;
  cf.cotangent_maps["P_perp"] = [](const State&, const Cotangent& a) {
    Cotangent p = a;
    p[E] = c::compressible_part(a[E]);
    p[B].set_zero();
    return p;
  };
  cf.cotangent_maps["P_star"] = [](const State& chi, const Cotangent& a) {
    Cotangent p = a;
    p[E] = c::compressible_part(a[E]);
    p[B] = c::compressible_part(a[B]);
    p[B] -= c::inv_lap(c::curl(c::velocity_integral(c::times(chi[F], c::velocity_grad(a[F])))));
    return p;
  };
  // J* a = (-[f, a_f] - dv f . grad inv_lap div a_E, -grad inv_lap div int f dv a_f, 0)
  cf.cotangent_maps["J_star"] = [grid](const State& chi, const Cotangent& a) {
    const Field& f = chi[F];
    const Field Bt = c::lift(c::solenoidal_part(chi[B]));
    Tangent out(grid, vm::schema());
    out[F] = -1.0 * small_bracket(f, a[F], Bt);
    out[F] -= c::dot(c::velocity_grad(f), c::lift(c::compressible_part(a[E])));
    out[E] = -1.0 * c::compressible_part(c::velocity_integral(c::times(f, c::velocity_grad(a[F]))));
    return out;
  };
  // int f [a_f - phi_a, b_f - phi_b], phi = inv_lap div a_E
  cf.brackets["dirac"] = [](const State& chi, const Cotangent& a, const Cotangent& b) {
    const Field Bt = c::lift(c::solenoidal_part(chi[B]));
    const Field ga = a[F] - c::lift(c::inv_lap(c::div(a[E])));
    const Field gb = b[F] - c::lift(c::inv_lap(c::div(b[E])));
    return integrate(c::times(chi[F], small_bracket(ga, gb, Bt)));
  };
  return S;
}

}  // namespace bracketlab
