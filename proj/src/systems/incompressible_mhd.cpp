#include <stdexcept>

#include "bracketlab/calculus.hpp"
#include "bracketlab/systems.hpp"

namespace bracketlab {

namespace c = calculus;

namespace {

enum Slot { RHO = 0, V = 1, B = 2, S = 3 };

const Schema kConstraintSchema{{"rho_minus_rho0", Support::spatial, 1},
                               {"div_v", Support::spatial, 1}};

State constraint_state(const GridPtr& grid, Field a, Field b) {
  State w(grid, kConstraintSchema);
  w[0] = std::move(a);
  w[1] = std::move(b);
  return w;
}

Field reciprocal(const Field& rho) {
  return c::quotient(c::constant_field(rho.grid(), Support::spatial, 1, 1.0), rho);
}

// M z = div((curl v x grad z) / rho)
Field vortical_block(const State& chi, const Field& z) {
  return c::div(c::times(reciprocal(chi[RHO]), c::cross(c::curl(chi[V]), c::grad(z))));
}

ConstraintSet incompressibility(GridPtr grid, double rho0) {
  ConstraintSet Q;
  Q.name = "incompressibility";
  Q.locality = Locality::local;
  Q.state_schema = mhd::schema();
  Q.constraint_schema = kConstraintSchema;
  Q.linear = true;
  Q.q_apply = [grid, rho0](const State& chi) {
    Field r = chi[RHO];
    for (double& x : r.values()) x -= rho0;
    return constraint_state(grid, std::move(r), c::div(chi[V]));
  };
  Q.frechet_apply = [grid](const State&, const Tangent& u) {
    return constraint_state(grid, u[RHO], c::div(u[V]));
  };
  Q.frechet_adjoint = [grid](const State&, const State& w) {
    Cotangent a(grid, mhd::schema());
    a[RHO] = w[0];
    a[V] = -1.0 * c::grad(w[1]);
    return a;
  };
  return Q;
}

}  // namespace

SystemSpec incompressible_mhd_reduction(GridPtr grid, const MhdParams& params) {
  if (!(params.rho0 > 0.0)) throw std::invalid_argument("incompressible MHD: rho0 must be positive");
  SystemSpec sys = compressible_mhd_system(grid, params);
  sys.name = "incompressible_mhd";
  sys.description = "Dirac reduction of compressible MHD by (rho - rho0, div v)";
  sys.parameters["rho0"] = params.rho0;
  sys.casimirs.clear();
  // rho = rho0 and a solenoidal velocity
  sys.admissible_state = [sampler = sys.sample_state, rho0 = params.rho0](std::uint64_t seed) {
    State chi = sampler(seed);
    for (double& x : chi[RHO].values()) x = rho0;
    chi[V] = c::solenoidal_part(chi[V]);
    return chi;
  };

  const ConstraintSet Q = incompressibility(grid, params.rho0);
  sys.constraints.emplace(Q.name, Q);

  AOperator A;
  A.constraint = Q;
  A.J = sys.brackets.at("projected");
  // A = [[0, lap], [-lap, M]]; [[0, -inv_lap], [inv_lap, 0]] makes A M unipotent.
  A.preconditioner = [grid](const State&, const State& w) {
    return constraint_state(grid, -1.0 * c::inv_lap(w[1]), c::inv_lap(w[0]));
  };
  A.closed_form_inverse = [grid](const State& chi, const State& y) {
    const Field z2 = c::inv_lap(y[0]);
    Field z1 = c::inv_lap(vortical_block(chi, z2));
    z1 -= c::inv_lap(y[1]);
    return constraint_state(grid, std::move(z1), z2);
  };
  sys.reductions.emplace("dirac", A);
  sys.default_bracket = "dirac";

  auto& cf = sys.closed_forms;
  cf.constraint_maps["A"] = [grid](const State& chi, const State& w) {
    Field second = -1.0 * c::lap(w[0]);
    second += vortical_block(chi, w[1]);
    return constraint_state(grid, c::lap(w[1]), std::move(second));
  };
  cf.constraint_maps["A_inverse"] = A.closed_form_inverse;
  cf.cotangent_maps["P_perp"] = [](const State&, const Cotangent& a) {
    Cotangent p = a;
    p[RHO].set_zero();
    p[V] = c::solenoidal_part(a[V]);
    return p;
  };
  // First slot of P*: the unique F* with Q^ J P* = 0 (plus the mean of F_rho),
  // F* = inv_lap div((Fbar_v x curl v - Bbar x curl F_B + F_s grad s) / rho).
  // P_star_flipped flips the vorticity and entropy terms; J* = P^+ J P does
  // not see the first slot, so both give the same reduced bracket.
  auto first_slot = [](const State& chi, const Cotangent& a, double sw, double ss) {
    const Field inv = reciprocal(chi[RHO]);
    Field inner = sw * c::cross(c::curl(chi[V]), c::solenoidal_part(a[V]));
    inner -= c::cross(c::solenoidal_part(chi[B]), c::curl(a[B]));
    inner.axpy(-ss, c::times(a[S], c::grad(chi[S])));
    return c::inv_lap(c::div(c::times(inv, inner)));
  };
  cf.cotangent_maps["P_star"] = [first_slot](const State& chi, const Cotangent& a) {
    Cotangent p = a;
    p[RHO] = first_slot(chi, a, -1.0, -1.0);
    p[RHO] += a[RHO] - c::remove_mean(a[RHO]);
    p[V] = c::solenoidal_part(a[V]);
    return p;
  };
  cf.cotangent_maps["P_star_flipped"] = [first_slot](const State& chi, const Cotangent& a) {
    Cotangent p = a;
    p[RHO] = first_slot(chi, a, 1.0, 1.0);
    p[V] = c::solenoidal_part(a[V]);
    return p;
  };
  cf.brackets["dirac"] = [](const State& chi, const Cotangent& a, const Cotangent& b) {
    const Field inv = reciprocal(chi[RHO]);
    const Field Fv = c::solenoidal_part(a[V]);
    const Field Gv = c::solenoidal_part(b[V]);
    const Field Bbar = c::solenoidal_part(chi[B]);
    Field density = c::dot(c::curl(chi[V]), c::cross(Fv, Gv));
    Field flux = c::times(a[S], Gv);
    flux -= c::times(b[S], Fv);
    density -= c::dot(c::grad(chi[S]), flux);
    Field mag = c::cross(Fv, c::curl(b[B]));
    mag += c::cross(c::curl(a[B]), Gv);
    density += c::dot(Bbar, mag);
    return integrate(c::times(inv, density));
  };
  return sys;
}

}  // namespace bracketlab
