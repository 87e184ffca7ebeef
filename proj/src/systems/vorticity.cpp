#include <stdexcept>

#include "bracketlab/calculus.hpp"
#include "bracketlab/systems.hpp"

namespace bracketlab {

namespace c = calculus;

namespace {

const Schema kSchema{{"omega", Support::spatial, 3}};

State wrap(const GridPtr& grid, Field f) {
  State s(grid, kSchema);
  s[0] = std::move(f);
  return s;
}

// J(omega) a = curl((curl a) x omega~), omega~ = omega or its solenoidal part.
BracketOperator vorticity_bracket(bool corrected) {
  BracketOperator J;
  J.name = corrected ? "corrected" : "tainted";
  J.description = corrected ? "vorticity bracket with the solenoidal part of omega"
                            : "vorticity bracket (Jacobi only when div omega = 0)";
  J.schema = kSchema;
  J.affine_in_state = true;
  auto effective = [corrected](const Field& w) { return corrected ? c::solenoidal_part(w) : w; };
  J.apply = [effective](const State& chi, const Cotangent& a) {
    const Field w = effective(chi[0]);
    return wrap(chi.grid(), c::curl(c::cross(c::curl(a[0]), w)));
  };
  J.state_gradient = [corrected](const State& chi, const Cotangent& a, const Cotangent& b) {
    Field g = c::cross(c::curl(a[0]), c::curl(b[0]));
    return wrap(chi.grid(), corrected ? c::solenoidal_part(g) : g);
  };
  return J;
}

}  // namespace

SystemSpec vorticity_system(GridPtr grid) {
  if (grid->spatial_dims() != 3 || grid->velocity_dims() != 0)
    throw std::invalid_argument("vorticity system needs a 3-D spatial grid");
  SystemSpec S;
  S.name = "vorticity";
  S.description = "3-D Euler vorticity with tainted and corrected brackets";
  S.grid = grid;
  S.schema = kSchema;
  S.brackets.emplace("tainted", vorticity_bracket(false));
  S.brackets.emplace("corrected", vorticity_bracket(true));
  S.default_bracket = "corrected";
  // H = 1/2 |v|^2 with v = -curl inv_lap omega, i.e. K = inv_lap curl curl inv_lap.
  S.hamiltonian = Functional::quadratic([grid](const State& chi) {
    return wrap(grid, c::inv_lap(c::curl(c::curl(c::inv_lap(chi[0])))));
  });
  S.admissible_state = [grid](std::uint64_t seed) {
    State chi = random_state(kSchema, grid, {seed, 3, true, 1.0});
    chi[0] = c::solenoidal_part(chi[0]);
    return chi;
  };
  S.state_probe = {1, 3, false, 1.0};
  S.cotangent_probe = {1, 3, false, 1.0};
  return S;
}

}  // namespace bracketlab
