#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bracketlab/calculus.hpp"
#include "bracketlab/systems.hpp"

namespace bracketlab {

namespace c = calculus;

namespace vm {

namespace {

enum Slot { F = 0, E = 1, B = 2 };

const Schema kGaussSchema{{"div_E_minus_rho", Support::spatial, 1},
                          {"div_B", Support::spatial, 1}};

void require_grid(const Grid& g) {
  if (g.spatial_dims() != 3 || g.velocity_dims() != 3)
    throw std::invalid_argument("Vlasov-Maxwell needs a 3-D x 3-D phase-space grid");
}

bool vanishes(const Field& f) {
  const auto v = f.values();
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

Field parent_op(Parent parent, const Field& s) {
  switch (parent) {
    case Parent::inv_lap:
      return c::inv_lap(s);
    case Parent::inv_sqrt_neg_lap:
      return c::inv_sqrt_neg_lap(s);
    case Parent::none:
      break;
  }
  return Field(s.grid(), Support::spatial, 1);
}

}  // namespace

Schema schema() {
  return {{"f", Support::phase, 1}, {"E", Support::spatial, 3}, {"B", Support::spatial, 3}};
}

// Rows of J(chi) b:
//   f: -div_x(f dv b_f) + div_v(f grad b_f) - div_v(f (dv b_f x B~)) - b_E . dv f
//   E: -int f dv b_f dv + curl b_B + grad(D div b_B)
//   B: -curl b_E - grad(D div b_E)
// D is symmetric for both parent choices.
BracketOperator bracket(GridPtr grid, bool projected, Parent parent) {
  require_grid(*grid);
  BracketOperator J;
  switch (parent) {
    case Parent::none:
      J.name = projected ? "projected" : "tainted";
      break;
    case Parent::inv_lap:
      J.name = "parent_inv_lap";
      break;
    case Parent::inv_sqrt_neg_lap:
      J.name = "parent_inv_sqrt_neg_lap";
      break;
  }
  if (parent != Parent::none && !projected)
    throw std::invalid_argument("parent brackets extend the projected bracket only");
  J.description = parent != Parent::none ? "projected bracket plus constraint D-terms"
                  : projected            ? "bracket with the solenoidal part of B"
                                         : "original bracket (Jacobi only when div B = 0)";
  J.schema = schema();
  J.affine_in_state = true;
  auto effective_B = [projected](const Field& Bf) { return projected ? c::solenoidal_part(Bf) : Bf; };

  J.apply = [grid, parent, effective_B](const State& chi, const Cotangent& b) {
    Tangent out(grid, schema());
    const Field& f = chi[F];
    out[B] = -1.0 * c::curl(b[E]);
    out[E] = c::curl(b[B]);
    if (parent != Parent::none) {
      out[E] += c::grad(parent_op(parent, c::div(b[B])));
      out[B] -= c::grad(parent_op(parent, c::div(b[E])));
    }
    if (vanishes(f)) return out;  // vacuum: every f term drops
    const Field dvb = c::velocity_grad(b[F]);
    const Field f_dvb = c::times(f, dvb);
    Field row = -1.0 * c::div(f_dvb);
    row += c::velocity_div(c::times(f, c::grad(b[F])));
    row -= c::velocity_div(c::times(f, c::cross(dvb, c::lift(effective_B(chi[B])))));
    row -= c::dot(c::lift(b[E]), c::velocity_grad(f));
    out[F] = std::move(row);
    out[E] -= c::velocity_integral(f_dvb);
    return out;
  };

  J.state_gradient = [grid, projected](const State& chi, const Cotangent& a, const Cotangent& b) {
    Cotangent g(grid, schema());
    const Field dva = c::velocity_grad(a[F]);
    const Field dvb = c::velocity_grad(b[F]);
    const Field dva_x_dvb = c::cross(dva, dvb);
    const Field Bt = projected ? c::solenoidal_part(chi[B]) : chi[B];
    Field df = c::dot(c::grad(a[F]), dvb);
    df -= c::dot(dva, c::grad(b[F]));
    df += c::dot(c::lift(Bt), dva_x_dvb);
    df += c::dot(c::lift(b[E]), dva);
    df -= c::dot(c::lift(a[E]), dvb);
    g[F] = std::move(df);
    const Field dB = c::velocity_integral(c::times(chi[F], dva_x_dvb));
    g[B] = projected ? c::solenoidal_part(dB) : dB;
    return g;
  };
  return J;
}

// H = int f v^2/2 + 1/2 int (E^2 + B^2)
Functional hamiltonian(GridPtr grid) {
  require_grid(*grid);
  std::vector<double> kinetic(grid->velocity_size(), 0.0);
  for (int a = 0; a < 3; ++a) {
    const auto va = c::velocity_profile(*grid, a);
    for (std::size_t i = 0; i < kinetic.size(); ++i) kinetic[i] += 0.5 * va[i] * va[i];
  }
  Cotangent linear(grid, schema());
  linear[F] = c::scale_by_profile(c::constant_field(grid, Support::phase, 1, 1.0), kinetic);
  return Functional::quadratic(
      [grid](const State& chi) {
        Cotangent k(grid, schema());
        k[E] = chi[E];
        k[B] = chi[B];
        return k;
      },
      std::move(linear));
}

ConstraintSet gauss_constraints(GridPtr grid) {
  require_grid(*grid);
  ConstraintSet Q;
  Q.name = "gauss";
  Q.locality = Locality::local;
  Q.state_schema = schema();
  Q.constraint_schema = kGaussSchema;
  Q.linear = true;
  auto q_lin = [grid](const State& u) {
    State w(grid, kGaussSchema);
    w[0] = c::div(u[E]) - c::velocity_integral(u[F]);
    w[1] = c::div(u[B]);
    return w;
  };
  Q.q_apply = q_lin;
  Q.frechet_apply = [q_lin](const State&, const Tangent& u) { return q_lin(u); };
  Q.frechet_adjoint = [grid](const State&, const State& w) {
    Cotangent a(grid, schema());
    a[F] = -1.0 * c::lift(w[0]);
    a[E] = -1.0 * c::grad(w[0]);
    a[B] = -1.0 * c::grad(w[1]);
    return a;
  };
  return Q;
}

}  // namespace vm

SystemSpec vlasov_maxwell_system(GridPtr grid) {
  SystemSpec S;
  S.name = "vlasov_maxwell";
  S.description = "Vlasov-Maxwell with tainted, projected and parent brackets";
  S.grid = grid;
  S.schema = vm::schema();
  for (auto [projected, parent] :
       {std::pair{false, vm::Parent::none}, std::pair{true, vm::Parent::none},
        std::pair{true, vm::Parent::inv_lap}, std::pair{true, vm::Parent::inv_sqrt_neg_lap}}) {
    BracketOperator J = vm::bracket(grid, projected, parent);
    S.brackets.emplace(J.name, std::move(J));
  }
  S.default_bracket = "projected";
  S.hamiltonian = vm::hamiltonian(grid);
  const ConstraintSet Q = vm::gauss_constraints(grid);
  S.constraints.emplace(Q.name, Q);
  S.state_probe = {1, 1, false, 1.0};
  S.cotangent_probe = {1, 1, false, 1.0};
  return S;
}

}  // namespace bracketlab
