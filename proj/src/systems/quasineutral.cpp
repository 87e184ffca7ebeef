#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bracketlab/calculus.hpp"
#include "bracketlab/systems.hpp"

namespace bracketlab {

namespace c = calculus;

namespace {

enum Slot { ION = 0, ELECTRON = 1 };

const Schema kSchema{{"f_i", Support::phase, 1}, {"f_e", Support::phase, 1}};
const Schema kConstraintSchema{{"charge", Support::spatial, 1},
                               {"div_current", Support::spatial, 1}};

State constraint_state(const GridPtr& grid, Field a, Field b) {
  State w(grid, kConstraintSchema);
  w[0] = std::move(a);
  w[1] = std::move(b);
  return w;
}

double drift(const Maxwellian& m, int axis) {
  return axis < static_cast<int>(m.drift.size()) ? m.drift[axis] : 0.0;
}

// Indicator of the box |v_j| < fraction * v_max on every velocity axis.
std::vector<double> velocity_window(const Grid& g, double fraction) {
  std::vector<double> w(g.velocity_size(), 1.0);
  for (int a = 0; a < g.velocity_dims(); ++a) {
    const double cut = fraction * g.velocity_max(a);
    for (std::size_t i = 0; i < w.size(); ++i)
      if (std::abs(g.velocity_coordinate(a, i)) >= cut) w[i] = 0.0;
  }
  return w;
}

std::vector<double> times_profile(std::vector<double> a, const std::vector<double>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
  return a;
}

double velocity_sum(const Grid& g, const std::vector<double>& p) {
  double s = 0.0;
  for (double x : p) s += x;
  return s * g.velocity_cell_volume();
}

struct Background {
  std::vector<std::vector<double>> grad_i, grad_e;  // dv alpha_s per velocity axis
  double alpha_bar = 0.0;                           // sum of densities
  std::vector<double> v_bar;                        // (beta_i + beta_e) / alpha_bar
};

Background background(const Grid& g, const QuasineutralParams& p) {
  Background bg;
  const auto ai = quasineutral::maxwellian(g, p.ion);
  const auto ae = quasineutral::maxwellian(g, p.electron);
  for (const auto* a : {&ai, &ae}) {
    const double decay = quasineutral::boundary_decay(g, *a);
    if (!(decay < p.decay_guard))
      throw std::invalid_argument("quasineutral: Maxwellian decays only to " + std::to_string(decay) +
                                  " at the velocity boundary (guard " +
                                  std::to_string(p.decay_guard) + ")");
  }
  bg.grad_i = quasineutral::maxwellian_gradient(g, p.ion);
  bg.grad_e = quasineutral::maxwellian_gradient(g, p.electron);
  bg.alpha_bar = velocity_sum(g, ai) + velocity_sum(g, ae);
  for (int a = 0; a < g.velocity_dims(); ++a) {
    const auto v = c::velocity_profile(g, a);
    const double beta = velocity_sum(g, times_profile(ai, v)) + velocity_sum(g, times_profile(ae, v));
    bg.v_bar.push_back(beta / bg.alpha_bar);
  }
  return bg;
}

// dv alpha . grad a
Field advect(const std::vector<std::vector<double>>& dalpha, const Field& a) {
  const Field ga = c::grad(a);
  Field out(a.grid(), Support::phase, 1);
  for (int j = 0; j < static_cast<int>(dalpha.size()); ++j)
    out += c::scale_by_profile(c::component(ga, j), dalpha[j]);
  return out;
}

}  // namespace

namespace quasineutral {

std::vector<double> maxwellian(const Grid& g, const Maxwellian& m) {
  const int dv = g.velocity_dims();
  const double norm = m.density * std::pow(2.0 * std::numbers::pi * m.sigma * m.sigma, -0.5 * dv);
  std::vector<double> out(g.velocity_size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    double r2 = 0.0;
    for (int a = 0; a < dv; ++a) {
      const double d = g.velocity_coordinate(a, i) - drift(m, a);
      r2 += d * d;
    }
    out[i] = norm * std::exp(-0.5 * r2 / (m.sigma * m.sigma));
  }
  return out;
}

std::vector<std::vector<double>> maxwellian_gradient(const Grid& g, const Maxwellian& m) {
  const auto alpha = maxwellian(g, m);
  std::vector<std::vector<double>> out;
  for (int a = 0; a < g.velocity_dims(); ++a) {
    std::vector<double> d(alpha.size());
    for (std::size_t i = 0; i < d.size(); ++i)
      d[i] = -(g.velocity_coordinate(a, i) - drift(m, a)) / (m.sigma * m.sigma) * alpha[i];
    out.push_back(std::move(d));
  }
  return out;
}

double boundary_decay(const Grid& g, const std::vector<double>& alpha) {
  double peak = 0.0, edge = 0.0;
  const int dv = g.velocity_dims();
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    peak = std::max(peak, std::abs(alpha[i]));
    // flat velocity index is row-major over the velocity axes
    std::size_t rest = i;
    bool on_edge = false;
    for (int a = dv - 1; a >= 0; --a) {
      const int n = g.points(g.spatial_dims() + a);
      const auto idx = static_cast<int>(rest % n);
      rest /= n;
      on_edge = on_edge || idx == 0 || idx == n - 1;
    }
    if (on_edge) edge = std::max(edge, std::abs(alpha[i]));
  }
  return peak > 0.0 ? edge / peak : 0.0;
}

ConstraintSet constraints(GridPtr grid, double window_fraction) {
  if (grid->velocity_dims() != grid->spatial_dims() || grid->velocity_dims() == 0)
    throw std::invalid_argument("quasineutral: velocity dims must equal spatial dims");
  ConstraintSet Q;
  Q.name = "quasineutrality";
  Q.locality = Locality::semi_local;
  Q.state_schema = kSchema;
  Q.constraint_schema = kConstraintSchema;
  Q.linear = true;
  const int dv = grid->velocity_dims();
  const auto W = velocity_window(*grid, window_fraction);
  std::vector<std::vector<double>> Wv;
  for (int a = 0; a < dv; ++a) Wv.push_back(times_profile(c::velocity_profile(*grid, a), W));

  // (int W delta, div int W v delta), delta = u_i - u_e
  auto q_lin = [grid, W, Wv](const State& u) {
    const Field delta = u[ION] - u[ELECTRON];
    std::vector<Field> current;
    for (const auto& p : Wv) current.push_back(c::velocity_integral(delta, p));
    return constraint_state(grid, c::velocity_integral(delta, W), c::div(c::assemble(current)));
  };
  Q.q_apply = q_lin;
  Q.frechet_apply = [q_lin](const State&, const Tangent& u) { return q_lin(u); };
  // (phi, -phi) with phi = W (w1 - v . grad w2)
  Q.frechet_adjoint = [grid, W, Wv](const State&, const State& w) {
    Field phi = c::scale_by_profile(c::lift(w[0]), W);
    const Field g2 = c::grad(w[1]);
    for (std::size_t a = 0; a < Wv.size(); ++a)
      phi -= c::scale_by_profile(c::lift(c::component(g2, static_cast<int>(a))), Wv[a]);
    Cotangent out(grid, kSchema);
    out[ION] = phi;
    out[ELECTRON] = -1.0 * phi;
    return out;
  };
  Q.windowed = [grid](double fraction) { return constraints(grid, fraction); };
  return Q;
}

}  // namespace quasineutral

SystemSpec quasineutral_system(GridPtr grid, const QuasineutralParams& params) {
  const ConstraintSet Q = quasineutral::constraints(grid);
  const Background bg = background(*grid, params);
  const double abar = bg.alpha_bar;
  const auto vbar = bg.v_bar;

  SystemSpec S;
  S.name = "quasineutral";
  S.description = "linearized two-species Vlasov with semi-local quasineutrality constraints";
  S.grid = grid;
  S.schema = kSchema;
  S.parameters = {{"alpha_bar", abar},
                  {"ion_density", params.ion.density},
                  {"electron_density", params.electron.density},
                  {"ion_sigma", params.ion.sigma},
                  {"electron_sigma", params.electron.sigma},
                  {"decay_guard", params.decay_guard}};
  for (std::size_t a = 0; a < vbar.size(); ++a) S.parameters["v_bar_" + std::to_string(a)] = vbar[a];

  // J a = (dv alpha_i . grad a_i, dv alpha_e . grad a_e), state independent
  BracketOperator J;
  J.name = "linear";
  J.description = "linearized Vlasov bracket about homogeneous Maxwellians";
  J.schema = kSchema;
  J.affine_in_state = true;
  J.apply = [grid, bg](const State&, const Cotangent& a) {
    Tangent out(grid, kSchema);
    out[ION] = advect(bg.grad_i, a[ION]);
    out[ELECTRON] = advect(bg.grad_e, a[ELECTRON]);
    return out;
  };
  J.state_gradient = [grid](const State&, const Cotangent&, const Cotangent&) {
    return Cotangent(grid, kSchema);
  };
  S.brackets.emplace(J.name, J);
  S.default_bracket = "dirac";
  S.constraints.emplace(Q.name, Q);

  // A^{-1} = (1/abar) [[2 vbar . grad inv_lap, -inv_lap], [inv_lap, 0]]
  auto a_inverse = [grid, abar, vbar](const State&, const State& w) {
    const Field g = c::grad(c::inv_lap(w[0]));
    Field first = -1.0 * c::inv_lap(w[1]);
    for (std::size_t j = 0; j < vbar.size(); ++j)
      first.axpy(2.0 * vbar[j], c::component(g, static_cast<int>(j)));
    State y = constraint_state(grid, std::move(first), c::inv_lap(w[0]));
    y *= 1.0 / abar;
    return y;
  };

  AOperator A;
  A.constraint = Q;
  A.J = J;
  A.closed_form_inverse = a_inverse;
  A.preconditioner = [grid, abar](const State&, const State& w) {
    State y = constraint_state(grid, -1.0 * c::inv_lap(w[1]), c::inv_lap(w[0]));
    y *= 1.0 / abar;
    return y;
  };
  S.reductions.emplace("dirac", A);

  auto& cf = S.closed_forms;
  // A = [[0, abar lap], [-abar lap, 2 beta . grad lap]]
  cf.constraint_maps["A"] = [grid, abar, vbar](const State&, const State& w) {
    Field second = -abar * c::lap(w[0]);
    const Field g = c::grad(c::lap(w[1]));
    for (std::size_t j = 0; j < vbar.size(); ++j)
      second.axpy(2.0 * abar * vbar[j], c::component(g, static_cast<int>(j)));
    return constraint_state(grid, abar * c::lap(w[1]), std::move(second));
  };
  cf.constraint_maps["A_inverse"] = a_inverse;
  // P*_i = a_i - phi, P*_e = a_e + phi with
  // phi = (1/abar) [sum_j (v_j - 2 vbar_j) d_j inv_lap H0 + inv_lap div H1],
  // h = [alpha_i, a_i] - [alpha_e, a_e], H0 = int h, H1 = int v h
  cf.cotangent_maps["P_star"] = [grid, bg, abar, vbar](const State&, const Cotangent& a) {
    const Field h = advect(bg.grad_e, a[ELECTRON]) - advect(bg.grad_i, a[ION]);
    const Field g0 = c::grad(c::inv_lap(c::velocity_integral(h)));
    const int dv = grid->velocity_dims();
    std::vector<Field> h1;
    for (int j = 0; j < dv; ++j) h1.push_back(c::velocity_integral(h, c::velocity_profile(*grid, j)));
    Field phi = c::lift(c::inv_lap(c::div(c::assemble(h1))));
    for (int j = 0; j < dv; ++j) {
      auto shift = c::velocity_profile(*grid, j);
      for (double& v : shift) v -= 2.0 * vbar[j];
      phi += c::scale_by_profile(c::lift(c::component(g0, j)), shift);
    }
    phi *= 1.0 / abar;
    Cotangent p = a;
    p[ION] -= phi;
    p[ELECTRON] += phi;
    return p;
  };

  S.state_probe = {1, 1, false, 1.0};
  S.cotangent_probe = {1, 1, false, 1.0};
  return S;
}

}  // namespace bracketlab
