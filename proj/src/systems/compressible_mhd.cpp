#include <cmath>
#include <stdexcept>

#include "bracketlab/calculus.hpp"
#include "bracketlab/kernels.hpp"
#include "bracketlab/systems.hpp"

namespace bracketlab {

namespace c = calculus;

namespace mhd {

Schema schema() {
  return {{"rho", Support::spatial, 1},
          {"v", Support::spatial, 3},
          {"B", Support::spatial, 3},
          {"s", Support::spatial, 1}};
}

namespace {

enum Slot { RHO = 0, V = 1, B = 2, S = 3 };

Field reciprocal(const Field& rho) {
  Field one = c::constant_field(rho.grid(), Support::spatial, 1, 1.0);
  return c::quotient(one, rho);
}

}  // namespace

// Rows of J(chi) b for chi = (rho, v, B, s):
//   rho: -div b_v
//   v:   -grad b_rho - (omega x b_v)/rho - (B~ x curl b_B)/rho + grad(s) b_s / rho
//   B:   -curl((B~ x b_v)/rho)
//   s:   -grad(s).b_v / rho
// with B~ = B, or its solenoidal part for the projected variant. The div_terms
// variant adds (div B) b_B / rho to the v row and -(div B) b_v / rho to the B row.
BracketOperator bracket(GridPtr grid, MagneticVariant variant) {
  if (grid->spatial_dims() != 3) throw std::invalid_argument("MHD needs a 3-D spatial grid");
  BracketOperator J;
  switch (variant) {
    case MagneticVariant::tainted:
      J.name = "tainted";
      J.description = "fluid bracket with the original magnetic part";
      break;
    case MagneticVariant::div_terms:
      J.name = "div_terms";
      J.description = "magnetic part extended by div B terms";
      break;
    case MagneticVariant::projected:
      J.name = "projected";
      J.description = "magnetic part with the solenoidal part of B";
      break;
  }
  J.schema = schema();
  J.affine_in_state = false;  // 1/rho
  const bool projected = variant == MagneticVariant::projected;
  const bool div_terms = variant == MagneticVariant::div_terms;

  J.apply = [projected, div_terms](const State& chi, const Cotangent& b) {
    const Field inv = reciprocal(chi[RHO]);
    const Field omega = c::curl(chi[V]);
    const Field Bt = projected ? c::solenoidal_part(chi[B]) : chi[B];
    const Field grad_s = c::grad(chi[S]);
    Tangent out = chi.zeros_like();
    out[RHO] = -1.0 * c::div(b[V]);
    Field v_row = -1.0 * c::grad(b[RHO]);
    v_row -= c::times(inv, c::cross(omega, b[V]));
    v_row -= c::times(inv, c::cross(Bt, c::curl(b[B])));
    v_row += c::times(c::times(inv, b[S]), grad_s);
    Field B_row = -1.0 * c::curl(c::times(inv, c::cross(Bt, b[V])));
    if (div_terms) {
      const Field divB_inv = c::times(inv, c::div(chi[B]));
      v_row += c::times(divB_inv, b[B]);
      B_row -= c::times(divB_inv, b[V]);
    }
    out[V] = std::move(v_row);
    out[B] = std::move(B_row);
    out[S] = -1.0 * c::times(inv, c::dot(grad_s, b[V]));
    return out;
  };

  J.state_gradient = [projected, div_terms](const State& chi, const Cotangent& a,
                                            const Cotangent& b) {
    const Field inv = reciprocal(chi[RHO]);
    const Field inv2 = c::times(inv, inv);
    const Field omega = c::curl(chi[V]);
    const Field Bt = projected ? c::solenoidal_part(chi[B]) : chi[B];
    const Field grad_s = c::grad(chi[S]);
    Cotangent g = chi.zeros_like();

    // int omega.(a_v x b_v)/rho
    const Field avbv = c::cross(a[V], b[V]);
    Field d_rho = -1.0 * c::times(inv2, c::dot(omega, avbv));
    g[V] = c::curl(c::times(inv, avbv));

    // -int grad(s).(a_s b_v - a_v b_s)/rho
    Field flux = c::times(a[S], b[V]);
    flux -= c::times(b[S], a[V]);
    d_rho += c::times(inv2, c::dot(grad_s, flux));
    g[S] = c::div(c::times(inv, flux));

    // -int B~.Z, Z = (curl b_B x a_v - curl a_B x b_v)/rho
    Field zr = c::cross(c::curl(b[B]), a[V]);
    zr -= c::cross(c::curl(a[B]), b[V]);
    d_rho += c::times(inv2, c::dot(Bt, zr));
    Field dB = -1.0 * c::times(inv, zr);
    if (projected) dB = c::solenoidal_part(dB);

    if (div_terms) {
      // int (div B)(a_v.b_B - a_B.b_v)/rho
      Field m = c::dot(a[V], b[B]);
      m -= c::dot(a[B], b[V]);
      d_rho -= c::times(inv2, c::times(c::div(chi[B]), m));
      dB -= c::grad(c::times(inv, m));
    }
    g[RHO] = std::move(d_rho);
    g[B] = std::move(dB);
    return g;
  };
  return J;
}

// H = int rho v^2/2 + rho U(rho, s) + B^2/2 with U = kappa rho^(gamma-1) exp(s/c_v).
Functional hamiltonian(GridPtr grid, const MhdParams& p) {
  if (!(p.gamma > 1.0)) throw std::invalid_argument("MHD: gamma must exceed 1");
  auto energy_density = [p](double rho, double s) {
    return p.kappa * std::pow(rho, p.gamma) * std::exp(s / p.c_v);
  };
  auto value = [grid, p, energy_density](const State& chi) {
    Field e(grid, Support::spatial, 1);
    auto out = e.values();
    const auto rho = chi[RHO].values();
    const auto s = chi[S].values();
    for (std::size_t i = 0; i < out.size(); ++i) {
      double v2 = 0.0, b2 = 0.0;
      for (int k = 0; k < 3; ++k) {
        v2 += chi[V].component(k)[i] * chi[V].component(k)[i];
        b2 += chi[B].component(k)[i] * chi[B].component(k)[i];
      }
      out[i] = 0.5 * rho[i] * v2 + energy_density(rho[i], s[i]) + 0.5 * b2;
    }
    return integrate(e);
  };
  auto gradient = [grid, p](const State& chi) {
    Cotangent g = chi.zeros_like();
    const auto rho = chi[RHO].values();
    const auto s = chi[S].values();
    auto g_rho = g[RHO].values();
    auto g_s = g[S].values();
    for (std::size_t i = 0; i < rho.size(); ++i) {
      double v2 = 0.0;
      for (int k = 0; k < 3; ++k) v2 += chi[V].component(k)[i] * chi[V].component(k)[i];
      const double U = p.kappa * std::pow(rho[i], p.gamma - 1.0) * std::exp(s[i] / p.c_v);
      // U + rho U_rho = gamma U, rho U_s = rho U / c_v
      g_rho[i] = 0.5 * v2 + p.gamma * U;
      g_s[i] = rho[i] * U / p.c_v;
    }
    g[V] = c::times(chi[RHO], chi[V]);
    g[B] = chi[B];
    return g;
  };
  return Functional::analytic(value, gradient);
}

std::function<State(std::uint64_t)> sampler(GridPtr grid, double rho0) {
  return [grid, rho0](std::uint64_t seed) {
    // Small density and entropy perturbations keep 1/rho and U(rho, s)
    // nearly band-limited, so differentiated products stay resolved.
    State chi = random_state(schema(), grid, {seed, 2, false, 1.0});
    chi[RHO] = random_field(grid, Support::spatial, 1, {seed + 101, 1, false, 0.02 * rho0});
    for (double& x : chi[RHO].values()) x += rho0;
    chi[S] = random_field(grid, Support::spatial, 1, {seed + 202, 1, false, 0.05});
    return chi;
  };
}

}  // namespace mhd

SystemSpec compressible_mhd_system(GridPtr grid, const MhdParams& params) {
  SystemSpec S;
  S.name = "compressible_mhd";
  S.description = "ideal compressible MHD with three magnetic bracket variants";
  S.grid = grid;
  S.schema = mhd::schema();
  S.brackets.emplace("tainted", mhd::bracket(grid, MagneticVariant::tainted));
  S.brackets.emplace("div_terms", mhd::bracket(grid, MagneticVariant::div_terms));
  S.brackets.emplace("projected", mhd::bracket(grid, MagneticVariant::projected));
  S.default_bracket = "projected";
  S.hamiltonian = mhd::hamiltonian(grid, params);
  S.parameters = {{"kappa", params.kappa}, {"gamma", params.gamma}, {"c_v", params.c_v}};
  S.state_probe = {1, 2, false, 1.0};
  S.cotangent_probe = {1, 2, false, 1.0};
  S.sample_state = mhd::sampler(grid, params.rho0);
  S.admissible_state = S.sample_state;
  // Mass and the rho-weighted entropy; both commute with every functional.
  Cotangent mass_kernel(grid, mhd::schema());
  mass_kernel[0] = c::constant_field(grid, Support::spatial, 1, 1.0);
  S.casimirs.emplace("mass", Functional::linear(std::move(mass_kernel)));
  S.casimirs.emplace("entropy", Functional::analytic(
                                    [](const State& chi) { return integrate(c::times(chi[0], chi[3])); },
                                    [grid](const State& chi) {
                                      Cotangent g(grid, mhd::schema());
                                      g[0] = chi[3];
                                      g[3] = chi[0];
                                      return g;
                                    }));
  return S;
}

}  // namespace bracketlab
