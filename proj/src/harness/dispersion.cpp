#include <array>
#include <cmath>

#include "bracketlab/calculus.hpp"
#include "bracketlab/harness.hpp"

namespace bracketlab {

namespace c = calculus;

namespace {

// Least-squares a cos(wt) + b sin(wt) + d for fixed w; returns the rms misfit.
double linear_fit(const std::vector<double>& t, const std::vector<double>& s, double w,
                  std::array<double, 3>& coef) {
  double M[3][3] = {}, r[3] = {};
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double b[3] = {std::cos(w * t[i]), std::sin(w * t[i]), 1.0};
    for (int p = 0; p < 3; ++p) {
      r[p] += b[p] * s[i];
      for (int q = 0; q < 3; ++q) M[p][q] += b[p] * b[q];
    }
  }
  // Gaussian elimination with partial pivoting on the 3x3 normal equations.
  int perm[3] = {0, 1, 2};
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int row = col + 1; row < 3; ++row)
      if (std::abs(M[perm[row]][col]) > std::abs(M[perm[piv]][col])) piv = row;
    std::swap(perm[col], perm[piv]);
    const double d = M[perm[col]][col];
    if (d == 0.0) throw FitFailure("oscillation fit: singular normal equations");
    for (int row = col + 1; row < 3; ++row) {
      const double f = M[perm[row]][col] / d;
      for (int q = col; q < 3; ++q) M[perm[row]][q] -= f * M[perm[col]][q];
      r[perm[row]] -= f * r[perm[col]];
    }
  }
  for (int col = 2; col >= 0; --col) {
    double acc = r[perm[col]];
    for (int q = col + 1; q < 3; ++q) acc -= M[perm[col]][q] * coef[q];
    coef[col] = acc / M[perm[col]][col];
  }
  double misfit = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double e = coef[0] * std::cos(w * t[i]) + coef[1] * std::sin(w * t[i]) + coef[2] - s[i];
    misfit += e * e;
  }
  return std::sqrt(misfit / static_cast<double>(t.size()));
}

Field mode_cos(const GridPtr& grid, const std::vector<int>& k) {
  Field out(grid, Support::spatial, 1);
  const int nx = grid->points(0), ny = grid->points(1), nz = grid->points(2);
  auto v = out.values();
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      for (int l = 0; l < nz; ++l) {
        const double phase = k[0] * grid->coordinate(0, i) * kTwoPi / grid->length(0) +
                             k[1] * grid->coordinate(1, j) * kTwoPi / grid->length(1) +
                             k[2] * grid->coordinate(2, l) * kTwoPi / grid->length(2);
        v[(static_cast<std::size_t>(i) * ny + j) * nz + l] = std::cos(phase);
      }
  return out;
}

}  // namespace

DispersionResult fit_oscillation(const std::vector<double>& t, const std::vector<double>& s) {
  if (t.size() != s.size() || t.size() < 8) throw FitFailure("oscillation fit: too few samples");
  double mean = 0.0, peak = 0.0;
  for (double x : s) mean += x;
  mean /= static_cast<double>(s.size());
  for (double x : s) peak = std::max(peak, std::abs(x - mean));
  if (!(peak > 0.0) || !std::isfinite(peak)) throw FitFailure("oscillation fit: flat signal");

  // Coarse frequency from sign changes about the mean.
  std::vector<double> crossings;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double a = s[i - 1] - mean, b = s[i] - mean;
    if ((a < 0.0) != (b < 0.0)) crossings.push_back(t[i - 1] + (t[i] - t[i - 1]) * a / (a - b));
  }
  if (crossings.size() < 4) throw FitFailure("oscillation fit: fewer than two periods of oscillation");
  const double w0 =
      M_PI * static_cast<double>(crossings.size() - 1) / (crossings.back() - crossings.front());

  std::array<double, 3> coef{};
  auto misfit = [&](double w) { return linear_fit(t, s, w, coef); };
  double lo = 0.9 * w0, hi = 1.1 * w0;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = misfit(x1), f2 = misfit(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-13 * w0; ++it) {
    if (f1 < f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - g * (hi - lo); f1 = misfit(x1);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + g * (hi - lo); f2 = misfit(x2);
    }
  }
  DispersionResult r;
  r.frequency = 0.5 * (lo + hi);
  const double rms = misfit(r.frequency);
  r.amplitude = std::hypot(coef[0], coef[1]);
  r.phase = std::atan2(-coef[1], coef[0]);
  r.fit_residual = r.amplitude > 0.0 ? rms / r.amplitude : rms;
  r.times = t;
  r.signal = s;
  return r;
}

DispersionResult constraint_wave(vm::Parent parent, GridPtr grid, const std::vector<int>& k,
                                 const DispersionOptions& opt) {
  if (parent == vm::Parent::none)
    throw std::invalid_argument("dispersion: constraint waves need a parent bracket (D choice)");
  if (k.size() != 3) throw std::invalid_argument("dispersion: mode needs three integers");
  if (grid->spatial_dims() != 3 || grid->velocity_dims() != 3)
    throw std::invalid_argument("dispersion: Vlasov-Maxwell phase-space grid required");
  const BracketOperator J = vm::bracket(grid, true, parent);
  const Functional H = vm::hamiltonian(grid);

  // f = 0, B = 0, E compressible with div E = amplitude cos(k.x)
  State chi(grid, vm::schema());
  const Field cosk = mode_cos(grid, k);
  chi[1] = c::grad(c::inv_lap(opt.amplitude * cosk));

  const double norm2 = integrate(c::times(cosk, cosk));
  if (!(norm2 > 0.0)) throw std::invalid_argument("dispersion: mode not resolved on this grid");
  Monitor divE{"div_E_mode", [cosk, norm2](const State& s) {
                 return integrate(c::times(cosk, c::div(s[1]))) / norm2;
               }};
  Monitor divB{"div_B_mode", [cosk, norm2](const State& s) {
                 return integrate(c::times(cosk, c::div(s[2]))) / norm2;
               }};
  const double horizon = opt.periods * kTwoPi;
  const int min_samples = static_cast<int>(std::ceil(opt.periods * opt.samples_per_period));
  SimulationOptions sim;
  sim.steps = std::max(min_samples, static_cast<int>(std::ceil(horizon / opt.dt)));
  sim.dt = horizon / sim.steps;
  const Trajectory T = integrate_rk4(
      [&](const State& s) { return apply_J(J, s, derivative(H, s)); }, std::move(chi), sim,
      {divE, divB});
  DispersionResult r;
  r.times = T.times;
  for (const auto& row : T.values) r.signal.push_back(row[0]);
  return r;
}

DispersionResult dispersion_check(vm::Parent parent, GridPtr grid, const std::vector<int>& k,
                                  const DispersionOptions& opt) {
  const DispersionResult wave = constraint_wave(parent, grid, k, opt);
  return fit_oscillation(wave.times, wave.signal);
}

}  // namespace bracketlab
