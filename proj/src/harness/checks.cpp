#include "bracketlab/checks.hpp"

#include <algorithm>
#include <cmath>

#include "bracketlab/calculus.hpp"

namespace bracketlab::checks {

namespace {

double ratio(double num, double den) { return den > 0.0 ? num / den : num; }

}  // namespace

double relative_difference(const State& a, const State& b) { return ratio(norm(a - b), norm(b)); }

State mean_free(State s) {
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = calculus::remove_mean(s[i]);
  return s;
}

std::vector<Cotangent> cotangents(const SystemSpec& S, int count, std::uint64_t seed, bool zero_mean) {
  std::vector<Cotangent> out;
  for (int i = 0; i < count; ++i) {
    Cotangent a = S.random_cotangent(seed + 7919 * static_cast<std::uint64_t>(i));
    out.push_back(zero_mean ? mean_free(std::move(a)) : std::move(a));
  }
  return out;
}

std::vector<State> range_samples(const SystemSpec& S, const ConstraintSet& Q, const State& chi,
                                 int count, std::uint64_t seed) {
  std::vector<State> out;
  for (const auto& u : cotangents(S, count, seed)) out.push_back(Q.frechet_apply(chi, u));
  return out;
}

std::vector<State> constraint_samples(const ConstraintSet& Q, const GridPtr& grid, int count,
                                      std::uint64_t seed) {
  std::vector<State> out;
  for (int i = 0; i < count; ++i)
    out.push_back(random_state(Q.constraint_schema, grid,
                               {seed + 104729 * static_cast<std::uint64_t>(i), 1, false, 1.0}));
  return out;
}

double max_antisymmetry(const BracketOperator& J, const State& chi, const std::vector<Cotangent>& a) {
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < a.size(); i += 2)
    m = std::max(m, antisymmetry_residual(J, chi, a[i], a[i + 1]));
  return m;
}

std::vector<double> jacobi_batch(const SystemSpec& S, const BracketOperator& J, const State& chi,
                                 int count, std::uint64_t base) {
  std::vector<double> out;
  for (int i = 1; i <= count; ++i) {
    const std::uint64_t s = 3 * (base + static_cast<std::uint64_t>(i));
    out.push_back(jacobi_residual(J, S.random_cotangent(s), S.random_cotangent(s + 1),
                                  S.random_cotangent(s + 2), chi));
  }
  return out;
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::isnan(x) ? INFINITY : x);
  return m;
}

Functional constraint_functional(const ConstraintSet& Q, const State& chi, const State& w) {
  return Functional::linear(Q.frechet_adjoint(chi, w));
}

double casimir_batch(const SystemSpec& S, const BracketOperator& J, const Functional& C,
                     const State& chi, int count, std::uint64_t seed) {
  std::vector<Functional> probes;
  for (auto& a : cotangents(S, count, seed)) probes.push_back(Functional::linear(std::move(a)));
  return casimir_residual(J, C, chi, probes);
}

double DiracIdentities::max() const {
  return std::max({j_vs_jp, j_vs_ptj, j_vs_ptjp, constraint, antisymmetry});
}

DiracIdentities dirac_identities(const AOperator& A, const State& chi,
                                 const std::vector<Cotangent>& probes, const ReductionOptions& opt) {
  DiracIdentities r;
  const Projector P = dirac_projector(A, chi, opt);
  for (const auto& a : probes) {
    const Tangent Ja = A.J.apply(chi, a);
    const Tangent Js = dirac_J_apply(A, chi, a, opt);
    const Tangent JPa = A.J.apply(chi, P.apply(a));
    const double scale = norm(Ja);
    r.j_vs_jp = std::max(r.j_vs_jp, ratio(norm(Js - JPa), scale));
    r.j_vs_ptj = std::max(r.j_vs_ptj, ratio(norm(Js - P.adjoint_apply(Ja)), scale));
    r.j_vs_ptjp = std::max(r.j_vs_ptjp, ratio(norm(Js - P.adjoint_apply(JPa)), scale));
    r.constraint = std::max(r.constraint, ratio(norm(A.constraint.frechet_apply(chi, Js)),
                                                std::max(norm(A.constraint.frechet_apply(chi, Ja)), scale)));
  }
  r.antisymmetry = max_antisymmetry(dirac_operator(A, opt), chi, probes);
  return r;
}

double cotangent_map_difference(const std::function<State(const Cotangent&)>& generic,
                                const std::function<State(const Cotangent&)>& closed,
                                const std::vector<Cotangent>& probes) {
  double m = 0.0;
  for (const auto& a : probes) {
    const State c = closed(a);
    m = std::max(m, ratio(norm(generic(a) - c), std::max(norm(c), norm(a))));
  }
  return m;
}

double bracket_difference(const std::function<double(const Cotangent&, const Cotangent&)>& generic,
                          const std::function<double(const Cotangent&, const Cotangent&)>& closed,
                          const State& chi, const std::vector<Cotangent>& probes) {
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < probes.size(); i += 2) {
    const auto& a = probes[i];
    const auto& b = probes[i + 1];
    m = std::max(m, ratio(std::abs(generic(a, b) - closed(a, b)),
                          norm(a) * norm(b) * state_scale(chi)));
  }
  return m;
}

double rayleigh_estimate(const krylov::LinearOp& L, const std::vector<State>& probes) {
  double m = 0.0;
  for (const auto& w : probes) {
    const double ww = pairing(w, w);
    if (ww > 0.0) m = std::max(m, pairing(w, L(w)) / ww);
  }
  return m;
}

}  // namespace bracketlab::checks
