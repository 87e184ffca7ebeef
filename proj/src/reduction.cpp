#include "bracketlab/reduction.hpp"

#include <algorithm>
#include <cmath>

namespace bracketlab {

namespace {

double relative(double num, double den) { return den > 0.0 ? num / den : num; }

std::vector<State> constraint_probes(const ConstraintSet& Q, const GridPtr& grid,
                                     const ReductionOptions& opt) {
  std::vector<State> probes;
  for (int i = 0; i < opt.norm_probes; ++i) {
    RandomOptions r;
    r.seed = opt.seed + static_cast<std::uint64_t>(i);
    r.band_limit = 1;
    probes.push_back(random_state(Q.constraint_schema, grid, r));
  }
  return probes;
}

}  // namespace

double ProjectorResiduals::max() const {
  return std::max({idempotency, kernel, perp_after, after_perp});
}

krylov::LinearOp gram_operator(const ConstraintSet& Q, const State& chi) {
  return [&Q, chi](const State& w) { return Q.frechet_apply(chi, Q.frechet_adjoint(chi, w)); };
}

double norm_estimate(const krylov::LinearOp& L, const std::vector<State>& probes) {
  double best = 0.0;
  for (const auto& w : probes) best = std::max(best, relative(norm(L(w)), norm(w)));
  return best;
}

Projector orthogonal_projector(const ConstraintSet& Q, const State& chi,
                               const ReductionOptions& opt) {
  if (Q.locality == Locality::semi_local && Q.windowed) {
    // A bounded Q^Q^+ must not depend on where the velocity integral is cut.
    const auto probes = constraint_probes(Q, chi.grid(), opt);
    const ConstraintSet half = Q.windowed(0.5);
    const double full = norm_estimate(gram_operator(Q, chi), probes);
    const double cut = norm_estimate(gram_operator(half, chi), probes);
    const double change = relative(std::abs(full - cut), full);
    if (change > opt.window_tolerance)
      throw ProjectorUnavailable("orthogonal projector unavailable for " + Q.name +
                                 ": Q^Q^+ norm estimate changes by " + std::to_string(change) +
                                 " when the velocity window is halved (unbounded operator)");
  }
  const GridPtr grid = chi.grid();
  auto project = [Q, chi, grid, opt](const Cotangent& a) {
    const State rhs = Q.frechet_apply(chi, a);
    // Target tol * max(|Q^ a|, |a|): an input already in Ker Q^ has a pure
    // round-off right-hand side that a relative target would chase forever.
    const double rnorm = norm(rhs);
    const double target = opt.solve.tol * std::max(rnorm, norm(a));
    if (rnorm <= target) return a;
    const int max_iter =
        opt.solve.max_iter > 0 ? opt.solve.max_iter : static_cast<int>(10 * rhs.sample_count());
    auto result = krylov::conjugate_gradient(gram_operator(Q, chi), rhs, target / rnorm, max_iter);
    if (!result.converged)
      throw ProjectorUnavailable("orthogonal projector unavailable for " + Q.name +
                                 ": Q^Q^+ solve did not converge");
    Cotangent out = a;
    out -= Q.frechet_adjoint(chi, result.x);
    return out;
  };
  Projector P;
  P.kind = ProjectorKind::orthogonal;
  P.provenance = "orthogonal projector of " + Q.name;
  P.state_independent = Q.linear;
  P.apply = project;
  P.adjoint_apply = project;
  return P;
}

Projector dirac_projector(const AOperator& A, const State& chi, const ReductionOptions& opt) {
  Projector P;
  P.kind = ProjectorKind::dirac;
  P.provenance = "Dirac projector of " + A.constraint.name + " with " + A.J.name;
  P.state_independent = false;
  P.apply = [A, chi, opt](const Cotangent& a) {
    const State y = a_inverse_q(A, chi, A.J.apply(chi, a), opt.solve);
    Cotangent out = a;
    out -= A.constraint.frechet_adjoint(chi, y);
    return out;
  };
  // P*^+ u = u - J^+ Q^+ A^{-+} Q^ u = u - J Q^+ A^{-1} Q^ u for antisymmetric J and A.
  P.adjoint_apply = [A, chi, opt](const Tangent& u) {
    const State y = a_inverse_q(A, chi, u, opt.solve);
    Tangent out = u;
    out -= A.J.apply(chi, A.constraint.frechet_adjoint(chi, y));
    return out;
  };
  return P;
}

Projector custom_projector(std::string provenance, std::function<Cotangent(const Cotangent&)> apply,
                           std::function<Tangent(const Tangent&)> adjoint_apply) {
  Projector P;
  P.kind = ProjectorKind::custom;
  P.provenance = std::move(provenance);
  P.apply = std::move(apply);
  P.adjoint_apply = std::move(adjoint_apply);
  return P;
}

ProjectorResiduals projector_residuals(const Projector& P, const Projector* Pperp,
                                       const ConstraintSet& Q, const State& chi,
                                       const std::vector<Cotangent>& cotangents,
                                       const std::vector<State>& constraint_samples) {
  ProjectorResiduals r;
  if (Pperp) r.perp_after = r.after_perp = 0.0;
  for (const auto& a : cotangents) {
    const double an = norm(a);
    const Cotangent Pa = P.apply(a);
    r.idempotency = std::max(r.idempotency, relative(norm(P.apply(Pa) - Pa), an));
    if (Pperp) {
      const Cotangent Qa = Pperp->apply(a);
      r.perp_after = std::max(r.perp_after, relative(norm(Pperp->apply(Pa) - Qa), an));
      r.after_perp = std::max(r.after_perp, relative(norm(P.apply(Qa) - Pa), an));
    }
  }
  for (const auto& g : constraint_samples)
    r.kernel = std::max(r.kernel, relative(norm(P.apply(Q.frechet_adjoint(chi, g))), norm(g)));
  return r;
}

Tangent dirac_J_apply(const AOperator& A, const State& chi, const Cotangent& a,
                      const ReductionOptions& opt) {
  const Tangent Ja = A.J.apply(chi, a);
  const State y = a_inverse_q(A, chi, Ja, opt.solve);
  Tangent out = Ja;
  out -= A.J.apply(chi, A.constraint.frechet_adjoint(chi, y));
  return out;
}

double dirac_bracket(const AOperator& A, const Functional& F, const Functional& G, const State& chi,
                     const ReductionOptions& opt) {
  const Projector P = dirac_projector(A, chi, opt);
  return pairing(P.apply(derivative(F, chi)), A.J.apply(chi, P.apply(derivative(G, chi))));
}

BracketOperator dirac_operator(const AOperator& A, const ReductionOptions& opt) {
  BracketOperator D;
  D.name = A.J.name + "*" + A.constraint.name;
  D.description = "Dirac reduction of " + A.J.name + " by " + A.constraint.name;
  D.schema = A.J.schema;
  D.affine_in_state = false;
  D.apply = [A, opt](const State& chi, const Cotangent& a) { return dirac_J_apply(A, chi, a, opt); };
  // d/dchi <P* a, J P* b>: the variation of P* lies in Rg Q^+, which J P* annihilates.
  D.state_gradient = [A, opt](const State& chi, const Cotangent& a, const Cotangent& b) {
    const Projector P = dirac_projector(A, chi, opt);
    return A.J.state_gradient(chi, P.apply(a), P.apply(b));
  };
  return D;
}

BracketOperator projected_operator(const BracketOperator& J, const Projector& P) {
  if (!P.state_independent)
    throw std::invalid_argument("projected_operator: the projector depends on the state");
  BracketOperator out;
  out.name = J.name + "|" + P.provenance;
  out.description = "projected " + J.description;
  out.schema = J.schema;
  out.affine_in_state = J.affine_in_state;
  out.apply = [J, P](const State& chi, const Cotangent& a) {
    return P.adjoint_apply(J.apply(P.apply(chi), P.apply(a)));
  };
  out.state_gradient = [J, P](const State& chi, const Cotangent& a, const Cotangent& b) {
    return P.adjoint_apply(J.state_gradient(P.apply(chi), P.apply(a), P.apply(b)));
  };
  return out;
}

double projected_bracket(const BracketOperator& J, const Projector& P, const Functional& F,
                         const Functional& G, const State& chi) {
  if (!P.state_independent)
    throw std::invalid_argument("projected_bracket: the projector depends on the state");
  const State Pchi = P.apply(chi);
  return pairing(P.apply(derivative(F, chi)), J.apply(Pchi, P.apply(derivative(G, chi))));
}

}  // namespace bracketlab
