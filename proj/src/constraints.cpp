#include "bracketlab/constraints.hpp"

#include <algorithm>
#include <cmath>

namespace bracketlab {

State q_value(const ConstraintSet& Q, const State& chi) {
  if (chi.schema() != Q.state_schema) throw std::invalid_argument("q_value: schema mismatch");
  return Q.q_apply(chi);
}

double frechet_pair_residual(const ConstraintSet& Q, const State& chi, const Tangent& u,
                             const State& w) {
  const double lhs = pairing(Q.frechet_apply(chi, u), w);
  const double rhs = pairing(u, Q.frechet_adjoint(chi, w));
  const double scale = norm(u) * norm(w);
  return scale > 0.0 ? std::abs(lhs - rhs) / scale : std::abs(lhs - rhs);
}

State a_apply(const AOperator& A, const State& chi, const State& w) {
  const auto& Q = A.constraint;
  return Q.frechet_apply(chi, A.J.apply(chi, Q.frechet_adjoint(chi, w)));
}

State a_solve(const AOperator& A, const State& chi, const State& w, const SolveOptions& opt) {
  if (A.prefer_closed_form && A.closed_form_inverse) return A.closed_form_inverse(chi, w);
  const int max_iter =
      opt.max_iter > 0 ? opt.max_iter : static_cast<int>(10 * w.sample_count());
  const double wnorm = norm(w);
  const double target = opt.tol * std::max(wnorm, opt.reference);
  if (wnorm <= target) return w.zeros_like();
  auto op = [&](const State& y) { return a_apply(A, chi, y); };
  krylov::LinearOp M;
  if (A.preconditioner) M = [&](const State& y) { return A.preconditioner(chi, y); };
  auto result = krylov::gmres(op, w, M, target / wnorm, max_iter);
  if (!result.converged)
    throw SolveFailure("A not invertible on this probe (" + A.constraint.name +
                       ", relative residual " + std::to_string(result.relative_residual) + ")");
  return std::move(result.x);
}

State a_inverse_q(const AOperator& A, const State& chi, const Tangent& u, const SolveOptions& opt) {
  if (A.inverse_q) return A.inverse_q(chi, u);
  SolveOptions scaled = opt;
  scaled.reference = std::max(opt.reference, norm(u));
  return a_solve(A, chi, A.constraint.frechet_apply(chi, u), scaled);
}

double a_antisymmetry_residual(const AOperator& A, const State& chi, const State& w1,
                               const State& w2) {
  const double r = pairing(w1, a_apply(A, chi, w2)) + pairing(w2, a_apply(A, chi, w1));
  const double scale = norm(w1) * norm(w2);
  return scale > 0.0 ? std::abs(r) / scale : std::abs(r);
}

}  // namespace bracketlab
