#pragma once

// Constraint sets Q[chi], their Frechet derivative Q^ and adjoint Q^+, and the
// operator A = Q^ J Q^+ with its solve.
//
// Constraint-space values are States over a constraint schema. Semi-local
// constraints put their fields on the spatial support of a phase-space grid,
// so the constraint pairing integrates over x only.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "bracketlab/brackets.hpp"
#include "bracketlab/krylov.hpp"

namespace bracketlab {

enum class Locality { local, semi_local };

struct ConstraintSet {
  std::string name;
  Locality locality = Locality::local;
  Schema state_schema;
  Schema constraint_schema;
  bool linear = true;
  std::function<State(const State& chi)> q_apply;
  std::function<State(const State& chi, const Tangent& u)> frechet_apply;
  std::function<Cotangent(const State& chi, const State& w)> frechet_adjoint;
  /// Semi-local sets only: the same constraint with the velocity integral
  /// restricted to |v| < fraction * v_max.
  std::function<ConstraintSet(double fraction)> windowed;

  int component_count() const { return static_cast<int>(constraint_schema.size()); }
  State zero_constraint(const GridPtr& grid) const { return State(grid, constraint_schema); }
};

State q_value(const ConstraintSet& Q, const State& chi);

/// |<Q^u, w> - <u, Q^+ w>| / (|u| |w|)
double frechet_pair_residual(const ConstraintSet& Q, const State& chi, const Tangent& u,
                             const State& w);

/// Raised when a Krylov solve fails to reach its tolerance.
struct SolveFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AOperator {
  ConstraintSet constraint;
  BracketOperator J;
  /// Closed-form inverse, used by a_solve when `prefer_closed_form`.
  std::function<State(const State& chi, const State& w)> closed_form_inverse;
  /// Right preconditioner for the iterative solve.
  std::function<State(const State& chi, const State& w)> preconditioner;
  /// Composite u -> A^{-1} Q^ u for sets where A alone is singular.
  std::function<State(const State& chi, const Tangent& u)> inverse_q;
  bool prefer_closed_form = false;
};

State a_apply(const AOperator& A, const State& chi, const State& w);

struct SolveOptions {
  double tol = 1e-10;
  int max_iter = 0;  // 0 selects 10 * constraint sample count
  /// Residual target is tol * max(|w|, reference); a_inverse_q passes |u| so
  /// a right-hand side that is pure round-off is not chased.
  double reference = 0.0;
};

/// y with |A y - w| <= tol |w|; throws SolveFailure otherwise.
State a_solve(const AOperator& A, const State& chi, const State& w, const SolveOptions& opt = {});

/// A^{-1} Q^ u, through the composite when one is supplied.
State a_inverse_q(const AOperator& A, const State& chi, const Tangent& u,
                  const SolveOptions& opt = {});

/// |<w1, A w2> + <w2, A w1>| / (|w1| |w2|)
double a_antisymmetry_residual(const AOperator& A, const State& chi, const State& w1,
                               const State& w2);

}  // namespace bracketlab
