#pragma once

// Krylov solvers on State-shaped vectors with the L2 pairing as inner product.

#include <functional>

#include "bracketlab/field.hpp"

namespace bracketlab::krylov {

using LinearOp = std::function<State(const State&)>;

struct SolveResult {
  State x;
  int iterations = 0;
  double relative_residual = 0.0;  // |b - A x| / |b|, recomputed at exit
  bool converged = false;
};

/// Conjugate gradients for a symmetric positive (semi-)definite operator;
/// b must lie in its range.
SolveResult conjugate_gradient(const LinearOp& A, const State& b, double tol, int max_iter);

/// Restarted GMRES with optional right preconditioner M (solves A M u = b, x = M u).
SolveResult gmres(const LinearOp& A, const State& b, const LinearOp& M, double tol, int max_iter,
                  int restart = 60);

/// CG on the normal equations A^T A x = A^T b.
SolveResult cgnr(const LinearOp& A, const LinearOp& At, const State& b, double tol, int max_iter);

}  // namespace bracketlab::krylov
