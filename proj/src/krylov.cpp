#include "bracketlab/krylov.hpp"

#include <cmath>
#include <vector>

namespace bracketlab::krylov {

namespace {

double residual_of(const LinearOp& A, const State& b, const State& x, double bnorm) {
  State r = b;
  r -= A(x);
  return norm(r) / bnorm;
}

}  // namespace

SolveResult conjugate_gradient(const LinearOp& A, const State& b, double tol, int max_iter) {
  SolveResult out{b.zeros_like(), 0, 0.0, true};
  const double bnorm = norm(b);
  if (bnorm == 0.0) return out;
  State r = b;
  State p = r;
  double rr = pairing(r, r);
  for (int it = 1; it <= max_iter; ++it) {
    const State Ap = A(p);
    const double pAp = pairing(p, Ap);
    if (!(pAp > 0.0)) break;
    const double alpha = rr / pAp;
    out.x.axpy(alpha, p);
    r.axpy(-alpha, Ap);
    const double rr_new = pairing(r, r);
    out.iterations = it;
    if (std::sqrt(rr_new) <= tol * bnorm) break;
    p *= rr_new / rr;
    p += r;
    rr = rr_new;
  }
  out.relative_residual = residual_of(A, b, out.x, bnorm);
  out.converged = out.relative_residual <= tol;
  return out;
}

SolveResult gmres(const LinearOp& A, const State& b, const LinearOp& M, double tol, int max_iter,
                  int restart) {
  SolveResult out{b.zeros_like(), 0, 0.0, true};
  const double bnorm = norm(b);
  if (bnorm == 0.0) return out;
  auto precondition = [&](const State& v) { return M ? M(v) : v; };

  int total = 0;
  while (total < max_iter) {
    State r = b;
    r -= A(out.x);
    const double beta = norm(r);
    out.relative_residual = beta / bnorm;
    if (out.relative_residual <= tol) break;

    const int m = std::min(restart, max_iter - total);
    std::vector<State> V;
    V.reserve(m + 1);
    V.push_back((1.0 / beta) * r);
    std::vector<std::vector<double>> H(m + 1, std::vector<double>(m, 0.0));
    std::vector<double> cs(m), sn(m), g(m + 1, 0.0);
    g[0] = beta;
    int k = 0;
    for (; k < m; ++k) {
      State w = A(precondition(V[k]));
      // Modified Gram-Schmidt, two passes.
      for (int pass = 0; pass < 2; ++pass)
        for (int i = 0; i <= k; ++i) {
          const double h = pairing(V[i], w);
          H[i][k] += h;
          w.axpy(-h, V[i]);
        }
      const double hnext = norm(w);
      H[k + 1][k] = hnext;
      for (int i = 0; i < k; ++i) {
        const double t = cs[i] * H[i][k] + sn[i] * H[i + 1][k];
        H[i + 1][k] = -sn[i] * H[i][k] + cs[i] * H[i + 1][k];
        H[i][k] = t;
      }
      const double den = std::hypot(H[k][k], H[k + 1][k]);
      cs[k] = den > 0.0 ? H[k][k] / den : 1.0;
      sn[k] = den > 0.0 ? H[k + 1][k] / den : 0.0;
      H[k][k] = den;
      H[k + 1][k] = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = cs[k] * g[k];
      ++total;
      if (std::abs(g[k + 1]) <= tol * bnorm * 1e-1 || hnext == 0.0) {
        ++k;
        break;
      }
      V.push_back((1.0 / hnext) * w);
    }
    // Back substitution for the Krylov coefficients.
    std::vector<double> y(k, 0.0);
    for (int i = k - 1; i >= 0; --i) {
      double s = g[i];
      for (int j = i + 1; j < k; ++j) s -= H[i][j] * y[j];
      y[i] = H[i][i] != 0.0 ? s / H[i][i] : 0.0;
    }
    State update = b.zeros_like();
    for (int i = 0; i < k; ++i) update.axpy(y[i], V[i]);
    out.x += precondition(update);
    out.iterations = total;
    if (k == 0) break;
  }
  out.relative_residual = residual_of(A, b, out.x, bnorm);
  out.converged = out.relative_residual <= tol;
  return out;
}

SolveResult cgnr(const LinearOp& A, const LinearOp& At, const State& b, double tol, int max_iter) {
  SolveResult out{b.zeros_like(), 0, 0.0, true};
  const double bnorm = norm(b);
  if (bnorm == 0.0) return out;
  State r = b;
  State z = At(r);
  State p = z;
  double zz = pairing(z, z);
  for (int it = 1; it <= max_iter; ++it) {
    const State Ap = A(p);
    const double ApAp = pairing(Ap, Ap);
    if (!(ApAp > 0.0)) break;
    const double alpha = zz / ApAp;
    out.x.axpy(alpha, p);
    r.axpy(-alpha, Ap);
    out.iterations = it;
    if (norm(r) <= tol * bnorm) break;
    z = At(r);
    const double zz_new = pairing(z, z);
    p *= zz_new / zz;
    p += z;
    zz = zz_new;
  }
  out.relative_residual = residual_of(A, b, out.x, bnorm);
  out.converged = out.relative_residual <= tol;
  return out;
}

}  // namespace bracketlab::krylov
