#pragma once

// Dense reference for the toy system: every operator built as an explicit
// matrix (SVD pseudo-inverses, a DFT derivative matrix) and compared with the
// composition-based library operators materialised column by column.

#include <cmath>
#include <complex>
#include <map>
#include <string>

#include <Eigen/Dense>

#include "bracketlab/reduction.hpp"
#include "bracketlab/systems.hpp"

namespace oracle {

using Eigen::MatrixXd;
using Eigen::VectorXd;

inline MatrixXd pinv(const MatrixXd& M) {
  Eigen::JacobiSVD<MatrixXd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const VectorXd& s = svd.singularValues();
  const double cut = 1e-12 * s(0) * std::max(M.rows(), M.cols());
  VectorXd inv = VectorXd::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) inv(i) = 1.0 / s(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

// d/dx on n periodic points of [0, 2 pi): F^-1 diag(i k) F with k = 0 on Nyquist.
inline MatrixXd derivative_matrix(int n) {
  using C = std::complex<double>;
  Eigen::MatrixXcd F(n, n), Finv(n, n);
  const double w = 2.0 * M_PI / n;
  for (int m = 0; m < n; ++m)
    for (int j = 0; j < n; ++j) {
      F(m, j) = std::polar(1.0, -w * m * j);
      Finv(j, m) = std::polar(1.0 / n, w * m * j);
    }
  Eigen::VectorXcd ik(n);
  for (int m = 0; m < n; ++m) {
    const int k = m <= n / 2 ? m : m - n;
    ik(m) = (2 * m == n) ? C(0.0) : C(0.0, static_cast<double>(k));
  }
  return (Finv * ik.asDiagonal() * F).real();
}

struct DenseToy {
  MatrixXd J, Q, Qt, A, A_inverse, P_perp, P_star, J_star;
};

inline DenseToy dense_toy(std::uint64_t seed, int n) {
  const auto R = bracketlab::toy::constraint_matrix(seed, n);
  DenseToy d;
  d.Q = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      R.data(), n, 2 * n);
  // both spaces carry the same cell volume, so the L2 adjoint is the transpose
  d.Qt = d.Q.transpose();
  const MatrixXd D = derivative_matrix(n);
  const MatrixXd I = MatrixXd::Identity(n, n);
  d.J.resize(2 * n, 2 * n);
  d.J << D, I, -I, D;
  d.A = d.Q * d.J * d.Qt;
  d.A_inverse = pinv(d.A);
  const MatrixXd I2 = MatrixXd::Identity(2 * n, 2 * n);
  d.P_perp = I2 - d.Qt * pinv(d.Q * d.Qt) * d.Q;
  d.P_star = I2 - d.Qt * d.A_inverse * d.Q * d.J;
  d.J_star = d.J - d.J * d.Qt * d.A_inverse * d.Q * d.J;
  return d;
}

inline VectorXd flatten(const bracketlab::State& s) {
  VectorXd v(static_cast<Eigen::Index>(s.sample_count()));
  Eigen::Index k = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (double x : s[i].values()) v(k++) = x;
  return v;
}

inline bracketlab::State unflatten(const bracketlab::GridPtr& grid, const bracketlab::Schema& schema,
                                   const VectorXd& v) {
  bracketlab::State s(grid, schema);
  Eigen::Index k = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (double& x : s[i].values()) x = v(k++);
  return s;
}

template <class Map>
MatrixXd materialize(const Map& op, const bracketlab::GridPtr& grid, const bracketlab::Schema& domain,
                     Eigen::Index dim) {
  MatrixXd M;
  for (Eigen::Index j = 0; j < dim; ++j) {
    const VectorXd col = flatten(op(unflatten(grid, domain, VectorXd::Unit(dim, j))));
    if (j == 0) M.resize(col.size(), dim);
    M.col(j) = col;
  }
  return M;
}

inline double relative(const MatrixXd& got, const MatrixXd& want) {
  return (got - want).norm() / want.norm();
}

/// Relative Frobenius difference per operator between the library and the dense oracle.
inline std::map<std::string, double> toy_equivalence(std::uint64_t seed = 3, int n = 16) {
  using namespace bracketlab;
  const SystemSpec S = toy_system(seed, n);
  const DenseToy d = dense_toy(seed, n);
  const ConstraintSet& Q = S.constraints.at("dense");
  const AOperator& A = S.reductions.at("dirac");
  const State chi(S.grid, S.schema);
  const Schema& cs = Q.constraint_schema;
  ReductionOptions opt;
  opt.solve.tol = 1e-13;

  const Projector Pperp = orthogonal_projector(Q, chi, opt);
  const Projector Pstar = dirac_projector(A, chi, opt);
  std::map<std::string, double> out;
  out["J"] = relative(materialize([&](const State& a) { return apply_J(A.J, chi, a); }, S.grid, S.schema, 2 * n), d.J);
  out["Q"] = relative(materialize([&](const State& u) { return Q.frechet_apply(chi, u); }, S.grid, S.schema, 2 * n), d.Q);
  out["Q_adjoint"] = relative(materialize([&](const State& w) { return Q.frechet_adjoint(chi, w); }, S.grid, cs, n), d.Qt);
  out["A"] = relative(materialize([&](const State& w) { return a_apply(A, chi, w); }, S.grid, cs, n), d.A);
  out["A_inverse"] = relative(materialize([&](const State& w) { return a_solve(A, chi, w, opt.solve); }, S.grid, cs, n), d.A_inverse);
  out["P_perp"] = relative(materialize(Pperp.apply, S.grid, S.schema, 2 * n), d.P_perp);
  out["P_star"] = relative(materialize(Pstar.apply, S.grid, S.schema, 2 * n), d.P_star);
  out["J_star"] = relative(materialize([&](const State& a) { return dirac_J_apply(A, chi, a, opt); }, S.grid, S.schema, 2 * n), d.J_star);
  return out;
}

}  // namespace oracle
