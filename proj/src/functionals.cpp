#include "bracketlab/functionals.hpp"

#include <cmath>
#include <stdexcept>

namespace bracketlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double cell_volume(const Field& f) {
  const auto& g = *f.grid();
  return f.support() == Support::spatial ? g.spatial_cell_volume()
                                         : g.spatial_cell_volume() * g.velocity_cell_volume();
}

Cotangent fd_gradient(const BlackBoxFunctional& F, const State& chi) {
  const double h = F.fd_step > 0.0 ? F.fd_step : 1e-5 * (1.0 + max_abs(chi));
  Cotangent grad = chi.zeros_like();
  for (std::size_t s = 0; s < chi.size(); ++s) {
    const double inv = 1.0 / (2.0 * h * cell_volume(chi[s]));
    const auto n = static_cast<std::ptrdiff_t>(chi[s].values().size());
    bool finite = true;
#pragma omp parallel reduction(&& : finite)
    {
      State local = chi;
      auto x = local[s].values();
      auto out = grad[s].values();
#pragma omp for schedule(static)
      for (std::ptrdiff_t i = 0; i < n; ++i) {
        const double x0 = x[i];
        x[i] = x0 + h;
        const double fp = F.evaluator(local);
        x[i] = x0 - h;
        const double fm = F.evaluator(local);
        x[i] = x0;
        out[i] = (fp - fm) * inv;
        finite = finite && std::isfinite(fp) && std::isfinite(fm);
      }
    }
    if (!finite) throw std::runtime_error("derivative: non-finite black-box evaluation");
  }
  return grad;
}

}  // namespace

double evaluate(const Functional& F, const State& chi) {
  return std::visit(
      overloaded{
          [&](const LinearFunctional& L) { return pairing(L.kernel, chi) + L.constant; },
          [&](const QuadraticFunctional& Q) {
            double v = 0.5 * pairing(Q.K(chi), chi);
            if (Q.b.size() > 0) v += pairing(Q.b, chi);
            return v;
          },
          [&](const BlackBoxFunctional& B) { return B.evaluator(chi); },
          [&](const AnalyticFunctional& A) { return A.evaluator(chi); },
      },
      F.variant());
}

Cotangent derivative(const Functional& F, const State& chi) {
  return std::visit(
      overloaded{
          [&](const LinearFunctional& L) {
            if (!L.kernel.same_schema(chi)) throw std::invalid_argument("derivative: schema mismatch");
            return L.kernel;
          },
          [&](const QuadraticFunctional& Q) {
            Cotangent g = Q.K(chi);
            if (Q.b.size() > 0) g += Q.b;
            return g;
          },
          [&](const BlackBoxFunctional& B) { return fd_gradient(B, chi); },
          [&](const AnalyticFunctional& A) { return A.gradient(chi); },
      },
      F.variant());
}

double directional_check(const Functional& F, const State& chi, const State& d, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("directional_check: eps must be positive");
  State plus = chi, minus = chi;
  plus.axpy(eps, d);
  minus.axpy(-eps, d);
  const double fd = (evaluate(F, plus) - evaluate(F, minus)) / (2.0 * eps);
  return std::abs(pairing(derivative(F, chi), d) - fd);
}

Functional combine(double alpha, const Functional& F, double beta, const Functional& G) {
  if (F.is_linear() && G.is_linear()) {
    const auto& f = F.as_linear();
    const auto& g = G.as_linear();
    Cotangent k = alpha * f.kernel;
    k.axpy(beta, g.kernel);
    return Functional::linear(std::move(k), alpha * f.constant + beta * g.constant);
  }
  const auto* f = std::get_if<QuadraticFunctional>(&F.variant());
  const auto* g = std::get_if<QuadraticFunctional>(&G.variant());
  if (!f || !g) throw std::invalid_argument("combine: Linear or Quadratic operands required");
  auto K = [Kf = f->K, Kg = g->K, alpha, beta](const State& x) {
    Cotangent y = alpha * Kf(x);
    y.axpy(beta, Kg(x));
    return y;
  };
  Cotangent b;
  if (f->b.size() > 0 || g->b.size() > 0) {
    const State& like = f->b.size() > 0 ? f->b : g->b;
    b = like.zeros_like();
    if (f->b.size() > 0) b.axpy(alpha, f->b);
    if (g->b.size() > 0) b.axpy(beta, g->b);
  }
  return Functional::quadratic(std::move(K), std::move(b));
}

}  // namespace bracketlab
