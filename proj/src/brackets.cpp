#include "bracketlab/brackets.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bracketlab {

namespace {

void require_schema(const BracketOperator& J, const State& s, const char* what) {
  if (s.schema() != J.schema) throw std::invalid_argument(std::string(what) + ": schema mismatch");
}

double safe_ratio(double num, double den) { return den > 0.0 ? num / den : num; }

}  // namespace

Tangent apply_J(const BracketOperator& J, const State& chi, const Cotangent& a) {
  require_schema(J, chi, "apply_J");
  require_schema(J, a, "apply_J");
  return J.apply(chi, a);
}

double bracket(const BracketOperator& J, const Cotangent& a, const Cotangent& b, const State& chi) {
  return pairing(a, apply_J(J, chi, b));
}

double bracket(const BracketOperator& J, const Functional& F, const Functional& G,
               const State& chi) {
  return bracket(J, derivative(F, chi), derivative(G, chi), chi);
}

Functional bracket_functional(const BracketOperator& J, const Functional& F, const Functional& G) {
  if (!J.affine_in_state) throw std::invalid_argument("bracket_functional: J is not affine in the state");
  if (!F.is_linear() || !G.is_linear())
    throw std::invalid_argument("bracket_functional: linear functionals required");
  const auto& a = F.as_linear().kernel;
  const auto& b = G.as_linear().kernel;
  const State origin = a.zeros_like();
  // Affine J: <a, J(chi) b> = <a, J(0) b> + <S(0, a, b), chi>.
  return Functional::linear(J.state_gradient(origin, a, b), bracket(J, a, b, origin));
}

double state_scale(const State& chi) { return std::max(norm(chi), 1.0); }

double antisymmetry_residual(const BracketOperator& J, const State& chi, const Cotangent& a,
                             const Cotangent& b) {
  const double r = std::abs(bracket(J, a, b, chi) + bracket(J, b, a, chi));
  return safe_ratio(r, norm(a) * norm(b) * state_scale(chi));
}

double jacobi_residual(const BracketOperator& J, const Cotangent& a, const Cotangent& b,
                       const Cotangent& c, const State& chi) {
  require_schema(J, chi, "jacobi_residual");
  auto nested = [&](const Cotangent& x, const Cotangent& y, const Cotangent& z) {
    return pairing(x, J.apply(chi, J.state_gradient(chi, y, z)));
  };
  const double r = nested(a, b, c) + nested(b, c, a) + nested(c, a, b);
  return safe_ratio(std::abs(r), norm(a) * norm(b) * norm(c) * state_scale(chi));
}

double jacobi_residual(const BracketOperator& J, const Functional& F, const Functional& G,
                       const Functional& H, const State& chi) {
  if (!F.is_linear() || !G.is_linear() || !H.is_linear())
    throw std::invalid_argument("jacobi_residual: linear functionals required");
  return jacobi_residual(J, F.as_linear().kernel, G.as_linear().kernel, H.as_linear().kernel, chi);
}

double casimir_residual(const BracketOperator& J, const Functional& C, const State& chi,
                        const std::vector<Functional>& probes) {
  const Cotangent c = derivative(C, chi);
  double worst = 0.0;
  for (const auto& G : probes) {
    const Cotangent g = derivative(G, chi);
    worst = std::max(worst, safe_ratio(std::abs(bracket(J, c, g, chi)), norm(g)));
  }
  return worst;
}

double state_gradient_residual(const BracketOperator& J, const State& chi, const Cotangent& a,
                               const Cotangent& b, const State& d, double eps) {
  State plus = chi, minus = chi;
  plus.axpy(eps, d);
  minus.axpy(-eps, d);
  const double fd = (bracket(J, a, b, plus) - bracket(J, a, b, minus)) / (2.0 * eps);
  return std::abs(pairing(J.state_gradient(chi, a, b), d) - fd);
}

}  // namespace bracketlab
