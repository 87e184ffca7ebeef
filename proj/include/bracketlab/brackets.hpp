#pragma once

// Poisson operators J(chi), bracket evaluation and the antisymmetry, Jacobi
// and Casimir diagnostics.
//
// Besides apply(chi, a) = J(chi) a every operator carries its state gradient
// S(chi, a, b) = d/dchi <a, J(chi) b>. For linear functionals F, G, H this
// gives the nested bracket exactly: {F, {G, H}} = <a_F, J(chi) S(chi, a_G, a_H)>.

#include <functional>
#include <string>
#include <vector>

#include "bracketlab/functionals.hpp"

namespace bracketlab {

struct BracketOperator {
  std::string name;
  std::string description;
  Schema schema;
  bool affine_in_state = true;
  std::function<Tangent(const State& chi, const Cotangent& a)> apply;
  std::function<Cotangent(const State& chi, const Cotangent& a, const Cotangent& b)> state_gradient;
};

Tangent apply_J(const BracketOperator& J, const State& chi, const Cotangent& a);

/// <F_chi, J(chi) G_chi>
double bracket(const BracketOperator& J, const Functional& F, const Functional& G, const State& chi);
double bracket(const BracketOperator& J, const Cotangent& a, const Cotangent& b, const State& chi);

/// The linear-plus-constant functional chi -> {F, G}(chi). Needs an affine J.
Functional bracket_functional(const BracketOperator& J, const Functional& F, const Functional& G);

/// Normalisation max(|chi|, 1) used by the trilinear diagnostics.
double state_scale(const State& chi);

/// |<a, J b> + <b, J a>| / (|a| |b| max(|chi|,1))
double antisymmetry_residual(const BracketOperator& J, const State& chi, const Cotangent& a,
                             const Cotangent& b);

/// Cyclic sum {F,{G,H}} + {G,{H,F}} + {H,{F,G}} for linear functionals,
/// divided by |a_F| |a_G| |a_H| max(|chi|,1).
double jacobi_residual(const BracketOperator& J, const Functional& F, const Functional& G,
                       const Functional& H, const State& chi);
double jacobi_residual(const BracketOperator& J, const Cotangent& a, const Cotangent& b,
                       const Cotangent& c, const State& chi);

/// max over probes of |{C, G}| / |G_chi|
double casimir_residual(const BracketOperator& J, const Functional& C, const State& chi,
                        const std::vector<Functional>& probes);

/// Finite-difference check of state_gradient along d:
/// |<S(chi,a,b), d> - (<a,J(chi+eps d)b> - <a,J(chi-eps d)b>)/(2 eps)|
double state_gradient_residual(const BracketOperator& J, const State& chi, const Cotangent& a,
                               const Cotangent& b, const State& d, double eps);

}  // namespace bracketlab
