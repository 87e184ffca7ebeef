#pragma once

// Observables F[chi] and their unconstrained functional derivatives. The
// derivative is a density: pairing(derivative(F, chi), d) is the directional
// derivative of F along d.

#include <functional>
#include <variant>

#include "bracketlab/field.hpp"

namespace bracketlab {

struct LinearFunctional {
  Cotangent kernel;
  double constant = 0.0;
};

/// 1/2 <K chi, chi> + <b, chi>; K must be self-adjoint. An empty `b` means zero.
struct QuadraticFunctional {
  std::function<Cotangent(const State&)> K;
  Cotangent b;
};

/// Value only; the derivative comes from central differences per sample.
struct BlackBoxFunctional {
  std::function<double(const State&)> evaluator;
  double fd_step = 0.0;  // 0 selects 1e-5 * (1 + max|chi|)
};

/// Value and exact gradient supplied together.
struct AnalyticFunctional {
  std::function<double(const State&)> evaluator;
  std::function<Cotangent(const State&)> gradient;
};

class Functional {
 public:
  using Variant =
      std::variant<LinearFunctional, QuadraticFunctional, BlackBoxFunctional, AnalyticFunctional>;

  Functional() = default;
  Functional(Variant v) : v_(std::move(v)) {}  // NOLINT(google-explicit-constructor)

  static Functional linear(Cotangent kernel, double constant = 0.0) {
    return Functional(LinearFunctional{std::move(kernel), constant});
  }
  static Functional quadratic(std::function<Cotangent(const State&)> K, Cotangent b = {}) {
    return Functional(QuadraticFunctional{std::move(K), std::move(b)});
  }
  static Functional black_box(std::function<double(const State&)> f, double fd_step = 0.0) {
    return Functional(BlackBoxFunctional{std::move(f), fd_step});
  }
  static Functional analytic(std::function<double(const State&)> f,
                             std::function<Cotangent(const State&)> grad) {
    return Functional(AnalyticFunctional{std::move(f), std::move(grad)});
  }

  const Variant& variant() const { return v_; }
  bool is_linear() const { return std::holds_alternative<LinearFunctional>(v_); }
  const LinearFunctional& as_linear() const { return std::get<LinearFunctional>(v_); }

 private:
  Variant v_;
};

double evaluate(const Functional& F, const State& chi);
Cotangent derivative(const Functional& F, const State& chi);

/// |<F_chi, d> - (F[chi + eps d] - F[chi - eps d]) / (2 eps)|
double directional_check(const Functional& F, const State& chi, const State& d, double eps);

/// alpha F + beta G for Linear or Quadratic operands of the same variant.
Functional combine(double alpha, const Functional& F, double beta, const Functional& G);

}  // namespace bracketlab
