#pragma once

// Orthogonal and Dirac projectors, the Dirac operator J* = J - J Q^+ A^{-1} Q^ J,
// Dirac brackets and projected brackets.

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bracketlab/constraints.hpp"

namespace bracketlab {

enum class ProjectorKind { orthogonal, dirac, custom };

struct Projector {
  ProjectorKind kind = ProjectorKind::custom;
  std::string provenance;
  bool state_independent = true;
  std::function<Cotangent(const Cotangent&)> apply;
  std::function<Tangent(const Tangent&)> adjoint_apply;
};

/// Thrown when Q^ Q^+ has no bounded inverse to offer.
struct ProjectorUnavailable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ReductionOptions {
  SolveOptions solve{1e-12, 0};
  /// Semi-local sets: relative change of the Q^Q^+ norm estimate between the
  /// full and half velocity window above which P_perp is refused.
  double window_tolerance = 0.01;
  int norm_probes = 8;
  std::uint64_t seed = 7;
};

/// P_perp = 1 - Q^+ (Q^ Q^+)^{-1} Q^ (conjugate gradients on Q^ Q^+).
Projector orthogonal_projector(const ConstraintSet& Q, const State& chi,
                               const ReductionOptions& opt = {});

/// P* = 1 - Q^+ A^{-1} Q^ J(chi)
Projector dirac_projector(const AOperator& A, const State& chi, const ReductionOptions& opt = {});

Projector custom_projector(std::string provenance, std::function<Cotangent(const Cotangent&)> apply,
                           std::function<Tangent(const Tangent&)> adjoint_apply);

struct ProjectorResiduals {
  double idempotency = 0.0;   // |P P a - P a| / |a|
  double kernel = 0.0;        // |P Q^+ g| / |g|
  double perp_after = -1.0;   // |P_perp P a - P_perp a| / |a|, -1 when P_perp absent
  double after_perp = -1.0;   // |P P_perp a - P a| / |a|
  double max() const;
};

ProjectorResiduals projector_residuals(const Projector& P, const Projector* Pperp,
                                       const ConstraintSet& Q, const State& chi,
                                       const std::vector<Cotangent>& cotangents,
                                       const std::vector<State>& constraint_samples);

Tangent dirac_J_apply(const AOperator& A, const State& chi, const Cotangent& a,
                      const ReductionOptions& opt = {});

/// <P* F_chi, J(chi) P* G_chi>
double dirac_bracket(const AOperator& A, const Functional& F, const Functional& G, const State& chi,
                     const ReductionOptions& opt = {});

/// J* packaged as a bracket operator; its state gradient is S_J(chi, P* a, P* b).
BracketOperator dirac_operator(const AOperator& A, const ReductionOptions& opt = {});

/// a -> P^+ J(P chi) P a for a state-independent P.
BracketOperator projected_operator(const BracketOperator& J, const Projector& P);

/// <P F_chi, J(P chi) P G_chi>
double projected_bracket(const BracketOperator& J, const Projector& P, const Functional& F,
                         const Functional& G, const State& chi);

/// max over probes of |L w| / |w|
double norm_estimate(const krylov::LinearOp& L, const std::vector<State>& probes);

/// Q^ Q^+ as an operator on constraint space.
krylov::LinearOp gram_operator(const ConstraintSet& Q, const State& chi);

}  // namespace bracketlab
