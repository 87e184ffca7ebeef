#pragma once

// Catalog of constrained Hamiltonian field systems. Each SystemSpec bundles
// the state schema, Hamiltonian, bracket variants, constraint sets, the
// A-operators of its Dirac reductions and the closed-form reference operators
// they are checked against.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bracketlab/reduction.hpp"

namespace bracketlab {

struct ClosedForms {
  /// constraint-space maps, e.g. "A", "A_inverse"
  std::map<std::string, std::function<State(const State& chi, const State& w)>> constraint_maps;
  /// cotangent maps, e.g. "P_perp", "P_star", "J_star"
  std::map<std::string, std::function<State(const State& chi, const Cotangent& a)>> cotangent_maps;
  /// bilinear forms, e.g. "dirac"
  std::map<std::string, std::function<double(const State& chi, const Cotangent& a, const Cotangent& b)>>
      brackets;
};

struct SystemSpec {
  std::string name;
  std::string description;
  GridPtr grid;
  Schema schema;
  std::optional<Functional> hamiltonian;
  std::map<std::string, BracketOperator> brackets;
  std::map<std::string, ConstraintSet> constraints;
  std::map<std::string, AOperator> reductions;
  ClosedForms closed_forms;
  std::map<std::string, double> parameters;
  std::string default_bracket;
  /// Band limits for probe states and cotangents that keep every
  /// differentiated product resolved on this grid.
  RandomOptions state_probe;
  RandomOptions cotangent_probe;
  /// Admissible random state (positive density etc.); defaults to random_state.
  std::function<State(std::uint64_t seed)> sample_state;
  /// State satisfying the constraints, used as a starting point for evolution.
  std::function<State(std::uint64_t seed)> admissible_state;
  /// Known conserved functionals beyond H.
  std::map<std::string, Functional> casimirs;

  State random_state_for(std::uint64_t seed) const;
  Cotangent random_cotangent(std::uint64_t seed) const;
};

struct MhdParams {
  double kappa = 1.0;
  double gamma = 5.0 / 3.0;
  double c_v = 1.0;
  double rho0 = 1.0;
};

enum class MagneticVariant { tainted, div_terms, projected };

struct Maxwellian {
  double density = 1.0;
  std::vector<double> drift;  // empty means zero
  double sigma = 1.0;
};

struct QuasineutralParams {
  Maxwellian ion{1.0, {0.2}, 1.0};
  Maxwellian electron{1.0, {-0.1}, 1.0};
  double decay_guard = 1e-12;
};

struct VlasovPoissonParams {
  double b0_amplitude = 0.5;
};

SystemSpec vorticity_system(GridPtr grid);
SystemSpec compressible_mhd_system(GridPtr grid, const MhdParams& params = {});
SystemSpec incompressible_mhd_reduction(GridPtr grid, const MhdParams& params = {});
SystemSpec vlasov_maxwell_system(GridPtr grid);
SystemSpec vlasov_poisson_reduction(GridPtr grid, const VlasovPoissonParams& params = {});
SystemSpec quasineutral_system(GridPtr grid, const QuasineutralParams& params = {});
SystemSpec toy_system(std::uint64_t seed = 3, int points = 16);

/// Building blocks shared between systems and tests.
namespace mhd {
BracketOperator bracket(GridPtr grid, MagneticVariant variant);
Functional hamiltonian(GridPtr grid, const MhdParams& params);
Schema schema();
/// Random MHD state with density near rho0.
std::function<State(std::uint64_t)> sampler(GridPtr grid, double rho0);
}  // namespace mhd

namespace vm {
enum class Parent { none, inv_lap, inv_sqrt_neg_lap };
BracketOperator bracket(GridPtr grid, bool projected, Parent parent);
Functional hamiltonian(GridPtr grid);
ConstraintSet gauss_constraints(GridPtr grid);
Schema schema();
}  // namespace vm

namespace quasineutral {
/// Sampled Maxwellian over the flat velocity index and its velocity gradient.
std::vector<double> maxwellian(const Grid& grid, const Maxwellian& m);
std::vector<std::vector<double>> maxwellian_gradient(const Grid& grid, const Maxwellian& m);
/// max boundary sample / max sample along the velocity box.
double boundary_decay(const Grid& grid, const std::vector<double>& alpha);
ConstraintSet constraints(GridPtr grid, double window_fraction = 1.0);
}  // namespace quasineutral

namespace toy {
/// Constraint matrix [R1 | R2], row-major, points x 2*points.
std::vector<double> constraint_matrix(std::uint64_t seed, int points);
}  // namespace toy

}  // namespace bracketlab
