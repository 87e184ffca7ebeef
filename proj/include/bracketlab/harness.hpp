#pragma once

// Time integration with conservation monitors, the constraint-wave dispersion
// fit, named property checks and their JSON report.

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bracketlab/systems.hpp"

namespace bracketlab {

struct UnsupportedOperation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// chi_dot = J(chi) H_chi, or J* H_chi when `bracket` names a reduction.
Tangent rhs(const SystemSpec& system, const std::string& bracket, const State& chi,
            const ReductionOptions& opt = {});

struct Monitor {
  std::string name;
  std::function<double(const State&)> evaluate;
  /// Drift = |value - value at t = 0|; flagged when above this.
  double tolerance = std::numeric_limits<double>::infinity();
};

Monitor energy_monitor(const SystemSpec& system);
/// max |q_c(chi)| for component c of a constraint set.
Monitor constraint_monitor(const SystemSpec& system, const std::string& constraint, int component);
Monitor functional_monitor(std::string name, Functional F);
/// Energy, every constraint component, and the known Casimirs of the system.
std::vector<Monitor> default_monitors(const SystemSpec& system);

struct SimulationOptions {
  double dt = 1e-3;
  int steps = 100;
  int record_every = 1;
};

struct Trajectory {
  State final_state;
  std::vector<double> times;
  std::vector<std::string> monitor_names;
  std::vector<std::vector<double>> values;  // one row per recorded time
  std::vector<double> initial;
  std::vector<double> max_drift;
  std::vector<double> tolerance;

  double drift(const std::string& monitor) const;
  double final_drift(const std::string& monitor) const;
  bool within_tolerance() const;
};

struct SimulationBlowup : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using RightHandSide = std::function<Tangent(const State&)>;

/// Classical RK4. Throws SimulationBlowup on a non-finite state.
Trajectory integrate_rk4(const RightHandSide& f, State chi0, const SimulationOptions& opt,
                         const std::vector<Monitor>& monitors);
Trajectory simulate(const SystemSpec& system, const std::string& bracket, State chi0,
                    const SimulationOptions& opt, const std::vector<Monitor>& monitors);
void write_csv(const Trajectory& t, const std::string& path);

struct DispersionOptions {
  double dt = 0.05;
  double periods = 8.0;          // of the slowest expected frequency
  int samples_per_period = 32;   // lower bound on recorded samples
  double amplitude = 1.0;
};

struct DispersionResult {
  double frequency = 0.0;
  double amplitude = 0.0;
  double phase = 0.0;
  double fit_residual = 0.0;  // rms misfit / amplitude
  std::vector<double> times;
  std::vector<double> signal;  // mode coefficient of div E
};

struct FitFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Least-squares a cos(w t + phi) fit; throws FitFailure on flat or
/// non-oscillating data.
DispersionResult fit_oscillation(const std::vector<double>& t, const std::vector<double>& s);

/// Vacuum evolution under the parent bracket with div E seeded on mode k,
/// returning the fitted frequency of that mode.
DispersionResult dispersion_check(vm::Parent parent, GridPtr grid, const std::vector<int>& k,
                                  const DispersionOptions& opt = {});
/// The raw vacuum trajectory of (div E, div B) mode coefficients.
DispersionResult constraint_wave(vm::Parent parent, GridPtr grid, const std::vector<int>& k,
                                 const DispersionOptions& opt);
/// Vacuum runs carry f = 0, so the velocity axes only need the minimum 4 points.
GridPtr dispersion_grid(const GridPtr& grid);

/// Norm estimates of Q^Q^+ (largest Rayleigh quotient) and of A (largest
/// |A w| / |w|) on 1-D quasineutral grids with v_max = 4, 8, 16 sigma at a
/// fixed velocity spacing.
struct UnboundednessSignature {
  std::vector<double> cutoffs;  // v_max / sigma
  std::vector<double> gram;
  std::vector<double> a_norm;
  std::vector<double> volume_ratio;  // successive
  std::vector<double> gram_ratio;
  double a_variation = 0.0;  // (max - min) / min of a_norm
  bool perp_unavailable = false;  // at the largest cutoff
};
UnboundednessSignature quasineutral_unboundedness(std::uint64_t seed, int probes = 50);

// ---------------------------------------------------------------------------
// Checks and reports

enum class Bound { upper, lower };  // lower: negative control, pass when residual > tolerance

struct Check {
  std::string name;
  std::string anchor;
  double residual = 0.0;
  double tolerance = 0.0;
  Bound bound = Bound::upper;
  bool passed = false;
  std::string note;  // error text when the check threw
};

struct SuiteConfig {
  std::string system = "vorticity";
  std::vector<int> grid;  // empty selects the system default
  std::vector<std::uint64_t> seeds{42};
  std::optional<double> tolerance;  // overrides the identity tolerances (1e-9 and tighter)
  int probes = 50;
  int triples = 20;
  MhdParams mhd;
  VlasovPoissonParams vp;
  QuasineutralParams qn;
  std::string report_path;
  std::string csv_path;
};

struct Report {
  static constexpr int version = 1;
  std::string system;
  std::string grid;
  std::vector<std::uint64_t> seeds;
  std::vector<Check> checks;
  double wallclock_seconds = 0.0;
  bool passed() const;
};

std::vector<std::string> suite_names();
/// Names and anchors of the checks a suite runs.
std::vector<std::pair<std::string, std::string>> suite_checks(const std::string& system);
/// System of the given name on its default grid (or `grid` when non-empty).
SystemSpec make_system(const SuiteConfig& config);
GridPtr default_grid(const std::string& system, const std::vector<int>& points = {},
                     const QuasineutralParams& qn = {});
/// "16x16x16" style shape string.
std::string describe(const Grid& grid);

/// Throws std::invalid_argument for unknown systems; check failures are recorded.
Report run_suite(const SuiteConfig& config);
/// Only the check groups containing one of `only` (all when empty).
Report run_suite(const SuiteConfig& config, const std::vector<std::string>& only);

std::string to_json(const Report& report);
void write_report(const Report& report, const std::string& path);
/// Rounds to 12 significant digits, the precision reports promise.
double report_precision(double x);

SuiteConfig load_config(const std::string& path);

}  // namespace bracketlab
