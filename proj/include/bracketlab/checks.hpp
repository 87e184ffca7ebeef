#pragma once

// Probe batches and the residual diagnostics shared by suites and tests.
// Every residual here is relative (see each comment for the scale).

#include <cstdint>
#include <vector>

#include "bracketlab/systems.hpp"

namespace bracketlab::checks {

/// |a - b| / |b| (|a - b| when b = 0)
double relative_difference(const State& a, const State& b);

std::vector<Cotangent> cotangents(const SystemSpec& S, int count, std::uint64_t seed,
                                  bool mean_free = false);
/// Zero-mean copy of every slot.
State mean_free(State s);
/// Random constraint-space fields w = Q^ u (inside the range of Q^).
std::vector<State> range_samples(const SystemSpec& S, const ConstraintSet& Q, const State& chi,
                                 int count, std::uint64_t seed);
/// Random constraint-space fields, not restricted to the range.
std::vector<State> constraint_samples(const ConstraintSet& Q, const GridPtr& grid, int count,
                                      std::uint64_t seed);

/// max over consecutive pairs of antisymmetry_residual
double max_antisymmetry(const BracketOperator& J, const State& chi, const std::vector<Cotangent>& a);

/// Jacobi residuals for triples built from seeds base + 1 .. base + count.
std::vector<double> jacobi_batch(const SystemSpec& S, const BracketOperator& J, const State& chi,
                                 int count, std::uint64_t base);
double max_of(const std::vector<double>& v);

/// Linear functional chi -> <w, Q^ chi> through its kernel Q^+ w.
Functional constraint_functional(const ConstraintSet& Q, const State& chi, const State& w);
/// max over `count` random linear probes G of |{C, G}| / |G_chi|
double casimir_batch(const SystemSpec& S, const BracketOperator& J, const Functional& C,
                     const State& chi, int count, std::uint64_t seed);

struct DiracIdentities {
  double j_vs_jp = 0.0;      // |J* a - J P* a| / |J a|
  double j_vs_ptj = 0.0;     // |J* a - P*^+ J a| / |J a|
  double j_vs_ptjp = 0.0;    // |J* a - P*^+ J P* a| / |J a|
  double constraint = 0.0;   // |Q^ J* a| / |Q^ J a|
  double antisymmetry = 0.0;
  double max() const;
};
DiracIdentities dirac_identities(const AOperator& A, const State& chi,
                                 const std::vector<Cotangent>& probes,
                                 const ReductionOptions& opt = {});

/// max |P a - P_closed a| / |P_closed a| over probes
double cotangent_map_difference(const std::function<State(const Cotangent&)>& generic,
                                const std::function<State(const Cotangent&)>& closed,
                                const std::vector<Cotangent>& probes);

/// max |B_generic(a,b) - B_closed(a,b)| / (|a| |b| max(|chi|,1)) over consecutive pairs
double bracket_difference(const std::function<double(const Cotangent&, const Cotangent&)>& generic,
                          const std::function<double(const Cotangent&, const Cotangent&)>& closed,
                          const State& chi, const std::vector<Cotangent>& probes);

/// max <w, L w> / <w, w> over probes (L self-adjoint)
double rayleigh_estimate(const krylov::LinearOp& L, const std::vector<State>& probes);

}  // namespace bracketlab::checks
