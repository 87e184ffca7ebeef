#include <algorithm>
#include <cmath>

#include "bracketlab/checks.hpp"
#include "bracketlab/harness.hpp"

namespace bracketlab {

// sigma is small enough that the int v^2 block of Q^Q^+ stays a minor
// correction up to 16 sigma (its weight is (2 v_max)^2 / 12 relative to the
// density block), so the growth seen is that of the velocity volume itself.
UnboundednessSignature quasineutral_unboundedness(std::uint64_t seed, int probes) {
  constexpr double sigma = 0.02;
  constexpr int spatial_points = 16;
  constexpr int points_per_sigma = 2;
  QuasineutralParams p;
  p.ion = {1.0, {0.25 * sigma}, sigma};
  p.electron = {1.0, {-0.25 * sigma}, sigma};
  p.decay_guard = 1e-2;  // the 4 sigma box cuts the tail at ~1e-3

  UnboundednessSignature out;
  for (const int cutoff : {4, 8, 16}) {
    const double v_max = cutoff * sigma;
    const GridPtr grid =
        Grid::phase(1, spatial_points, kTwoPi, 1, 2 * cutoff * points_per_sigma, v_max);
    const SystemSpec S = quasineutral_system(grid, p);
    const ConstraintSet& Q = S.constraints.at("quasineutrality");
    const AOperator& A = S.reductions.at("dirac");
    const State chi(grid, S.schema);
    const auto w = checks::constraint_samples(Q, grid, probes, seed);
    out.cutoffs.push_back(cutoff);
    out.gram.push_back(checks::rayleigh_estimate(gram_operator(Q, chi), w));
    out.a_norm.push_back(norm_estimate([&](const State& x) { return a_apply(A, chi, x); }, w));
    if (cutoff == 16) {
      try {
        orthogonal_projector(Q, chi);
      } catch (const ProjectorUnavailable&) {
        out.perp_unavailable = true;
      }
    }
  }
  for (std::size_t i = 1; i < out.cutoffs.size(); ++i) {
    out.volume_ratio.push_back(out.cutoffs[i] / out.cutoffs[i - 1]);
    out.gram_ratio.push_back(out.gram[i] / out.gram[i - 1]);
  }
  const auto [lo, hi] = std::minmax_element(out.a_norm.begin(), out.a_norm.end());
  out.a_variation = (*hi - *lo) / *lo;
  return out;
}

}  // namespace bracketlab
