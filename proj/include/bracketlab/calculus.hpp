#pragma once

// Exact Fourier-multiplier differential operators on the periodic grid, the
// pseudo-inverses the bracket formulas use, and pointwise field algebra.
//
// Conventions:
//  - first derivatives multiply by i*k with k = 0 on the Nyquist bin, and the
//    Laplacian is -|k|^2 with that same k, so lap == div(grad) exactly;
//  - inv_lap and inv_sqrt_neg_lap are Moore-Penrose: bins with |k| = 0 map to 0;
//  - compressible_part = grad inv_lap div, solenoidal_part = 1 - compressible_part
//    (the mean of a vector field stays in the solenoidal part).

#include <functional>
#include <string>

#include "bracketlab/field.hpp"

namespace bracketlab::calculus {

enum class DiffOp {
  grad,
  div,
  curl,
  lap,
  inv_lap,
  inv_sqrt_neg_lap,
  grad_star,
  solenoidal_part,
  compressible_part
};

std::string to_string(DiffOp op);
DiffOp diff_op_from_string(const std::string& name);

Field apply_diff(DiffOp op, const Field& f);

/// Derivative along a grid axis, component by component.
Field partial(const Field& f, int axis);
/// Spatial gradient of a scalar (spatial or phase support).
Field grad(const Field& f);
/// Spatial divergence of a vector with spatial_dims components.
Field div(const Field& v);
/// Curl of a 3-vector on a 3-D spatial grid (phase support allowed).
Field curl(const Field& v);
/// Velocity gradient of a phase-space scalar (velocity_dims components).
Field velocity_grad(const Field& f);
/// Velocity divergence of a phase-space vector with velocity_dims components.
Field velocity_div(const Field& v);

Field lap(const Field& f);
Field inv_lap(const Field& f);
Field inv_sqrt_neg_lap(const Field& f);
/// grad (-lap)^{-1/2} div
Field grad_star(const Field& v);
Field solenoidal_part(const Field& v);
Field compressible_part(const Field& v);

/// Zero-mean copy of a spatial or phase field (per component).
Field remove_mean(const Field& f);

// Pointwise algebra.
Field dot(const Field& a, const Field& b);
Field cross(const Field& a, const Field& b);
/// scalar * (scalar or vector)
Field times(const Field& scalar, const Field& f);
Field quotient(const Field& f, const Field& scalar);
/// Component c of a vector as a scalar field.
Field component(const Field& v, int c);
/// Vector field from equally shaped scalar components.
Field assemble(const std::vector<Field>& comps);
Field constant_field(GridPtr grid, Support support, int components, double value);

/// Spatial field from a phase field: sum over velocity with optional weight
/// profile (size velocity_size), times the velocity cell volume.
Field velocity_integral(const Field& phase, std::span<const double> weight = {});
/// Phase field constant along velocity.
Field lift(const Field& spatial);
/// f(x,v) * profile(v)
Field scale_by_profile(const Field& phase, std::span<const double> profile);
/// Velocity coordinate v_axis as a profile over the flat velocity index.
std::vector<double> velocity_profile(const Grid& grid, int vaxis);

/// Linear map between fields with its adjoint under the L2 pairing.
struct LinearFieldMap {
  std::string name;
  std::function<Field(const Field&)> apply;
  std::function<Field(const Field&)> adjoint_apply;
  int domain_components = 1;
  int range_components = 1;  // -1 means spatial_dims
};

LinearFieldMap linear_map(DiffOp op);

/// |<Lu, w> - <u, L^dagger w>| / (|u| |w|)
double adjoint_residual(const LinearFieldMap& L, const Field& u, const Field& w);

}  // namespace bracketlab::calculus
