#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bracketlab/grid.hpp"

namespace bracketlab {

/// Where a field lives: on the spatial sub-grid or on the full phase-space grid.
enum class Support { spatial, phase };

/// Real samples of a scalar (components == 1) or vector field, stored
/// component-major with row-major sample order (last axis fastest). Phase-space
/// fields put spatial axes first, so the velocity block of each point is contiguous.
class Field {
 public:
  Field() = default;
  Field(GridPtr grid, Support support, int components);

  const GridPtr& grid() const { return grid_; }
  Support support() const { return support_; }
  int components() const { return components_; }
  bool is_scalar() const { return components_ == 1; }
  std::size_t points() const { return points_; }

  std::span<double> component(int c);
  std::span<const double> component(int c) const;
  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  bool same_shape(const Field& other) const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double a);
  void axpy(double a, const Field& x);
  void set_zero();

 private:
  GridPtr grid_;
  Support support_ = Support::spatial;
  int components_ = 0;
  std::size_t points_ = 0;
  std::vector<double> data_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);

/// One entry of a state schema.
struct Slot {
  std::string name;
  Support support = Support::spatial;
  int components = 1;
  bool operator==(const Slot&) const = default;
};

using Schema = std::vector<Slot>;

/// Ordered tuple of fields on a common grid. The same type carries states,
/// tangents (state variations, equations of motion), cotangents (functional
/// derivatives) and constraint-space fields; the aliases below name the role.
class State {
 public:
  State() = default;
  State(GridPtr grid, Schema schema);

  static State zeros(GridPtr grid, Schema schema) { return State(std::move(grid), std::move(schema)); }
  State zeros_like() const { return State(grid_, schema_); }

  const GridPtr& grid() const { return grid_; }
  const Schema& schema() const { return schema_; }
  std::size_t size() const { return fields_.size(); }

  Field& operator[](std::size_t i) { return fields_.at(i); }
  const Field& operator[](std::size_t i) const { return fields_.at(i); }
  Field& slot(std::string_view name);
  const Field& slot(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;

  bool same_schema(const State& other) const;
  std::size_t sample_count() const;

  State& operator+=(const State& other);
  State& operator-=(const State& other);
  State& operator*=(double a);
  void axpy(double a, const State& x);

 private:
  GridPtr grid_;
  Schema schema_;
  std::vector<Field> fields_;
};

State operator+(State a, const State& b);
State operator-(State a, const State& b);
State operator*(double s, State a);

using Tangent = State;
using Cotangent = State;

/// Riemann sum times cell volume. Exact for band-limited trigonometric
/// polynomials resolved by the grid.
double integrate(const Field& f);
/// Sum over slots and components of integrate(a·u).
double pairing(const State& a, const State& u);
double pairing(const Field& a, const Field& u);
/// L2 norm induced by the pairing.
double norm(const State& a);
double norm(const Field& a);
double max_abs(const State& a);
bool all_finite(const State& a);

struct RandomOptions {
  std::uint64_t seed = 1;
  int band_limit = 2;
  bool zero_mean = false;
  double amplitude = 1.0;
};

/// Band-limited random state: Fourier coefficients with |m_axis| <= band_limit
/// on every axis of each slot's support, rescaled to RMS `amplitude`.
/// Deterministic for fixed (seed, schema, grid).
State random_state(const Schema& schema, GridPtr grid, const RandomOptions& options);
Field random_field(GridPtr grid, Support support, int components, const RandomOptions& options);

}  // namespace bracketlab
