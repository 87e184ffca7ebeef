#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace bracketlab {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Periodic tensor-product grid. Axes are ordered spatial first, then
/// velocity. Spatial axes start at 0; velocity axes are cell-centred on
/// [-L/2, L/2) so that odd velocity moments of even profiles vanish exactly.
class Grid {
 public:
  Grid(int spatial_dims, int velocity_dims, std::vector<int> points,
       std::vector<double> lengths);

  /// `dims`-dimensional spatial cube with `n` points per axis.
  static std::shared_ptr<const Grid> cube(int dims, int n, double length = kTwoPi);
  /// Spatial cube times a velocity cube [-v_max, v_max)^vdims.
  static std::shared_ptr<const Grid> phase(int dims, int n, double length, int vdims,
                                           int nv, double v_max);

  int spatial_dims() const { return spatial_dims_; }
  int velocity_dims() const { return velocity_dims_; }
  int axes() const { return spatial_dims_ + velocity_dims_; }
  int points(int axis) const { return points_.at(axis); }
  double length(int axis) const { return lengths_.at(axis); }
  double spacing(int axis) const { return lengths_.at(axis) / points_.at(axis); }
  const std::vector<int>& points() const { return points_; }
  const std::vector<double>& lengths() const { return lengths_; }

  bool is_velocity_axis(int axis) const { return axis >= spatial_dims_; }
  double coordinate(int axis, int i) const;
  double velocity_max(int vaxis) const { return 0.5 * lengths_.at(spatial_dims_ + vaxis); }

  std::size_t spatial_size() const;
  std::size_t velocity_size() const;
  std::size_t phase_size() const { return spatial_size() * velocity_size(); }

  double spatial_cell_volume() const;
  double velocity_cell_volume() const;
  double spatial_volume() const;
  double velocity_volume() const;

  /// Velocity coordinate `vaxis` of flat velocity index `vindex`.
  double velocity_coordinate(int vaxis, std::size_t vindex) const;
  /// Spatial grid only (drops velocity axes).
  Grid spatial_part() const;

  std::string describe() const;

  bool operator==(const Grid& other) const = default;

 private:
  int spatial_dims_;
  int velocity_dims_;
  std::vector<int> points_;
  std::vector<double> lengths_;
};

using GridPtr = std::shared_ptr<const Grid>;

}  // namespace bracketlab
