#include "bracketlab/grid.hpp"

#include <sstream>
#include <stdexcept>

namespace bracketlab {

Grid::Grid(int spatial_dims, int velocity_dims, std::vector<int> points,
           std::vector<double> lengths)
    : spatial_dims_(spatial_dims),
      velocity_dims_(velocity_dims),
      points_(std::move(points)),
      lengths_(std::move(lengths)) {
  if (spatial_dims_ < 1 || spatial_dims_ > 3)
    throw std::invalid_argument("grid: spatial_dims must be 1, 2 or 3");
  if (velocity_dims_ < 0 || velocity_dims_ > 3)
    throw std::invalid_argument("grid: velocity_dims must be in 0..3");
  const auto axes = static_cast<std::size_t>(spatial_dims_ + velocity_dims_);
  if (points_.size() != axes || lengths_.size() != axes)
    throw std::invalid_argument("grid: points/lengths do not match axis count");
  for (std::size_t i = 0; i < axes; ++i) {
    if (points_[i] < 4) throw std::invalid_argument("grid: every axis needs at least 4 points");
    if (!(lengths_[i] > 0.0)) throw std::invalid_argument("grid: box lengths must be positive");
  }
}

std::shared_ptr<const Grid> Grid::cube(int dims, int n, double length) {
  return std::make_shared<const Grid>(dims, 0, std::vector<int>(dims, n),
                                      std::vector<double>(dims, length));
}

std::shared_ptr<const Grid> Grid::phase(int dims, int n, double length, int vdims, int nv,
                                        double v_max) {
  std::vector<int> pts(dims, n);
  std::vector<double> lens(dims, length);
  for (int i = 0; i < vdims; ++i) {
    pts.push_back(nv);
    lens.push_back(2.0 * v_max);
  }
  return std::make_shared<const Grid>(dims, vdims, std::move(pts), std::move(lens));
}

double Grid::coordinate(int axis, int i) const {
  const double h = spacing(axis);
  if (is_velocity_axis(axis)) return -0.5 * lengths_[axis] + (i + 0.5) * h;
  return i * h;
}

std::size_t Grid::spatial_size() const {
  std::size_t n = 1;
  for (int a = 0; a < spatial_dims_; ++a) n *= static_cast<std::size_t>(points_[a]);
  return n;
}

std::size_t Grid::velocity_size() const {
  std::size_t n = 1;
  for (int a = spatial_dims_; a < axes(); ++a) n *= static_cast<std::size_t>(points_[a]);
  return n;
}

double Grid::spatial_cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < spatial_dims_; ++a) v *= spacing(a);
  return v;
}

double Grid::velocity_cell_volume() const {
  double v = 1.0;
  for (int a = spatial_dims_; a < axes(); ++a) v *= spacing(a);
  return v;
}

double Grid::spatial_volume() const {
  double v = 1.0;
  for (int a = 0; a < spatial_dims_; ++a) v *= lengths_[a];
  return v;
}

double Grid::velocity_volume() const {
  double v = 1.0;
  for (int a = spatial_dims_; a < axes(); ++a) v *= lengths_[a];
  return v;
}

double Grid::velocity_coordinate(int vaxis, std::size_t vindex) const {
  // row-major over velocity axes, last axis fastest
  std::size_t stride = 1;
  for (int a = axes() - 1; a > spatial_dims_ + vaxis; --a) stride *= points_[a];
  const int axis = spatial_dims_ + vaxis;
  const int i = static_cast<int>((vindex / stride) % static_cast<std::size_t>(points_[axis]));
  return coordinate(axis, i);
}

Grid Grid::spatial_part() const {
  return Grid(spatial_dims_, 0, std::vector<int>(points_.begin(), points_.begin() + spatial_dims_),
              std::vector<double>(lengths_.begin(), lengths_.begin() + spatial_dims_));
}

std::string Grid::describe() const {
  std::ostringstream os;
  for (int a = 0; a < axes(); ++a) {
    if (a == spatial_dims_) os << " | v:";
    else if (a > 0) os << "x";
    os << points_[a];
  }
  return os.str();
}

}  // namespace bracketlab
