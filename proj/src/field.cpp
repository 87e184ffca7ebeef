#include "bracketlab/field.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "bracketlab/kernels.hpp"
#include "bracketlab/spectral.hpp"

namespace bracketlab {

namespace k = kernels::omp;

Field::Field(GridPtr grid, Support support, int components)
    : grid_(std::move(grid)), support_(support), components_(components) {
  if (!grid_) throw std::invalid_argument("field: null grid");
  if (components_ < 1) throw std::invalid_argument("field: components must be positive");
  if (support_ == Support::phase && grid_->velocity_dims() == 0)
    throw std::invalid_argument("field: phase-space field on a grid without velocity axes");
  points_ = support_ == Support::spatial ? grid_->spatial_size() : grid_->phase_size();
  data_.assign(points_ * static_cast<std::size_t>(components_), 0.0);
}

std::span<double> Field::component(int c) {
  return std::span<double>(data_).subspan(static_cast<std::size_t>(c) * points_, points_);
}

std::span<const double> Field::component(int c) const {
  return std::span<const double>(data_).subspan(static_cast<std::size_t>(c) * points_, points_);
}

bool Field::same_shape(const Field& other) const {
  return support_ == other.support_ && components_ == other.components_ &&
         points_ == other.points_ && grid_ && other.grid_ && *grid_ == *other.grid_;
}

static void require_same_shape(const Field& a, const Field& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("field: shape mismatch");
}

Field& Field::operator+=(const Field& other) {
  require_same_shape(*this, other);
  k::axpy(1.0, other.data_, data_);
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_same_shape(*this, other);
  k::axpy(-1.0, other.data_, data_);
  return *this;
}

Field& Field::operator*=(double a) {
  k::scale(a, data_);
  return *this;
}

void Field::axpy(double a, const Field& x) {
  require_same_shape(*this, x);
  k::axpy(a, x.data_, data_);
}

void Field::set_zero() { std::fill(data_.begin(), data_.end(), 0.0); }

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }

State::State(GridPtr grid, Schema schema) : grid_(std::move(grid)), schema_(std::move(schema)) {
  fields_.reserve(schema_.size());
  for (const auto& s : schema_) fields_.emplace_back(grid_, s.support, s.components);
}

std::size_t State::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < schema_.size(); ++i)
    if (schema_[i].name == name) return i;
  throw std::invalid_argument("state: no slot named " + std::string(name));
}

Field& State::slot(std::string_view name) { return fields_[index_of(name)]; }
const Field& State::slot(std::string_view name) const { return fields_[index_of(name)]; }

bool State::same_schema(const State& other) const {
  return schema_ == other.schema_ && grid_ && other.grid_ && *grid_ == *other.grid_;
}

std::size_t State::sample_count() const {
  std::size_t n = 0;
  for (const auto& f : fields_) n += f.values().size();
  return n;
}

static void require_same_schema(const State& a, const State& b) {
  if (!a.same_schema(b)) throw std::invalid_argument("state: schema mismatch");
}

State& State::operator+=(const State& other) {
  require_same_schema(*this, other);
  for (std::size_t i = 0; i < fields_.size(); ++i) fields_[i] += other.fields_[i];
  return *this;
}

State& State::operator-=(const State& other) {
  require_same_schema(*this, other);
  for (std::size_t i = 0; i < fields_.size(); ++i) fields_[i] -= other.fields_[i];
  return *this;
}

State& State::operator*=(double a) {
  for (auto& f : fields_) f *= a;
  return *this;
}

void State::axpy(double a, const State& x) {
  require_same_schema(*this, x);
  for (std::size_t i = 0; i < fields_.size(); ++i) fields_[i].axpy(a, x.fields_[i]);
}

State operator+(State a, const State& b) { return a += b; }
State operator-(State a, const State& b) { return a -= b; }
State operator*(double s, State a) { return a *= s; }

static double cell_volume(const Field& f) {
  const auto& g = *f.grid();
  return f.support() == Support::spatial ? g.spatial_cell_volume()
                                         : g.spatial_cell_volume() * g.velocity_cell_volume();
}

double integrate(const Field& f) {
  if (!f.is_scalar()) throw std::invalid_argument("integrate: field is not scalar");
  return k::sum(f.values()) * cell_volume(f);
}

double pairing(const Field& a, const Field& u) {
  require_same_shape(a, u);
  return k::dot(a.values(), u.values()) * cell_volume(a);
}

double pairing(const State& a, const State& u) {
  require_same_schema(a, u);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += pairing(a[i], u[i]);
  return s;
}

double norm(const Field& a) { return std::sqrt(pairing(a, a)); }
double norm(const State& a) { return std::sqrt(pairing(a, a)); }

double max_abs(const State& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, k::max_abs(a[i].values()));
  return m;
}

bool all_finite(const State& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (double v : a[i].values())
      if (!std::isfinite(v)) return false;
  return true;
}

Field random_field(GridPtr grid, Support support, int components, const RandomOptions& options) {
  Field f(grid, support, components);
  const auto axes = spectral::axes_of(*grid, support);
  for (int a = 0; a < axes.count(); ++a) {
    const int nyquist = axes.n[a] / 2;
    if (options.band_limit >= nyquist || options.band_limit < 0)
      throw std::invalid_argument("random_state: band_limit must lie below the Nyquist index");
  }
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int c = 0; c < components; ++c) {
    spectral::ComplexVector z(axes.size(), spectral::complex(0.0, 0.0));
    spectral::for_each_index(axes, [&](std::size_t flat, std::span<const int> s) {
      bool inside = true;
      bool is_mean = true;
      for (int m : s) {
        inside = inside && std::abs(m) <= options.band_limit;
        is_mean = is_mean && m == 0;
      }
      if (!inside || (is_mean && options.zero_mean)) return;
      const double re = normal(rng);
      const double im = normal(rng);
      z[flat] = spectral::complex(re, im);
    });
    auto out = f.component(c);
    // The real part of the inverse transform stays inside the band.
    spectral::inverse_complex(axes, z);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = z[i].real();
    double rms = 0.0;
    for (double v : out) rms += v * v;
    rms = std::sqrt(rms / static_cast<double>(out.size()));
    if (rms > 0.0) k::scale(options.amplitude / rms, out);
  }
  return f;
}

State random_state(const Schema& schema, GridPtr grid, const RandomOptions& options) {
  State s(grid, schema);
  for (std::size_t i = 0; i < schema.size(); ++i) {
    RandomOptions o = options;
    o.seed = options.seed * 0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL * (i + 1);
    s[i] = random_field(grid, schema[i].support, schema[i].components, o);
  }
  return s;
}

}  // namespace bracketlab
