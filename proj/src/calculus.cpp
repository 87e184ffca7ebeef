#include "bracketlab/calculus.hpp"

#include <cmath>
#include <stdexcept>

#include "bracketlab/kernels.hpp"
#include "bracketlab/spectral.hpp"

namespace bracketlab::calculus {

namespace k = kernels::omp;

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

int spatial_dims(const Field& f) { return f.grid()->spatial_dims(); }

Field like(const Field& f, int components) { return Field(f.grid(), f.support(), components); }

// Applies a (range x domain) matrix-valued multiplier symbol(kd, r, c) to a
// spatial field. `symbol` writes into a row-major range*domain buffer.
template <class Symbol>
Field apply_symbol(const Field& f, int range, Symbol&& symbol) {
  require(f.support() == Support::spatial, "spectral multiplier needs a spatial field");
  const auto axes = spectral::axes_of(*f.grid(), Support::spatial);
  const int domain = f.components();
  std::vector<spectral::ComplexVector> in;
  in.reserve(domain);
  for (int c = 0; c < domain; ++c) in.push_back(spectral::forward(axes, f.component(c)));
  std::vector<spectral::ComplexVector> out(range, spectral::ComplexVector(axes.size()));
  std::vector<double> m(static_cast<std::size_t>(range) * domain);
  spectral::for_each_mode(axes, [&](std::size_t flat, std::span<const double> kd) {
    symbol(kd, std::span<double>(m));
    for (int r = 0; r < range; ++r) {
      spectral::complex s(0.0, 0.0);
      for (int c = 0; c < domain; ++c) s += m[r * domain + c] * in[c][flat];
      out[r][flat] = s;
    }
  });
  Field result = like(f, range);
  for (int r = 0; r < range; ++r) spectral::inverse_real(axes, out[r], result.component(r));
  return result;
}

double k2(std::span<const double> kd) {
  double s = 0.0;
  for (double x : kd) s += x * x;
  return s;
}

// |k|^2 below this is the zero bin; real bins are at least (2 pi / L)^2.
constexpr double kZeroBin = 1e-24;

}  // namespace

std::string to_string(DiffOp op) {
  switch (op) {
    case DiffOp::grad: return "grad";
    case DiffOp::div: return "div";
    case DiffOp::curl: return "curl";
    case DiffOp::lap: return "lap";
    case DiffOp::inv_lap: return "inv_lap";
    case DiffOp::inv_sqrt_neg_lap: return "inv_sqrt_neg_lap";
    case DiffOp::grad_star: return "grad_star";
    case DiffOp::solenoidal_part: return "solenoidal_part";
    case DiffOp::compressible_part: return "compressible_part";
  }
  return "unknown";
}

DiffOp diff_op_from_string(const std::string& name) {
  for (auto op : {DiffOp::grad, DiffOp::div, DiffOp::curl, DiffOp::lap, DiffOp::inv_lap,
                  DiffOp::inv_sqrt_neg_lap, DiffOp::grad_star, DiffOp::solenoidal_part,
                  DiffOp::compressible_part})
    if (to_string(op) == name) return op;
  throw std::invalid_argument("unknown differential operator: " + name);
}

Field apply_diff(DiffOp op, const Field& f) {
  switch (op) {
    case DiffOp::grad: return grad(f);
    case DiffOp::div: return div(f);
    case DiffOp::curl: return curl(f);
    case DiffOp::lap: return lap(f);
    case DiffOp::inv_lap: return inv_lap(f);
    case DiffOp::inv_sqrt_neg_lap: return inv_sqrt_neg_lap(f);
    case DiffOp::grad_star: return grad_star(f);
    case DiffOp::solenoidal_part: return solenoidal_part(f);
    case DiffOp::compressible_part: return compressible_part(f);
  }
  throw std::invalid_argument("apply_diff: bad operator");
}

Field partial(const Field& f, int axis) {
  const auto axes = spectral::axes_of(*f.grid(), f.support());
  require(axis >= 0 && axis < axes.count(), "partial: axis outside the field's support");
  Field out = like(f, f.components());
  for (int c = 0; c < f.components(); ++c)
    spectral::derivative(axes, f.component(c), out.component(c), axis);
  return out;
}

Field grad(const Field& f) {
  require(f.is_scalar(), "grad: scalar field expected");
  const int d = spatial_dims(f);
  Field out = like(f, d);
  const auto axes = spectral::axes_of(*f.grid(), f.support());
  for (int a = 0; a < d; ++a) spectral::derivative(axes, f.values(), out.component(a), a);
  return out;
}

Field div(const Field& v) {
  const int d = spatial_dims(v);
  require(v.components() == d, "div: vector with spatial_dims components expected");
  Field out = like(v, 1);
  Field tmp = like(v, 1);
  const auto axes = spectral::axes_of(*v.grid(), v.support());
  for (int a = 0; a < d; ++a) {
    spectral::derivative(axes, v.component(a), tmp.values(), a);
    out += tmp;
  }
  return out;
}

Field curl(const Field& v) {
  require(spatial_dims(v) == 3, "curl: 3-D spatial grid required");
  require(v.components() == 3, "curl: 3-component vector required");
  const auto axes = spectral::axes_of(*v.grid(), v.support());
  Field out = like(v, 3);
  Field tmp = like(v, 1);
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, l = (i + 2) % 3;
    // (curl v)_i = d_j v_l - d_l v_j
    spectral::derivative(axes, v.component(l), out.component(i), j);
    spectral::derivative(axes, v.component(j), tmp.values(), l);
    k::axpy(-1.0, tmp.values(), out.component(i));
  }
  return out;
}

Field velocity_grad(const Field& f) {
  require(f.support() == Support::phase, "velocity_grad: phase-space field expected");
  require(f.is_scalar(), "velocity_grad: scalar field expected");
  const int d = spatial_dims(f);
  const int dv = f.grid()->velocity_dims();
  const auto axes = spectral::axes_of(*f.grid(), Support::phase);
  Field out = like(f, dv);
  for (int j = 0; j < dv; ++j) spectral::derivative(axes, f.values(), out.component(j), d + j);
  return out;
}

Field velocity_div(const Field& v) {
  require(v.support() == Support::phase, "velocity_div: phase-space field expected");
  const int d = spatial_dims(v);
  const int dv = v.grid()->velocity_dims();
  require(v.components() == dv, "velocity_div: velocity_dims components expected");
  const auto axes = spectral::axes_of(*v.grid(), Support::phase);
  Field out = like(v, 1);
  Field tmp = like(v, 1);
  for (int j = 0; j < dv; ++j) {
    spectral::derivative(axes, v.component(j), tmp.values(), d + j);
    out += tmp;
  }
  return out;
}

Field lap(const Field& f) {
  const int n = f.components();
  return apply_symbol(f, n, [n](std::span<const double> kd, std::span<double> m) {
    const double s = -k2(kd);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m[r * n + c] = r == c ? s : 0.0;
  });
}

Field inv_lap(const Field& f) {
  const int n = f.components();
  return apply_symbol(f, n, [n](std::span<const double> kd, std::span<double> m) {
    const double kk = k2(kd);
    const double s = kk > kZeroBin ? -1.0 / kk : 0.0;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m[r * n + c] = r == c ? s : 0.0;
  });
}

Field inv_sqrt_neg_lap(const Field& f) {
  const int n = f.components();
  return apply_symbol(f, n, [n](std::span<const double> kd, std::span<double> m) {
    const double kk = k2(kd);
    const double s = kk > kZeroBin ? 1.0 / std::sqrt(kk) : 0.0;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m[r * n + c] = r == c ? s : 0.0;
  });
}

Field grad_star(const Field& v) {
  const int d = spatial_dims(v);
  require(v.components() == d, "grad_star: vector with spatial_dims components expected");
  return apply_symbol(v, d, [d](std::span<const double> kd, std::span<double> m) {
    const double kk = k2(kd);
    const double s = kk > kZeroBin ? -1.0 / std::sqrt(kk) : 0.0;
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) m[r * d + c] = s * kd[r] * kd[c];
  });
}

Field compressible_part(const Field& v) {
  const int d = spatial_dims(v);
  require(v.components() == d, "compressible_part: vector with spatial_dims components expected");
  return apply_symbol(v, d, [d](std::span<const double> kd, std::span<double> m) {
    const double kk = k2(kd);
    const double s = kk > kZeroBin ? 1.0 / kk : 0.0;
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) m[r * d + c] = s * kd[r] * kd[c];
  });
}

Field solenoidal_part(const Field& v) {
  const int d = spatial_dims(v);
  require(v.components() == d, "solenoidal_part: vector with spatial_dims components expected");
  return apply_symbol(v, d, [d](std::span<const double> kd, std::span<double> m) {
    const double kk = k2(kd);
    const double s = kk > kZeroBin ? 1.0 / kk : 0.0;
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) m[r * d + c] = (r == c ? 1.0 : 0.0) - s * kd[r] * kd[c];
  });
}

Field remove_mean(const Field& f) {
  Field out = f;
  for (int c = 0; c < f.components(); ++c) {
    auto s = out.component(c);
    const double mean = k::sum(s) / static_cast<double>(s.size());
    for (double& x : s) x -= mean;
  }
  return out;
}

Field dot(const Field& a, const Field& b) {
  require(a.same_shape(b), "dot: shape mismatch");
  Field out = like(a, 1);
  for (int c = 0; c < a.components(); ++c)
    k::multiply_add(1.0, a.component(c), b.component(c), out.values());
  return out;
}

Field cross(const Field& a, const Field& b) {
  require(a.same_shape(b) && a.components() == 3, "cross: two 3-vectors expected");
  Field out = like(a, 3);
  k::cross(a.component(0), a.component(1), a.component(2), b.component(0), b.component(1),
           b.component(2), out.component(0), out.component(1), out.component(2));
  return out;
}

Field times(const Field& scalar, const Field& f) {
  require(scalar.is_scalar(), "times: scalar factor expected");
  require(scalar.support() == f.support() && scalar.points() == f.points(),
          "times: support mismatch");
  Field out = like(f, f.components());
  for (int c = 0; c < f.components(); ++c)
    k::multiply(scalar.values(), f.component(c), out.component(c));
  return out;
}

Field quotient(const Field& f, const Field& scalar) {
  require(scalar.is_scalar(), "quotient: scalar divisor expected");
  require(scalar.support() == f.support() && scalar.points() == f.points(),
          "quotient: support mismatch");
  Field out = like(f, f.components());
  for (int c = 0; c < f.components(); ++c)
    k::divide(f.component(c), scalar.values(), out.component(c));
  return out;
}

Field component(const Field& v, int c) {
  require(c >= 0 && c < v.components(), "component: index out of range");
  Field out = like(v, 1);
  auto src = v.component(c);
  std::copy(src.begin(), src.end(), out.values().begin());
  return out;
}

Field assemble(const std::vector<Field>& comps) {
  require(!comps.empty(), "assemble: no components");
  Field out = like(comps.front(), static_cast<int>(comps.size()));
  for (std::size_t c = 0; c < comps.size(); ++c) {
    require(comps[c].is_scalar() && comps[c].support() == out.support(),
            "assemble: scalar components on one support expected");
    auto src = comps[c].values();
    std::copy(src.begin(), src.end(), out.component(static_cast<int>(c)).begin());
  }
  return out;
}

Field constant_field(GridPtr grid, Support support, int components, double value) {
  Field out(std::move(grid), support, components);
  std::fill(out.values().begin(), out.values().end(), value);
  return out;
}

Field velocity_integral(const Field& phase, std::span<const double> weight) {
  require(phase.support() == Support::phase, "velocity_integral: phase-space field expected");
  const auto& g = *phase.grid();
  require(weight.empty() || weight.size() == g.velocity_size(),
          "velocity_integral: weight size mismatch");
  Field out(phase.grid(), Support::spatial, phase.components());
  for (int c = 0; c < phase.components(); ++c) {
    k::velocity_moment(phase.component(c), weight, g.spatial_size(), g.velocity_size(),
                       out.component(c));
    k::scale(g.velocity_cell_volume(), out.component(c));
  }
  return out;
}

Field lift(const Field& spatial) {
  require(spatial.support() == Support::spatial, "lift: spatial field expected");
  const auto& g = *spatial.grid();
  Field out(spatial.grid(), Support::phase, spatial.components());
  for (int c = 0; c < spatial.components(); ++c)
    k::lift(spatial.component(c), g.spatial_size(), g.velocity_size(), out.component(c));
  return out;
}

Field scale_by_profile(const Field& phase, std::span<const double> profile) {
  require(phase.support() == Support::phase, "scale_by_profile: phase-space field expected");
  const auto& g = *phase.grid();
  require(profile.size() == g.velocity_size(), "scale_by_profile: profile size mismatch");
  Field out = like(phase, phase.components());
  for (int c = 0; c < phase.components(); ++c)
    k::scale_by_profile(phase.component(c), profile, g.spatial_size(), g.velocity_size(),
                        out.component(c));
  return out;
}

std::vector<double> velocity_profile(const Grid& grid, int vaxis) {
  std::vector<double> p(grid.velocity_size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = grid.velocity_coordinate(vaxis, i);
  return p;
}

LinearFieldMap linear_map(DiffOp op) {
  LinearFieldMap L;
  L.name = to_string(op);
  L.apply = [op](const Field& f) { return apply_diff(op, f); };
  switch (op) {
    case DiffOp::grad:
      L.adjoint_apply = [](const Field& w) { return -1.0 * div(w); };
      L.range_components = -1;  // spatial_dims
      break;
    case DiffOp::div:
      L.adjoint_apply = [](const Field& w) { return -1.0 * grad(w); };
      L.domain_components = -1;
      break;
    case DiffOp::curl:
      L.adjoint_apply = [](const Field& w) { return curl(w); };
      L.domain_components = L.range_components = 3;
      break;
    default:
      // The remaining multipliers have real even symbols: self-adjoint.
      L.adjoint_apply = L.apply;
      if (op == DiffOp::grad_star || op == DiffOp::solenoidal_part ||
          op == DiffOp::compressible_part)
        L.domain_components = L.range_components = -1;
      break;
  }
  return L;
}

double adjoint_residual(const LinearFieldMap& L, const Field& u, const Field& w) {
  const Field Lu = L.apply(u);
  const Field Ltw = L.adjoint_apply(w);
  require(Lu.same_shape(w) && Ltw.same_shape(u), "adjoint_residual: rank mismatch");
  const double scale = norm(u) * norm(w);
  const double diff = std::abs(pairing(Lu, w) - pairing(u, Ltw));
  return scale > 0.0 ? diff / scale : diff;
}

}  // namespace bracketlab::calculus
