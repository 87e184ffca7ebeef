#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "bracketlab/harness.hpp"

namespace bracketlab {

using nlohmann::json;

namespace {

bool phase_system(const std::string& s) {
  return s == "vlasov_maxwell" || s == "vlasov_poisson" || s == "quasineutral";
}

constexpr double kVmVelocityMax = 3.0;
constexpr double kQnCutoff = 8.0;  // v_max in units of the widest Maxwellian

std::vector<int> expand(const std::vector<int>& p, std::size_t n, const std::string& system) {
  if (p.size() == n) return p;
  if (p.size() == 1) return std::vector<int>(n, p[0]);
  throw std::invalid_argument(system + ": grid needs 1 or " + std::to_string(n) + " sizes");
}

}  // namespace

std::string describe(const Grid& grid) {
  std::string out;
  for (int a = 0; a < grid.axes(); ++a) {
    if (a) out += a == grid.spatial_dims() ? " x v " : "x";
    out += std::to_string(grid.points(a));
  }
  return out;
}

GridPtr default_grid(const std::string& system, const std::vector<int>& points,
                     const QuasineutralParams& qn) {
  if (system == "toy") return Grid::cube(1, points.empty() ? 16 : points.at(0));
  if (!phase_system(system)) {
    const auto p = points.empty() ? std::vector<int>(3, 16) : expand(points, 3, system);
    return std::make_shared<const Grid>(3, 0, p, std::vector<double>(3, kTwoPi));
  }
  if (system == "quasineutral") {
    // 1-D by default; 2*d sizes select d spatial and d velocity axes.
    std::vector<int> p = points.empty() ? std::vector<int>{16, 32} : points;
    if (p.size() == 1) p = {p[0], p[0]};
    if (p.size() % 2 != 0) throw std::invalid_argument("quasineutral: grid needs 2*d sizes");
    const int d = static_cast<int>(p.size() / 2);
    const double v_max = kQnCutoff * std::max(qn.ion.sigma, qn.electron.sigma);
    std::vector<double> L(d, kTwoPi);
    L.insert(L.end(), d, 2.0 * v_max);
    return std::make_shared<const Grid>(d, d, p, L);
  }
  const auto p = points.empty() ? std::vector<int>{8, 8, 8, 6, 6, 6} : expand(points, 6, system);
  std::vector<double> L(3, kTwoPi);
  L.insert(L.end(), 3, 2.0 * kVmVelocityMax);
  return std::make_shared<const Grid>(3, 3, p, L);
}

GridPtr dispersion_grid(const GridPtr& grid) {
  std::vector<int> p = grid->points();
  for (int a = 0; a < grid->velocity_dims(); ++a) p[grid->spatial_dims() + a] = 4;
  return std::make_shared<const Grid>(grid->spatial_dims(), grid->velocity_dims(), p, grid->lengths());
}

SystemSpec make_system(const SuiteConfig& config) {
  const std::string& s = config.system;
  if (s == "toy") {
    const int n = config.grid.empty() ? 16 : config.grid.at(0);
    return toy_system(3, n);
  }
  const auto known = suite_names();
  if (std::find(known.begin(), known.end(), s) == known.end())
    throw std::invalid_argument("unknown system '" + s + "'");
  const GridPtr grid = default_grid(s, config.grid, config.qn);
  if (s == "vorticity") return vorticity_system(grid);
  if (s == "compressible_mhd") return compressible_mhd_system(grid, config.mhd);
  if (s == "incompressible_mhd") return incompressible_mhd_reduction(grid, config.mhd);
  if (s == "vlasov_maxwell") return vlasov_maxwell_system(grid);
  if (s == "vlasov_poisson") return vlasov_poisson_reduction(grid, config.vp);
  return quasineutral_system(grid, config.qn);
}

double report_precision(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  return std::strtod(buf, nullptr);
}

namespace {

json number(double x) { return std::isfinite(x) ? json(report_precision(x)) : json(nullptr); }

}  // namespace

std::string to_json(const Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json j{{"name", c.name},
           {"anchor", c.anchor},
           {"residual", number(c.residual)},
           {"tolerance", number(c.tolerance)},
           {"bound", c.bound == Bound::upper ? "upper" : "lower"},
           {"status", c.passed ? "pass" : "fail"}};
    if (!c.note.empty()) j["note"] = c.note;
    checks.push_back(std::move(j));
  }
  json out{{"version", Report::version},
           {"system", r.system},
           {"grid", r.grid},
           {"seeds", r.seeds},
           {"checks", checks},
           {"wallclock_seconds", number(r.wallclock_seconds)}};
  return out.dump(2);
}

void write_report(const Report& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json(report) << '\n';
}

namespace {

void read_maxwellian(const json& j, Maxwellian& m) {
  m.density = j.value("density", m.density);
  m.sigma = j.value("sigma", m.sigma);
  if (j.contains("drift")) m.drift = j.at("drift").get<std::vector<double>>();
}

}  // namespace

SuiteConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  SuiteConfig c;
  try {
    c.system = j.value("system", c.system);
    if (j.contains("grid")) c.grid = j.at("grid").get<std::vector<int>>();
    if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (j.contains("tolerances")) {
      const json& t = j.at("tolerances");
      c.tolerance = t.is_number() ? t.get<double>() : t.at("identity").get<double>();
    }
    c.probes = j.value("probes", c.probes);
    c.triples = j.value("triples", c.triples);
    if (j.contains("system_params")) {
      const json& p = j.at("system_params");
      c.mhd.rho0 = p.value("rho0", c.mhd.rho0);
      c.mhd.gamma = p.value("gamma", c.mhd.gamma);
      c.mhd.kappa = p.value("kappa", c.mhd.kappa);
      c.mhd.c_v = p.value("c_v", c.mhd.c_v);
      c.vp.b0_amplitude = p.value("b0_amplitude", c.vp.b0_amplitude);
      if (p.contains("ion")) read_maxwellian(p.at("ion"), c.qn.ion);
      if (p.contains("electron")) read_maxwellian(p.at("electron"), c.qn.electron);
      c.qn.decay_guard = p.value("decay_guard", c.qn.decay_guard);
    }
    if (j.contains("output")) {
      const json& o = j.at("output");
      c.report_path = o.value("report", c.report_path);
      c.csv_path = o.value("csv", c.csv_path);
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return c;
}

}  // namespace bracketlab
