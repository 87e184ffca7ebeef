#include <cmath>
#include <fstream>
#include <sstream>

#include "bracketlab/calculus.hpp"
#include "bracketlab/harness.hpp"

namespace bracketlab {

Tangent rhs(const SystemSpec& system, const std::string& bracket, const State& chi,
            const ReductionOptions& opt) {
  if (!system.hamiltonian)
    throw UnsupportedOperation(system.name + " has no Hamiltonian; time evolution is not available");
  const Cotangent dH = derivative(*system.hamiltonian, chi);
  if (auto r = system.reductions.find(bracket); r != system.reductions.end())
    return dirac_J_apply(r->second, chi, dH, opt);
  auto b = system.brackets.find(bracket);
  if (b == system.brackets.end())
    throw std::invalid_argument(system.name + ": unknown bracket " + bracket);
  return apply_J(b->second, chi, dH);
}

Monitor energy_monitor(const SystemSpec& system) {
  if (!system.hamiltonian) throw UnsupportedOperation(system.name + " has no Hamiltonian");
  return {"energy", [H = *system.hamiltonian](const State& chi) { return evaluate(H, chi); }};
}

Monitor constraint_monitor(const SystemSpec& system, const std::string& constraint, int component) {
  const ConstraintSet& Q = system.constraints.at(constraint);
  return {constraint + "." + Q.constraint_schema.at(component).name,
          [Q, component](const State& chi) {
            const State q = q_value(Q, chi);
            double m = 0.0;
            for (double x : q[component].values()) m = std::max(m, std::abs(x));
            return m;
          }};
}

Monitor functional_monitor(std::string name, Functional F) {
  return {std::move(name), [F = std::move(F)](const State& chi) { return evaluate(F, chi); }};
}

std::vector<Monitor> default_monitors(const SystemSpec& system) {
  std::vector<Monitor> out;
  if (system.hamiltonian) out.push_back(energy_monitor(system));
  for (const auto& [name, Q] : system.constraints)
    for (int c = 0; c < Q.component_count(); ++c) out.push_back(constraint_monitor(system, name, c));
  for (const auto& [name, C] : system.casimirs) out.push_back(functional_monitor(name, C));
  return out;
}

namespace {

std::size_t index_of(const std::vector<std::string>& names, const std::string& name) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  throw std::invalid_argument("no monitor named " + name);
}

}  // namespace

double Trajectory::drift(const std::string& monitor) const {
  return max_drift.at(index_of(monitor_names, monitor));
}

double Trajectory::final_drift(const std::string& monitor) const {
  const auto i = index_of(monitor_names, monitor);
  return std::abs(values.back().at(i) - initial.at(i));
}

bool Trajectory::within_tolerance() const {
  for (std::size_t i = 0; i < max_drift.size(); ++i)
    if (max_drift[i] > tolerance[i]) return false;
  return true;
}

Trajectory integrate_rk4(const RightHandSide& f, State chi0, const SimulationOptions& opt,
                         const std::vector<Monitor>& monitors) {
  if (!(opt.dt > 0.0) || opt.steps < 0) throw std::invalid_argument("simulate: dt > 0 and steps >= 0 required");
  Trajectory T;
  for (const auto& m : monitors) {
    T.monitor_names.push_back(m.name);
    T.tolerance.push_back(m.tolerance);
  }
  auto record = [&](double t, const State& chi) {
    std::vector<double> row;
    for (const auto& m : monitors) row.push_back(m.evaluate(chi));
    if (T.values.empty()) {
      T.initial = row;
      T.max_drift.assign(row.size(), 0.0);
    }
    for (std::size_t i = 0; i < row.size(); ++i)
      T.max_drift[i] = std::max(T.max_drift[i], std::abs(row[i] - T.initial[i]));
    T.times.push_back(t);
    T.values.push_back(std::move(row));
  };

  State chi = std::move(chi0);
  if (!all_finite(chi)) throw SimulationBlowup("simulate: non-finite initial state");
  record(0.0, chi);
  const double dt = opt.dt;
  const int every = std::max(1, opt.record_every);
  for (int n = 1; n <= opt.steps; ++n) {
    const Tangent k1 = f(chi);
    const Tangent k2 = f(chi + (0.5 * dt) * k1);
    const Tangent k3 = f(chi + (0.5 * dt) * k2);
    const Tangent k4 = f(chi + dt * k3);
    chi.axpy(dt / 6.0, k1);
    chi.axpy(dt / 3.0, k2);
    chi.axpy(dt / 3.0, k3);
    chi.axpy(dt / 6.0, k4);
    if (!all_finite(chi)) {
      std::ostringstream msg;
      msg << "simulate: state became non-finite at step " << n << " (t = " << n * dt
          << "); reduce dt";
      throw SimulationBlowup(msg.str());
    }
    // Monitors are always checked at the final step.
    if (n % every == 0 || n == opt.steps) record(n * dt, chi);
  }
  T.final_state = std::move(chi);
  return T;
}

Trajectory simulate(const SystemSpec& system, const std::string& bracket, State chi0,
                    const SimulationOptions& opt, const std::vector<Monitor>& monitors) {
  if (!system.hamiltonian)
    throw UnsupportedOperation(system.name + " has no Hamiltonian; time evolution is not available");
  return integrate_rk4([&](const State& chi) { return rhs(system, bracket, chi); }, std::move(chi0),
                       opt, monitors);
}

void write_csv(const Trajectory& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.precision(17);
  out << "time";
  for (const auto& n : t.monitor_names) out << ',' << n;
  out << '\n';
  for (std::size_t r = 0; r < t.times.size(); ++r) {
    out << t.times[r];
    for (double v : t.values[r]) out << ',' << v;
    out << '\n';
  }
}

}  // namespace bracketlab
