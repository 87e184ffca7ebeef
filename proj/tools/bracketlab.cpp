#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "bracketlab/harness.hpp"

using namespace bracketlab;

namespace {

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size() || v <= 0) throw CLI::ValidationError("grid/mode entries must be positive integers: " + s);
    out.push_back(v);
  }
  return out;
}

std::vector<int> parse_mode(const std::string& s) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) out.push_back(std::stoi(tok));
  if (out.size() != 3) throw CLI::ValidationError("--k needs three integers, e.g. 1,0,0");
  return out;
}

void print_report(const Report& r) {
  std::printf("%s on %s, seeds", r.system.c_str(), r.grid.c_str());
  for (auto s : r.seeds) std::printf(" %llu", static_cast<unsigned long long>(s));
  std::printf("\n");
  for (const auto& c : r.checks) {
    std::printf("  %-4s %-40s %12.4e %s %.1e", c.passed ? "ok" : "FAIL", c.name.c_str(), c.residual,
                c.bound == Bound::upper ? "<=" : "> ", c.tolerance);
    if (!c.note.empty()) std::printf("  (%s)", c.note.c_str());
    std::printf("\n");
  }
  std::printf("%s in %.1f s\n", r.passed() ? "all checks passed" : "some checks failed", r.wallclock_seconds);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bracketlab: brackets, projectors and Dirac reductions of field theories"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "run the property suite of a system");
  std::string v_system, v_grid, v_out, v_config;
  std::vector<std::uint64_t> v_seeds;
  std::vector<std::string> v_only;
  double v_tol = 0.0;
  int v_probes = 0, v_triples = 0;
  verify->add_option("system", v_system, "system name (see `list`)");
  verify->add_option("--grid", v_grid, "NX[,NY,NZ[,NVX,NVY,NVZ]]");
  verify->add_option("--seed", v_seeds, "seed (repeatable)");
  verify->add_option("--tol", v_tol, "override the identity tolerances");
  verify->add_option("--out", v_out, "write the JSON report here");
  verify->add_option("--config", v_config, "JSON config; flags override its values");
  verify->add_option("--only", v_only, "run only the groups containing these checks");
  verify->add_option("--probes", v_probes, "random probes per identity check");
  verify->add_option("--triples", v_triples, "Jacobi triples / Casimir probes");

  // simulate
  auto* sim = app.add_subcommand("simulate", "RK4 evolution with conservation monitors");
  std::string s_system, s_bracket, s_grid, s_csv;
  std::vector<std::string> s_monitors;
  double s_dt = 1e-3;
  int s_steps = 100;
  std::uint64_t s_seed = 42;
  sim->add_option("system", s_system)->required();
  sim->add_option("--bracket", s_bracket, "bracket or reduction name (default: the system's)");
  sim->add_option("--dt", s_dt)->check(CLI::PositiveNumber);
  sim->add_option("--steps", s_steps)->check(CLI::NonNegativeNumber);
  sim->add_option("--monitors", s_monitors, "monitor names (default: all)");
  sim->add_option("--grid", s_grid);
  sim->add_option("--seed", s_seed);
  sim->add_option("--csv", s_csv, "write monitor history here");

  // dispersion
  auto* disp = app.add_subcommand("dispersion", "frequency of a vacuum constraint wave");
  std::string d_choice = "inv_lap", d_k = "1,0,0", d_grid;
  disp->add_option("--d", d_choice, "inv_lap | inv_sqrt_neg_lap")
      ->check(CLI::IsMember({"inv_lap", "inv_sqrt_neg_lap"}));
  disp->add_option("--k", d_k, "KX,KY,KZ");
  disp->add_option("--grid", d_grid, "NX,NY,NZ");

  auto* list = app.add_subcommand("list", "systems and their checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) {
      SuiteConfig cfg = v_config.empty() ? SuiteConfig{} : load_config(v_config);
      if (!v_system.empty()) cfg.system = v_system;
      if (!v_grid.empty()) cfg.grid = parse_ints(v_grid);
      if (!v_seeds.empty()) cfg.seeds = v_seeds;
      if (v_tol > 0.0) cfg.tolerance = v_tol;
      if (!v_out.empty()) cfg.report_path = v_out;
      if (v_probes > 0) cfg.probes = v_probes;
      if (v_triples > 0) cfg.triples = v_triples;
      const Report r = run_suite(cfg, v_only);
      print_report(r);
      if (!cfg.report_path.empty()) write_report(r, cfg.report_path);
      return r.passed() ? 0 : 1;
    }
    if (*sim) {
      SuiteConfig cfg;
      cfg.system = s_system;
      if (!s_grid.empty()) cfg.grid = parse_ints(s_grid);
      const SystemSpec S = make_system(cfg);
      const std::string bracket = s_bracket.empty() ? S.default_bracket : s_bracket;
      std::vector<Monitor> monitors;
      for (auto& m : default_monitors(S))
        if (s_monitors.empty() || std::find(s_monitors.begin(), s_monitors.end(), m.name) != s_monitors.end())
          monitors.push_back(std::move(m));
      const State chi0 = S.admissible_state ? S.admissible_state(s_seed) : S.random_state_for(s_seed);
      const Trajectory T = simulate(S, bracket, chi0, {s_dt, s_steps, 1}, monitors);
      std::printf("%s, bracket %s, %d steps of %g\n", S.name.c_str(), bracket.c_str(), s_steps, s_dt);
      for (std::size_t i = 0; i < T.monitor_names.size(); ++i)
        std::printf("  %-40s initial %.12e  max drift %.3e\n", T.monitor_names[i].c_str(), T.initial[i],
                    T.max_drift[i]);
      if (!s_csv.empty()) write_csv(T, s_csv);
      return 0;
    }
    if (*disp) {
      const vm::Parent parent = d_choice == "inv_lap" ? vm::Parent::inv_lap : vm::Parent::inv_sqrt_neg_lap;
      std::vector<int> g = d_grid.empty() ? std::vector<int>{8, 8, 8} : parse_ints(d_grid);
      if (g.size() == 1) g.assign(3, g[0]);
      if (g.size() != 3) throw std::invalid_argument("dispersion: --grid takes NX,NY,NZ");
      g.insert(g.end(), 3, 4);
      const GridPtr grid = dispersion_grid(default_grid("vlasov_maxwell", g));
      const DispersionResult r = dispersion_check(parent, grid, parse_mode(d_k));
      std::printf("D = %s, k = %s: frequency %.9f (fit residual %.2e, amplitude %.6f)\n", d_choice.c_str(),
                  d_k.c_str(), r.frequency, r.fit_residual, r.amplitude);
      return 0;
    }
    if (*list) {
      for (const auto& s : suite_names()) {
        std::printf("%s\n", s.c_str());
        for (const auto& [name, anchor] : suite_checks(s)) std::printf("  %-40s %s\n", name.c_str(), anchor.c_str());
      }
      return 0;
    }
  } catch (const UnsupportedOperation& e) {
    std::fprintf(stderr, "unsupported: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
