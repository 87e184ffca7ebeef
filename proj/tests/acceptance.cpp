// Runs the nine acceptance criteria and prints one PASS/FAIL line each.
//   acceptance            all criteria
//   acceptance 2 5        selected criteria
//   acceptance -v ...     also list the individual checks

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "dense_oracle.hpp"

#include "bracketlab/harness.hpp"

using namespace bracketlab;

namespace {

bool verbose = false;

struct Outcome {
  bool passed = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool starts_with(const std::string& s, const std::string& p) { return s.compare(0, p.size(), p) == 0; }

// Runs the groups of `system` holding checks that start with one of `prefixes`
// and folds the matching checks into `out`. Returns the run's wall clock.
double run(const std::string& system, const std::vector<std::string>& prefixes, Outcome& out) {
  SuiteConfig cfg;
  cfg.system = system;
  std::vector<std::string> only;
  for (const auto& [name, anchor] : suite_checks(system))
    for (const auto& p : prefixes)
      if (starts_with(name, p)) only.push_back(name);
  if (only.empty()) {
    out.passed = false;
    out.detail += " [" + system + ": no matching checks]";
    return 0.0;
  }
  const Report r = run_suite(cfg, only);
  int failed = 0, counted = 0;
  for (const auto& ck : r.checks) {
    if (std::find(only.begin(), only.end(), ck.name) == only.end()) continue;
    ++counted;
    if (!ck.passed) ++failed;
    if (verbose || !ck.passed)
      std::fprintf(stderr, "    %-4s %s/%-36s %.3e %s %.1e%s%s\n", ck.passed ? "ok" : "FAIL", system.c_str(),
                   ck.name.c_str(), ck.residual, ck.bound == Bound::upper ? "<=" : "> ", ck.tolerance,
                   ck.note.empty() ? "" : "  ", ck.note.c_str());
  }
  if (failed) out.passed = false;
  char buf[160];
  std::snprintf(buf, sizeof buf, " %s %d/%d %.1fs;", system.c_str(), counted - failed, counted,
                r.wallclock_seconds);
  out.detail += buf;
  return r.wallclock_seconds;
}

void limit(Outcome& out, double seconds, double budget, const std::string& what) {
  if (seconds < budget) return;
  out.passed = false;
  out.detail += " [" + what + " over " + std::to_string(static_cast<int>(budget)) + " s]";
}

Outcome tainted_vorticity() {
  Outcome o;
  const double t = run("vorticity",
                       {"jacobi.tainted.raw_state", "jacobi.tainted.solenoidal_state", "jacobi.corrected.raw_state"}, o);
  limit(o, t, 60.0, "vorticity");
  return o;
}

Outcome projector_suite() {
  Outcome o;
  for (const char* s : {"incompressible_mhd", "vlasov_poisson", "quasineutral"})
    limit(o, run(s, {"projector."}, o), 60.0, s);
  return o;
}

Outcome dirac_identities() {
  Outcome o;
  for (const char* s : {"incompressible_mhd", "vlasov_poisson", "quasineutral"}) run(s, {"dirac."}, o);
  return o;
}

Outcome closed_forms() {
  Outcome o;
  for (const char* s : {"incompressible_mhd", "vlasov_poisson", "quasineutral"}) run(s, {"closed_form."}, o);
  return o;
}

Outcome casimirs() {
  Outcome o;
  run("vorticity", {"casimir.div_omega.corrected"}, o);
  run("compressible_mhd", {"casimir.div_B."}, o);
  run("vlasov_maxwell", {"casimir.div_B.projected", "casimir.gauss.projected"}, o);
  run("incompressible_mhd", {"casimir.incompressibility.dirac"}, o);
  run("vlasov_poisson", {"casimir.poisson.dirac"}, o);
  return o;
}

Outcome dispersion() {
  Outcome o;
  limit(o, run("vlasov_maxwell", {"dispersion."}, o), 30.0, "dispersion");
  return o;
}

Outcome evolution() {
  Outcome o;
  run("incompressible_mhd", {"evolution."}, o);
  return o;
}

Outcome unboundedness() {
  Outcome o;
  run("quasineutral", {"unboundedness."}, o);
  return o;
}

Outcome dense_oracle() {
  Outcome o;
  double worst = 0.0;
  std::string which;
  for (const auto& [name, d] : oracle::toy_equivalence(3, 16)) {
    if (verbose) std::fprintf(stderr, "    %-4s toy/%-10s %.3e <= 1e-10\n", d <= 1e-10 ? "ok" : "FAIL", name.c_str(), d);
    if (!(d <= worst)) {
      worst = d;
      which = name;
    }
  }
  o.passed = worst <= 1e-10;
  char buf[96];
  std::snprintf(buf, sizeof buf, " worst %s %.2e (tol 1e-10);", which.c_str(), worst);
  o.detail = buf;
  return o;
}

struct Criterion {
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {"tainted vorticity Jacobi failure and its corrections", tainted_vorticity},
      {"projector identities", projector_suite},
      {"Dirac operator identities", dirac_identities},
      {"closed-form agreement", closed_forms},
      {"Casimir suite with negative control", casimirs},
      {"constraint-wave dispersion", dispersion},
      {"conservation under reduced evolution", evolution},
      {"quasineutral unboundedness signature", unboundedness},
      {"dense-matrix oracle equivalence", dense_oracle},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "-v") == 0) {
      verbose = true;
      continue;
    }
    const int n = std::atoi(argv[i]);
    if (n < 1 || n > static_cast<int>(all.size())) {
      std::fprintf(stderr, "usage: acceptance [-v] [criterion 1-%zu ...]\n", all.size());
      return 2;
    }
    selected.push_back(n);
  }
  if (selected.empty())
    for (int i = 1; i <= static_cast<int>(all.size()); ++i) selected.push_back(i);

  bool ok = true;
  for (int n : selected) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = all[n - 1].run();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string(" error: ") + e.what();
    }
    ok = ok && o.passed;
    std::printf("criterion %d %s: %s (%.1f s)%s\n", n, o.passed ? "PASS" : "FAIL", all[n - 1].title,
                seconds_since(t0), o.detail.c_str());
    std::fflush(stdout);
  }
  return ok ? 0 : 1;
}
