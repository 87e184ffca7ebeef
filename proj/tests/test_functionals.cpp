#include <cmath>

#include "doctest.h"

#include "bracketlab/calculus.hpp"
#include "bracketlab/functionals.hpp"
#include "bracketlab/krylov.hpp"

using namespace bracketlab;
namespace c = calculus;

namespace {

const Schema kSchema{{"u", Support::spatial, 1}, {"w", Support::spatial, 3}};

State sample(std::uint64_t seed) { return random_state(kSchema, Grid::cube(3, 8), {seed, 2, false, 1.0}); }

}  // namespace

TEST_CASE("all functional variants agree with finite differences") {
  const State chi = sample(1), d = sample(2), kernel = sample(3);

  const Functional lin = Functional::linear(kernel, 2.0);
  CHECK(evaluate(lin, chi) == doctest::Approx(pairing(kernel, chi) + 2.0));
  CHECK(norm(derivative(lin, chi) - kernel) == 0.0);

  // 1/2 <(-lap) chi, chi>
  const Functional quad = Functional::quadratic([](const State& s) {
    State k = s.zeros_like();
    k[0] = -1.0 * c::lap(s[0]);
    k[1] = -1.0 * c::lap(s[1]);
    return k;
  });
  CHECK(directional_check(quad, chi, d, 1e-3) < 1e-9);

  // int u^4 / 4 + |w|^2 / 2 as a black box and analytically
  auto value = [](const State& s) {
    Field e = c::times(c::times(s[0], s[0]), c::times(s[0], s[0]));
    e *= 0.25;
    e += 0.5 * c::dot(s[1], s[1]);
    return integrate(e);
  };
  auto gradient = [](const State& s) {
    State k = s.zeros_like();
    k[0] = c::times(c::times(s[0], s[0]), s[0]);
    k[1] = s[1];
    return k;
  };
  const Functional ana = Functional::analytic(value, gradient);
  CHECK(directional_check(ana, chi, d, 1e-4) < 1e-6 * norm(d));

  const State small = 1e-1 * sample(4);
  const Functional box = Functional::black_box(value);
  const double rel = norm(derivative(box, small) - derivative(ana, small)) / norm(derivative(ana, small));
  CHECK(rel < 1e-6);
  CHECK(evaluate(box, small) == doctest::Approx(evaluate(ana, small)));
}

TEST_CASE("combine adds linear and quadratic functionals") {
  const State chi = sample(6), a = sample(7), b = sample(8);
  const Functional F = combine(2.0, Functional::linear(a, 1.0), -1.0, Functional::linear(b, 0.5));
  CHECK(evaluate(F, chi) == doctest::Approx(2.0 * (pairing(a, chi) + 1.0) - (pairing(b, chi) + 0.5)));
  const Functional K1 = Functional::quadratic([](const State& s) { return s; });
  const Functional K2 = Functional::quadratic([](const State& s) { return 3.0 * s; });
  const Functional K = combine(1.0, K1, 2.0, K2);
  CHECK(evaluate(K, chi) == doctest::Approx(3.5 * pairing(chi, chi)));
  CHECK_THROWS(combine(1.0, K1, 1.0, Functional::linear(a)));
}

TEST_CASE("Krylov solvers on a small operator") {
  const GridPtr g = Grid::cube(3, 8);
  const Schema s{{"u", Support::spatial, 1}};
  // 1 - lap is symmetric positive definite
  const krylov::LinearOp spd = [](const State& x) {
    State y = x;
    y[0] -= c::lap(x[0]);
    return y;
  };
  const State b = random_state(s, g, {9, 3, false, 1.0});
  const auto cg = krylov::conjugate_gradient(spd, b, 1e-12, 200);
  CHECK(cg.converged);
  CHECK(norm(spd(cg.x) - b) <= 1e-11 * norm(b));

  // d/dx + 2 is neither symmetric nor singular
  const krylov::LinearOp ns = [](const State& x) {
    State y = 2.0 * x;
    y[0] += c::partial(x[0], 0);
    return y;
  };
  const krylov::LinearOp nsT = [](const State& x) {
    State y = 2.0 * x;
    y[0] -= c::partial(x[0], 0);
    return y;
  };
  const auto gm = krylov::gmres(ns, b, {}, 1e-12, 400);
  CHECK(gm.converged);
  CHECK(norm(ns(gm.x) - b) <= 1e-11 * norm(b));
  const auto nr = krylov::cgnr(ns, nsT, b, 1e-12, 400);
  CHECK(nr.converged);
  CHECK(norm(nr.x - gm.x) <= 1e-9 * norm(gm.x));

  // a zero right-hand side returns zero immediately
  const auto z = krylov::conjugate_gradient(spd, b.zeros_like(), 1e-12, 10);
  CHECK(z.converged);
  CHECK(norm(z.x) == 0.0);
}
