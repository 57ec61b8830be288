#include <cmath>
#include <functional>
#include <limits>

#include "doctest.h"
#include "pnspace/modulars.hpp"

using namespace pnspace;

namespace {

// independent quadrature oracle: composite Simpson on [a, b]
double simpson(const std::function<double(double)>& f, double a, double b,
               int intervals) {
  const double h = (b - a) / intervals;
  double acc = f(a) + f(b);
  for (int k = 1; k < intervals; ++k)
    acc += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

ExponentField const_field(const Grid& g, double v) {
  return ExponentField::constant(g, v);
}

} // namespace

TEST_SUITE("modulars") {

TEST_CASE("lebesgue modular on constants") {
  const Grid sq = make_grid_2d(0.0, 1.0, 9, 0.0, 1.0, 9);
  CHECK(lebesgue_modular(GridFunction::constant(sq, 1.0), const_field(sq, 3.3)) ==
        doctest::Approx(1.0).epsilon(1e-14));
  const Grid g = make_grid_1d(0.0, 1.0, 33);
  CHECK(lebesgue_modular(GridFunction::constant(g, 2.0), const_field(g, 2.0)) ==
        doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("lebesgue modular with variable exponent vs quadrature oracle") {
  const Grid g = make_grid_1d(0.0, 1.0, 4001);
  const GridFunction u = make_grid_function(g, [](double x) { return x; });
  const ExponentField p = ExponentField::m0(
      make_grid_function(g, [](double x) { return 2.0 + x; }));
  const double oracle =
      simpson([](double x) { return std::pow(x, 2.0 + x); }, 0.0, 1.0, 200000);
  CHECK(lebesgue_modular(u, p) == doctest::Approx(oracle).epsilon(1e-7));
}

TEST_CASE("mixed modular basics") {
  const Grid g = make_grid_1d(0.0, 1.0, 1001);
  CHECK(mixed_modular(GridFunction::constant(g, 4.2), const_field(g, 1.0),
                      const_field(g, 1.0)) == doctest::Approx(0.0));
  const GridFunction x = make_grid_function(g, [](double v) { return v; });
  CHECK(mixed_modular(x, const_field(g, 1.0), const_field(g, 1.0)) ==
        doctest::Approx(0.5).epsilon(1e-12));
  const GridFunction x2 = make_grid_function(g, [](double v) { return v * v; });
  CHECK(mixed_modular(x2, const_field(g, 0.0), const_field(g, 2.0)) ==
        doctest::Approx(4.0 / 3.0).epsilon(1e-5));
}

TEST_CASE("mixed modular shift invariance holds exactly when gamma == 0") {
  const Grid g = make_grid_1d(0.0, 1.0, 201);
  const GridFunction u =
      make_grid_function(g, [](double x) { return std::sin(3.0 * x); });
  const GridFunction shifted = map(u, [](double v) { return v + 0.75; });
  const ExponentField beta = const_field(g, 2.0);
  CHECK(mixed_modular(u, const_field(g, 0.0), beta) ==
        doctest::Approx(mixed_modular(shifted, const_field(g, 0.0), beta))
            .epsilon(1e-12));
  // with gamma > 0 the zeroth factor sees the shift
  CHECK(mixed_modular(u, const_field(g, 1.0), beta) !=
        doctest::Approx(mixed_modular(shifted, const_field(g, 1.0), beta))
            .epsilon(1e-6));
}

TEST_CASE("pn modular of the constant-exponent first-order space") {
  const Grid g = make_grid_1d(0.0, 1.0, 2001);
  const SpaceSpec s1 = SpaceSpec::s_m_const(1, 1.0, 1.0, false);
  CHECK(pn_modular(GridFunction::zeros(g), s1) == 0.0);
  const GridFunction x = make_grid_function(g, [](double v) { return v; });
  // int x^2 + int x = 1/3 + 1/2
  CHECK(pn_modular(x, s1) == doctest::Approx(5.0 / 6.0).epsilon(1e-6));

  const SpaceSpec ring1 = SpaceSpec::s_m_const(1, 1.0, 1.0, true);
  CHECK(pn_modular(x, ring1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("pn modular with m = 2 includes second derivatives") {
  const Grid g = make_grid_1d(0.0, 1.0, 2001);
  const GridFunction x2 = make_grid_function(g, [](double v) { return v * v; });
  const SpaceSpec s2 = SpaceSpec::s_m_const(2, 0.0, 1.0, false);
  // int x^2 + int 2x + int 2 = 1/3 + 1 + 2
  CHECK(pn_modular(x2, s2) == doctest::Approx(1.0 / 3.0 + 3.0).epsilon(1e-6));
  const SpaceSpec ring2 = SpaceSpec::s_m_const(2, 0.0, 1.0, true);
  CHECK(pn_modular(x2, ring2) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("2d m = 2 mixed partial enters only behind the flag") {
  const Grid g = make_grid_2d(0.0, 1.0, 65, 0.0, 1.0, 65);
  const GridFunction uxy =
      make_grid_function(g, [](double x, double y) { return x * y; });
  const SpaceSpec plain = SpaceSpec::s_m_const(2, 0.0, 2.0, false, false);
  const SpaceSpec mixed = SpaceSpec::s_m_const(2, 0.0, 2.0, false, true);
  // D1 u = y, D2 u = x, D_i^2 u = 0, D1D2 u = 1
  const double base = pn_modular(uxy, plain);
  CHECK(base == doctest::Approx(1.0 / 9.0 + 2.0 / 3.0).epsilon(1e-3));
  CHECK(pn_modular(uxy, mixed) == doctest::Approx(base + 1.0).epsilon(1e-12));
}

TEST_CASE("s2 tilde three-term functional") {
  const Grid g = make_grid_1d(0.0, 1.0, 4001);
  const SpaceSpec st = SpaceSpec::s2_tilde_1d(2.0, 1.5);
  const GridFunction x = make_grid_function(g, [](double v) { return v; });
  // alpha=2, beta=1.5: int x^3.5 + int x^0.5 * 1 + 0
  const double expected = 1.0 / 4.5 + 2.0 / 3.0;
  CHECK(pn_modular(x, st) == doctest::Approx(expected).epsilon(1e-4));
}

TEST_CASE("s2 tilde reports divergence as +inf when alpha < beta at a zero") {
  const Grid g = make_grid_1d(0.0, 1.0, 101);
  // alpha - beta = -0.8 and u = x vanishes at a node with Du != 0
  const SpaceSpec st = SpaceSpec::s2_tilde_1d(1.2, 2.0);
  const GridFunction x = make_grid_function(g, [](double v) { return v; });
  CHECK(std::isinf(pn_modular(x, st)));
}

TEST_CASE("variable-exponent pn modulars") {
  const Grid g = make_grid_1d(0.0, 1.0, 501);
  const GridFunction x = make_grid_function(g, [](double v) { return v; });
  const ExponentField gamma = const_field(g, 1.0);
  const ExponentField beta = const_field(g, 1.0);
  const SpaceSpec v = SpaceSpec::s1_var(gamma, beta);
  CHECK(pn_modular(x, v) == doctest::Approx(5.0 / 6.0).epsilon(1e-5));

  const ExponentField theta = const_field(g, 3.0);
  const SpaceSpec vt = SpaceSpec::s1_var_theta(gamma, beta, theta, 0.5);
  // int x^3 + int x = 1/4 + 1/2
  CHECK(pn_modular(x, vt) == doctest::Approx(0.75).epsilon(1e-5));
}

TEST_CASE("space spec validation") {
  const Grid g = make_grid_1d(0.0, 1.0, 33);
  CHECK_THROWS_AS(SpaceSpec::s_m_const(3, 1.0, 1.0), Error);
  CHECK_THROWS_AS(SpaceSpec::s_m_const(1, -0.5, 1.0), Error);
  CHECK_THROWS_AS(SpaceSpec::s_m_const(1, 1.0, 0.5), Error);
  CHECK_THROWS_AS(SpaceSpec::s2_tilde_1d(0.5, 2.0), Error); // alpha <= beta-1
  CHECK_THROWS_AS(SpaceSpec::s2_tilde_1d(1.0, 0.9), Error);
  const ExponentField one = const_field(g, 1.0);
  const ExponentField three = const_field(g, 3.0);
  CHECK_THROWS_AS(SpaceSpec::s1_var_theta(one, one, one, 0.5), Error);
  CHECK_NOTHROW(SpaceSpec::s1_var_theta(one, one, three, 0.5));
  CHECK_THROWS_AS(SpaceSpec::s1_var_theta(one, one, three, 0.0), Error);
}

TEST_CASE("log modular conventions") {
  const Grid g = make_grid_1d(0.0, 1.0, 101);
  const ExponentField one = const_field(g, 1.0);
  CHECK(log_modular(GridFunction::constant(g, 1.0), one, one) == 0.0);
  const double e = std::exp(1.0);
  CHECK(log_modular(GridFunction::constant(g, e), one, one) ==
        doctest::Approx(e).epsilon(1e-13));
  // a node with u = 0 contributes nothing
  const GridFunction spike = make_grid_function(
      g, [](double x) { return x < 0.5 ? 0.0 : std::exp(1.0); });
  const double val = log_modular(spike, one, one);
  CHECK(std::isfinite(val));
  CHECK(val < e);
}

TEST_CASE("boundary pn modular") {
  const Grid g = make_grid_1d(0.0, 1.0, 65);
  const GridFunction x = make_grid_function(g, [](double v) { return v; });
  CHECK(boundary_pn_modular(x, 3.0) == 1.0);
  CHECK(boundary_pn_modular(enforce_vanishing_boundary(x), 3.0) == 0.0);
  const Grid sq = make_grid_2d(0.0, 1.0, 9, 0.0, 1.0, 9);
  CHECK(boundary_pn_modular(GridFunction::constant(sq, 1.0), 2.0) ==
        doctest::Approx(4.0).epsilon(1e-14));
  CHECK_THROWS_AS(boundary_pn_modular(x, 0.5), Error);
}

TEST_CASE("monotonicity of the lebesgue modular") {
  const Grid g = make_grid_1d(0.0, 2.0, 257);
  const GridFunction u =
      make_grid_function(g, [](double x) { return 0.5 * std::sin(5.0 * x); });
  const GridFunction v = map(u, [](double t) { return 2.0 * t + (t >= 0 ? 0.1 : -0.1); });
  const ExponentField p = ExponentField::m0(
      make_grid_function(g, [](double x) { return 1.5 + 0.5 * std::cos(x); }));
  CHECK(lebesgue_modular(u, p) <= lebesgue_modular(v, p));
}

TEST_CASE("scaling law at constant exponent") {
  const Grid g = make_grid_1d(0.0, 1.0, 257);
  const GridFunction u =
      make_grid_function(g, [](double x) { return std::sin(7.0 * x) + 0.3; });
  const ExponentField p = const_field(g, 2.5);
  const double base = lebesgue_modular(u, p);
  const double scaled = lebesgue_modular(3.0 * u, p);
  CHECK(scaled ==
        doctest::Approx(std::pow(3.0, 2.5) * base).epsilon(1e-12));
}

TEST_CASE("pn modular vanishes only at the zero function") {
  const Grid g = make_grid_1d(0.0, 1.0, 101);
  const SpaceSpec s1 = SpaceSpec::s_m_const(1, 1.0, 2.0, false);
  CHECK(pn_modular(GridFunction::zeros(g), s1) == 0.0);
  // any function with a nonzero node has positive zeroth-order term
  const GridFunction tiny = make_grid_function(
      g, [](double x) { return x == 0.5 ? 1e-5 : 0.0; });
  CHECK(pn_modular(tiny, s1) > 0.0);
}

TEST_CASE("pow_product zero short-circuit") {
  CHECK(pow_product({{0.0, -0.8}, {0.0, 3.0}}) == 0.0);
  CHECK(pow_product({{0.0, -0.8}, {1.0, 3.0}}) ==
        std::numeric_limits<double>::infinity());
  CHECK(pow_product({{2.0, 2.0}, {3.0, 1.0}}) == doctest::Approx(12.0));
  CHECK(pow_product({{-2.0, 2.0}, {3.0, 0.0}}) == doctest::Approx(4.0));
}

} // TEST_SUITE
