#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fixtures/signal_reference.hpp"
#include "ramsey/errors.hpp"
#include "ramsey/finite.hpp"
#include "ramsey/infinite.hpp"

using namespace ramsey;
namespace fx = ramsey::fixtures;

namespace {

double rel_err(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

const QuadratureConfig kQuad{1e-11, 1e-15, 4000};

}  // namespace

TEST_CASE("slab Green function: symmetry and boundary conditions") {
  const Complex beta(0.45, 0.2);
  const double R = 2.0;
  CHECK(green_1d(0.3, 1.1, beta, R) == green_1d(1.1, 0.3, beta, R));
  CHECK(std::abs(green_1d(0.7, R, beta, R)) <= 1e-15);
  // Neumann at 0: one-sided derivative vanishes
  const double h = 1e-6;
  const Complex d = (green_1d(h, 1.2, beta, R) - green_1d(0.0, 1.2, beta, R)) / h;
  CHECK(std::abs(d) <= 1e-6);
  // Jump of the derivative across x = x' is -1
  const double xp = 0.9;
  const Complex left = (green_1d(xp, xp, beta, R) - green_1d(xp - h, xp, beta, R)) / h;
  const Complex right = (green_1d(xp + h, xp, beta, R) - green_1d(xp, xp, beta, R)) / h;
  CHECK(std::abs(right - left + 1.0) <= 1e-5);
}

TEST_CASE("C and S integrals") {
  const ModelParams p;
  for (double dw : {0.0, 2.0}) {
    const Complex beta = beta_of(p, dw);
    const double x = 1.3;
    auto c = integrate<Complex>([&](double y) { return std::exp(-y * y) * std::cosh(beta * y); }, 0.0, x);
    auto s = integrate<Complex>([&](double y) { return std::exp(-y * y) * std::sinh(beta * y); }, 0.0, x);
    const auto cs = cs_integrals(x, p, dw);
    CHECK(rel_err(cs.C, c.value) <= 1e-12);
    CHECK(rel_err(cs.S, s.value) <= 1e-12);
    // C'(a) = exp(-1) cosh(beta a)
    const double h = 1e-5;
    const Complex dc = (cs_integrals(p.a + h, p, dw).C - cs_integrals(p.a - h, p, dw).C) / (2.0 * h);
    CHECK(rel_err(dc, std::exp(-1.0) * std::cosh(beta * p.a)) <= 1e-8);
    CHECK(rel_err(c_infinity(p, dw).unscaled(), cs_integrals(12.0, p, dw).C) <= 1e-12);
  }
}

TEST_CASE("slab signal matches the independent quadrature") {
  const ModelParams p;
  for (const auto& r : fx::kSlab) {
    INFO("R " << r.R << " dw " << r.delta_omega);
    CHECK(rel_err(s_r_1d(p, r.delta_omega, r.R, kQuad), {r.re, r.im}) <= 1e-9);
  }
}

TEST_CASE("disk signal matches the independent quadrature") {
  const ModelParams p;
  for (const auto& r : fx::kDisk) {
    INFO("R " << r.R << " dw " << r.delta_omega);
    CHECK(rel_err(s_r_2d(p, r.delta_omega, r.R, kQuad), {r.re, r.im}) <= 1e-9);
  }
}

TEST_CASE("finite signals converge to the unbounded limit") {
  const ModelParams p;
  for (double dw : {0.0, 2.0}) {
    CHECK(rel_err(s_r_1d(p, dw, 10.0, kQuad), s_inf_green(1, p, dw)) <= 1e-3);
    CHECK(rel_err(s_r_2d(p, dw, 10.0, kQuad), s_inf_green(2, p, dw)) <= 1e-3);
    CHECK(rel_err(s_r_1d(p, dw, 60.0, kQuad), s_inf_green(1, p, dw)) <= 1e-9);
    CHECK(rel_err(s_r_2d(p, dw, 60.0, kQuad), s_inf_green(2, p, dw)) <= 1e-9);
  }
  // monotone growth in R at zero detuning
  double prev = 0.0;
  for (double R : {1.0, 2.0, 3.0, 5.0, 8.0}) {
    const double v = s_r_1d(p, 0.0, R, kQuad).real();
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("large-R corrections") {
  const ModelParams p;
  for (double R : {5.0, 7.0}) {
    const Complex exact1 = s_r_1d(p, 0.0, R, kQuad);
    const auto approx1 = s_r_1d_correction(p, 0.0, R);
    const Complex sinf1 = s_inf_green(1, p, 0.0);
    // the correction gets the deficit right within a factor of 2
    const double ratio1 = std::abs(sinf1 - approx1.value) / std::abs(sinf1 - exact1);
    CHECK(ratio1 > 0.5);
    CHECK(ratio1 < 2.0);

    const Complex exact2 = s_r_2d(p, 0.0, R, kQuad);
    const auto approx2 = s_r_2d_correction(p, 0.0, R);
    const double ratio2 = std::abs(s_inf_green(2, p, 0.0) - approx2.value) / std::abs(s_inf_green(2, p, 0.0) - exact2);
    CHECK(ratio2 > 0.5);
    CHECK(ratio2 < 2.0);
  }
  CHECK(s_r_1d_correction(p, 0.0, 2.0).warning.has_value());
  CHECK(s_r_2d_correction(p, 0.0, 2.0).warning.has_value());
  CHECK_FALSE(s_r_1d_correction(p, 0.0, 8.0).warning.has_value());

  // The two 2D terms have equal size at the crossover radius.
  const double rc = s_r_2d_crossover_radius(p, 0.0);
  const auto [gauss, wall] = s_r_2d_correction_terms(p, 0.0, rc);
  CHECK(std::abs(gauss) == doctest::Approx(std::abs(wall)).epsilon(1e-8));
  CHECK(rc == doctest::Approx(0.646).epsilon(2e-3));
}

TEST_CASE("script-I integral") {
  const Complex beta(0.45, 0.1);
  for (double r : {0.5, 2.0, 5.0}) {
    auto q = integrate<Complex>(
        [&](double x) { return x * specfun::bessel_i(0, beta * x) * std::exp(-x * x); }, 0.0, r, {1e-13, 1e-300, 2000});
    CHECK(rel_err(script_i(r, beta, 1.0, kQuad), q.value) <= 1e-10);
  }
  CHECK(rel_err(script_i(12.0, beta, 1.0, kQuad), script_i_infinity(beta, 1.0)) <= 1e-12);
  const Complex tail = script_i_infinity(beta, 1.0) - script_i(4.0, beta, 1.0, kQuad);
  CHECK(rel_err(script_i_tail(4.0, beta, 1.0), tail) <= 0.1);
}

TEST_CASE("K0 denominator variant differs from the Dirichlet construction") {
  const ModelParams p;
  const Complex i0 = s_r_2d(p, 0.0, 2.0, kQuad, Denominator2d::kI0);
  const Complex k0 = s_r_2d(p, 0.0, 2.0, kQuad, Denominator2d::kK0);
  CHECK(std::abs(k0 - i0) > 0.1 * std::abs(i0));
}

TEST_CASE("density profile vanishes at the wall and reproduces the signal") {
  const ModelParams p;
  for (int dim : {1, 2}) {
    const Geometry g{dim, 2.0};
    std::vector<double> grid;
    const int n = 201;
    for (int i = 0; i < n; ++i) grid.push_back(2.0 * i / (n - 1));
    const auto prof = n_profile(dim, p, 1.0, g, grid, kQuad);
    CHECK(std::abs(prof.values.back()) <= 1e-12 * std::abs(prof.values.front()));
    // S = int lambda N over the region, Simpson on the grid
    Complex sum = 0.0;
    const double h = grid[1] - grid[0];
    for (int i = 0; i < n; ++i) {
      const double w = (i == 0 || i == n - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      const double r = grid[i];
      const double jac = dim == 1 ? 2.0 : 2.0 * std::numbers::pi * r;
      sum += w * jac * p.lambda0 * std::exp(-r * r) * prof.values[i];
    }
    sum *= h / 3.0;
    const Complex s = dim == 1 ? s_r_1d(p, 1.0, 2.0, kQuad) : s_r_2d(p, 1.0, 2.0, kQuad);
    INFO("dim " << dim);
    CHECK(rel_err(sum, s) <= 1e-6);
  }
  CHECK_THROWS_AS(n_profile(3, p, 0.0, Geometry{3, 2.0, 2.0}, {0.5}, kQuad), DomainError);
}

TEST_CASE("cylinder series") {
  const ModelParams p;
  const auto res = s_r_3d(p, 0.0, 3.0, 2.0, 4000, kQuad);
  CHECK(res.converged);
  CHECK(res.value.real() == doctest::Approx(0.0660035).epsilon(1e-5));
  CHECK(std::abs(res.terms.front().contribution) / std::abs(res.value) >= 0.8);
  for (const auto& t : res.terms) {
    CHECK(t.mode.m % 2 == 1);
    CHECK(t.weight == doctest::Approx(2.0 * 2.0 / (std::numbers::pi * std::numbers::pi * t.mode.m * t.mode.m)));
  }
  // a capped partial sum reports non-convergence
  const auto part = s_r_3d(p, 0.0, 3.0, 2.0, 8, kQuad);
  CHECK_FALSE(part.converged);
  CHECK(part.terms.size() == 8);
  // conjugation
  const auto plus = s_r_3d(p, 1.5, 3.0, 2.0, 50, kQuad);
  const auto minus = s_r_3d(p, -1.5, 3.0, 2.0, 50, kQuad);
  CHECK(rel_err(minus.value, std::conj(plus.value)) <= 1e-12);
}

TEST_CASE("mode source term: screened 2D signal") {
  const ModelParams p;
  const Complex beta = beta_of(p, 0.0);
  // kappa = beta reduces to the plain 2D signal
  CHECK(rel_err(s_r_2d_screened(p, 0.0, 3.0, beta, kQuad), s_r_2d(p, 0.0, 3.0, kQuad)) <= 1e-10);
  const Complex kappa = std::sqrt(beta * beta + 1.0);
  CHECK(rel_err(s_r_2d_screened(p, 0.0, kInfinity, kappa, kQuad), s_inf_green_screened(p, 0.0, kappa)) <= 1e-9);
}
