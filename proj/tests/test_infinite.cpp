#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fixtures/signal_reference.hpp"
#include "ramsey/errors.hpp"
#include "ramsey/infinite.hpp"

using namespace ramsey;
namespace fx = ramsey::fixtures;

namespace {

double rel_err(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

Complex closed(int dim, const ModelParams& p, double dw) { return dim == 1 ? s_inf_1d(p, dw) : s_inf_2d(p, dw); }

}  // namespace

TEST_CASE("closed forms match the independent truncated-kernel quadrature") {
  const ModelParams p;
  for (const auto& r : fx::kTruncatedFourier) {
    INFO("dim " << r.dim << " dw " << r.delta_omega);
    CHECK(rel_err(closed(r.dim, p, r.delta_omega), {r.re, r.im}) <= 1e-12);
  }
}

TEST_CASE("Ramsey time integral equals the closed forms") {
  const ModelParams p;
  const QuadratureConfig quad{1e-12, 1e-16, 2000};
  for (const auto& r : fx::kRamseyIntegral) {
    INFO("dim " << r.dim << " dw " << r.delta_omega);
    CHECK(rel_err(s_inf_ramsey(r.dim, p, r.delta_omega, quad), {r.re, r.im}) <= 1e-10);
    CHECK(rel_err(s_inf_ramsey(r.dim, p, r.delta_omega, quad), closed(r.dim, p, r.delta_omega)) <= 1e-8);
  }
}

TEST_CASE("unbounded signals at the reference point") {
  const ModelParams p;
  CHECK(s_inf_1d(p, 0.0).real() == doctest::Approx(0.50848002308244708).epsilon(1e-13));
  CHECK(s_inf_2d(p, 0.0).real() == doctest::Approx(0.31665028336932497).epsilon(1e-13));
  CHECK(s_inf_green(1, p, 0.0).real() == doctest::Approx(0.508659632032897).epsilon(1e-12));
  CHECK(s_inf_green(2, p, 0.0).real() == doctest::Approx(0.316841340451131).epsilon(1e-12));
  CHECK(s_inf_1d(p, 0.0).imag() == 0.0);
}

TEST_CASE("conjugation symmetry of the unbounded evaluators") {
  const ModelParams p;
  for (double dw : {0.25, 1.0, 6.0, 40.0}) {
    for (int dim : {1, 2}) {
      CHECK(closed(dim, p, -dw) == std::conj(closed(dim, p, dw)));
      CHECK(s_inf_green(dim, p, -dw) == std::conj(s_inf_green(dim, p, dw)));
      CHECK(s_inf_lorentz_limit(dim, p, -dw) == std::conj(s_inf_lorentz_limit(dim, p, dw)));
      CHECK(rel_err(s_inf_ramsey(dim, p, -dw, {}), std::conj(s_inf_ramsey(dim, p, dw, {}))) <= 1e-12);
    }
  }
}

TEST_CASE("gamma = 0 diverges at zero detuning") {
  ModelParams p;
  p.gamma = 0.0;
  CHECK_THROWS_AS(s_inf_1d(p, 0.0), DivergenceError);
  CHECK_THROWS_AS(s_inf_2d(p, 0.0), DivergenceError);
  CHECK_THROWS_AS(s_inf_ramsey(1, p, 0.0, {}), DivergenceError);
  CHECK_NOTHROW(s_inf_1d(p, 1.0));
}

TEST_CASE("signal scales as lambda0^2") {
  ModelParams p;
  const Complex s1 = s_inf_2d(p, 1.5);
  p.lambda0 = 3.0;
  CHECK(rel_err(s_inf_2d(p, 1.5), 9.0 * s1) <= 1e-14);
}

TEST_CASE("Lorentzian limit") {
  ModelParams p;
  p.nu = 1e4;
  p.gamma = 10.0;
  CHECK(lorentz_limit_width(1, p) == doctest::Approx(10.5));
  CHECK(lorentz_limit_width(2, p) == doctest::Approx(11.0));
  CHECK_FALSE(lorentz_limit_warning(p).has_value());
  // Closed forms approach the limit when gamma tau_D >> 1.
  for (int dim : {1, 2}) {
    for (double dw : {0.0, 5.0, 20.0}) {
      CHECK(rel_err(closed(dim, p, dw), s_inf_lorentz_limit(dim, p, dw)) <= 0.03);
    }
  }
  // Half width of Re of the limit profile is exactly the limit width.
  const double w = lorentz_limit_width(1, p);
  CHECK(s_inf_lorentz_limit(1, p, w).real() == doctest::Approx(0.5 * s_inf_lorentz_limit(1, p, 0.0).real()));
  CHECK(lorentz_limit_warning(ModelParams{}).has_value());
}

TEST_CASE("Voigt kernel against direct quadrature and its small-k expansion") {
  const ModelParams p;
  for (double dw : {0.0, 3.0}) {
    const Complex alpha(p.nu + p.gamma, dw);
    for (double k : {0.01, 0.5, 3.0, 20.0, 100.0}) {
      auto f = [&](double xi) { return std::exp(-k * k * xi * xi * p.v0 * p.v0 / 4.0 - alpha * xi); };
      const auto q = integrate_to_infinity<Complex>(f, 0.0, 1.0 / alpha.real(), {1e-13, 1e-300, 2000});
      INFO("k " << k << " dw " << dw);
      CHECK(rel_err(voigt_fhat(k, p, dw), q.value) <= 1e-11);
    }
    // 1 - alpha Fhat = k^2 v0^2 / (2 alpha^2) - 3 k^4 v0^4 / (4 alpha^4) + ...
    for (double k : {1e-3, 1e-2, 0.1}) {
      const Complex x = k * k * p.v0 * p.v0 / (alpha * alpha);
      const Complex series = 0.5 * x - 0.75 * x * x + 15.0 / 8.0 * x * x * x;
      CHECK(rel_err(voigt_deficit(k, p, dw), series) <= 1e-6);
    }
  }
  CHECK(voigt_deficit(0.0, p, 1.0) == Complex(0.0));
}

TEST_CASE("real-space kernel moments") {
  const ModelParams p;
  const Complex alpha(p.nu + p.gamma, 0.0);
  // 1D: 2 int_0^inf F dx = 1/alpha
  auto f = [&](double s) {
    const double r = 0.1 * std::exp(s);
    return kernel_f(r, p, 1) * r;
  };
  auto res = integrate_pieces<Complex>(f, {std::log(1e-16), -8.0, -2.0, 0.0, 2.0, 4.0, 7.0}, {1e-12, 1e-300, 4000});
  CHECK(rel_err(2.0 * res.value, 1.0 / alpha) <= 1e-9);
  CHECK_THROWS_AS(kernel_f(0.0, p, 1), DomainError);
  CHECK_THROWS_AS(kernel_f(0.1, p, 4), DomainError);
  // Far from the origin the kernel is exponentially small and positive.
  CHECK(kernel_f(5.0, p, 3).real() >= 0.0);
  CHECK(kernel_f(0.05, p, 3).real() > kernel_f(0.1, p, 3).real());
}

TEST_CASE("Taylor coefficients of an analytic test function") {
  auto s = [](double w) { return 1.0 / Complex(2.0, w); };
  const auto t = taylor_signal(s, 0.5);
  CHECK(std::abs(t.c[0] - 0.5) <= 1e-15);
  CHECK(std::abs(t.c[1] - Complex(0.0, -0.25)) <= 1e-10);
  CHECK(std::abs(t.c[2] - Complex(-0.125, 0.0)) <= 1e-9);
  // Symmetric profile: S'(0) purely imaginary, S''(0) real for the closed forms.
  const ModelParams p;
  const auto u = taylor_signal([&](double w) { return s_inf_1d(p, w); }, 0.5);
  CHECK(std::abs(u.c[1].real()) <= 1e-8);
  CHECK(u.c[2].real() < 0.0);
  CHECK_THROWS_AS(taylor_signal(s, 0.5, 3), DomainError);
}

TEST_CASE("limits of the unbounded signals") {
  // gamma tau_D >> 1 with nu 1e5, gamma 100
  ModelParams p;
  p.nu = 1e5;
  p.gamma = 100.0;
  const double tau_d = p.nu * (p.a / p.v0) * (p.a / p.v0);
  CHECK(std::abs(s_inf_1d(p, 0.0).real() / (std::sqrt(std::numbers::pi / 2.0) / (p.gamma + 0.5 / tau_d)) - 1.0) <= 0.05);
  CHECK(std::abs(s_inf_2d(p, 0.0).real() / (std::numbers::pi / 2.0 / (p.gamma + 1.0 / tau_d)) - 1.0) <= 0.05);

  // weight collapses at tau = 0 when gamma is large: S -> c / alpha0
  ModelParams q;
  q.gamma = 50.0;
  q.nu = 1e5;
  q.v0 = 10.0;
  const double c1 = std::sqrt(std::numbers::pi / 2.0);
  CHECK(std::abs(s_inf_ramsey(1, q, 0.0, {}).real() * q.gamma / c1 - 1.0) <= 1e-3);
}

TEST_CASE("Voigt kernel is positive and reduces to 1/alpha at k = 0") {
  const ModelParams p;
  for (double dw : {0.0, 5.0, -40.0}) {
    const Complex alpha(p.nu + p.gamma, dw);
    CHECK(std::abs(voigt_fhat(0.0, p, dw) - 1.0 / alpha) <= 1e-18);
    for (double k : {0.1, 1.0, 10.0, 1e3}) CHECK(voigt_fhat(k, p, dw).real() > 0.0);
  }
}

TEST_CASE("Taylor coefficients of the Lorentzian limit") {
  const ModelParams p;
  const double w = lorentz_limit_width(1, p) - p.gamma;
  const auto t = taylor_signal([&](double dw) { return s_inf_lorentz_limit(1, p, dw); }, 0.5);
  const Complex c0 = t.c[0];
  CHECK(std::abs(t.c[1] - Complex(0.0, -1.0) * c0 / (p.gamma + w)) <= 1e-9 * std::abs(c0));
  CHECK(std::abs(t.c[2] + c0 / ((p.gamma + w) * (p.gamma + w))) <= 1e-8 * std::abs(c0));
}

TEST_CASE("one-dimensional kernel decays fast away from the origin") {
  const ModelParams p;
  const double alpha = p.nu + p.gamma;
  // direct quadrature of W0 int exp(-alpha xi - r^2/(xi v0)^2) dxi / xi
  auto direct = [&](double r) {
    auto f = [&](double xi) { return std::exp(-alpha * xi - r * r / (xi * xi * p.v0 * p.v0)) / xi; };
    const double peak = std::cbrt(2.0 * r * r / (alpha * p.v0 * p.v0));
    auto q = integrate_pieces<double>(f, {0.0, 0.25 * peak, peak, 4.0 * peak, 40.0 / alpha + 4.0 * peak},
                                      {1e-12, 1e-300, 4000});
    return q.value / (std::sqrt(std::numbers::pi) * p.v0);
  };
  CHECK(kernel_f(p.a, p, 1).real() == doctest::Approx(direct(p.a)).epsilon(1e-9));
  CHECK(kernel_f(5.0 * p.a, p, 1).real() == doctest::Approx(direct(5.0 * p.a)).epsilon(1e-9));
  const double ratio = kernel_f(5.0 * p.a, p, 1).real() / kernel_f(p.a, p, 1).real();
  // a Lorentzian-like tail would give a ratio of order 1/25
  CHECK(ratio < 1e-6);
  CHECK(ratio > 0.0);
}
