#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fixtures/specfun_reference.hpp"
#include "ramsey/errors.hpp"
#include "ramsey/quadrature.hpp"
#include "ramsey/specfun.hpp"

using ramsey::Complex;
namespace sf = ramsey::specfun;
namespace fx = ramsey::fixtures;

namespace {

double rel_err(Complex got, Complex want) {
  const double scale = std::abs(want);
  return scale == 0.0 ? std::abs(got) : std::abs(got - want) / scale;
}

}  // namespace

TEST_CASE("erfcx matches high-precision values in the right half-plane") {
  double worst = 0.0;
  for (const auto& r : fx::kErfcx) {
    const Complex z(r.re, r.im);
    if (z.real() < 0.0) continue;
    const double e = rel_err(sf::erfcx(z), Complex(r.value_re, r.value_im));
    worst = std::max(worst, e);
    INFO("z = " << z.real() << " " << z.imag());
    CHECK(e <= 1e-12);
  }
  MESSAGE("erfcx worst relative error " << worst);
}

TEST_CASE("erfcx left half-plane uses the reflection formula") {
  for (const auto& r : fx::kErfcx) {
    const Complex z(r.re, r.im);
    if (z.real() >= 0.0) continue;
    const Complex w = z * z;
    if (w.real() > 700.0) {
      CHECK_THROWS_AS(sf::erfcx(z), ramsey::OverflowError);
      continue;
    }
    // Accuracy degrades with the cancellation in 2 exp(z^2) - erfcx(-z).
    INFO("z = " << z.real() << " " << z.imag());
    CHECK(rel_err(sf::erfcx(z), Complex(r.value_re, r.value_im)) <= 1e-9);
  }
}

TEST_CASE("erfcx spot values") {
  CHECK(sf::erfcx(0.0) == Complex(1.0));
  const double x = 10.0;
  const double lead = 1.0 / (std::sqrt(std::numbers::pi) * x) * (1.0 - 1.0 / (2.0 * x * x));
  CHECK(std::abs(sf::erfcx(x) - lead) < 1e-3);
}

TEST_CASE("erfcx branches agree on the crossover annulus") {
  // Series inside |z| < 6 (Re z < 1.5); asymptotic or continued fraction outside.
  for (int k = 0; k < 64; ++k) {
    const double t = -std::numbers::pi / 2 + std::numbers::pi * k / 63.0;
    for (double r : {5.8, 6.0, 6.2}) {
      const Complex z = std::polar(r, t);
      if (z.real() > 1.5 || z.real() < 0.0) continue;
      const Complex s = sf::detail::erfcx_series(z);
      const Complex c = z.real() < 0.5 ? sf::detail::erfcx_asymptotic(z)
                                       : sf::detail::erfcx_continued_fraction(z);
      INFO("z = " << z);
      CHECK(rel_err(s, c) <= 1e-12);
    }
  }
  for (int k = 0; k < 40; ++k) {
    const Complex z(1.5, -5.8 + 11.6 * k / 39.0);
    CHECK(rel_err(sf::detail::erfcx_series(z), sf::detail::erfcx_continued_fraction(z)) <= 1e-12);
  }
}

TEST_CASE("erfcx agrees with quadrature of its integral representation") {
  // erfcx(z) = (2/sqrt(pi)) int_0^inf exp(-t^2 - 2 z t) dt for Re z >= 0.
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> re(0.0, 4.0), im(-4.0, 4.0);
  ramsey::QuadratureConfig cfg{1e-13, 1e-300, 4000};
  for (int i = 0; i < 20; ++i) {
    const Complex z(re(rng), im(rng));
    auto f = [&](double t) { return std::exp(-t * t - 2.0 * z * t); };
    auto q = ramsey::integrate<Complex>(f, 0.0, 12.0, cfg);
    const Complex want = q.value * (2.0 / std::sqrt(std::numbers::pi));
    INFO("z = " << z);
    CHECK(rel_err(sf::erfcx(z), want) <= 1e-10);
  }
}

TEST_CASE("erf and erf_shifted") {
  CHECK(std::abs(sf::erf(1.0) - fx::kErfOne) <= 1e-14);
  const auto [m, p] = sf::erf_shifted(1.0, 0.0);
  CHECK(std::abs(m - fx::kErfOne) <= 1e-13);
  CHECK(std::abs(p - fx::kErfOne) <= 1e-13);

  const Complex eps(0.22, 0.03);
  const auto [m0, p0] = sf::erf_shifted(0.0, eps);
  CHECK(rel_err(m0, -sf::erf(eps)) <= 1e-15);
  CHECK(rel_err(p0, sf::erf(eps)) <= 1e-15);

  const auto [mb, pb] = sf::erf_shifted(30.0, eps);
  CHECK(std::abs(mb - 1.0) <= 1e-15);
  CHECK(std::abs(pb - 1.0) <= 1e-15);

  // erf(w) = 1 - exp(-w^2) erfcx(w)
  for (double u : {0.3, 0.9, 1.7, 3.2}) {
    const auto [lo, hi] = sf::erf_shifted(u, eps);
    const Complex w1 = u - eps, w2 = u + eps;
    CHECK(rel_err(lo, 1.0 - std::exp(-w1 * w1) * sf::erfcx(w1)) <= 1e-11);
    CHECK(rel_err(hi, 1.0 - std::exp(-w2 * w2) * sf::erfcx(w2)) <= 1e-11);
  }
}

TEST_CASE("E1 against high-precision values") {
  double worst = 0.0;
  for (const auto& r : fx::kE1) {
    const Complex z(r.re, r.im);
    const double e = rel_err(sf::e1(z), Complex(r.value_re, r.value_im));
    if (z.real() > 0.0) {
      worst = std::max(worst, e);
      INFO("z = " << z);
      CHECK(e <= 1e-12);
    }
  }
  for (const auto& r : fx::kE1Scaled) {
    const Complex z(r.re, r.im);
    if (z.real() <= 0.0) continue;
    INFO("z = " << z);
    CHECK(rel_err(sf::e1_scaled(z), Complex(r.value_re, r.value_im)) <= 1e-12);
  }
  MESSAGE("E1 worst relative error " << worst);
  CHECK(std::abs(sf::e1(1.0) - fx::kE1One) <= 1e-14);
}

TEST_CASE("E1 domain, asymptotics, crossover") {
  CHECK_THROWS_AS(sf::e1(0.0), ramsey::DomainError);
  CHECK_THROWS_AS(sf::e1(-2.0), ramsey::DomainError);
  CHECK_THROWS_AS(sf::e1_scaled(-2.0), ramsey::DomainError);
  const double x = 1e7;
  CHECK(std::abs(x * sf::e1_scaled(x) - 1.0) < 1e-6);
  for (int k = 0; k < 32; ++k) {
    const double t = -1.5 + 3.0 * k / 31.0;
    const Complex z = std::polar(2.0, t);
    const Complex s = std::exp(z) * sf::detail::e1_series(z);
    CHECK(rel_err(s, sf::detail::e1_scaled_continued_fraction(z)) <= 1e-12);
  }
}

TEST_CASE("Bessel I and K against high-precision values") {
  double worst_i = 0.0, worst_k = 0.0;
  for (const auto& r : fx::kBessel) {
    const Complex z(r.re, r.im);
    const Complex is = sf::bessel_i_scaled(r.n, z);
    const Complex ks = sf::bessel_k_scaled(r.n, z);
    const double ei = rel_err(is, Complex(r.i_re, r.i_im));
    const double ek = rel_err(ks, Complex(r.k_re, r.k_im));
    INFO("n = " << r.n << " z = " << z);
    if (z.real() > 0.0) {
      worst_i = std::max(worst_i, ei);
      worst_k = std::max(worst_k, ek);
      CHECK(ei <= 1e-10);
      CHECK(ek <= 1e-10);
    } else {
      CHECK(ei <= 1e-9);
      CHECK(ek <= 1e-9);
    }
  }
  MESSAGE("I worst " << worst_i << ", K worst " << worst_k);
  CHECK(std::abs(sf::bessel_k(0, 1.0) - fx::kK0One) <= 1e-14);
}

TEST_CASE("Bessel small-argument limits and domain") {
  CHECK(sf::bessel_i(0, 0.0) == Complex(1.0));
  CHECK(sf::bessel_i(3, 0.0) == Complex(0.0));
  const Complex z(1e-6, 2e-7);
  CHECK(rel_err(sf::bessel_k(1, z), 1.0 / z) < 1e-9);
  CHECK_THROWS_AS(sf::bessel_k(0, 0.0), ramsey::DomainError);
  CHECK_THROWS_AS(sf::bessel_k(1, -1.0), ramsey::DomainError);
  CHECK_THROWS_AS(sf::bessel_i(-1, 1.0), ramsey::DomainError);
}

TEST_CASE("Wronskian I0 K1 + I1 K0 = 1/z") {
  const Complex z0(2.0, 1.0);
  CHECK(rel_err(sf::bessel_i(0, z0) * sf::bessel_k(1, z0) + sf::bessel_i(1, z0) * sf::bessel_k(0, z0),
                1.0 / z0) <= 1e-10);
  double worst = 0.0;
  for (int i = 0; i <= 60; ++i) {
    const double r = std::pow(10.0, -3.0 + 6.0 * i / 60.0);
    for (int j = 0; j < 9; ++j) {
      const double t = -1.5 + 3.0 * j / 8.0;
      const Complex z = std::polar(r, t);
      // Work in scaled form: exp(-Re z) I * exp(Re z) K.
      const Complex w = sf::bessel_i_scaled(0, z) * sf::bessel_k_scaled(1, z) +
                        sf::bessel_i_scaled(1, z) * sf::bessel_k_scaled(0, z);
      const double e = rel_err(w, 1.0 / z);
      worst = std::max(worst, e);
      INFO("z = " << z);
      CHECK(e <= 1e-10);
    }
  }
  MESSAGE("Wronskian worst " << worst);
}

TEST_CASE("Schwarz reflection on random points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lr(-3.0, 3.0), ang(-1.5, 1.5);
  for (int i = 0; i < 200; ++i) {
    const Complex z = std::polar(std::pow(10.0, lr(rng)), ang(rng));
    const Complex zc = std::conj(z);
    INFO("z = " << z);
    CHECK(rel_err(sf::erfcx(zc), std::conj(sf::erfcx(z))) <= 1e-10);
    CHECK(rel_err(sf::e1_scaled(zc), std::conj(sf::e1_scaled(z))) <= 1e-10);
    for (int n : {0, 1, 3}) {
      CHECK(rel_err(sf::bessel_i_scaled(n, zc), std::conj(sf::bessel_i_scaled(n, z))) <= 1e-10);
      CHECK(rel_err(sf::bessel_k_scaled(n, zc), std::conj(sf::bessel_k_scaled(n, z))) <= 1e-10);
    }
  }
}

TEST_CASE("scaled and unscaled variants are consistent") {
  for (double r : {0.01, 0.7, 3.0, 15.0, 40.0, 300.0}) {
    for (double t : {-1.2, 0.0, 0.5, 1.4}) {
      const Complex z = std::polar(r, t);
      INFO("z = " << z);
      CHECK(rel_err(sf::bessel_i(1, z), sf::bessel_i_scaled(1, z) * std::exp(z.real())) <= 1e-14);
      CHECK(rel_err(sf::bessel_k(1, z), sf::bessel_k_scaled(1, z) * std::exp(-z.real())) <= 1e-14);
      CHECK(rel_err(sf::e1(z), sf::e1_scaled(z) * std::exp(-z)) <= 1e-13);
      const Complex z2 = z * z;
      if (std::abs(z2.real()) < 700.0) {
        CHECK(rel_err(sf::erfc(z), sf::erfcx(z) * std::exp(-z2)) <= 1e-12);
      }
    }
  }
  // Scaled values stay finite where unscaled ones overflow.
  const Complex big(1e8, 3e7);
  CHECK(std::isfinite(std::abs(sf::bessel_i_scaled(0, big))));
  CHECK(std::isfinite(std::abs(sf::bessel_k_scaled(0, big))));
  CHECK_THROWS_AS(sf::bessel_i(0, big), ramsey::OverflowError);
}
