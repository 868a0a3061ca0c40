#include "ramsey/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "ramsey/errors.hpp"

namespace ramsey::specfun {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kEulerGamma = std::numbers::egamma;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kMaxExp = 709.0;
constexpr double kTiny = 1e-300;

// Region boundaries. The erfcx series is used where Re z < 1.5 and |z| < 6,
// the asymptotic series for |z| >= 6 hugging the imaginary axis, and the
// Laplace continued fraction elsewhere in the right half-plane.
constexpr double kErfcxSeriesRadius = 6.0;
constexpr double kErfcxSeriesMaxRe = 1.5;
constexpr double kErfcxAsymptoticMaxRe = 0.5;
constexpr double kE1SeriesRadius = 2.0;
constexpr double kBesselSeriesRadius = 2.0;
constexpr double kBesselAsymptoticRadius = 25.0;

Complex checked_exp(Complex w, const char* what) {
  if (w.real() > kMaxExp) {
    throw OverflowError(std::string(what) + ": result exceeds double range");
  }
  return std::exp(w);
}

bool on_negative_axis(Complex z) { return z.imag() == 0.0 && z.real() <= 0.0; }

// exp(z) E1(z) series, valid everywhere off the cut but only used for small |z|.
Complex e1_series_raw(Complex z) {
  Complex term = 1.0;
  Complex sum = 0.0;
  for (int k = 1; k < 2000; ++k) {
    term *= -z / double(k);
    const Complex add = term / double(k);
    sum += add;
    if (double(k) > std::abs(z) && std::abs(add) <= kEps * std::abs(sum)) break;
  }
  return -kEulerGamma - std::log(z) - sum;
}

}  // namespace

namespace detail {

Complex erfcx_series(Complex z) {
  const Complex z2 = z * z;
  Complex term = z;
  Complex sum = z;
  const double n_min = std::norm(z);
  for (int n = 1; n < 1000; ++n) {
    term *= -z2 / double(n);
    const Complex add = term / double(2 * n + 1);
    sum += add;
    if (double(n) > n_min && std::abs(add) <= 0.5 * kEps * std::abs(sum)) break;
  }
  const Complex erf_z = sum * (2.0 / kSqrtPi);
  return checked_exp(z2, "erfcx") * (1.0 - erf_z);
}

Complex erfcx_continued_fraction(Complex z) {
  // erfcx(z) = 1 / (sqrt(pi) (z + (1/2)/(z + 1/(z + (3/2)/(z + ...)))))
  // evaluated with the modified Lentz algorithm.
  Complex f = (z == Complex(0.0)) ? Complex(kTiny) : z;
  Complex c = f;
  Complex d = 0.0;
  for (int k = 1; k < 20000; ++k) {
    const double a = 0.5 * k;
    d = z + a * d;
    if (d == Complex(0.0)) d = kTiny;
    c = z + a / c;
    if (c == Complex(0.0)) c = kTiny;
    d = 1.0 / d;
    const Complex delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < kEps) return 1.0 / (kSqrtPi * f);
  }
  throw ConvergenceError("erfcx: continued fraction did not converge");
}

Complex erfcx_asymptotic(Complex z) {
  // 1/(sqrt(pi) z) sum_n (-1)^n (2n-1)!!/(2z^2)^n, cut at the smallest term.
  // Used near the imaginary axis, where the continued fraction only
  // converges marginally; the neglected exp(z^2) Stokes term is below
  // 1e-14 relative once |z| >= 6 and Re z < 0.5.
  const Complex w = 1.0 / (2.0 * z * z);
  Complex term = 1.0;
  Complex sum = 1.0;
  double last = 1.0;
  for (int n = 1; n < 400; ++n) {
    term *= -(2.0 * n - 1.0) * w;
    const double mag = std::abs(term);
    if (mag > last) break;
    last = mag;
    sum += term;
    if (mag <= 0.25 * kEps * std::abs(sum)) break;
  }
  return sum / (kSqrtPi * z);
}

Complex e1_series(Complex z) { return e1_series_raw(z); }

Complex e1_scaled_continued_fraction(Complex z) {
  // exp(z) E1(z) = 1/(z + 1 - 1/(z + 3 - 4/(z + 5 - ...))), modified Lentz.
  Complex b = z + 1.0;
  Complex c = 1.0 / kTiny;
  Complex d = 1.0 / b;
  Complex h = d;
  for (int i = 1; i < 200000; ++i) {
    const double an = -double(i) * double(i);
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const Complex del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw ConvergenceError("e1: continued fraction did not converge");
}

Complex bessel_i_series_expscaled(int n, Complex z) {
  const Complex half = 0.5 * z;
  const Complex q = half * half;
  Complex lead = 1.0;
  for (int k = 1; k <= n; ++k) lead *= half / double(k);
  Complex term = 1.0;
  Complex sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (double(k) * double(n + k));
    sum += term;
    if (std::abs(term) <= kEps * std::abs(sum)) break;
  }
  return std::exp(-z) * lead * sum;
}

Complex bessel_i_miller_expscaled(int n, Complex z) {
  // Backward recurrence I_{k-1} = (2k/z) I_k + I_{k+1}, normalised with
  // exp(z) = I_0 + 2 sum_{k>=1} I_k.
  const double r = std::abs(z);
  int top = n + static_cast<int>(1.5 * r + 10.0 * std::sqrt(r)) + 60;
  top += top % 2;
  Complex next = 0.0;
  Complex cur = 1e-280;
  Complex target = 0.0;
  Complex norm = 0.0;
  for (int k = top; k >= 1; --k) {
    const Complex prev = (2.0 * k / z) * cur + next;
    next = cur;
    cur = prev;
    if (k - 1 == n) target = cur;
    norm += (k - 1 == 0) ? cur : 2.0 * cur;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      target *= 1e-250;
      norm *= 1e-250;
    }
  }
  // The loop added I_{top-1} .. I_0 to norm; I_top itself is negligible.
  return target / norm;
}

Complex bessel_k_series_expscaled(int n, Complex z) {
  const Complex half = 0.5 * z;
  const Complex q = half * half;
  const Complex log_half = std::log(half);

  // Finite sum: (1/2)(z/2)^{-n} sum_{k<n} (n-k-1)!/k! (-q)^k
  Complex finite = 0.0;
  if (n > 0) {
    Complex inv_pow = 1.0;
    for (int k = 0; k < n; ++k) inv_pow /= half;
    double fact = 1.0;  // (n-1)!
    for (int k = 2; k < n; ++k) fact *= k;
    Complex term = fact;  // k = 0
    finite = term;
    for (int k = 1; k < n; ++k) {
      term *= -q / (double(k) * double(n - k));
      finite += term;
    }
    finite *= 0.5 * inv_pow;
  }

  // psi(m) = -gamma + H_{m-1}
  Complex lead = 1.0;
  for (int k = 1; k <= n; ++k) lead *= half / double(k);
  double h_k = 0.0;
  double h_nk = 0.0;
  for (int j = 1; j <= n; ++j) h_nk += 1.0 / j;
  Complex term = 1.0;
  Complex psi_sum = (2.0 * -kEulerGamma + h_k + h_nk) * term;
  Complex i_sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (double(k) * double(n + k));
    h_k += 1.0 / k;
    h_nk += 1.0 / (n + k);
    const Complex add = (2.0 * -kEulerGamma + h_k + h_nk) * term;
    psi_sum += add;
    i_sum += term;
    if (std::abs(add) <= kEps * std::abs(psi_sum) && std::abs(term) <= kEps * std::abs(i_sum)) {
      break;
    }
  }
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const Complex i_n = lead * i_sum;
  const Complex k_n = finite - sign * log_half * i_n + sign * 0.5 * lead * psi_sum;
  return std::exp(z) * k_n;
}

Complex bessel_k_steed_expscaled(int n, Complex z) {
  // Steed's algorithm for K_0, K_1 (Temme's CF2 with mu = 0).
  Complex b = 2.0 * (1.0 + z);
  Complex d = 1.0 / b;
  Complex h = d;
  Complex delh = d;
  Complex q1 = 0.0;
  Complex q2 = 1.0;
  const double a1 = 0.25;
  Complex q = a1;
  Complex c = a1;
  double a = -a1;
  Complex s = 1.0 + q * delh;
  bool converged = false;
  for (int i = 2; i < 100000; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / double(i);
    const Complex qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const Complex dels = q * delh;
    s += dels;
    if (std::abs(dels) < kEps * std::abs(s)) {
      converged = true;
      break;
    }
  }
  if (!converged) throw ConvergenceError("bessel_k: Steed continued fraction did not converge");
  h *= a1;
  Complex k0 = std::sqrt(kPi / (2.0 * z)) / s;
  Complex k1 = k0 * (0.5 + z - h) / z;
  if (n == 0) return k0;
  for (int k = 1; k < n; ++k) {
    const Complex k2 = k0 + (2.0 * k / z) * k1;
    k0 = k1;
    k1 = k2;
  }
  return k1;
}

}  // namespace detail

namespace {

// Hankel asymptotic sums for |z| large; returns {sum (-1)^k a_k/z^k, sum a_k/z^k}.
std::pair<Complex, Complex> hankel_sums(int n, Complex z) {
  const double mu = 4.0 * n * n;
  Complex term = 1.0;
  Complex alt = 1.0;
  Complex plain = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (double(k) * 8.0 * z);
    const double mag = std::abs(term);
    if (mag > last) break;
    last = mag;
    plain += term;
    alt += (k % 2 == 0) ? term : -term;
    if (mag <= 0.25 * kEps) break;
  }
  return {alt, plain};
}

bool use_asymptotic(int n, Complex z) {
  const double r = std::abs(z);
  return r >= kBesselAsymptoticRadius && r >= 2.0 * n * n;
}

// exp(-z) I_n(z) for Re z >= 0.
Complex bessel_i_expscaled_right(int n, Complex z) {
  if (z == Complex(0.0)) return n == 0 ? 1.0 : 0.0;
  const double r = std::abs(z);
  if (r <= kBesselSeriesRadius) return detail::bessel_i_series_expscaled(n, z);
  if (!use_asymptotic(n, z)) return detail::bessel_i_miller_expscaled(n, z);
  const auto [alt, plain] = hankel_sums(n, z);
  const Complex root = std::sqrt(2.0 * kPi * z);
  // Second exponential: +i e^{i n pi} for Im z >= 0, -i e^{-i n pi} below.
  const double parity = (n % 2 == 0) ? 1.0 : -1.0;
  const Complex j(0.0, 1.0);
  const Complex second = (z.imag() >= 0.0 ? j : -j) * parity * std::exp(-2.0 * z) * plain;
  return (alt + second) / root;
}

// exp(z) K_n(z) for Re z >= 0, z != 0.
Complex bessel_k_expscaled_right(int n, Complex z) {
  const double r = std::abs(z);
  if (r <= kBesselSeriesRadius) return detail::bessel_k_series_expscaled(n, z);
  if (!use_asymptotic(n, z)) return detail::bessel_k_steed_expscaled(n, z);
  const auto sums = hankel_sums(n, z);
  return std::sqrt(kPi / (2.0 * z)) * sums.second;
}

void check_order(int n) {
  if (n < 0) throw DomainError("bessel: order must be non-negative");
}

}  // namespace

Complex erfcx(Complex z) {
  if (z.real() < 0.0) {
    const Complex z2 = z * z;
    if (z2.real() > kMaxExp) throw OverflowError("erfcx: exp(z^2) overflows for Re z < 0");
    return 2.0 * std::exp(z2) - erfcx(-z);
  }
  if (std::abs(z) < kErfcxSeriesRadius && z.real() < kErfcxSeriesMaxRe) {
    return detail::erfcx_series(z);
  }
  if (z.real() < kErfcxAsymptoticMaxRe) return detail::erfcx_asymptotic(z);
  return detail::erfcx_continued_fraction(z);
}

Complex erf(Complex z) {
  if (z.real() < 0.0) return -erf(-z);
  if (std::abs(z) <= 1.0) {
    const Complex z2 = z * z;
    Complex term = z;
    Complex sum = z;
    for (int n = 1; n < 100; ++n) {
      term *= -z2 / double(n);
      const Complex add = term / double(2 * n + 1);
      sum += add;
      if (std::abs(add) <= 0.5 * kEps * std::abs(sum)) break;
    }
    return sum * (2.0 / kSqrtPi);
  }
  return 1.0 - checked_exp(-z * z, "erf") * erfcx(z);
}

Complex erfc(Complex z) {
  if (z.real() < 0.0) return 2.0 - erfc(-z);
  if (std::abs(z) <= 0.5) return 1.0 - erf(z);
  return checked_exp(-z * z, "erfc") * erfcx(z);
}

std::pair<Complex, Complex> erf_shifted(double u, Complex eps) {
  return {erf(u - eps), erf(u + eps)};
}

Complex e1_scaled(Complex z) {
  if (z == Complex(0.0)) throw DomainError("e1: pole at z = 0");
  if (on_negative_axis(z)) throw DomainError("e1: argument on the branch cut");
  const double r = std::abs(z);
  const bool series = r <= kE1SeriesRadius || (z.real() < 0.0 && r <= 20.0 && std::abs(z.imag()) < 10.0);
  if (series) return checked_exp(z, "e1_scaled") * detail::e1_series(z);
  return detail::e1_scaled_continued_fraction(z);
}

Complex e1(Complex z) {
  if (z == Complex(0.0)) throw DomainError("e1: pole at z = 0");
  if (on_negative_axis(z)) throw DomainError("e1: argument on the branch cut");
  const double r = std::abs(z);
  const bool series = r <= kE1SeriesRadius || (z.real() < 0.0 && r <= 20.0 && std::abs(z.imag()) < 10.0);
  if (series) return detail::e1_series(z);
  return checked_exp(-z, "e1") * detail::e1_scaled_continued_fraction(z);
}

Complex bessel_i_scaled(int n, Complex z) {
  check_order(n);
  const double parity = (n % 2 == 0) ? 1.0 : -1.0;
  if (z.real() < 0.0) return parity * bessel_i_scaled(n, -z);
  // exp(-Re z) I = exp(i Im z) exp(-z) I
  return std::polar(1.0, z.imag()) * bessel_i_expscaled_right(n, z);
}

Complex bessel_i(int n, Complex z) {
  const Complex scaled = bessel_i_scaled(n, z);
  const double re = std::abs(z.real());
  if (re > kMaxExp) throw OverflowError("bessel_i: result exceeds double range");
  return scaled * std::exp(re);
}

Complex bessel_k_scaled(int n, Complex z) {
  check_order(n);
  if (z == Complex(0.0)) throw DomainError("bessel_k: singular at z = 0");
  if (on_negative_axis(z)) throw DomainError("bessel_k: argument on the branch cut");
  if (z.real() >= 0.0) {
    return std::polar(1.0, -z.imag()) * bessel_k_expscaled_right(n, z);
  }
  // K_n(w e^{+-i pi}) = (-1)^n K_n(w) -+ i pi I_n(w), w = -z.
  const Complex w = -z;
  const double parity = (n % 2 == 0) ? 1.0 : -1.0;
  const Complex j(0.0, 1.0);
  const Complex sign = z.imag() > 0.0 ? -j : j;
  // Scale everything by exp(Re z) = exp(-Re w).
  const double re_w = w.real();
  const Complex k_part = parity * std::polar(1.0, -w.imag()) * bessel_k_expscaled_right(n, w) *
                         std::exp(-2.0 * re_w);
  const Complex i_part = sign * kPi * bessel_i_scaled(n, w);
  return k_part + i_part;
}

Complex bessel_k(int n, Complex z) {
  const Complex scaled = bessel_k_scaled(n, z);
  if (-z.real() > kMaxExp) throw OverflowError("bessel_k: result exceeds double range");
  return scaled * std::exp(-z.real());
}

}  // namespace ramsey::specfun
