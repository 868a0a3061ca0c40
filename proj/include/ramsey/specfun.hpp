#pragma once

#include <complex>
#include <utility>

namespace ramsey {

using Complex = std::complex<double>;

namespace specfun {

/// Scaled complementary error function exp(z^2) erfc(z).
///
/// Accurate to about 1e-13 relative in Re z >= 0. The left half-plane uses
/// erfcx(z) = 2 exp(z^2) - erfcx(-z) and throws OverflowError when exp(z^2)
/// is not representable.
Complex erfcx(Complex z);

/// erf(z), via the series near the origin and erfcx elsewhere.
Complex erf(Complex z);

/// erfc(z) = 1 - erf(z).
Complex erfc(Complex z);

/// The pair (erf(u - eps), erf(u + eps)) for real u and complex eps.
std::pair<Complex, Complex> erf_shifted(double u, Complex eps);

/// Exponential integral E1(z) = int_z^inf exp(-t)/t dt, principal branch.
/// Throws DomainError at z = 0 and on the negative real axis.
Complex e1(Complex z);

/// exp(z) E1(z).
Complex e1_scaled(Complex z);

/// Modified Bessel function I_n(z), integer n >= 0.
Complex bessel_i(int n, Complex z);
/// exp(-|Re z|) I_n(z).
Complex bessel_i_scaled(int n, Complex z);

/// Modified Bessel function K_n(z), integer n >= 0. Throws DomainError at
/// z = 0 and on the negative real axis.
Complex bessel_k(int n, Complex z);
/// exp(Re z) K_n(z).
Complex bessel_k_scaled(int n, Complex z);

}  // namespace specfun
}  // namespace ramsey

namespace ramsey::specfun::detail {

// Individual evaluation branches, exposed so the crossover radii can be
// checked on their overlap annuli.
Complex erfcx_series(Complex z);
Complex erfcx_continued_fraction(Complex z);
Complex erfcx_asymptotic(Complex z);
Complex e1_series(Complex z);
Complex e1_scaled_continued_fraction(Complex z);

/// exp(-z) I_n(z) by power series.
Complex bessel_i_series_expscaled(int n, Complex z);
/// exp(-z) I_n(z) by normalised backward recurrence.
Complex bessel_i_miller_expscaled(int n, Complex z);
/// exp(z) K_n(z) by power series.
Complex bessel_k_series_expscaled(int n, Complex z);
/// exp(z) K_n(z) from Steed's continued fraction and upward recurrence.
Complex bessel_k_steed_expscaled(int n, Complex z);

}  // namespace ramsey::specfun::detail
