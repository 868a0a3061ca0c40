#include <cmath>
#include <numbers>

#include "ramsey/errors.hpp"
#include "ramsey/infinite.hpp"
#include "ramsey/oracle.hpp"

namespace ramsey {

namespace {
constexpr double kPi = std::numbers::pi;
}

double lambda_hat(int dim, const ModelParams& p, double k) {
  const double g = std::exp(-0.25 * k * k * p.a * p.a);
  if (dim == 1) return std::sqrt(kPi) * p.a * p.lambda0 * g;
  if (dim == 2) return kPi * p.a * p.a * p.lambda0 * g;
  throw DomainError("lambda_hat: dim must be 1 or 2");
}

OracleEstimate s_inf_fourier(int dim, const ModelParams& p, double dw, FourierKernel kernel,
                             const QuadratureConfig& quad) {
  if (dim != 1 && dim != 2) throw DomainError("s_inf_fourier: dim must be 1 or 2");
  const Complex alpha(p.nu + p.gamma, dw);
  const Complex alpha0(p.gamma, dw);
  if (!(alpha0.real() > 0.0)) throw DivergenceError("s_inf_fourier: requires Re alpha0 > 0");

  auto K = [&](double k) -> Complex {
    if (kernel == FourierKernel::kTruncated) {
      return 1.0 / (alpha0 + k * k * p.v0 * p.v0 / (2.0 * alpha));
    }
    // Fhat/(1 - nu Fhat) = (1 - d)/(alpha0 + nu d) with d = 1 - alpha Fhat.
    const Complex d = voigt_deficit(k, p, dw);
    const Complex den = alpha0 + p.nu * d;
    if (den == Complex(0.0)) throw DomainError("s_inf_fourier: 1 - nu Fhat vanishes");
    return (1.0 - d) / den;
  };
  // Radial measure and (2 pi)^-dim with the angular factor folded in.
  const double measure = dim == 1 ? 1.0 / kPi : 1.0 / (2.0 * kPi);
  auto f = [&](double k) -> Complex {
    const double lh = lambda_hat(dim, p, k);
    const double jac = dim == 1 ? 1.0 : k;
    return jac * lh * lh * K(k);
  };
  const double inv_a = 1.0 / p.a;
  const std::vector<double> breaks{0.0, inv_a, 2.0 * inv_a, 4.0 * inv_a, 8.0 * inv_a, 12.0 * inv_a};
  auto res = integrate_pieces<Complex>(f, breaks, quad);
  require_converged(res, "s_inf_fourier");

  // Tail beyond 12/a: the Gaussian lambdahat^2 dominates; |K| is bounded by its
  // value at the cutoff times a safety factor of 2.
  const double kmax = 12.0 * inv_a;
  const double lh = lambda_hat(dim, p, kmax);
  const double gauss_tail = dim == 1 ? 1.0 / (kmax * p.a * p.a) : 1.0 / (p.a * p.a);
  const double tail = 2.0 * std::abs(K(kmax)) * lh * lh * gauss_tail;

  OracleEstimate out;
  out.value = measure * res.value;
  out.error_bound = measure * (res.error + tail);
  out.n_effective = res.evals;
  return out;
}

}  // namespace ramsey
