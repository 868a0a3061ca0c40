#include "ramsey/infinite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ramsey/errors.hpp"
#include "ramsey/specfun.hpp"

namespace ramsey {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.7724538509055160273;

Complex alpha_of(const ModelParams& p, double dw) { return {p.nu + p.gamma, dw}; }
Complex alpha0_of(const ModelParams& p, double dw) { return {p.gamma, dw}; }

void require_alpha0(Complex alpha0) {
  if (alpha0 == Complex(0.0)) throw DivergenceError("signal diverges: alpha0 = 0 (gamma = 0 at zero detuning)");
}

// S for the 1D closed form in terms of a generic A^2.
Complex closed_1d(const ModelParams& p, Complex alpha0, Complex a2) {
  const Complex A = std::sqrt(a2);
  return kPi * p.a * p.lambda0 * p.lambda0 * A * specfun::erfcx(A) / (std::numbers::sqrt2 * alpha0);
}

Complex closed_2d(const ModelParams& p, Complex alpha0, Complex a2) {
  const double pref = kPi * p.lambda0 * p.lambda0 * p.a * p.a / 2.0;
  return pref * a2 * specfun::e1_scaled(a2) / alpha0;
}

double ramsey_prefactor(int dim, const ModelParams& p) {
  if (dim == 1) return std::sqrt(kPi / 2.0) * p.a * p.lambda0 * p.lambda0;
  if (dim == 2) return kPi * p.lambda0 * p.lambda0 * p.a * p.a / 2.0;
  throw DomainError("only dim 1 and 2 have an unbounded closed form");
}

}  // namespace

std::string to_string(EvaluatorTag tag) {
  switch (tag) {
    case EvaluatorTag::kClosedForm: return "closed_form";
    case EvaluatorTag::kRamseyIntegral: return "ramsey_integral";
    case EvaluatorTag::kLorentzLimit: return "lorentz_limit";
    case EvaluatorTag::kFourierOracle: return "fourier_oracle";
    case EvaluatorTag::kMcOracle: return "mc_oracle";
    case EvaluatorTag::kGreenFinite: return "green_finite";
  }
  return "unknown";
}

Complex s_inf_1d(const ModelParams& p, double dw) {
  const Complex alpha0 = alpha0_of(p, dw);
  require_alpha0(alpha0);
  const Complex a2 = alpha_of(p, dw) * alpha0 * (p.a * p.a) / (p.v0 * p.v0);
  return closed_1d(p, alpha0, a2);
}

Complex s_inf_2d(const ModelParams& p, double dw) {
  const Complex alpha0 = alpha0_of(p, dw);
  require_alpha0(alpha0);
  const Complex a2 = alpha_of(p, dw) * alpha0 * (p.a * p.a) / (p.v0 * p.v0);
  return closed_2d(p, alpha0, a2);
}

Complex s_inf_green(int dim, const ModelParams& p, double dw, BetaConvention convention) {
  const Complex alpha0 = alpha0_of(p, dw);
  require_alpha0(alpha0);
  const Complex beta = beta_of(p, dw, convention);
  const Complex a2 = 0.5 * beta * beta * (p.a * p.a);
  if (dim == 1) return closed_1d(p, alpha0, a2);
  if (dim == 2) return closed_2d(p, alpha0, a2);
  throw DomainError("s_inf_green: dim must be 1 or 2");
}

Complex s_inf_green_screened(const ModelParams& p, double dw, Complex kappa) {
  const Complex alpha0 = alpha0_of(p, dw);
  require_alpha0(alpha0);
  const Complex beta = beta_of(p, dw);
  const Complex k2 = kappa * kappa;
  const Complex a2 = 0.5 * k2 * (p.a * p.a);
  return (beta * beta / k2) * closed_2d(p, alpha0, a2);
}

Complex ramsey_time(const ModelParams& p, double dw) {
  // A^2 / alpha0 = alpha a^2 / v0^2
  return alpha_of(p, dw) * (p.a * p.a) / (p.v0 * p.v0);
}

Complex ramsey_weight(int dim, const ModelParams& p, double dw, double tau) {
  const Complex x = 1.0 + tau / ramsey_time(p, dw);
  if (dim == 1) return 1.0 / std::sqrt(x);
  if (dim == 2) return 1.0 / x;
  throw DomainError("ramsey_weight: dim must be 1 or 2");
}

Complex s_inf_ramsey(int dim, const ModelParams& p, double dw, const QuadratureConfig& quad) {
  const Complex alpha0 = alpha0_of(p, dw);
  if (!(alpha0.real() > 0.0)) throw DivergenceError("ramsey integral diverges for Re alpha0 <= 0");
  const double c = ramsey_prefactor(dim, p);
  const double s = std::abs(ramsey_time(p, dw));
  // exp(-Re alpha0 tau) < 1e-20 beyond tau_max.
  const double tau_max = 46.0 / alpha0.real();
  const double u_max = std::log1p(tau_max / s);
  auto f = [&](double u) -> Complex {
    const double e = std::exp(u);
    const double tau = s * (e - 1.0);
    return std::exp(-alpha0 * tau) * ramsey_weight(dim, p, dw, tau) * (s * e);
  };
  auto r = integrate<Complex>(f, 0.0, u_max, quad);
  require_converged(r, "s_inf_ramsey");
  return c * r.value;
}

Complex s_inf_lorentz_limit(int dim, const ModelParams& p, double dw) {
  const Complex alpha0 = alpha0_of(p, dw);
  const double w = lorentz_limit_width(dim, p) - p.gamma;
  return ramsey_prefactor(dim, p) / (alpha0 + w);
}

double lorentz_limit_width(int dim, const ModelParams& p) {
  const double tau_d = p.nu * (p.a / p.v0) * (p.a / p.v0);
  if (dim == 1) return p.gamma + 1.0 / (2.0 * tau_d);
  if (dim == 2) return p.gamma + 1.0 / tau_d;
  throw DomainError("lorentz limit: dim must be 1 or 2");
}

std::optional<std::string> lorentz_limit_warning(const ModelParams& p) {
  const double tau_d = p.nu * (p.a / p.v0) * (p.a / p.v0);
  if (p.gamma * tau_d < 3.0) {
    return "gamma tau_D = " + std::to_string(p.gamma * tau_d) + " < 3: Lorentzian limit not valid";
  }
  return std::nullopt;
}

Complex voigt_deficit(double k, const ModelParams& p, double dw) {
  if (k == 0.0) return 0.0;
  const Complex A = alpha_of(p, dw) / (std::abs(k) * p.v0);
  if (std::abs(A) < 8.0) return 1.0 - kSqrtPi * A * specfun::erfcx(A);
  // sum_{n>=1} (-1)^{n+1} (2n-1)!! / (2A^2)^n
  const Complex w = 1.0 / (2.0 * A * A);
  Complex term = 1.0;
  Complex sum = 0.0;
  for (int n = 1; n < 64; ++n) {
    term *= -(2.0 * n - 1.0) * w;
    sum -= term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

Complex voigt_fhat(double k, const ModelParams& p, double dw) {
  const Complex alpha = alpha_of(p, dw);
  return (1.0 - voigt_deficit(k, p, dw)) / alpha;
}

Complex kernel_f(double r, const ModelParams& p, int dim, double dw, const QuadratureConfig& quad) {
  if (!(r > 0.0)) throw DomainError("kernel_f: singular at r = 0");
  if (dim < 1 || dim > 3) throw DomainError("kernel_f: dim must be 1, 2 or 3");
  const Complex alpha = alpha_of(p, dw);
  const double w0 = std::pow(kSqrtPi * p.v0, -dim);
  const double xi0 = r / p.v0;
  const double s_lo = -0.5 * std::log(700.0);
  const double s_hi = std::log(700.0 / alpha.real() / xi0);
  if (s_hi <= s_lo) return 0.0;
  auto f = [&](double s) -> Complex {
    const double xi = xi0 * std::exp(s);
    const double q = r / (xi * p.v0);
    return std::exp(-alpha * xi - q * q) * std::pow(xi, 1 - dim);
  };
  std::vector<double> breaks{s_lo};
  const double s_peak = std::log(1.0 / alpha.real() / xi0);
  for (double b : {0.0, s_peak}) {
    if (b > s_lo && b < s_hi) breaks.push_back(b);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.push_back(s_hi);
  auto res = integrate_pieces<Complex>(f, breaks, quad);
  require_converged(res, "kernel_f");
  return w0 * res.value;
}

TaylorCoefficients taylor_signal(const std::function<Complex(double)>& s, double h, int order) {
  if (order < 0 || order > 2) throw DomainError("taylor_signal: order must be 0, 1 or 2");
  TaylorCoefficients out;
  const Complex s0 = s(0.0);
  out.c[0] = s0;
  // Ridders' extrapolation of a difference quotient with O(h^2) error series.
  auto ridders = [&](auto&& quotient, double& err) -> Complex {
    constexpr int kN = 10;
    constexpr double kCon = 1.4, kCon2 = kCon * kCon;
    Complex tab[kN][kN];
    double hh = h;
    tab[0][0] = quotient(hh);
    err = 1e300;
    Complex best = tab[0][0];
    for (int i = 1; i < kN; ++i) {
      hh /= kCon;
      tab[0][i] = quotient(hh);
      double fac = kCon2;
      for (int j = 1; j <= i; ++j) {
        tab[j][i] = (tab[j - 1][i] * fac - tab[j - 1][i - 1]) / (fac - 1.0);
        fac *= kCon2;
        const double e = std::max(std::abs(tab[j][i] - tab[j - 1][i]), std::abs(tab[j][i] - tab[j - 1][i - 1]));
        if (e <= err) {
          err = e;
          best = tab[j][i];
        }
      }
      if (std::abs(tab[i][i] - tab[i - 1][i - 1]) >= 2.0 * err) break;
    }
    return best;
  };
  if (order >= 1) {
    out.c[1] = ridders([&](double hh) { return (s(hh) - s(-hh)) / (2.0 * hh); }, out.error[1]);
  }
  if (order >= 2) {
    double e = 0.0;
    out.c[2] = 0.5 * ridders([&](double hh) { return (s(hh) - 2.0 * s0 + s(-hh)) / (hh * hh); }, e);
    out.error[2] = 0.5 * e;
  }
  return out;
}

}  // namespace ramsey
