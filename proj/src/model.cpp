#include "ramsey/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ramsey/errors.hpp"

namespace ramsey {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConfigError(std::string(name) + " must be positive and finite");
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

}  // namespace

void validate(const ModelParams& p) {
  require_positive(p.nu, "nu");
  require_positive(p.v0, "v0");
  require_positive(p.a, "a");
  require_positive(p.lambda0, "lambda0");
  if (!(p.gamma >= 0.0) || !std::isfinite(p.gamma)) throw ConfigError("gamma must be non-negative and finite");
}

void validate(const Geometry& g) {
  if (g.dim < 1 || g.dim > 3) throw ConfigError("dim must be 1, 2 or 3");
  if (!(g.R > 0.0)) throw ConfigError("R must be positive");
  if (g.dim == 3) {
    if (!(g.l > 0.0) || !std::isfinite(g.l)) throw ConfigError("missing field: half_height (3D needs a finite l > 0)");
  }
}

Complex beta_of(const ModelParams& p, double delta_omega, BetaConvention convention) {
  const Complex alpha(p.nu + p.gamma, delta_omega);
  const Complex alpha0(p.gamma, delta_omega);
  const double factor = convention == BetaConvention::kAdopted ? 2.0 : 1.0;
  const Complex b2 = factor * alpha0 * alpha * alpha / (p.nu * p.v0 * p.v0);
  // std::sqrt is the principal root, Re >= 0.
  return std::sqrt(b2);
}

DerivedScales derive_scales(const ModelParams& p, const Geometry& g, double delta_omega,
                            BetaConvention convention) {
  DerivedScales s;
  s.alpha = Complex(p.nu + p.gamma, delta_omega);
  s.alpha0 = Complex(p.gamma, delta_omega);
  const Complex base = s.alpha0 * s.alpha * s.alpha / (p.nu * p.v0 * p.v0);
  const Complex adopted = 2.0 * base;
  s.beta2 = convention == BetaConvention::kAdopted ? adopted : base;
  s.beta2_alt = convention == BetaConvention::kAdopted ? base : adopted;
  s.beta = std::sqrt(s.beta2);
  s.A2 = s.alpha * s.alpha0 * (p.a * p.a) / (p.v0 * p.v0);
  s.A = std::sqrt(s.A2);
  s.epsilon = 0.5 * s.beta * p.a;
  s.D = p.nu * p.v0 * p.v0 / (2.0 * s.alpha * s.alpha);
  s.tau_a = p.a / p.v0;
  s.tau_nu = 1.0 / p.nu;
  s.tau_gamma = p.gamma > 0.0 ? 1.0 / p.gamma : kInfinity;
  const double alpha_r = p.nu + p.gamma;
  const double d0 = p.nu * p.v0 * p.v0 / (2.0 * alpha_r * alpha_r);
  s.tau_D = p.a * p.a / d0;
  s.tau_D_1d = p.nu * s.tau_a * s.tau_a;
  s.tau_R = g.finite() ? g.R / p.v0 : kInfinity;
  s.mean_v2 = 0.5 * g.dim * p.v0 * p.v0;
  s.W0 = std::pow(std::sqrt(std::numbers::pi) * p.v0, -g.dim);
  return s;
}

std::vector<Diagnostic> validate_regime(const ModelParams& p, const Geometry& g, double delta_omega_max) {
  std::vector<Diagnostic> out;
  const DerivedScales s = derive_scales(p, g, 0.0);
  auto below = [&](const char* name, double value, double threshold, const std::string& text) {
    if (!(value > threshold)) out.push_back({name, value, threshold, text + " = " + fmt(value) + " < " + fmt(threshold)});
  };
  // Strict inequalities use threshold 1, "much greater" ones a factor of 10.
  below("nu_tau_a", p.nu * s.tau_a, 1.0, "nu tau_a");
  below("tau_gamma_over_tau_a", s.tau_gamma / s.tau_a, 1.0, "tau_gamma/tau_a");
  below("tau_D_over_tau_a", s.tau_D / s.tau_a, 1.0, "tau_D/tau_a");
  if (p.gamma / p.nu > 0.1) {
    out.push_back({"gamma_over_nu", p.gamma / p.nu, 0.1, "gamma << nu violated: gamma/nu = " + fmt(p.gamma / p.nu)});
  }
  if (std::abs(delta_omega_max) / p.nu > 0.1) {
    const double r = std::abs(delta_omega_max) / p.nu;
    out.push_back({"delta_omega_over_nu", r, 0.1, "delta_omega << nu violated: delta_omega_max/nu = " + fmt(r)});
  }
  if (g.finite()) {
    below("nu_tau_R", p.nu * s.tau_R, 10.0, "nu tau_R");
  }
  if (g.dim == 3 && std::isfinite(g.l)) {
    below("nu_tau_l", p.nu * g.l / p.v0, 10.0, "nu l/v0");
  }
  if (p.gamma == 0.0) {
    out.push_back({"degenerate", 0.0, 0.0, "gamma = 0: the signal diverges at delta_omega = 0"});
  }
  return out;
}

double lambda_profile(std::span<const double> r, const ModelParams& p, const Geometry& g) {
  if (static_cast<int>(r.size()) != g.dim) throw DomainError("lambda_profile: point dimension mismatch");
  double r2 = 0.0;
  // In 3D the beam is a cylinder along z, so only the transverse part enters.
  const std::size_t n = g.dim == 3 ? 2 : r.size();
  for (std::size_t i = 0; i < n; ++i) r2 += r[i] * r[i];
  return p.lambda0 * std::exp(-r2 / (p.a * p.a));
}

double maxwell_density(std::span<const double> v, const ModelParams& p, const Geometry& g) {
  if (static_cast<int>(v.size()) != g.dim) throw DomainError("maxwell_density: vector dimension mismatch");
  double v2 = 0.0;
  for (double c : v) v2 += c * c;
  return std::pow(std::sqrt(std::numbers::pi) * p.v0, -g.dim) * std::exp(-v2 / (p.v0 * p.v0));
}

}  // namespace ramsey
