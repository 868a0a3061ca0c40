#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ramsey/model.hpp"
#include "ramsey/quadrature.hpp"

namespace ramsey {

enum class EvaluatorTag { kClosedForm, kRamseyIntegral, kLorentzLimit, kFourierOracle, kMcOracle, kGreenFinite };

std::string to_string(EvaluatorTag tag);

struct SpectralSample {
  double delta_omega = 0;
  Complex value;
  EvaluatorTag evaluator = EvaluatorTag::kClosedForm;
};

struct LineShape {
  ModelParams params;
  Geometry geometry;
  std::vector<SpectralSample> samples;
  bool normalized = false;
};

/// pi a lambda0^2 A erfcx(A) / (sqrt 2 alpha0), A^2 = alpha alpha0 a^2 / v0^2.
Complex s_inf_1d(const ModelParams& p, double delta_omega);

/// (pi lambda0^2 a^2 / (2 alpha0)) A^2 exp(A^2) E1(A^2).
Complex s_inf_2d(const ModelParams& p, double delta_omega);

/// Solution of the screened diffusion equation on the unbounded line/plane.
/// Same closed forms with A^2 replaced by beta^2 a^2 / 2. This is the
/// R -> infinity limit of the finite-region Green-function signals.
Complex s_inf_green(int dim, const ModelParams& p, double delta_omega,
                    BetaConvention convention = BetaConvention::kAdopted);

/// Unbounded 2D signal with screening constant kappa in place of beta but
/// the source strength beta^2/alpha0 unchanged (one axial mode of the cylinder).
Complex s_inf_green_screened(const ModelParams& p, double delta_omega, Complex kappa);

/// c int_0^inf exp(-alpha0 tau) (1 + tau/tau_R)^(-dim/2) dtau with tau_R = A^2/alpha0.
Complex s_inf_ramsey(int dim, const ModelParams& p, double delta_omega, const QuadratureConfig& quad);

/// The weight (1 + tau/tau_R)^(-dim/2) of the representation above.
Complex ramsey_weight(int dim, const ModelParams& p, double delta_omega, double tau);

/// Complex time tau_R = A^2 / alpha0 of the representation above.
Complex ramsey_time(const ModelParams& p, double delta_omega);

/// Lorentzian limit for gamma tau_D >> 1, with tau_D = nu tau_a^2.
Complex s_inf_lorentz_limit(int dim, const ModelParams& p, double delta_omega);
/// Half width of Re of the limit: gamma + 1/(2 tau_D) in 1D, gamma + 1/tau_D in 2D.
double lorentz_limit_width(int dim, const ModelParams& p);
/// Set when gamma tau_D < 3, where the limit is not trustworthy.
std::optional<std::string> lorentz_limit_warning(const ModelParams& p);

/// Voigt kernel int_0^inf exp(-k^2 xi^2 v0^2/4 - alpha xi) dxi.
Complex voigt_fhat(double k, const ModelParams& p, double delta_omega);

/// 1 - alpha Fhat(k), evaluated without cancellation at small k.
Complex voigt_deficit(double k, const ModelParams& p, double delta_omega);

/// Real-space kernel F(r) = W0 int_0^inf exp(-alpha xi - r^2/(xi v0)^2) xi^-dim dxi.
/// Throws DomainError for r <= 0 (the kernel is singular at the origin).
Complex kernel_f(double r, const ModelParams& p, int dim, double delta_omega = 0.0,
                 const QuadratureConfig& quad = {1e-11, 1e-300, 2000});

struct TaylorCoefficients {
  std::array<Complex, 3> c{};       // S(0), S'(0), S''(0)/2
  std::array<double, 3> error{};
};

/// Coefficients of S(dw) = c0 + c1 dw + c2 dw^2 + ... from central differences
/// with Richardson (Ridders) extrapolation. h is the initial step.
TaylorCoefficients taylor_signal(const std::function<Complex(double)>& s, double h, int order = 2);

}  // namespace ramsey
