#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ramsey/model.hpp"
#include "ramsey/quadrature.hpp"

namespace ramsey {

struct ModeScales {
  int m = 1;        // odd mode index
  double k_m = 0;   // pi m / (2 l)
  Complex beta_m;   // sqrt(beta^2 + k_m^2), Re > 0
};

struct RadialProfile {
  std::vector<double> grid;
  std::vector<Complex> values;
};

/// value * exp(exponent); used where the plain number may overflow.
struct ScaledComplex {
  Complex value;
  Complex exponent;
  Complex unscaled() const { return value * std::exp(exponent); }
};

/// Approximation with a flag for the regime in which it is trustworthy.
struct Approximation {
  Complex value;
  std::optional<std::string> warning;
};

/// Neumann-at-0, Dirichlet-at-R Green function of -d^2/dx^2 + beta^2 on [0, R]:
/// cosh(beta x<) sinh(beta (R - x>)) / (beta cosh(beta R)).
Complex green_1d(double x, double xp, Complex beta, double R);

struct CsIntegrals {
  Complex C;  // int_0^x exp(-y^2/a^2) cosh(beta y) dy
  Complex S;  // int_0^x exp(-y^2/a^2) sinh(beta y) dy
};

CsIntegrals cs_integrals(double x, const ModelParams& p, double delta_omega);
/// C(inf) = (sqrt(pi)/2) a exp(eps^2).
ScaledComplex c_infinity(const ModelParams& p, double delta_omega);

Complex s_r_1d(const ModelParams& p, double delta_omega, double R, const QuadratureConfig& quad);

/// S_inf - (pi a^2 beta lambda0^2 / alpha0) exp(2 eps^2) exp(-2 beta R), with S_inf
/// the unbounded Green-function value. Warns when Re(beta R) < 3.
Approximation s_r_1d_correction(const ModelParams& p, double delta_omega, double R);

/// int_0^r x I0(beta x) exp(-x^2/a^2) dx.
Complex script_i(double r, Complex beta, double a, const QuadratureConfig& quad);
/// (a^2/2) exp(beta^2 a^2 / 4).
Complex script_i_infinity(Complex beta, double a);
/// Leading tail int_r^inf ... ~ (a^2/2) I0(beta r) exp(-r^2/a^2), valid for r >> a.
Complex script_i_tail(double r, Complex beta, double a);

enum class Denominator2d {
  kI0,  // Dirichlet-consistent construction; the default
  kK0,  // printed variant, kept for arbitration against the stochastic oracle
};

Complex s_r_2d(const ModelParams& p, double delta_omega, double R, const QuadratureConfig& quad,
               Denominator2d denominator = Denominator2d::kI0);

/// As s_r_2d, with screening constant kappa replacing beta in the Green
/// function while the source keeps beta^2/alpha0. Infinite R is allowed.
Complex s_r_2d_screened(const ModelParams& p, double delta_omega, double R, Complex kappa,
                        const QuadratureConfig& quad, Denominator2d denominator = Denominator2d::kI0);

/// S_inf - 2 pi (beta^2 lambda0^2/alpha0) [a^2 I(inf) exp(-R^2/a^2) K0(beta R) + pi exp(-2 beta R) I(inf)^2].
/// Warns when Re(beta R) < 3 or R < 3a.
Approximation s_r_2d_correction(const ModelParams& p, double delta_omega, double R);

/// The two terms of the 2D correction separately: {Gaussian tail, wall reflection}.
std::pair<Complex, Complex> s_r_2d_correction_terms(const ModelParams& p, double delta_omega, double R);

/// Radius where the two correction terms have equal magnitude.
double s_r_2d_crossover_radius(const ModelParams& p, double delta_omega);

struct CylinderTerm {
  ModeScales mode;
  Complex s2;            // 2D signal for this mode
  double weight = 0;     // printed weight (2l/pi^2)/m^2
  Complex contribution;  // weight * s2
};

struct CylinderResult {
  Complex value;
  std::vector<CylinderTerm> terms;
  bool converged = false;
  /// Ratio of the analytic odd-mode weight 16l/(pi^2 m^2) to the printed one.
  /// Reported, never applied to value.
  static constexpr double kAnalyticPrefactor = 8.0;
};

ModeScales mode_scales(const ModelParams& p, double delta_omega, double l, int m);

/// Cylinder of radius R (may be infinite) and half-height l, odd axial modes
/// m = 1, 3, ... with the printed weight. Stops once |term| < 1e-10 |sum|.
CylinderResult s_r_3d(const ModelParams& p, double delta_omega, double R, double l, int n_terms,
                      const QuadratureConfig& quad);

/// N(x) (1D) or N(r) (2D) at the grid nodes, finite or infinite region.
RadialProfile n_profile(int dim, const ModelParams& p, double delta_omega, const Geometry& g,
                        const std::vector<double>& grid, const QuadratureConfig& quad);

}  // namespace ramsey
