#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ramsey/specfun.hpp"

namespace ramsey {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Physical inputs in reduced units. Defaults are the reference parameter set.
struct ModelParams {
  double nu = 1000.0;     // collision rate
  double gamma = 1.0;     // coherence decay rate
  double v0 = 100.0;      // thermal speed
  double a = 1.0;         // beam radius
  double lambda0 = 1.0;   // excitation amplitude
};

struct Geometry {
  int dim = 1;
  double R = kInfinity;  // boundary radius (half-width of the slab in 1D)
  double l = kInfinity;  // cylinder half-height, 3D only

  bool finite() const { return R < kInfinity; }
};

/// Which relation between beta^2 and the rates is used.
/// kAdopted:     beta^2 = 2 alpha0 alpha^2 / (nu v0^2)
/// kAlternative: beta^2 =   alpha0 alpha^2 / (nu v0^2)   (kept for arbitration only)
enum class BetaConvention { kAdopted, kAlternative };

struct DerivedScales {
  Complex alpha;
  Complex alpha0;
  Complex beta2;
  Complex beta;      // principal root, Re beta > 0
  Complex beta2_alt; // the other convention, reported for comparison
  Complex A2;        // alpha alpha0 a^2 / v0^2
  Complex A;
  Complex epsilon;   // beta a / 2
  Complex D;         // nu v0^2 / (2 alpha^2)
  double tau_a = 0;
  double tau_nu = 0;
  double tau_gamma = 0;
  double tau_D = 0;       // a^2 / |D| at zero detuning
  double tau_D_1d = 0;    // nu tau_a^2
  double tau_R = 0;       // R / v0, infinite for unbounded regions
  double mean_v2 = 0;
  double W0 = 0;
};

/// Throws ConfigError on non-positive or non-finite inputs. gamma may be 0.
void validate(const ModelParams& p);
void validate(const Geometry& g);

DerivedScales derive_scales(const ModelParams& p, const Geometry& g, double delta_omega,
                            BetaConvention convention = BetaConvention::kAdopted);

/// beta for a given detuning under a convention; Re beta > 0.
Complex beta_of(const ModelParams& p, double delta_omega,
                BetaConvention convention = BetaConvention::kAdopted);

struct Diagnostic {
  std::string name;     // e.g. "nu_tau_a"
  double value = 0;     // measured ratio
  double threshold = 0;
  std::string message;
};

/// One record per violated regime inequality. Never throws.
std::vector<Diagnostic> validate_regime(const ModelParams& p, const Geometry& g, double delta_omega_max);

double lambda_profile(std::span<const double> r, const ModelParams& p, const Geometry& g);
double maxwell_density(std::span<const double> v, const ModelParams& p, const Geometry& g);

}  // namespace ramsey
