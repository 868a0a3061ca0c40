#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ramsey/model.hpp"
#include "ramsey/quadrature.hpp"

namespace ramsey {

enum class FourierKernel {
  kExact,      // Fhat / (1 - nu Fhat)
  kTruncated,  // 1 / (alpha0 + k^2 v0^2 / (2 alpha)), second order in k
};

struct OracleEstimate {
  Complex value;
  double std_error = 0;    // Monte Carlo only
  double error_bound = 0;  // quadrature only
  long n_effective = 0;    // trajectories or integrand evaluations
};

/// (2 pi)^-dim int lambdahat(k)^2 K(k) d^dim k for dim 1 or 2.
OracleEstimate s_inf_fourier(int dim, const ModelParams& p, double delta_omega, FourierKernel kernel,
                             const QuadratureConfig& quad);

/// Fourier transform of the beam profile at wavenumber k.
double lambda_hat(int dim, const ModelParams& p, double k);

struct MCConfig {
  long n_trajectories = 100000;
  std::uint64_t seed = 12345;
  double t_max = 0;           // 0: max(12 tau_gamma, 12 tau_D)
  double substep = 0;         // 0: min(tau_nu, tau_a)/10
  long stream_partition = 4096;
  int threads = 0;            // 0: RAMSEY_THREADS or hardware concurrency
};

/// Threads used when cfg.threads == 0.
int default_thread_count();

/// Strong-collision transport estimate of S at every detuning, sharing
/// trajectories across detunings. Geometry may be finite or infinite
/// (3D requires finite R and l).
std::vector<OracleEstimate> mc_signal(const ModelParams& p, const Geometry& g, const std::vector<double>& delta_omegas,
                                      const MCConfig& cfg);

/// Integral of the beam profile over the domain.
double beam_integral(const ModelParams& p, const Geometry& g);

}  // namespace ramsey
