#include <Eigen/Core>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

#include "ramsey/errors.hpp"
#include "ramsey/oracle.hpp"

namespace ramsey {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// SplitMix64 stream whose starting state is a hash of (seed, trajectory index).
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t index)
      : state_(mix64(seed ^ mix64(index + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }
  // Uniform on (0, 1), never 0.
  double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double t = 2.0 * kPi * uniform();
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct Moments {
  std::vector<double> re, im, re2, im2;
  explicit Moments(std::size_t n) : re(n), im(n), re2(n), im2(n) {}
};

// exp(z) with a short Taylor series when |z| is tiny, as it is for the
// sub-panel phase offsets.
Complex exp_small(Complex z) {
  if (std::abs(z) < 0.01) return 1.0 + z * (1.0 + z * (0.5 + z * (1.0 / 6 + z * (1.0 / 24 + z * (1.0 / 120)))));
  return std::exp(z);
}

// Gauss-Legendre 2-point offsets within a unit panel.
constexpr double kGl = 0.28867513459481288225;  // 1/(2 sqrt 3)

template <int D>
class Transport {
 public:
  using Vec = Eigen::Matrix<double, D, 1>;
  static constexpr int kTransverse = D == 3 ? 2 : D;

  Transport(const ModelParams& p, const Geometry& g, const std::vector<double>& dws, double t_max, double substep)
      : p_(p), g_(g), dws_(dws), t_max_(t_max), h_(substep) {
    const std::size_t n = dws.size();
    step_.resize(n);
    off_lo_.resize(n);
    off_hi_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const Complex a0(p.gamma, dws[j]);
      step_[j] = std::exp(-a0 * h_);
      off_lo_[j] = std::exp(-a0 * (h_ * (0.5 - kGl)));
      off_hi_[j] = std::exp(-a0 * (h_ * (0.5 + kGl)));
    }
    inv_a2_ = 1.0 / (p.a * p.a);
    sigma_v_ = p.v0 / std::numbers::sqrt2;
    acc_.resize(n);
    phase_.resize(n);
    tail_phase_.resize(n);
  }

  // Integral along one trajectory, written to out[j] for every detuning.
  void run(Stream& rng, std::vector<Complex>& out) {
    std::fill(acc_.begin(), acc_.end(), Complex(0.0));
    Vec x = sample_position(rng);
    double t = 0.0;
    while (t < t_max_) {
      Vec v;
      for (int i = 0; i < D; ++i) v[i] = sigma_v_ * rng.normal();
      const double flight = -std::log(rng.uniform()) / p_.nu;
      const double exit = exit_time(x, v);
      const double s = std::min({flight, exit, t_max_ - t});
      segment(x, v, t, s);
      x += v * s;
      t += s;
      if (s < flight) break;  // absorbed at the wall or out of time
    }
    out = acc_;
  }

 private:
  Vec sample_position(Stream& rng) {
    Vec x = Vec::Zero();
    const double a = p_.a;
    if constexpr (D == 1) {
      do {
        x[0] = a / std::numbers::sqrt2 * rng.normal();
      } while (std::abs(x[0]) >= g_.R);
    } else {
      // lambda/Lambda restricted to rho < R: rho^2 is a truncated exponential.
      const double cut = std::isfinite(g_.R) ? -std::expm1(-g_.R * g_.R / (a * a)) : 1.0;
      const double rho = a * std::sqrt(-std::log1p(-rng.uniform() * cut));
      const double th = 2.0 * kPi * rng.uniform();
      x[0] = rho * std::cos(th);
      x[1] = rho * std::sin(th);
      if constexpr (D == 3) x[2] = g_.l * (2.0 * rng.uniform() - 1.0);
    }
    return x;
  }

  double exit_time(const Vec& x, const Vec& v) const {
    if (!std::isfinite(g_.R)) return kInfinity;
    if constexpr (D == 1) {
      if (v[0] > 0.0) return (g_.R - x[0]) / v[0];
      if (v[0] < 0.0) return (-g_.R - x[0]) / v[0];
      return kInfinity;
    } else {
      const double a2 = v[0] * v[0] + v[1] * v[1];
      double t = kInfinity;
      if (a2 > 0.0) {
        const double b = x[0] * v[0] + x[1] * v[1];
        const double c = x[0] * x[0] + x[1] * x[1] - g_.R * g_.R;
        const double disc = std::max(0.0, b * b - a2 * c);
        t = c >= 0.0 ? 0.0 : (-b + std::sqrt(disc)) / a2;
        if (b > 0.0 && c < 0.0) t = -c / (b + std::sqrt(disc));  // stable root
      }
      if constexpr (D == 3) {
        if (v[2] > 0.0) t = std::min(t, (g_.l - x[2]) / v[2]);
        if (v[2] < 0.0) t = std::min(t, (-g_.l - x[2]) / v[2]);
      }
      return std::max(0.0, t);
    }
  }

  void segment(const Vec& x, const Vec& v, double t0, double s) {
    if (s <= 0.0) return;
    // |x_perp + v_perp t|^2 = c0 + 2 c1 t + c2 t^2
    double c0 = 0.0, c1 = 0.0, c2 = 0.0;
    for (int i = 0; i < kTransverse; ++i) {
      c0 += x[i] * x[i];
      c1 += x[i] * v[i];
      c2 += v[i] * v[i];
    }
    const double ts = c2 > 0.0 ? std::clamp(-c1 / c2, 0.0, s) : 0.0;
    const double closest = c0 + 2.0 * c1 * ts + c2 * ts * ts;
    if (closest * inv_a2_ > 49.0) return;  // lambda below 5e-22 lambda0 throughout

    const std::size_t n = dws_.size();
    const double mag = std::exp(-p_.gamma * t0);
    for (std::size_t j = 0; j < n; ++j) {
      const double dw = dws_[j];
      phase_[j] = dw == 0.0 ? Complex(mag) : std::polar(mag, -dw * t0);
    }
    auto quad_at = [&](double t) { return c0 + 2.0 * c1 * t + c2 * t * t; };
    const long full = static_cast<long>(s / h_);
    const double w = 0.5 * h_;
    if (full > 0) {
      // lambda at the two node sequences by multiplicative recurrence,
      // shared by every detuning
      const double tl = h_ * (0.5 - kGl), th = h_ * (0.5 + kGl);
      double ll = p_.lambda0 * std::exp(-quad_at(tl) * inv_a2_);
      double lh = p_.lambda0 * std::exp(-quad_at(th) * inv_a2_);
      double rl = std::exp(-(2.0 * c1 * h_ + c2 * (2.0 * tl * h_ + h_ * h_)) * inv_a2_);
      double rh = std::exp(-(2.0 * c1 * h_ + c2 * (2.0 * th * h_ + h_ * h_)) * inv_a2_);
      const double rstep = std::exp(-2.0 * c2 * h_ * h_ * inv_a2_);
      lam_lo_.resize(full);
      lam_hi_.resize(full);
      for (long k = 0; k < full; ++k) {
        lam_lo_[k] = ll;
        lam_hi_[k] = lh;
        ll *= rl;
        lh *= rh;
        rl *= rstep;
        rh *= rstep;
      }
      for (std::size_t j = 0; j < n; ++j) {
        Complex pl = off_lo_[j], ph = off_hi_[j];
        const Complex st = step_[j];
        Complex sum = 0.0;
        for (long k = 0; k < full; ++k) {
          sum += lam_lo_[k] * pl + lam_hi_[k] * ph;
          pl *= st;
          ph *= st;
        }
        acc_[j] += phase_[j] * sum * w;
        tail_phase_[j] = pl / off_lo_[j];
      }
    }
    const double rest = s - full * h_;
    if (rest > 0.0) {
      const double base = full * h_;
      const double wr = 0.5 * rest;
      const double tl = base + rest * (0.5 - kGl), th = base + rest * (0.5 + kGl);
      const double ll = p_.lambda0 * std::exp(-quad_at(tl) * inv_a2_);
      const double lh = p_.lambda0 * std::exp(-quad_at(th) * inv_a2_);
      for (std::size_t j = 0; j < n; ++j) {
        const Complex a0(p_.gamma, dws_[j]);
        // exp(-a0 base) from the panel recurrence, then the small offsets
        const Complex pb = full > 0 ? tail_phase_[j] : Complex(1.0);
        const Complex el = pb * exp_small(-a0 * (tl - base));
        const Complex eh = pb * exp_small(-a0 * (th - base));
        acc_[j] += phase_[j] * (ll * el + lh * eh) * wr;
      }
    }
  }

  ModelParams p_;
  Geometry g_;
  std::vector<double> dws_;
  double t_max_, h_;
  double inv_a2_ = 0, sigma_v_ = 0;
  std::vector<Complex> step_, off_lo_, off_hi_, acc_, phase_, tail_phase_;
  std::vector<double> lam_lo_, lam_hi_;
};

template <int D>
std::vector<OracleEstimate> run_mc(const ModelParams& p, const Geometry& g, const std::vector<double>& dws,
                                   const MCConfig& cfg, double t_max, double substep) {
  const std::size_t nw = dws.size();
  const long n = cfg.n_trajectories;
  const long block = std::max<long>(1, cfg.stream_partition);
  const long n_blocks = (n + block - 1) / block;
  std::vector<Moments> blocks(n_blocks, Moments(nw));
  std::atomic<long> next{0};
  auto worker = [&]() {
    Transport<D> tr(p, g, dws, t_max, substep);
    std::vector<Complex> value(nw);
    for (long b = next++; b < n_blocks; b = next++) {
      Moments& m = blocks[b];
      const long end = std::min(n, (b + 1) * block);
      for (long i = b * block; i < end; ++i) {
        Stream rng(cfg.seed, static_cast<std::uint64_t>(i));
        tr.run(rng, value);
        for (std::size_t j = 0; j < nw; ++j) {
          m.re[j] += value[j].real();
          m.im[j] += value[j].imag();
          m.re2[j] += value[j].real() * value[j].real();
          m.im2[j] += value[j].imag() * value[j].imag();
        }
      }
    }
  };
  const int threads = static_cast<int>(std::min<long>(cfg.threads > 0 ? cfg.threads : default_thread_count(), n_blocks));
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  // Fixed-order reduction over blocks keeps the result independent of threads.
  Moments tot(nw);
  for (const auto& m : blocks) {
    for (std::size_t j = 0; j < nw; ++j) {
      tot.re[j] += m.re[j];
      tot.im[j] += m.im[j];
      tot.re2[j] += m.re2[j];
      tot.im2[j] += m.im2[j];
    }
  }
  const double big = beam_integral(p, g);
  const double bias = big * p.lambda0 * std::exp(-p.gamma * t_max) / p.gamma;
  std::vector<OracleEstimate> out(nw);
  for (std::size_t j = 0; j < nw; ++j) {
    const double mr = tot.re[j] / n, mi = tot.im[j] / n;
    const double denom = n > 1 ? double(n - 1) : 1.0;
    const double vr = std::max(0.0, (tot.re2[j] - n * mr * mr) / denom);
    const double vi = std::max(0.0, (tot.im2[j] - n * mi * mi) / denom);
    out[j].value = big * Complex(mr, mi);
    out[j].std_error = big * std::sqrt((vr + vi) / n) + bias;
    out[j].n_effective = n;
  }
  return out;
}

}  // namespace

int default_thread_count() {
  if (const char* env = std::getenv("RAMSEY_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

double beam_integral(const ModelParams& p, const Geometry& g) {
  const double a = p.a;
  const double R = g.R;
  switch (g.dim) {
    case 1:
      return std::sqrt(kPi) * a * p.lambda0 * (std::isfinite(R) ? std::erf(R / a) : 1.0);
    case 2:
      return kPi * a * a * p.lambda0 * (std::isfinite(R) ? -std::expm1(-R * R / (a * a)) : 1.0);
    case 3:
      return 2.0 * g.l * kPi * a * a * p.lambda0 * (std::isfinite(R) ? -std::expm1(-R * R / (a * a)) : 1.0);
  }
  throw DomainError("beam_integral: dim must be 1, 2 or 3");
}

std::vector<OracleEstimate> mc_signal(const ModelParams& p, const Geometry& g, const std::vector<double>& dws,
                                      const MCConfig& cfg) {
  validate(p);
  validate(g);
  if (!(p.gamma > 0.0)) throw ConfigError("mc_signal requires gamma > 0");
  if (cfg.n_trajectories < 1) throw ConfigError("n_trajectories must be at least 1");
  if (g.dim == 3 && !std::isfinite(g.R)) throw ConfigError("3D transport needs a finite radius");
  const DerivedScales s = derive_scales(p, g, 0.0);
  const double limit = std::min(s.tau_nu, s.tau_a) / 10.0;
  const double substep = cfg.substep > 0.0 ? cfg.substep : limit;
  if (substep > limit * (1.0 + 1e-12)) {
    throw ConfigError("substep must not exceed min(tau_nu, tau_a)/10");
  }
  const double t_max = cfg.t_max > 0.0 ? cfg.t_max : std::max(12.0 * s.tau_gamma, 12.0 * s.tau_D);
  switch (g.dim) {
    case 1: return run_mc<1>(p, g, dws, cfg, t_max, substep);
    case 2: return run_mc<2>(p, g, dws, cfg, t_max, substep);
    default: return run_mc<3>(p, g, dws, cfg, t_max, substep);
  }
}

}  // namespace ramsey
