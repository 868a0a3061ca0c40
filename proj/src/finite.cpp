#include "ramsey/finite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ramsey/errors.hpp"
#include "ramsey/infinite.hpp"
#include "ramsey/specfun.hpp"

namespace ramsey {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.7724538509055160273;

// Beyond this many beam radii the Gaussian source is below 1e-35.
constexpr double kSourceCutoff = 9.0;

Complex alpha0_of(const ModelParams& p, double dw) { return {p.gamma, dw}; }

void require_alpha0(Complex alpha0) {
  if (alpha0 == Complex(0.0)) throw DivergenceError("signal diverges: alpha0 = 0");
}

std::vector<double> unit_breaks(double lo, double hi, double step) {
  std::vector<double> b{lo};
  for (double x = lo + step; x < hi; x += step) b.push_back(x);
  b.push_back(hi);
  return b;
}

void insert_break(std::vector<double>& b, double x) {
  if (x > b.front() && x < b.back()) {
    b.push_back(x);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
  }
}

// I0(z)/I0(w) * exp(...) pieces. With Re z >= 0 the scaled I carries exp(-Re z).
Complex i0s(Complex z) { return specfun::bessel_i_scaled(0, z); }
Complex k0s(Complex z) { return specfun::bessel_k_scaled(0, z); }

// Cumulative table of exp(-Re(kappa) r) I(r), I(r) = int_0^r x I0(kappa x) exp(-x^2/a^2) dx,
// built from 10-point Gauss-Legendre panels. The integrand is entire, so
// panels of width min(a/8, 1/(4|kappa|)) are exact to rounding. The scaling
// keeps large screening constants (high cylinder modes) finite.
class ScriptITable {
 public:
  ScriptITable(Complex kappa, double a, double r_max) : kappa_(kappa), kr_(std::max(0.0, kappa.real())), a_(a) {
    const double h = std::min(a / 8.0, 0.25 / std::max(1e-300, std::abs(kappa)));
    h_ = std::max(h, r_max / 20000.0);
    const int n = static_cast<int>(std::ceil(r_max / h_)) + 1;
    cum_.resize(n + 1);
    cum_[0] = 0.0;
    const double shift = std::exp(-kr_ * h_);
    for (int i = 0; i < n; ++i) cum_[i + 1] = cum_[i] * shift + panel(i * h_, (i + 1) * h_);
  }

  // exp(-Re(kappa) r) I(r)
  Complex scaled(double r) const {
    if (r <= 0.0) return 0.0;
    const int i = std::min(static_cast<int>(r / h_), static_cast<int>(cum_.size()) - 1);
    const double lo = i * h_;
    return cum_[i] * std::exp(-kr_ * (r - lo)) + panel(lo, r);
  }

 private:
  // integrand times exp(-Re(kappa) hi)
  Complex f(double x, double hi) const {
    const Complex z = kappa_ * x;
    return x * i0s(z) * std::exp(std::abs(z.real()) - kr_ * hi - x * x / (a_ * a_));
  }

  Complex panel(double lo, double hi) const {
    static constexpr double kX[5] = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                     0.8650633666889845, 0.9739065285171717};
    static constexpr double kW[5] = {0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                                     0.1494513491505806, 0.0666713443086881};
    if (hi <= lo) return 0.0;
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    Complex s = 0.0;
    for (int j = 0; j < 5; ++j) s += kW[j] * (f(c - h * kX[j], hi) + f(c + h * kX[j], hi));
    return s * h;
  }

  Complex kappa_;
  double kr_;
  double a_;
  double h_ = 0;
  std::vector<Complex> cum_;
};

// exp(Re(beta) (x< - x>)) style scaled Neumann/Dirichlet Green function.
Complex green_1d_unchecked(double x, double xp, Complex beta, double R) {
  const double lo = std::min(x, xp), hi = std::max(x, xp);
  const Complex head = std::exp(beta * (lo - hi)) * (1.0 + std::exp(-2.0 * beta * lo)) / (2.0 * beta);
  if (!std::isfinite(R)) return head;
  return head * (1.0 - std::exp(-2.0 * beta * (R - hi))) / (1.0 + std::exp(-2.0 * beta * R));
}

// Radial Green kernel I0(k r<) [K0(k r>) - K0(k R) I0(k r>)/I0(k R)].
Complex green_2d(double r, double rp, Complex kappa, double R) {
  const double lo = std::min(r, rp), hi = std::max(r, rp);
  const double kr = kappa.real();
  Complex head = i0s(kappa * lo);
  if (hi > 0.0) {
    head *= k0s(kappa * hi) * std::exp(kr * (lo - hi));
  } else {
    return kInfinity;
  }
  if (!std::isfinite(R)) return head;
  const Complex wall = k0s(kappa * R) * i0s(kappa * lo) * i0s(kappa * hi) / i0s(kappa * R) *
                       std::exp(kr * (lo + hi - 2.0 * R));
  return head - wall;
}

}  // namespace

Complex green_1d(double x, double xp, Complex beta, double R) {
  if (x < 0.0 || xp < 0.0 || x > R || xp > R) throw DomainError("green_1d: points must lie in [0, R]");
  if (!(beta.real() > 0.0)) throw DomainError("green_1d: requires Re beta > 0");
  return green_1d_unchecked(x, xp, beta, R);
}

CsIntegrals cs_integrals(double x, const ModelParams& p, double dw) {
  if (x < 0.0) throw DomainError("cs_integrals: x must be non-negative");
  const Complex eps = 0.5 * beta_of(p, dw) * p.a;
  const Complex e2 = eps * eps;
  if (e2.real() > 700.0) throw OverflowError("cs_integrals: exp(eps^2) overflows");
  const Complex pref = 0.25 * kSqrtPi * p.a * std::exp(e2);
  const auto [lo, hi] = specfun::erf_shifted(x / p.a, eps);
  return {pref * (lo + hi), pref * (lo - hi + 2.0 * specfun::erf(eps))};
}

ScaledComplex c_infinity(const ModelParams& p, double dw) {
  const Complex eps = 0.5 * beta_of(p, dw) * p.a;
  return {0.5 * kSqrtPi * p.a, eps * eps};
}

Complex s_r_1d(const ModelParams& p, double dw, double R, const QuadratureConfig& quad) {
  if (!(R > 0.0)) throw DomainError("s_r_1d: R must be positive");
  const Complex alpha0 = alpha0_of(p, dw);
  require_alpha0(alpha0);
  const Complex beta = beta_of(p, dw);
  const double top = std::min(R, kSourceCutoff * p.a);
  const Complex denom = 1.0 + std::exp(-2.0 * beta * R);
  auto f = [&](double x) -> Complex {
    // sinh(beta (R - x)) / cosh(beta R) in scaled form
    const Complex ratio = std::exp(-beta * x) * (1.0 - std::exp(-2.0 * beta * (R - x))) / denom;
    return ratio * std::exp(-x * x / (p.a * p.a)) * cs_integrals(x, p, dw).C;
  };
  auto res = integrate_pieces<Complex>(f, unit_breaks(0.0, top, p.a), quad);
  require_converged(res, "s_r_1d");
  return 4.0 * beta * p.lambda0 * p.lambda0 / alpha0 * res.value;
}

Approximation s_r_1d_correction(const ModelParams& p, double dw, double R) {
  const Complex alpha0 = alpha0_of(p, dw);
  require_alpha0(alpha0);
  const Complex beta = beta_of(p, dw);
  const Complex eps = 0.5 * beta * p.a;
  const Complex corr = -(kPi * p.a * p.a * beta * p.lambda0 * p.lambda0 / alpha0) *
                       std::exp(2.0 * eps * eps - 2.0 * beta * R);
  Approximation out{s_inf_green(1, p, dw) + corr, std::nullopt};
  if ((beta * R).real() < 3.0) out.warning = "Re(beta R) < 3: e^{-2 beta R} asymptotics not reliable";
  return out;
}

Complex script_i(double r, Complex beta, double a, const QuadratureConfig& quad) {
  if (r < 0.0) throw DomainError("script_i: r must be non-negative");
  const double cap = std::max(0.0, beta.real()) * a * a / 2.0 + 10.0 * a;
  const double top = std::min(r, cap);
  if (top <= 0.0) return 0.0;
  auto f = [&](double x) -> Complex {
    const Complex z = beta * x;
    return x * i0s(z) * std::exp(std::abs(z.real()) - x * x / (a * a));
  };
  auto res = integrate_pieces<Complex>(f, unit_breaks(0.0, top, a), quad);
  require_converged(res, "script_i");
  return res.value;
}

Complex script_i_infinity(Complex beta, double a) { return 0.5 * a * a * std::exp(0.25 * beta * beta * a * a); }

Complex script_i_tail(double r, Complex beta, double a) {
  const Complex z = beta * r;
  return 0.5 * a * a * i0s(z) * std::exp(std::abs(z.real()) - r * r / (a * a));
}

Complex s_r_2d_screened(const ModelParams& p, double dw, double R, Complex kappa, const QuadratureConfig& quad,
                        Denominator2d denominator) {
  if (!(R > 0.0)) throw DomainError("s_r_2d: R must be positive");
  const Complex alpha0 = alpha0_of(p, dw);
  require_alpha0(alpha0);
  const Complex beta = beta_of(p, dw);
  const double top = std::min(R, kSourceCutoff * p.a);
  const double kr = kappa.real();
  const bool finite = std::isfinite(R);
  const ScriptITable script(kappa, p.a, top);

  Complex k0R = 0.0, i0R = 0.0;
  if (finite) {
    k0R = k0s(kappa * R);
    i0R = i0s(kappa * R);
  }
  // Green bracket times exp(Re(kappa) r); the matching factor is carried by
  // the scaled script-I table.
  auto bracket = [&](double r) -> Complex {
    const Complex z = kappa * r;
    if (denominator == Denominator2d::kI0 || !finite) {
      Complex b = k0s(z);
      if (finite) b -= k0R * i0s(z) / i0R * std::exp(2.0 * kr * (r - R));
      return b;
    }
    // [K0(kr) I0(kR) - K0(kR) I0(kr)] / K0(kR)
    return k0s(z) * i0R / k0R * std::exp(2.0 * kr * R) - i0s(z) * std::exp(2.0 * kr * r);
  };
  auto f = [&](double r) -> Complex {
    if (r <= 0.0) return 0.0;
    return r * std::exp(-r * r / (p.a * p.a)) * bracket(r) * script.scaled(r);
  };
  auto breaks = unit_breaks(0.0, top, p.a);
  insert_break(breaks, 0.1 * p.a);
  if (finite && kr > 0.0) insert_break(breaks, R - 1.0 / kr);
  auto res = integrate_pieces<Complex>(f, breaks, quad);
  require_converged(res, "s_r_2d");
  return 4.0 * kPi * beta * beta * p.lambda0 * p.lambda0 / alpha0 * res.value;
}

Complex s_r_2d(const ModelParams& p, double dw, double R, const QuadratureConfig& quad, Denominator2d denominator) {
  return s_r_2d_screened(p, dw, R, beta_of(p, dw), quad, denominator);
}

std::pair<Complex, Complex> s_r_2d_correction_terms(const ModelParams& p, double dw, double R) {
  const Complex alpha0 = alpha0_of(p, dw);
  require_alpha0(alpha0);
  const Complex beta = beta_of(p, dw);
  const Complex pref = -2.0 * kPi * beta * beta * p.lambda0 * p.lambda0 / alpha0;
  const Complex iinf = script_i_infinity(beta, p.a);
  const Complex z = beta * R;
  const Complex k0 = specfun::bessel_k_scaled(0, z) * std::exp(-z.real());
  const Complex gauss = pref * p.a * p.a * iinf * std::exp(-R * R / (p.a * p.a)) * k0;
  const Complex wall = pref * kPi * std::exp(-2.0 * z) * iinf * iinf;
  return {gauss, wall};
}

Approximation s_r_2d_correction(const ModelParams& p, double dw, double R) {
  const auto [gauss, wall] = s_r_2d_correction_terms(p, dw, R);
  Approximation out{s_inf_green(2, p, dw) + gauss + wall, std::nullopt};
  const Complex beta = beta_of(p, dw);
  if ((beta * R).real() < 3.0 || R < 3.0 * p.a) out.warning = "outside Re(beta R) >= 3, R >= 3a: asymptotics not reliable";
  return out;
}

double s_r_2d_crossover_radius(const ModelParams& p, double dw) {
  auto g = [&](double R) {
    const auto [gauss, wall] = s_r_2d_correction_terms(p, dw, R);
    return std::log(std::abs(gauss)) - std::log(std::abs(wall));
  };
  double lo = 1e-3 * p.a, hi = 30.0 * p.a;
  if (g(lo) <= 0.0 || g(hi) >= 0.0) throw ConvergenceError("s_r_2d_crossover_radius: no sign change");
  for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

ModeScales mode_scales(const ModelParams& p, double dw, double l, int m) {
  if (m < 1 || m % 2 == 0) throw DomainError("mode index must be odd and positive");
  if (!(l > 0.0)) throw DomainError("half-height must be positive");
  ModeScales s;
  s.m = m;
  s.k_m = kPi * m / (2.0 * l);
  const Complex b = beta_of(p, dw);
  s.beta_m = std::sqrt(b * b + s.k_m * s.k_m);
  return s;
}

CylinderResult s_r_3d(const ModelParams& p, double dw, double R, double l, int n_terms, const QuadratureConfig& quad) {
  if (n_terms < 1) throw DomainError("s_r_3d: n_terms must be at least 1");
  if (!(l > 0.0) || !std::isfinite(l)) throw DomainError("s_r_3d: requires finite l > 0");
  CylinderResult out;
  out.value = 0.0;
  for (int n = 0; n < n_terms; ++n) {
    CylinderTerm t;
    t.mode = mode_scales(p, dw, l, 2 * n + 1);
    t.s2 = std::isfinite(R) ? s_r_2d_screened(p, dw, R, t.mode.beta_m, quad)
                            : s_inf_green_screened(p, dw, t.mode.beta_m);
    t.weight = 2.0 * l / (kPi * kPi * t.mode.m * t.mode.m);
    t.contribution = t.weight * t.s2;
    out.value += t.contribution;
    out.terms.push_back(t);
    if (std::abs(t.contribution) < 1e-10 * std::abs(out.value)) {
      out.converged = true;
      break;
    }
  }
  return out;
}

RadialProfile n_profile(int dim, const ModelParams& p, double dw, const Geometry& g, const std::vector<double>& grid,
                        const QuadratureConfig& quad) {
  if (dim != 1 && dim != 2) throw DomainError("n_profile: dim must be 1 or 2");
  const Complex alpha0 = alpha0_of(p, dw);
  require_alpha0(alpha0);
  const Complex beta = beta_of(p, dw);
  const double R = g.R;
  const double top = std::min(R, kSourceCutoff * p.a);
  const Complex pref = beta * beta * p.lambda0 / alpha0;
  RadialProfile out;
  out.grid = grid;
  for (double x : grid) {
    const double r = std::abs(x);
    if (r > R || (dim == 2 && x < 0.0)) throw DomainError("n_profile: grid node outside the domain");
    auto breaks = unit_breaks(0.0, top, p.a);
    insert_break(breaks, r);
    Complex v;
    if (dim == 1) {
      auto f = [&](double xp) { return green_1d_unchecked(r, xp, beta, R) * std::exp(-xp * xp / (p.a * p.a)); };
      v = require_converged(integrate_pieces<Complex>(f, breaks, quad), "n_profile").value;
    } else {
      insert_break(breaks, 0.1 * p.a);
      auto f = [&](double rp) -> Complex {
        if (rp <= 0.0 || (rp == r && r == 0.0)) return 0.0;
        return rp * green_2d(r, rp, beta, R) * std::exp(-rp * rp / (p.a * p.a));
      };
      v = require_converged(integrate_pieces<Complex>(f, breaks, quad), "n_profile").value;
    }
    out.values.push_back(pref * v);
  }
  return out;
}

}  // namespace ramsey
