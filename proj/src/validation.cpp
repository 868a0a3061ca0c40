#include "ramsey/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "ramsey/analysis.hpp"
#include "ramsey/errors.hpp"
#include "ramsey/finite.hpp"
#include "ramsey/infinite.hpp"
#include "ramsey/oracle.hpp"

namespace ramsey {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel(Complex c, Complex r) {
  const double d = std::abs(c - r);
  return d == 0.0 ? 0.0 : d / std::abs(r);
}

double residual(const ArbitrationInput& in, const std::vector<Complex>& c, std::size_t* worst_at = nullptr) {
  double worst = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    double e = 0.0;
    if (in.scoring == Scoring::kRelative) {
      e = rel(c[i], in.reference[i]);
    } else {
      const double d = std::abs(c[i] - in.reference[i]);
      e = d == 0.0 ? 0.0 : d / in.sigma[i];
    }
    if (!(e <= worst)) {
      worst = e;
      if (worst_at) *worst_at = i;
    }
  }
  return worst;
}

ValidationItem make_item(const std::string& id, const std::string& description, double measured, double tolerance,
                         bool pass, const std::string& detail = {}) {
  ValidationItem it;
  it.id = id;
  it.description = description;
  it.measured = measured;
  it.tolerance = tolerance;
  it.pass = pass;
  it.detail = detail;
  return it;
}

ValidationItem skipped(const std::string& id, const std::string& description) {
  ValidationItem it;
  it.id = id;
  it.description = description;
  it.skipped = true;
  it.detail = "Monte Carlo item, runs at level full";
  return it;
}

void finish(CriterionResult& c) {
  bool any = false;
  c.pass = true;
  for (const auto& it : c.items) {
    if (it.skipped) continue;
    any = true;
    c.pass = c.pass && it.pass;
  }
  c.skipped = !any;
  if (c.skipped) c.pass = false;
}

MCConfig mc_config(const AcceptanceOptions& opt, long n) {
  MCConfig cfg;
  cfg.n_trajectories = n;
  cfg.seed = opt.seed;
  cfg.threads = opt.threads;
  return cfg;
}

std::vector<Complex> sample(const std::vector<double>& grid, auto&& f) {
  std::vector<Complex> out;
  for (double x : grid) out.push_back(f(x));
  return out;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

const QuadratureConfig kTight{1e-11, 1e-15, 4000};

}  // namespace

bool ValidationReport::all_pass() const {
  return std::all_of(items.begin(), items.end(), [](const auto& it) { return it.skipped || it.pass; });
}

std::vector<ValidationItem> ValidationReport::group(const std::string& prefix) const {
  std::vector<ValidationItem> out;
  for (const auto& it : items) {
    if (it.id.rfind(prefix, 0) == 0) out.push_back(it);
  }
  return out;
}

ValidationReport arbitrate(const std::vector<ArbitrationInput>& inputs) {
  ValidationReport rep;
  for (const auto& in : inputs) {
    ValidationItem it;
    it.id = in.id;
    it.description = in.description;
    it.tolerance = in.tolerance;
    const std::size_t n = in.grid.size();
    if (in.reference.size() != n || in.candidate.size() != n || (!in.rival.empty() && in.rival.size() != n) ||
        (in.scoring == Scoring::kSigma && in.sigma.size() != n)) {
      it.pass = false;
      it.detail = "sample count mismatch";
      rep.items.push_back(it);
      continue;
    }
    std::size_t at = 0;
    it.measured = residual(in, in.candidate, &at);
    it.pass = it.measured <= in.tolerance;
    std::ostringstream d;
    d.precision(6);
    if (n > 0) d << "worst at dw=" << in.grid[at];
    if (!in.rival.empty()) {
      const double r = residual(in, in.rival);
      it.rival = r;
      const bool rival_loses = in.rival_margin > 0.0 ? r >= in.rival_margin * it.measured : r > in.tolerance;
      it.pass = it.pass && rival_loses;
      d << ", rival " << r;
      if (in.rival_margin > 0.0) d << " (ratio " << (it.measured > 0 ? r / it.measured : kInfinity) << ")";
    }
    it.detail = d.str();
    rep.items.push_back(it);
  }
  return rep;
}

CriterionResult ac1_closed_form_identity(const AcceptanceOptions& opt) {
  CriterionResult c{"AC-1", "closed forms equal the truncated-kernel Fourier integral", false, false, {}, {}};
  const ModelParams p;
  const std::vector<double> grid{0.0, 1.0, -1.0, 3.0, -3.0, 10.0, -10.0};
  std::vector<ArbitrationInput> in;
  for (int dim : {1, 2}) {
    const auto oracle = sample(grid, [&](double w) {
      return s_inf_fourier(dim, p, w, FourierKernel::kTruncated, kTight).value;
    });
    ArbitrationInput a;
    a.id = fmt("AC-1.identity-%dd", dim);
    a.description = fmt("truncated Fourier oracle vs closed form, dim %d", dim);
    a.grid = grid;
    a.reference = oracle;
    a.candidate = sample(grid, [&](double w) { return dim == 1 ? s_inf_1d(p, w) : s_inf_2d(p, w); });
    a.tolerance = 1e-8;
    in.push_back(a);

    ArbitrationInput b;
    b.id = fmt("AC-1.beta-convention-%dd", dim);
    b.description = fmt("adopted beta^2 convention must fit the oracle 10x better, dim %d", dim);
    b.grid = grid;
    b.reference = oracle;
    const auto adopted = opt.swap_beta_convention ? BetaConvention::kAlternative : BetaConvention::kAdopted;
    const auto other = opt.swap_beta_convention ? BetaConvention::kAdopted : BetaConvention::kAlternative;
    b.candidate = sample(grid, [&](double w) { return s_inf_green(dim, p, w, adopted); });
    b.rival = sample(grid, [&](double w) { return s_inf_green(dim, p, w, other); });
    b.tolerance = kInfinity;
    b.rival_margin = 10.0;
    in.push_back(b);
  }
  c.items = arbitrate(in).items;
  if (opt.swap_beta_convention) c.notes.push_back("negative control: beta conventions swapped");
  finish(c);
  return c;
}

CriterionResult ac2_diffusion_scaling(const AcceptanceOptions&) {
  CriterionResult c{"AC-2", "exact-kernel gap to the diffusion closed forms scales as nu^-2", false, false, {}, {}};
  const std::vector<double> nus{1e3, 3e3, 1e4};
  const std::vector<double> grid{0.0, 1.0, 3.0};
  for (int dim : {1, 2}) {
    std::vector<double> lx, ly;
    double gap1000 = 0.0;
    for (double nu : nus) {
      ModelParams p;
      p.nu = nu;
      double gap = 0.0;
      for (double w : grid) {
        const Complex exact = s_inf_fourier(dim, p, w, FourierKernel::kExact, kTight).value;
        const Complex closed = dim == 1 ? s_inf_1d(p, w) : s_inf_2d(p, w);
        gap = std::max(gap, rel(exact, closed));
      }
      if (nu == 1e3) gap1000 = gap;
      lx.push_back(std::log(nu));
      ly.push_back(std::log(gap));
      c.notes.push_back(fmt("dim %d nu %.0f relative gap %.4e", dim, nu, gap));
    }
    c.items.push_back(make_item(fmt("AC-2.gap-%dd", dim), fmt("relative gap at nu = 1000, dim %d", dim), gap1000, 2e-2,
                                gap1000 <= 2e-2));
    const double s = slope(lx, ly);
    c.items.push_back(make_item(fmt("AC-2.slope-%dd", dim), fmt("log-log slope of the gap, dim %d (target -2)", dim),
                                s, 0.3, std::abs(s + 2.0) <= 0.3, fmt("|slope + 2| = %.3f", std::abs(s + 2.0))));
  }
  finish(c);
  return c;
}

CriterionResult ac3_finite_convergence(const AcceptanceOptions&) {
  CriterionResult c{"AC-3", "finite-region signals converge to the unbounded ones", false, false, {}, {}};
  const ModelParams p;
  const QuadratureConfig quad{1e-12, 1e-16, 4000};
  const std::vector<double> grid{0.0, 2.0, -2.0};
  for (int dim : {1, 2}) {
    auto sr = [&](double w, double R) { return dim == 1 ? s_r_1d(p, w, R, quad) : s_r_2d(p, w, R, quad); };
    ArbitrationInput a;
    a.id = fmt("AC-3.R10-%dd", dim);
    a.description = fmt("|S_R - S_inf|/|S_inf| at R = 10a, dim %d", dim);
    a.grid = grid;
    a.reference = sample(grid, [&](double w) { return s_inf_green(dim, p, w); });
    a.candidate = sample(grid, [&](double w) { return sr(w, 10.0); });
    a.tolerance = 1e-3;
    c.items.push_back(arbitrate({a}).items.front());

    std::vector<double> rs, logs;
    const Complex sinf = s_inf_green(dim, p, 0.0);
    for (double R : {4.0, 5.0, 6.0, 7.0, 8.0}) {
      rs.push_back(R);
      logs.push_back(std::log(std::abs(sr(0.0, R) - sinf)));
    }
    const double s = slope(rs, logs);
    const double expected = -2.0 * beta_of(p, 0.0).real();
    const double dev = std::abs(s / expected - 1.0);
    c.items.push_back(make_item(fmt("AC-3.slope-%dd", dim),
                                fmt("residual slope over R in [4a, 8a] vs -2 Re beta, dim %d", dim), dev, 0.2,
                                dev <= 0.2, fmt("slope %.4f, expected %.4f", s, expected)));
  }
  c.notes.push_back(fmt("A-form closed forms differ from the R -> inf limit by %.2e (1D) and %.2e (2D)",
                        rel(s_inf_1d(p, 0.0), s_inf_green(1, p, 0.0)), rel(s_inf_2d(p, 0.0), s_inf_green(2, p, 0.0))));
  finish(c);
  return c;
}

CriterionResult ac4_finite_transport(const AcceptanceOptions& opt) {
  CriterionResult c{"AC-4", "transport oracle vs finite-region signals at R = 2a", false, false, {}, {}};
  if (opt.level == ValidationLevel::kFast) {
    c.items.push_back(skipped("AC-4", "finite-region Monte Carlo"));
    finish(c);
    return c;
  }
  const ModelParams p;
  const QuadratureConfig quad{1e-11, 1e-15, 4000};
  const std::vector<double> grid{0.0, 2.0};
  const double R = 2.0 * p.a;
  for (int dim : {1, 2}) {
    const Geometry g{dim, R};
    const auto est = mc_signal(p, g, grid, mc_config(opt, opt.trajectories_finite));
    ArbitrationInput a;
    a.grid = grid;
    a.scoring = Scoring::kSigma;
    a.tolerance = 3.0;
    double worst_prec = 0.0;
    for (const auto& e : est) {
      a.reference.push_back(e.value);
      a.sigma.push_back(e.std_error);
      worst_prec = std::max(worst_prec, e.std_error / std::abs(e.value));
    }
    if (dim == 1) {
      a.id = "AC-4.slab";
      a.description = "MC vs s_r_1d within 3 sigma";
      a.candidate = sample(grid, [&](double w) { return s_r_1d(p, w, R, quad); });
    } else {
      a.id = "AC-4.disk";
      a.description = "MC vs s_r_2d (I0 denominator) within 3 sigma; K0 variant must fail";
      a.candidate = sample(grid, [&](double w) { return s_r_2d(p, w, R, quad, Denominator2d::kI0); });
      a.rival = sample(grid, [&](double w) { return s_r_2d(p, w, R, quad, Denominator2d::kK0); });
    }
    auto item = arbitrate({a}).items.front();
    c.items.push_back(item);
    c.items.push_back(make_item(fmt("AC-4.precision-%dd", dim), "std_error / |S| at most 1%", worst_prec, 1e-2,
                                worst_prec <= 1e-2));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      c.notes.push_back(fmt("dim %d dw %.0f: MC %.6f%+.6fi se %.2e, diffusion %.6f%+.6fi, ratio %.4f", dim, grid[i],
                            est[i].value.real(), est[i].value.imag(), est[i].std_error, a.candidate[i].real(),
                            a.candidate[i].imag(), std::abs(est[i].value) / std::abs(a.candidate[i])));
    }
  }
  // Control: same geometry at four times the collision rate. The kinetic
  // boundary layer shrinks with the mean free path, so agreement improves.
  {
    ModelParams hp;
    hp.nu = 4000.0;
    const Geometry g{1, R};
    const auto est = mc_signal(hp, g, {0.0}, mc_config(opt, opt.trajectories_control));
    const Complex d = s_r_1d(hp, 0.0, R, quad);
    c.notes.push_back(fmt("control nu = 4000, dim 1, dw 0: MC %.6f se %.2e, diffusion %.6f, |diff|/se %.2f",
                          est[0].value.real(), est[0].std_error, d.real(), std::abs(est[0].value - d) / est[0].std_error));
  }
  finish(c);
  return c;
}

CriterionResult ac5_cylinder(const AcceptanceOptions& opt) {
  CriterionResult c{"AC-5", "transport oracle vs the cylinder mode series (R = 3a, l = 2a)", false, false, {}, {}};
  const ModelParams p;
  const QuadratureConfig quad{1e-10, 1e-16, 4000};
  const double R = 3.0, l = 2.0;
  const std::vector<double> grid{0.0, 2.0};
  std::vector<CylinderResult> series;
  for (double w : grid) series.push_back(s_r_3d(p, w, R, l, 4000, quad));
  bool converged = true;
  for (const auto& s : series) converged = converged && s.converged;
  c.items.push_back(make_item("AC-5.converged", "mode series reached its stopping criterion", converged ? 1.0 : 0.0, 1.0,
                              converged, fmt("%zu terms at dw 0", series[0].terms.size())));
  const double first = std::abs(series[0].terms.front().contribution) / std::abs(series[0].value);
  c.items.push_back(make_item("AC-5.first-mode", "first mode share of the converged sum at dw 0", first, 0.8,
                              first >= 0.8));
  if (opt.level == ValidationLevel::kFast) {
    c.items.push_back(skipped("AC-5.mc", "cylinder Monte Carlo"));
    finish(c);
    return c;
  }
  const Geometry g{3, R, l};
  const auto est = mc_signal(p, g, grid, mc_config(opt, opt.trajectories_cylinder));
  ArbitrationInput a;
  a.id = "AC-5.mc";
  a.description = "MC vs analytic prefactor x series within 3 sigma";
  a.grid = grid;
  a.scoring = Scoring::kSigma;
  a.tolerance = 3.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    a.reference.push_back(est[i].value);
    a.sigma.push_back(est[i].std_error);
    a.candidate.push_back(CylinderResult::kAnalyticPrefactor * series[i].value);
    c.notes.push_back(fmt("dw %.0f: MC %.6f%+.6fi se %.2e, series %.6f%+.6fi, MC/series %.4f (analytic prefactor %.0f)",
                          grid[i], est[i].value.real(), est[i].value.imag(), est[i].std_error, series[i].value.real(),
                          series[i].value.imag(), std::abs(est[i].value) / std::abs(series[i].value),
                          CylinderResult::kAnalyticPrefactor));
  }
  c.items.push_back(arbitrate({a}).items.front());
  finish(c);
  return c;
}

CriterionResult ac6_lorentz_limits(const AcceptanceOptions&) {
  CriterionResult c{"AC-6", "half widths approach the Lorentzian limits when gamma tau_D >> 1", false, false, {}, {}};
  ModelParams p;
  p.nu = 1e4;
  p.gamma = 10.0;
  p.v0 = 100.0;
  p.a = 1.0;
  const DerivedScales s = derive_scales(p, Geometry{}, 0.0);
  double widest = 0.0;
  for (int dim : {1, 2}) {
    const Geometry g{dim};
    const auto w = hwhm(make_evaluator("closed_form", p, g), p, g);
    widest = std::max(widest, w.hwhm);
    const double target = dim == 1 ? p.gamma + 1.0 / (2.0 * s.tau_D_1d) : p.gamma + 1.0 / (p.nu * s.tau_a * s.tau_a);
    const double e = std::abs(w.hwhm / target - 1.0);
    c.items.push_back(make_item(fmt("AC-6.width-%dd", dim), fmt("hwhm vs Lorentzian limit width, dim %d", dim), e, 0.05,
                                e <= 0.05, fmt("hwhm %.6f, limit %.6f", w.hwhm, target)));
    if (dim == 1) {
      const double alt = p.gamma + 1.0 / (2.0 * s.tau_D);
      c.notes.push_back(fmt("with tau_D = a^2/|D| = %.4f the 1D limit is %.6f (deviation %.4f)", s.tau_D, alt,
                            std::abs(w.hwhm / alt - 1.0)));
    }
  }
  const auto diags = validate_regime(p, Geometry{}, 4.0 * widest);
  std::string msg;
  for (const auto& d : diags) msg += d.message + "; ";
  const double gt = p.gamma * s.tau_D_1d;
  c.items.push_back(make_item("AC-6.regime", "regime inequalities hold and gamma tau_D >= 10", gt, 10.0,
                              diags.empty() && gt >= 10.0, msg.empty() ? "no regime diagnostics" : msg));
  finish(c);
  return c;
}

CriterionResult ac7_qualitative(const AcceptanceOptions&) {
  CriterionResult c{"AC-7", "2D line broader than 1D; central narrowing in 1D", false, false, {}, {}};
  const ModelParams p;
  const Geometry g1{1}, g2{2};
  const auto w1 = hwhm(make_evaluator("closed_form", p, g1), p, g1);
  const auto w2 = hwhm(make_evaluator("closed_form", p, g2), p, g2);
  c.items.push_back(make_item("AC-7.broader-2d", "hwhm(2D) / hwhm(1D) > 1", w2.hwhm / w1.hwhm, 1.0, w2.hwhm > w1.hwhm,
                              fmt("hwhm 1D %.6f, 2D %.6f", w1.hwhm, w2.hwhm)));
  const DerivedScales s = derive_scales(p, g1, 0.0);
  const double lim = p.gamma + 1.0 / (2.0 * s.tau_D);
  const double lim_1d = p.gamma + 1.0 / (2.0 * s.tau_D_1d);
  c.items.push_back(make_item("AC-7.narrowing", "hwhm(1D, inf) / (gamma + 1/(2 tau_D)) < 1 for both tau_D values",
                              w1.hwhm / lim, 1.0, w1.hwhm < lim && w1.hwhm < lim_1d,
                              fmt("tau_D %.4f -> %.6f; tau_D %.4f -> %.6f", s.tau_D, lim, s.tau_D_1d, lim_1d)));
  finish(c);
  return c;
}

namespace {

// int F over R^dim (order 0) or int F x^2 over R^dim (order 2), by radial quadrature in log r.
Complex kernel_moment(const ModelParams& p, int dim, double dw, int order, bool single_axis) {
  const QuadratureConfig inner{1e-12, 1e-300, 4000};
  const double scale = p.v0 / std::abs(Complex(p.nu + p.gamma, dw));
  const double surface = dim == 1 ? 2.0 : dim == 2 ? 2.0 * kPi : 4.0 * kPi;
  auto f = [&](double s) -> Complex {
    const double r = scale * std::exp(s);
    return kernel_f(r, p, dim, dw, inner) * std::pow(r, dim + order);
  };
  // F r^dim vanishes like r at the origin (times a log in 1D); 1e-16 of the scale is negligible.
  auto res = integrate_pieces<Complex>(f, {std::log(1e-16), -8.0, -2.0, 0.0, 2.0, 4.0, 7.0}, {1e-12, 1e-300, 4000});
  require_converged(res, "kernel moment");
  double factor = surface;
  if (single_axis && order == 2) factor /= dim;
  return factor * res.value;
}

}  // namespace

CriterionResult ac8_properties(const AcceptanceOptions& opt) {
  CriterionResult c{"AC-8", "property suites", false, false, {}, {}};
  const ModelParams p;
  const QuadratureConfig quad{1e-11, 1e-15, 4000};
  const std::vector<double> dws{0.5, 1.0, 3.0, 7.0};

  // Conjugation symmetry for every evaluator.
  struct Named {
    std::string name;
    std::function<Complex(double)> f;
  };
  std::vector<Named> evals;
  for (int dim : {1, 2}) {
    for (const char* n : {"closed_form", "ramsey_integral", "lorentz_limit", "fourier_exact", "fourier_truncated",
                          "green"}) {
      evals.push_back({fmt("%s %dD inf", n, dim), make_evaluator(n, p, Geometry{dim}, quad).fn});
    }
    evals.push_back({fmt("green %dD R=2", dim), make_evaluator("green", p, Geometry{dim, 2.0}, quad).fn});
  }
  evals.push_back({"green_k0 2D R=2", make_evaluator("green_k0", p, Geometry{2, 2.0}, quad).fn});
  evals.push_back({"green 3D R=3 l=2", make_evaluator("green", p, Geometry{3, 3.0, 2.0}, quad, 60).fn});
  {
    double worst = 0.0;
    std::string where;
    for (const auto& e : evals) {
      for (double w : dws) {
        const double r = rel(e.f(-w), std::conj(e.f(w)));
        if (r >= worst) {
          worst = r;
          where = e.name;
        }
      }
    }
    c.items.push_back(make_item("AC-8.conjugation", fmt("S(-dw) = conj S(dw) for %zu quadrature evaluators", evals.size()),
                                worst, 1e-10, worst <= 1e-10, "worst: " + where));
  }
  if (opt.level == ValidationLevel::kFull) {
    std::vector<double> grid;
    for (double w : dws) {
      grid.push_back(w);
      grid.push_back(-w);
    }
    double worst = 0.0;
    for (int dim : {1, 2, 3}) {
      const Geometry g{dim, dim == 1 ? kInfinity : 2.0, dim == 3 ? 2.0 : kInfinity};
      const auto est = mc_signal(p, g, grid, mc_config(opt, 2000));
      for (std::size_t i = 0; i < grid.size(); i += 2) worst = std::max(worst, rel(est[i + 1].value, std::conj(est[i].value)));
    }
    c.items.push_back(make_item("AC-8.conjugation-mc", "S(-dw) = conj S(dw) for the transport oracle", worst, 1e-10,
                                worst <= 1e-10));
  } else {
    c.items.push_back(skipped("AC-8.conjugation-mc", "conjugation of the transport oracle"));
  }

  // Kernel moments.
  {
    double worst0 = 0.0, worst2 = 0.0, worst2full = 0.0;
    for (double dw : {0.0, 3.0}) {
      const Complex alpha(p.nu + p.gamma, dw);
      for (int dim : {1, 2, 3}) worst0 = std::max(worst0, rel(kernel_moment(p, dim, dw, 0, false), 1.0 / alpha));
      const double mean_v2 = 1.5 * p.v0 * p.v0;
      const Complex a3 = alpha * alpha * alpha;
      worst2 = std::max(worst2, rel(kernel_moment(p, 3, dw, 2, true), 2.0 * mean_v2 / (3.0 * a3)));
      worst2full = std::max(worst2full, rel(kernel_moment(p, 3, dw, 2, false), 2.0 * mean_v2 / a3));
    }
    c.items.push_back(make_item("AC-8.kernel-norm", "int F d^n r = 1/alpha, n = 1, 2, 3", worst0, 1e-8, worst0 <= 1e-8));
    c.items.push_back(make_item("AC-8.kernel-second-moment", "3D int F x^2 d^3r = 2<v^2>/(3 alpha^3)", worst2, 1e-8,
                                worst2 <= 1e-8, fmt("full int F r^2 = 2<v^2>/alpha^3 residual %.2e", worst2full)));
  }

  // Special functions.
  {
    double wr = 0.0, sch = 0.0;
    for (int i = 0; i <= 60; ++i) {
      const double r = std::pow(10.0, -3.0 + 6.0 * i / 60.0);
      for (int j = 0; j < 9; ++j) {
        const Complex z = std::polar(r, -1.5 + 3.0 * j / 8.0);
        for (int n = 0; n < 3; ++n) {
          const Complex w = specfun::bessel_i_scaled(n, z) * specfun::bessel_k_scaled(n + 1, z) +
                            specfun::bessel_i_scaled(n + 1, z) * specfun::bessel_k_scaled(n, z);
          wr = std::max(wr, rel(w, 1.0 / z));
        }
        const Complex zc = std::conj(z);
        sch = std::max(sch, rel(specfun::erfcx(zc), std::conj(specfun::erfcx(z))));
        sch = std::max(sch, rel(specfun::e1_scaled(zc), std::conj(specfun::e1_scaled(z))));
        for (int n : {0, 1, 2}) {
          sch = std::max(sch, rel(specfun::bessel_i_scaled(n, zc), std::conj(specfun::bessel_i_scaled(n, z))));
          sch = std::max(sch, rel(specfun::bessel_k_scaled(n, zc), std::conj(specfun::bessel_k_scaled(n, z))));
        }
      }
    }
    c.items.push_back(make_item("AC-8.wronskian", "I_n K_{n+1} + I_{n+1} K_n = 1/z, |z| in [1e-3, 1e3]", wr, 1e-10,
                                wr <= 1e-10));
    c.items.push_back(make_item("AC-8.schwarz", "f(conj z) = conj f(z) for erfcx, E1, I_n, K_n", sch, 1e-10,
                                sch <= 1e-10));
  }

  if (opt.level == ValidationLevel::kFull) {
    const Geometry g{2, 2.0};
    MCConfig cfg = mc_config(opt, 3000);
    cfg.stream_partition = 256;
    bool same = true;
    cfg.threads = 1;
    const auto ref = mc_signal(p, g, {0.0, 2.0}, cfg);
    for (int t : {2, 3, 5}) {
      cfg.threads = t;
      const auto est = mc_signal(p, g, {0.0, 2.0}, cfg);
      for (std::size_t i = 0; i < est.size(); ++i) {
        same = same && est[i].value == ref[i].value && est[i].std_error == ref[i].std_error;
      }
    }
    c.items.push_back(make_item("AC-8.mc-reproducible", "bit-identical MC estimates for 1, 2, 3 and 5 threads",
                                same ? 0.0 : 1.0, 0.0, same));
  } else {
    c.items.push_back(skipped("AC-8.mc-reproducible", "MC thread-count reproducibility"));
  }
  finish(c);
  return c;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
  std::vector<CriterionResult> out;
  using Fn = CriterionResult (*)(const AcceptanceOptions&);
  for (Fn f : {ac1_closed_form_identity, ac2_diffusion_scaling, ac3_finite_convergence, ac4_finite_transport,
               ac5_cylinder, ac6_lorentz_limits, ac7_qualitative, ac8_properties}) {
    const auto t0 = std::chrono::steady_clock::now();
    auto c = f(opt);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.notes.push_back(fmt("elapsed %.1f s", dt));
    out.push_back(std::move(c));
  }
  return out;
}

std::string format_criterion(const CriterionResult& c, bool verbose) {
  std::ostringstream os;
  const bool partial = std::any_of(c.items.begin(), c.items.end(), [](const auto& it) { return it.skipped; });
  os << c.id << ' ' << (c.skipped ? "SKIP" : c.pass ? "PASS" : "FAIL") << "  " << c.title;
  if (partial && !c.skipped) os << " (partial: Monte Carlo items skipped)";
  os << '\n';
  if (!verbose) return os.str();
  for (const auto& it : c.items) {
    os << "    " << (it.skipped ? "skip" : it.pass ? "pass" : "FAIL") << ' ' << it.id << ": " << it.description;
    if (!it.skipped) os << fmt(" | measured %.4g, tolerance %.4g", it.measured, it.tolerance);
    if (!it.detail.empty()) os << " | " << it.detail;
    os << '\n';
  }
  for (const auto& n : c.notes) os << "    note: " << n << '\n';
  return os.str();
}

}  // namespace ramsey
