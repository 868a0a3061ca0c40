#include "ramsey/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "ramsey/errors.hpp"
#include "ramsey/finite.hpp"
#include "ramsey/oracle.hpp"

namespace ramsey {

namespace {

void require_unbounded(const Geometry& g, const std::string& name) {
  if (g.finite()) throw ConfigError(name + " evaluator needs an unbounded region (radius inf)");
  if (g.dim == 3) throw ConfigError(name + " evaluator is defined for dim 1 and 2 only");
}

}  // namespace

std::vector<std::string> evaluator_names() {
  return {"auto", "closed_form", "ramsey_integral", "lorentz_limit", "fourier_exact", "fourier_truncated",
          "green", "green_k0"};
}

Evaluator make_evaluator(const std::string& name, const ModelParams& p, const Geometry& g,
                         const QuadratureConfig& quad, int n_terms) {
  validate(p);
  validate(g);
  validate(quad);
  const int dim = g.dim;
  if (name == "auto") {
    return make_evaluator(g.finite() || dim == 3 ? "green" : "closed_form", p, g, quad, n_terms);
  }
  Evaluator e;
  e.name = name;
  if (name == "closed_form") {
    require_unbounded(g, name);
    e.tag = EvaluatorTag::kClosedForm;
    if (dim == 1) e.fn = [p](double dw) { return s_inf_1d(p, dw); };
    else e.fn = [p](double dw) { return s_inf_2d(p, dw); };
  } else if (name == "ramsey_integral") {
    require_unbounded(g, name);
    e.tag = EvaluatorTag::kRamseyIntegral;
    e.fn = [p, dim, quad](double dw) { return s_inf_ramsey(dim, p, dw, quad); };
  } else if (name == "lorentz_limit") {
    require_unbounded(g, name);
    e.tag = EvaluatorTag::kLorentzLimit;
    e.fn = [p, dim](double dw) { return s_inf_lorentz_limit(dim, p, dw); };
  } else if (name == "fourier_exact" || name == "fourier_truncated") {
    require_unbounded(g, name);
    e.tag = EvaluatorTag::kFourierOracle;
    const auto kernel = name == "fourier_exact" ? FourierKernel::kExact : FourierKernel::kTruncated;
    e.fn = [p, dim, quad, kernel](double dw) { return s_inf_fourier(dim, p, dw, kernel, quad).value; };
  } else if (name == "green") {
    e.tag = EvaluatorTag::kGreenFinite;
    const double R = g.R;
    if (dim == 3) {
      const double l = g.l;
      e.fn = [p, R, l, n_terms, quad](double dw) { return s_r_3d(p, dw, R, l, n_terms, quad).value; };
    } else if (!g.finite()) {
      e.fn = [p, dim](double dw) { return s_inf_green(dim, p, dw); };
    } else if (dim == 1) {
      e.fn = [p, R, quad](double dw) { return s_r_1d(p, dw, R, quad); };
    } else {
      e.fn = [p, R, quad](double dw) { return s_r_2d(p, dw, R, quad); };
    }
  } else if (name == "green_k0") {
    if (dim != 2 || !g.finite()) throw ConfigError("green_k0 evaluator needs dim 2 and a finite radius");
    e.tag = EvaluatorTag::kGreenFinite;
    const double R = g.R;
    e.fn = [p, R, quad](double dw) { return s_r_2d(p, dw, R, quad, Denominator2d::kK0); };
  } else {
    throw ConfigError("unknown evaluator: " + name);
  }
  return e;
}

LineShape normalize(const LineShape& line) {
  if (line.samples.empty()) throw DomainError("normalize: empty line shape");
  std::vector<double> x;
  for (const auto& s : line.samples) x.push_back(s.delta_omega);
  std::sort(x.begin(), x.end());
  double spacing = kInfinity;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i] > x[i - 1]) spacing = std::min(spacing, x[i] - x[i - 1]);
  }
  const auto centre = std::min_element(line.samples.begin(), line.samples.end(), [](const auto& a, const auto& b) {
    return std::abs(a.delta_omega) < std::abs(b.delta_omega);
  });
  if (centre->delta_omega != 0.0 && !(std::abs(centre->delta_omega) <= spacing)) {
    throw DomainError("normalize: no sample within one grid spacing of zero detuning");
  }
  const double s0 = centre->value.real();
  if (!(s0 > 0.0)) throw DomainError("normalize: Re S(0) must be positive");
  LineShape out = line;
  for (auto& s : out.samples) s.value /= s0;
  out.normalized = true;
  return out;
}

HalfWidthResult hwhm(const Evaluator& s, const ModelParams& p, const Geometry& g) {
  (void)g;
  HalfWidthResult out;
  out.evaluator = s.tag;
  const double s0 = s(0.0).real();
  out.iterations = 1;
  if (!(s0 > 0.0)) throw DomainError("hwhm: Re S(0) must be positive");
  auto excess = [&](double x) {
    ++out.iterations;
    return s(x).real() - 0.5 * s0;
  };
  const double limit = 0.5 * p.nu;

  // Doubling bracket.
  double lo = 0.0;
  double hi = 0.25 * (p.gamma + p.v0 * p.v0 / (p.nu * p.a * p.a));
  while (excess(hi) > 0.0) {
    if (hi >= limit) throw DivergenceError("hwhm: no half-maximum crossing below nu/2 (regime violated)");
    lo = hi;
    hi = std::min(2.0 * hi, limit);
  }
  // First sign change on a finer scan of the bracket.
  constexpr int kScan = 16;
  const double step = (hi - lo) / kScan;
  for (int i = 1; i < kScan; ++i) {
    const double x = lo + i * step;
    if (excess(x) <= 0.0) {
      hi = x;
      break;
    }
    lo = x;
  }
  while (hi - lo > 1e-13 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (excess(mid) > 0.0) lo = mid;
    else hi = mid;
  }
  out.lo = lo;
  out.hi = hi;
  out.hwhm = 0.5 * (lo + hi);
  return out;
}

ScanResult scan_r(const std::string& evaluator, const ModelParams& p, int dim, const std::vector<double>& radii,
                  double l, const QuadratureConfig& quad, int n_terms) {
  if (radii.empty()) throw ConfigError("scan_r: empty radius list");
  for (double R : radii) {
    if (!(R > 0.5 * p.a)) throw ConfigError("scan_r: radii must exceed a/2");
  }
  const std::string family = (evaluator == "auto" || evaluator == "green_k0") ? "green" : evaluator;
  ScanResult out;
  const Geometry ginf{dim, kInfinity, l};
  out.infinite = hwhm(make_evaluator(family, p, ginf, quad, n_terms), p, ginf);
  for (double R : radii) {
    const Geometry gr{dim, R, l};
    const std::string name = evaluator == "auto" ? "green" : evaluator;
    ScanRow row;
    row.R = R;
    row.width = hwhm(make_evaluator(name, p, gr, quad, n_terms), p, gr);
    row.ratio_to_infinite = row.width.hwhm / out.infinite.hwhm;
    out.rows.push_back(row);
  }
  std::vector<ScanRow> sorted = out.rows;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.R < b.R; });
  bool inc = true, dec = true;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].width.hwhm < sorted[i - 1].width.hwhm) inc = false;
    if (sorted[i].width.hwhm > sorted[i - 1].width.hwhm) dec = false;
  }
  out.trend = (inc && !dec) ? "increasing" : (dec && !inc) ? "decreasing" : (inc && dec) ? "constant" : "non-monotonic";
  return out;
}

NarrowingReport narrowing_report(const ModelParams& p, const Geometry& g, const QuadratureConfig& quad) {
  if (g.dim != 1 && g.dim != 2) throw DomainError("narrowing_report: dim must be 1 or 2");
  NarrowingReport r;
  r.width = hwhm(make_evaluator("auto", p, g, quad), p, g);
  const DerivedScales s = derive_scales(p, g, 0.0);
  r.gamma = p.gamma;
  r.tau_D = s.tau_D;
  r.tau_D_1d = s.tau_D_1d;
  if (g.dim == 1) {
    r.limit_width = p.gamma + 1.0 / (2.0 * s.tau_D_1d);
    r.limit_width_formula = p.gamma + 1.0 / (2.0 * s.tau_D);
  } else {
    r.limit_width = p.gamma + 1.0 / s.tau_D_1d;
    r.limit_width_formula = p.gamma + 2.0 / s.tau_D;
  }
  r.ratio = r.width.hwhm / r.limit_width;
  r.ratio_formula = r.width.hwhm / r.limit_width_formula;
  r.diagnostics = validate_regime(p, g, r.width.hwhm);
  return r;
}

}  // namespace ramsey
