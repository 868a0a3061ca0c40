#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ramsey/infinite.hpp"
#include "ramsey/model.hpp"
#include "ramsey/quadrature.hpp"

namespace ramsey {

/// A named signal S(dw) for one fixed parameter set and geometry.
struct Evaluator {
  EvaluatorTag tag = EvaluatorTag::kClosedForm;
  std::string name;
  std::function<Complex(double)> fn;

  Complex operator()(double dw) const { return fn(dw); }
};

/// Evaluator names: closed_form, ramsey_integral, lorentz_limit, fourier_exact,
/// fourier_truncated, green, green_k0, auto. "auto" picks closed_form for
/// unbounded 1D/2D and green otherwise. n_terms caps the cylinder series.
Evaluator make_evaluator(const std::string& name, const ModelParams& p, const Geometry& g,
                         const QuadratureConfig& quad = {}, int n_terms = 2000);

std::vector<std::string> evaluator_names();

/// Scales every sample by 1/Re S(0). Needs a sample within one grid spacing of 0.
LineShape normalize(const LineShape& line);

struct HalfWidthResult {
  double hwhm = 0;
  double lo = 0;
  double hi = 0;
  int iterations = 0;
  EvaluatorTag evaluator = EvaluatorTag::kClosedForm;
};

/// Smallest positive dw with Re S(dw) = Re S(0)/2. Brackets on a doubling
/// grid (up to nu/2), refines inside the bracket with a 16-point scan, then bisects.
HalfWidthResult hwhm(const Evaluator& s, const ModelParams& p, const Geometry& g);

struct ScanRow {
  double R = 0;
  HalfWidthResult width;
  double ratio_to_infinite = 0;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  HalfWidthResult infinite;
  std::string trend;  // "increasing", "decreasing" or "non-monotonic" in R
};

/// Half widths over the radii plus the unbounded reference. The reference is
/// the R -> infinity limit of the same evaluator family.
ScanResult scan_r(const std::string& evaluator, const ModelParams& p, int dim, const std::vector<double>& radii,
                  double l = kInfinity, const QuadratureConfig& quad = {}, int n_terms = 2000);

struct NarrowingReport {
  HalfWidthResult width;
  double gamma = 0;
  double tau_D = 0;        // a^2/|D|
  double tau_D_1d = 0;     // nu tau_a^2
  double limit_width = 0;  // gamma + 1/(2 tau_D_1d) in 1D, gamma + 1/(nu tau_a^2) in 2D
  double limit_width_formula = 0;  // same with tau_D = a^2/|D|
  double ratio = 0;                // hwhm / limit_width
  double ratio_formula = 0;
  std::vector<Diagnostic> diagnostics;
};

/// dim 1 or 2 only.
NarrowingReport narrowing_report(const ModelParams& p, const Geometry& g, const QuadratureConfig& quad = {});

}  // namespace ramsey
