#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ramsey/model.hpp"

namespace ramsey {

/// How residuals of a candidate against its reference are scored.
enum class Scoring {
  kRelative,  // |c - r| / |r|
  kSigma,     // |c - r| / sigma (reference carries a statistical error)
};

/// One discrepancy to arbitrate: reference samples and candidate samples on
/// a common grid, optionally with a rival candidate that must lose.
struct ArbitrationInput {
  std::string id;
  std::string description;
  std::vector<double> grid;
  std::vector<Complex> reference;
  std::vector<double> sigma;  // kSigma only
  std::vector<Complex> candidate;
  std::vector<Complex> rival;  // empty when there is none
  Scoring scoring = Scoring::kRelative;
  double tolerance = 0;
  double rival_margin = 0;  // rival residual must be >= margin * candidate residual (0: rival must exceed tolerance)
};

struct ValidationItem {
  std::string id;
  std::string description;
  double measured = 0;   // worst candidate residual
  double tolerance = 0;
  std::optional<double> rival;  // worst rival residual
  bool pass = false;
  bool skipped = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationItem> items;

  bool all_pass() const;
  /// Items whose id starts with the prefix, e.g. "AC-4".
  std::vector<ValidationItem> group(const std::string& prefix) const;
};

/// Scores each input; never touches the evaluators that produced the samples.
ValidationReport arbitrate(const std::vector<ArbitrationInput>& inputs);

enum class ValidationLevel { kFast, kFull };

struct AcceptanceOptions {
  ValidationLevel level = ValidationLevel::kFull;
  long trajectories_finite = 1000000;   // finite-region slab and disk
  long trajectories_cylinder = 200000;
  long trajectories_infinite = 20000;
  long trajectories_control = 50000;    // high-nu boundary-layer control
  std::uint64_t seed = 20240611;
  int threads = 0;
  /// Negative control: score the non-adopted beta convention as the candidate.
  bool swap_beta_convention = false;
};

/// One summary item per criterion plus the sub-items that decide it.
struct CriterionResult {
  std::string id;
  std::string title;
  bool pass = false;
  bool skipped = false;
  std::vector<ValidationItem> items;
  std::vector<std::string> notes;
};

CriterionResult ac1_closed_form_identity(const AcceptanceOptions& opt);
CriterionResult ac2_diffusion_scaling(const AcceptanceOptions& opt);
CriterionResult ac3_finite_convergence(const AcceptanceOptions& opt);
CriterionResult ac4_finite_transport(const AcceptanceOptions& opt);
CriterionResult ac5_cylinder(const AcceptanceOptions& opt);
CriterionResult ac6_lorentz_limits(const AcceptanceOptions& opt);
CriterionResult ac7_qualitative(const AcceptanceOptions& opt);
CriterionResult ac8_properties(const AcceptanceOptions& opt);

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);

std::string format_criterion(const CriterionResult& c, bool verbose);

}  // namespace ramsey
