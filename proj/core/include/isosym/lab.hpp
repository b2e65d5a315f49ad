#pragma once

// Theorem checks: generate instances, verify hypotheses numerically, assert
// conclusions, and summarize as a report.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "isosym/matrix.hpp"

namespace isosym {

enum class Verdict { Pass, Fail, Vacuous };
std::string to_string(Verdict v);

struct TrialRecord {
  int index = 0;
  bool skipped = false;
  double residual = 0.0;
  std::string note;
};

struct VerificationReport {
  std::string theorem;
  int trials = 0;
  int skipped = 0;
  double max_residual = 0.0;
  Verdict verdict = Verdict::Vacuous;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  /// Hypotheses quantified over all real s were only checked at sample points.
  bool sampled_hypothesis = false;
  std::vector<TrialRecord> log;
  /// Instances of hard failures, matrices in the matrix JSON schema.
  std::vector<nlohmann::json> failures;

  int executed() const { return trials - skipped; }
};

nlohmann::json report_to_json(const VerificationReport& r);

struct CheckOptions {
  int trials = 50;
  std::uint64_t seed = 42;
  /// Non-positive means the check's own default.
  double tolerance = 0.0;
  /// When non-empty, each hard failure is also written there as JSON.
  std::string dump_dir;
};

/// Canonical check names, in run order.
std::vector<std::string> check_names();
/// Canonical name for a name or alias; throws InvalidArgument if unknown.
std::string resolve_check(const std::string& name);
double default_tolerance(const std::string& name);

VerificationReport run_check(const std::string& name, const CheckOptions& options);
std::vector<VerificationReport> run_all(const CheckOptions& options);

/// Per-check entry points (same contract as run_check).
VerificationReport check_hierarchy(const CheckOptions& o);
VerificationReport check_translation(const CheckOptions& o);
VerificationReport check_positivity_transfer(const CheckOptions& o);
VerificationReport check_inverse_and_powers(const CheckOptions& o);
VerificationReport check_weighted_sums(const CheckOptions& o);
VerificationReport check_exponential(const CheckOptions& o);
VerificationReport check_order_reduction(const CheckOptions& o);
VerificationReport check_order_reduction_sampled(const CheckOptions& o);
VerificationReport check_nilpotent_perturbation(const CheckOptions& o);
VerificationReport check_spectral(const CheckOptions& o);
VerificationReport check_block_triangular(const CheckOptions& o);

/// Eigenvalue-level facts for a (weighted) member at (m, n): distance of each
/// eigenvalue to the unit circle or real axis, the scalar identity, and
/// A-orthogonality of eigenvector pairs whose factor is bounded away from 0.
struct SpectralPair {
  std::size_t i = 0;
  std::size_t j = 0;
  double a_inner = 0.0;  // |<A x_i | x_j>| / |A|_F
};
struct SpectralReport {
  std::vector<Complex> eigenvalues;
  std::vector<double> distance;     // to the unit circle or the real axis
  std::vector<double> scalar_identity;
  std::vector<SpectralPair> pairs;  // asserted pairs only
  int skipped_pairs = 0;
  double max_distance = 0.0;
  double max_scalar_identity = 0.0;
  double max_a_inner = 0.0;
};
SpectralReport spectral_report(const WeightedOperator& w, int m, int n);

}  // namespace isosym
