#pragma once

// Shared plumbing for the check implementations.

#include <functional>
#include <string>

#include "isosym/classify.hpp"
#include "isosym/generators.hpp"
#include "isosym/lab.hpp"

namespace isosym::lab {

inline constexpr double kHypothesisTol = 1e-9;
inline constexpr double kBlockHypothesisTol = 1e-10;
/// Residual above which a non-membership is considered certain.
inline constexpr double kNonMemberMargin = 1e-6;

struct TrialOutcome {
  bool skipped = false;
  double residual = 0.0;
  std::string note;
  nlohmann::json instance;

  static TrialOutcome skip(std::string why) { return {true, 0.0, std::move(why), {}}; }
  void observe(double r) { residual = std::max(residual, r); }
};

using TrialFn = std::function<TrialOutcome(Rng& rng, int trial)>;

VerificationReport run_trials(const std::string& name, const CheckOptions& options,
                              bool sampled_hypothesis, const TrialFn& fn);

struct Instance {
  CMatrix weight;
  CMatrix op;
  int m = 0;
  int n = 0;
  std::string origin;

  WeightedOperator weighted() const { return WeightedOperator(weight, op); }
  nlohmann::json to_json() const;
};

double omega_residual(const WeightedOperator& w, int m, int n);
double lambda_residual(const WeightedOperator& w, int m, int n);
double class_residual(const WeightedOperator& w, ClassKind kind, int m, int n);

/// V with V* = V = V^{-1}, random eigenbasis and signs.
CMatrix random_involution(Index dim, Rng& rng);
/// Commuting Hermitian matrices W D1 W*, W D2 W*.
std::pair<CMatrix, CMatrix> commuting_hermitians(Index dim, Rng& rng);

/// A member of the given core family moved to a random invertible weight.
Instance similar_instance(Rng& rng, MemberFamily family, Index dim);
/// V (x) I + I (x) N_r with V an involution, moved to a random weight. Orders
/// (1, 1) for r = 2, (1, 3) for r = 3.
Instance involution_plus_nilpotent(Rng& rng, Index half, int r);
/// The mixed pool: similar members, padded degenerate weights, gallery
/// fixtures, solver-built weights. Reports (m, n) it was built for.
Instance member_instance(Rng& rng, int trial, bool diagonalizable = false);
/// Instances of (A, n)-symmetric operators; m is left at 0.
Instance symmetric_instance(Rng& rng, int trial);

}  // namespace isosym::lab
