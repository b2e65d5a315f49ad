#pragma once

// Inverse problem: a nonzero PSD weight A with Omega^{m,n}_A(T) = 0.

#include <cstdint>
#include <optional>
#include <vector>

#include "isosym/brackets.hpp"

namespace isosym {

inline constexpr Index kMaxAdmissibleDim = 16;
inline constexpr int kMaxAdmissibleOrder = 8;  // bound on m + n
inline constexpr double kNullspaceTol = 1e-10;
inline constexpr double kAcceptResidual = 1e-9;
inline constexpr double kAcceptMargin = -1e-10;
inline constexpr int kRepairIterations = 200;

struct AdmissibleSolution {
  CMatrix weight;  // Hermitian PSD, |A|_F = 1
  double residual = 0.0;
  int nullspace_dim = 0;
  double psd_margin = 0.0;  // lambda_min(A)
  int attempts_used = 0;    // 0 when the trace heuristic succeeded
};

/// Real-linear map A -> Omega^{m,n}_A(T) on Hermitian A, assembled from the
/// coefficient table as sum c_ij ((T^j)^T (x) T*^i) acting on vec(A).
HermitianMap constraint_map(const CMatrix& op, int m, int n);

/// Orthonormal (Frobenius) basis of the Hermitian kernel of constraint_map.
std::vector<CMatrix> admissible_basis(const CMatrix& op, int m, int n);

/// One clip-and-reproject step: negative eigenvalues set to zero, then
/// orthogonal projection back onto span(basis), then |.|_F = 1.
CMatrix repair_step(const CMatrix& h, const std::vector<CMatrix>& basis);

/// Empty when the search fails; that is not a proof of infeasibility.
std::optional<AdmissibleSolution> solve_admissible(const CMatrix& op, int m, int n,
                                                   int attempts, std::uint64_t seed);

struct Certificate {
  double outer_isometry = 0.0;  // residual through the S^n inner form
  double outer_symmetry = 0.0;  // residual through the I^m inner form
  double recurrence = 0.0;      // residual of the recurrence chain
  double max_residual = 0.0;
};

/// Throws InvalidWeight when A is zero or not PSD.
Certificate certify(const CMatrix& op, const CMatrix& weight, int m, int n);

}  // namespace isosym
