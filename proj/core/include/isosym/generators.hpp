#pragma once

// Deterministic random instances.

#include <cstdint>
#include <random>
#include <utility>

#include "isosym/matrix.hpp"

namespace isosym {

std::uint64_t splitmix64(std::uint64_t x);

/// mt19937_64 seeded through SplitMix64. Stream i of master seed s is seeded
/// with splitmix64(s ^ splitmix64(i + 1)). Gaussians use Box-Muller so the
/// sequence does not depend on the standard library vendor.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  static Rng stream(std::uint64_t master, std::uint64_t index);

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi);
  double gaussian();
  Complex complex_gaussian();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

CMatrix rand_matrix(Index dim, Rng& rng);
CMatrix rand_matrix(Index dim, std::uint64_t seed);
CMatrix rand_real_matrix(Index dim, Rng& rng);
CMatrix rand_hermitian(Index dim, Rng& rng);
/// G* G for a Gaussian G.
CMatrix rand_psd(Index dim, Rng& rng);
CMatrix rand_psd(Index dim, std::uint64_t seed);
/// Positive definite with eigenvalues in [lo, hi].
CMatrix rand_positive_definite(Index dim, Rng& rng, double lo = 0.5, double hi = 2.0);
/// Orthonormalized Gaussian matrix (Householder QR with the R-diagonal phases
/// folded into Q).
CMatrix rand_unitary(Index dim, Rng& rng);
CMatrix rand_unitary(Index dim, std::uint64_t seed);
/// Unit vector.
CVector rand_unit_vector(Index dim, Rng& rng);

/// Direct sum of shift blocks of size r (the last block may be shorter), so
/// N^r = 0 and N^{r-1} != 0. Throws BadOrder unless 1 <= r <= dim.
CMatrix jordan_nilpotent(Index dim, int r);

struct OperatorPair {
  CMatrix t;
  CMatrix q;
};

/// (R (x) I, I (x) N): commuting and doubly commuting by construction.
OperatorPair doubly_commuting_pair(const CMatrix& r, const CMatrix& n);

/// Building blocks that are members of a class for the identity weight.
enum class MemberFamily {
  Unitary,                 // (1, 0)
  Hermitian,               // (0, 1)
  UnitaryPlusHermitian,    // direct sum, (1, 1)
  HermitianPlusNilpotent,  // H (x) I + I (x) N_2, (0, 3)
  UnitaryPlusNilpotent,    // V (x) I + I (x) N_2, (3, 0)
};

struct MemberCore {
  CMatrix op;
  int m = 0;
  int n = 0;
};

/// An identity-weight member of the family with the given total dimension
/// (dimensions are rounded to even for the nilpotent families).
MemberCore member_core(MemberFamily family, Index dim, Rng& rng);

/// T = A^{-1/2} U A^{1/2}; then Omega_A(T) = A^{1/2} Omega_I(U) A^{1/2}, so T
/// inherits every identity-weight membership of U. A must be invertible.
WeightedOperator similar_member(const CMatrix& u, const CMatrix& weight);

/// Weight A1 (+) 0 and T = [[U, 0], [J, K]] with random J, K. The brackets of
/// T are those of (A1, U) padded by zeros, so T is a member wherever U is.
WeightedOperator degenerate_member(const CMatrix& u, const CMatrix& weight1, Index extra,
                                   Rng& rng);

}  // namespace isosym
