#pragma once

// Tolerance-based membership predicates and order profiles.

#include <string>
#include <utility>
#include <vector>

#include "isosym/brackets.hpp"

namespace isosym {

enum class ClassKind { Isometry, Symmetry, SkewSymmetry, Isosymmetry, SkewIsosymmetry };

struct ClassQuery {
  ClassKind kind = ClassKind::Isosymmetry;
  int m = 0;
  int n = 0;
  double rho = 1e-10;
};

struct Membership {
  bool member = false;
  double residual = 0.0;
};

/// Relative residual of the defining bracket; for the two-index kinds the
/// larger of the two dual forms.
Membership is_member(const WeightedOperator& w, const ClassQuery& q);

struct OrderProfile {
  int max_m = 0;
  int max_n = 0;
  std::vector<std::vector<bool>> member;      // member[m][n]
  std::vector<std::vector<double>> residual;  // residual[m][n]
  std::vector<std::pair<int, int>> minimal;
  std::vector<std::string> warnings;
};

/// Grid of (m, n) memberships up to (M, N), computed along recurrence chains.
/// Cells breaking upward closure are reported in warnings, not repaired.
OrderProfile minimal_orders(const WeightedOperator& w, int max_m, int max_n, double rho = 1e-10);

/// sum_k (-1)^{m-k} C(m,k) R^k A S^k, i.e. whether R is a left (A, m)-inverse of S.
Membership left_inverse_check(const CMatrix& weight, const CMatrix& r, const CMatrix& s, int m,
                              double rho = 1e-10);

struct IsoSkewParts {
  CMatrix r;  // (T + A^{-1} T* A) / 2
  CMatrix s;  // (T - A^{-1} T* A) / 2
};

/// Throws SingularWeight when lambda_min(A) <= 1e-8 |A|_F.
IsoSkewParts decompose_iso_skew(const CMatrix& weight, const CMatrix& op);

}  // namespace isosym
