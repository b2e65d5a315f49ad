#pragma once

// Dense complex matrix primitives shared by every other module.

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "isosym/errors.hpp"

namespace isosym {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kEigenTol = 1e-8;
inline constexpr Index kMaxDim = 64;

/// Builds a rows x cols matrix from row-major entries. Throws InvalidArgument
/// on a size mismatch, a zero dimension, or a non-finite entry.
CMatrix make_matrix(Index rows, Index cols, const std::vector<Complex>& row_major);

CMatrix identity(Index dim);

bool all_finite(const CMatrix& m);
void require_finite(const CMatrix& m, std::string_view what);
void require_square(const CMatrix& m, std::string_view what);

double frobenius(const CMatrix& m);

/// A PSD weight A together with the operator T it acts alongside.
class WeightedOperator {
 public:
  /// Validates: both square, same dimension, finite entries, A Hermitian
  /// within kHermitianTol and min eig((A+A*)/2) >= -kPsdTol * |A|_F.
  WeightedOperator(CMatrix weight, CMatrix op);

  const CMatrix& weight() const { return weight_; }
  const CMatrix& op() const { return op_; }
  Index dim() const { return op_.rows(); }

  /// Same weight, different operator (T -> f(T) style derivations).
  WeightedOperator with_op(CMatrix op) const;

 private:
  CMatrix weight_;
  CMatrix op_;
};

struct EigenSet {
  std::vector<Complex> values;
  std::vector<CVector> vectors;  // unit Euclidean norm
  std::vector<double> residuals;  // |Mv - lambda v|_2

  std::size_t size() const { return values.size(); }
  bool accepted(std::size_t i, double matrix_norm) const {
    return residuals[i] <= kEigenTol * matrix_norm;
  }
};

CMatrix adjoint(const CMatrix& m);

/// <Ax | y> with the inner product linear in its first slot, i.e. y* A x.
Complex semi_inner(const CMatrix& weight, const CVector& x, const CVector& y);

/// Hermitian within tol (relative, Frobenius) and lambda_min >= -tol*|M|_F.
bool psd_check(const CMatrix& m, double tol = kPsdTol);
/// Same test with an explicit reference magnitude in place of |M|_F; used
/// when M is itself a cancelled sum whose natural scale is much larger.
bool psd_check(const CMatrix& m, double tol, double reference_norm);

/// Smallest eigenvalue of the Hermitian part (M + M*)/2.
double min_hermitian_eigenvalue(const CMatrix& m);

/// Eigenpairs via Hessenberg reduction and shifted QR. dim <= 64.
EigenSet eigenpairs(const CMatrix& m);

/// exp(i * s * M) by scaling and squaring a Taylor kernel.
CMatrix matrix_exp(const CMatrix& m, double s);

/// Principal square root and pseudo-inverse square root of a Hermitian PSD
/// matrix (negative rounding eigenvalues clipped to zero).
CMatrix psd_sqrt(const CMatrix& a);
CMatrix psd_inverse_sqrt(const CMatrix& a);

/// Real-linear map acting on the real coordinates of Hermitian dim x dim
/// matrices. Columns follow hermitian_basis(dim); rows are the real and
/// imaginary parts of the column-major image.
struct HermitianMap {
  Eigen::MatrixXd matrix;
  Index dim = 0;
};

/// Frobenius-orthonormal basis of the Hermitian dim x dim matrices: diagonal
/// units first, then (E_jk + E_kj)/sqrt2 and i(E_jk - E_kj)/sqrt2 for j < k.
std::vector<CMatrix> hermitian_basis(Index dim);
Eigen::VectorXd hermitian_coordinates(const CMatrix& h);
CMatrix from_hermitian_coordinates(const Eigen::VectorXd& coords, Index dim);

HermitianMap make_hermitian_map(Index dim, const std::function<CMatrix(const CMatrix&)>& f);

/// Orthonormal basis of {H Hermitian : |L(H)| <= tol |L| |H|} by singular
/// value thresholding. May be empty.
std::vector<CMatrix> hermitian_nullspace(const HermitianMap& map, double tol);

/// Least-squares solution X of A X = T* A with columns projected onto
/// range(A). Empty when the residual exceeds tol * |A|_F * |T|_F, i.e. when
/// range(T*A) is not contained in range(A).
std::optional<CMatrix> a_adjoint(const CMatrix& weight, const CMatrix& op, double tol);

CMatrix pseudo_inverse(const CMatrix& m, double relative_cutoff = 1e-12);

CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix direct_sum(const CMatrix& a, const CMatrix& b);
/// [[N, E], [0, X]] with N p x p, E p x q, X q x q.
CMatrix block2x2(const CMatrix& n, const CMatrix& e, const CMatrix& x);

}  // namespace isosym
