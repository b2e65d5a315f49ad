#include "isosym/matrix.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace isosym {

CMatrix make_matrix(Index rows, Index cols, const std::vector<Complex>& row_major) {
  if (rows <= 0 || cols <= 0) {
    throw InvalidArgument("matrix dimensions must be positive");
  }
  if (static_cast<Index>(row_major.size()) != rows * cols) {
    throw InvalidArgument("expected " + std::to_string(rows * cols) + " entries, got " +
                          std::to_string(row_major.size()));
  }
  CMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      m(i, j) = row_major[static_cast<std::size_t>(i * cols + j)];
    }
  }
  require_finite(m, "matrix");
  return m;
}

CMatrix identity(Index dim) { return CMatrix::Identity(dim, dim); }

bool all_finite(const CMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

void require_finite(const CMatrix& m, std::string_view what) {
  if (!all_finite(m)) {
    throw InvalidArgument(std::string(what) + " has a non-finite entry");
  }
}

void require_square(const CMatrix& m, std::string_view what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionMismatch(std::string(what) + " must be square and non-empty, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

double frobenius(const CMatrix& m) { return m.norm(); }

WeightedOperator::WeightedOperator(CMatrix weight, CMatrix op)
    : weight_(std::move(weight)), op_(std::move(op)) {
  require_square(weight_, "weight");
  require_square(op_, "operator");
  if (weight_.rows() != op_.rows()) {
    throw DimensionMismatch("weight and operator dimensions differ");
  }
  require_finite(weight_, "weight");
  require_finite(op_, "operator");
  const double scale = weight_.norm();
  if ((weight_ - weight_.adjoint()).norm() > kHermitianTol * scale) {
    throw InvalidWeight("weight is not Hermitian");
  }
  if (min_hermitian_eigenvalue(weight_) < -kPsdTol * scale) {
    throw InvalidWeight("weight is not positive semi-definite");
  }
}

WeightedOperator WeightedOperator::with_op(CMatrix op) const {
  return WeightedOperator(weight_, std::move(op));
}

CMatrix adjoint(const CMatrix& m) { return m.adjoint(); }

Complex semi_inner(const CMatrix& weight, const CVector& x, const CVector& y) {
  require_square(weight, "weight");
  if (x.size() != weight.rows() || y.size() != weight.rows()) {
    throw DimensionMismatch("semi_inner: vector length does not match the weight");
  }
  return y.dot(weight * x);  // Eigen's dot conjugates its left operand
}

double min_hermitian_eigenvalue(const CMatrix& m) {
  require_square(m, "matrix");
  const CMatrix h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

bool psd_check(const CMatrix& m, double tol) { return psd_check(m, tol, m.norm()); }

bool psd_check(const CMatrix& m, double tol, double reference_norm) {
  require_square(m, "matrix");
  if ((m - m.adjoint()).norm() > tol * reference_norm) return false;
  return min_hermitian_eigenvalue(m) >= -tol * reference_norm;
}

EigenSet eigenpairs(const CMatrix& m) {
  require_square(m, "matrix");
  if (m.rows() > kMaxDim) {
    throw InvalidArgument("eigenpairs supports dimension <= 64");
  }
  Eigen::ComplexEigenSolver<CMatrix> solver;
  solver.setMaxIterations(static_cast<Index>(100 * m.rows()));
  solver.compute(m, true);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("shifted QR did not converge within 100*n sweeps");
  }
  EigenSet out;
  for (Index k = 0; k < m.rows(); ++k) {
    const Complex lambda = solver.eigenvalues()(k);
    CVector v = solver.eigenvectors().col(k);
    const double len = v.norm();
    if (len > 0.0) v /= len;
    out.residuals.push_back((m * v - lambda * v).norm());
    out.values.push_back(lambda);
    out.vectors.push_back(std::move(v));
  }
  return out;
}

CMatrix matrix_exp(const CMatrix& m, double s) {
  require_square(m, "matrix");
  const Index n = m.rows();
  CMatrix x = Complex(0.0, s) * m;
  const double norm1 = x.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
    x /= std::ldexp(1.0, squarings);
  }
  // |x|_1 <= 1/2: 18 Taylor terms put the truncation error far below eps.
  CMatrix result = CMatrix::Identity(n, n);
  CMatrix term = CMatrix::Identity(n, n);
  for (int k = 1; k <= 18; ++k) {
    term = (term * x) / static_cast<double>(k);
    if (term.cwiseAbs().maxCoeff() == 0.0) break;
    result += term;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

CMatrix psd_sqrt(const CMatrix& a) {
  require_square(a, "weight");
  const CMatrix h = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  const Eigen::VectorXd root = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * root.asDiagonal() * solver.eigenvectors().adjoint();
}

CMatrix psd_inverse_sqrt(const CMatrix& a) {
  require_square(a, "weight");
  const CMatrix h = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  const Eigen::VectorXd ev = solver.eigenvalues();
  const double cutoff = 1e-12 * std::max(ev.cwiseAbs().maxCoeff(), 0.0);
  Eigen::VectorXd inv(ev.size());
  for (Index i = 0; i < ev.size(); ++i) inv(i) = ev(i) > cutoff ? 1.0 / std::sqrt(ev(i)) : 0.0;
  return solver.eigenvectors() * inv.asDiagonal() * solver.eigenvectors().adjoint();
}

std::vector<CMatrix> hermitian_basis(Index dim) {
  std::vector<CMatrix> basis;
  basis.reserve(static_cast<std::size_t>(dim * dim));
  const double r = 1.0 / std::sqrt(2.0);
  for (Index j = 0; j < dim; ++j) {
    CMatrix e = CMatrix::Zero(dim, dim);
    e(j, j) = 1.0;
    basis.push_back(std::move(e));
  }
  for (Index j = 0; j < dim; ++j) {
    for (Index k = j + 1; k < dim; ++k) {
      CMatrix sym = CMatrix::Zero(dim, dim);
      sym(j, k) = r;
      sym(k, j) = r;
      basis.push_back(std::move(sym));
      CMatrix anti = CMatrix::Zero(dim, dim);
      anti(j, k) = Complex(0.0, r);
      anti(k, j) = Complex(0.0, -r);
      basis.push_back(std::move(anti));
    }
  }
  return basis;
}

Eigen::VectorXd hermitian_coordinates(const CMatrix& h) {
  require_square(h, "matrix");
  const Index dim = h.rows();
  Eigen::VectorXd coords(dim * dim);
  const double s2 = std::sqrt(2.0);
  Index idx = 0;
  for (Index j = 0; j < dim; ++j) coords(idx++) = h(j, j).real();
  for (Index j = 0; j < dim; ++j) {
    for (Index k = j + 1; k < dim; ++k) {
      // Frobenius projections onto the two off-diagonal basis elements.
      const Complex avg = (h(j, k) + std::conj(h(k, j))) / 2.0;
      coords(idx++) = s2 * avg.real();
      coords(idx++) = s2 * avg.imag();
    }
  }
  return coords;
}

CMatrix from_hermitian_coordinates(const Eigen::VectorXd& coords, Index dim) {
  if (coords.size() != dim * dim) {
    throw DimensionMismatch("coordinate vector does not match dim^2");
  }
  CMatrix h = CMatrix::Zero(dim, dim);
  const double r = 1.0 / std::sqrt(2.0);
  Index idx = 0;
  for (Index j = 0; j < dim; ++j) h(j, j) = coords(idx++);
  for (Index j = 0; j < dim; ++j) {
    for (Index k = j + 1; k < dim; ++k) {
      const double re = coords(idx++) * r;
      const double im = coords(idx++) * r;
      h(j, k) = Complex(re, im);
      h(k, j) = Complex(re, -im);
    }
  }
  return h;
}

HermitianMap make_hermitian_map(Index dim, const std::function<CMatrix(const CMatrix&)>& f) {
  const auto basis = hermitian_basis(dim);
  HermitianMap map;
  map.dim = dim;
  for (std::size_t c = 0; c < basis.size(); ++c) {
    const CMatrix image = f(basis[c]);
    if (c == 0) map.matrix.resize(2 * image.size(), static_cast<Index>(basis.size()));
    if (2 * image.size() != map.matrix.rows()) {
      throw DimensionMismatch("map images have inconsistent size");
    }
    const Eigen::Map<const Eigen::VectorXcd> flat(image.data(), image.size());
    map.matrix.col(static_cast<Index>(c)) << flat.real(), flat.imag();
  }
  return map;
}

std::vector<CMatrix> hermitian_nullspace(const HermitianMap& map, double tol) {
  const Index params = map.dim * map.dim;
  if (map.matrix.cols() != params) {
    throw DimensionMismatch("map column count must equal dim^2");
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(map.matrix, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  std::vector<CMatrix> out;
  for (Index k = 0; k < params; ++k) {
    const double sigma = k < sv.size() ? sv(k) : 0.0;
    if (sigma <= tol * smax) {
      out.push_back(from_hermitian_coordinates(svd.matrixV().col(k), map.dim));
    }
  }
  return out;
}

CMatrix pseudo_inverse(const CMatrix& m, double relative_cutoff) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cutoff = relative_cutoff * (sv.size() > 0 ? sv(0) : 0.0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff && sv(i) > 0.0) inv(i) = 1.0 / sv(i);
  }
  const Index r = sv.size();
  return svd.matrixV().leftCols(r) * inv.asDiagonal() * svd.matrixU().leftCols(r).adjoint();
}

std::optional<CMatrix> a_adjoint(const CMatrix& weight, const CMatrix& op, double tol) {
  require_square(weight, "weight");
  require_square(op, "operator");
  if (weight.rows() != op.rows()) throw DimensionMismatch("a_adjoint: dimensions differ");
  const CMatrix pinv = pseudo_inverse(weight);
  const CMatrix rhs = op.adjoint() * weight;
  const CMatrix range_projector = pinv * weight;
  const CMatrix x = range_projector * (pinv * rhs);
  const double residual = (weight * x - rhs).norm();
  if (residual > tol * weight.norm() * op.norm()) return std::nullopt;
  return x;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix direct_sum(const CMatrix& a, const CMatrix& b) {
  CMatrix out = CMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

CMatrix block2x2(const CMatrix& n, const CMatrix& e, const CMatrix& x) {
  require_square(n, "N block");
  require_square(x, "X block");
  if (e.rows() != n.rows() || e.cols() != x.rows()) {
    throw DimensionMismatch("block2x2: E must be dim(N) x dim(X)");
  }
  CMatrix out = CMatrix::Zero(n.rows() + x.rows(), n.cols() + x.cols());
  out.topLeftCorner(n.rows(), n.cols()) = n;
  out.topRightCorner(e.rows(), e.cols()) = e;
  out.bottomRightCorner(x.rows(), x.cols()) = x;
  return out;
}

}  // namespace isosym
