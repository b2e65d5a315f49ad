#include "isosym/admissible.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "isosym/generators.hpp"

namespace isosym {

namespace {

void require_admissible_input(const CMatrix& op, int m, int n) {
  require_square(op, "T");
  require_finite(op, "T");
  require_order(m);
  require_order(n);
  if (op.rows() > kMaxAdmissibleDim) throw InvalidArgument("admissible search needs dim <= 16");
  if (m + n > kMaxAdmissibleOrder) throw InvalidArgument("admissible search needs m + n <= 8");
}

CMatrix project(const CMatrix& h, const std::vector<CMatrix>& basis) {
  CMatrix out = CMatrix::Zero(h.rows(), h.cols());
  for (const auto& b : basis) {
    // Frobenius inner product; real because both are Hermitian.
    const double c = (b.adjoint() * h).trace().real();
    out += c * b;
  }
  return out;
}

CMatrix hermitian_part(const CMatrix& h) { return (h + h.adjoint()) / 2.0; }

}  // namespace

HermitianMap constraint_map(const CMatrix& op, int m, int n) {
  require_admissible_input(op, m, n);
  const Index d = op.rows();
  const CoeffTable table = expand(BracketKind::omega(m, n));

  std::vector<CMatrix> pw{identity(d)};
  std::vector<CMatrix> adj{identity(d)};
  for (int k = 1; k <= table.degree(); ++k) {
    pw.push_back(pw.back() * op);
    adj.push_back(adj.back() * op.adjoint());
  }

  CMatrix big = CMatrix::Zero(d * d, d * d);
  for (int i = 0; i <= table.degree(); ++i)
    for (int j = 0; j <= table.degree(); ++j) {
      const std::int64_t c = table(i, j);
      if (c != 0) big += static_cast<double>(c) * kron(pw[j].transpose(), adj[i]);
    }

  const auto basis = hermitian_basis(d);
  CMatrix columns(d * d, static_cast<Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    columns.col(static_cast<Index>(k)) =
        Eigen::Map<const CVector>(basis[k].data(), basis[k].size());
  }
  const CMatrix image = big * columns;

  HermitianMap map;
  map.dim = d;
  map.matrix.resize(2 * d * d, static_cast<Index>(basis.size()));
  map.matrix << image.real(), image.imag();
  return map;
}

std::vector<CMatrix> admissible_basis(const CMatrix& op, int m, int n) {
  return hermitian_nullspace(constraint_map(op, m, n), kNullspaceTol);
}

CMatrix repair_step(const CMatrix& h, const std::vector<CMatrix>& basis) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(h));
  const Eigen::VectorXd clipped = es.eigenvalues().cwiseMax(0.0);
  const CMatrix psd = es.eigenvectors() * clipped.cast<Complex>().asDiagonal() *
                      es.eigenvectors().adjoint();
  CMatrix out = hermitian_part(project(psd, basis));
  const double norm = out.norm();
  if (norm > 0.0) out /= norm;
  return out;
}

namespace {

std::optional<AdmissibleSolution> accept(const CMatrix& op, const CMatrix& h, int m, int n,
                                         int nullspace_dim, int attempts_used) {
  if (h.norm() < 1e-12) return std::nullopt;
  const CMatrix a = hermitian_part(h) / h.norm();
  const double margin = min_hermitian_eigenvalue(a);
  if (margin < kAcceptMargin) return std::nullopt;
  const double residual = certify(op, a, m, n).max_residual;
  if (residual > kAcceptResidual) return std::nullopt;
  return AdmissibleSolution{a, residual, nullspace_dim, margin, attempts_used};
}

}  // namespace

std::optional<AdmissibleSolution> solve_admissible(const CMatrix& op, int m, int n,
                                                   int attempts, std::uint64_t seed) {
  if (attempts < 0) throw InvalidArgument("attempts must be >= 0");
  const auto basis = admissible_basis(op, m, n);
  const int dim = static_cast<int>(basis.size());
  if (basis.empty()) return std::nullopt;

  // Trace-weighted combination: the projection of I onto the kernel.
  CMatrix h0 = CMatrix::Zero(op.rows(), op.cols());
  for (const auto& b : basis) h0 += b.trace().real() * b;
  if (auto sol = accept(op, h0, m, n, dim, 0)) return sol;

  for (int a = 0; a < attempts; ++a) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(a));
    CMatrix h = CMatrix::Zero(op.rows(), op.cols());
    for (const auto& b : basis) h += rng.gaussian() * b;
    if (h.trace().real() < 0.0) h = -h;
    h /= h.norm();
    for (int it = 0; it < kRepairIterations; ++it) {
      if (auto sol = accept(op, h, m, n, dim, a + 1)) return sol;
      h = repair_step(h, basis);
      if (h.norm() < 1e-12) break;
    }
    if (auto sol = accept(op, h, m, n, dim, a + 1)) return sol;
  }
  return std::nullopt;
}

Certificate certify(const CMatrix& op, const CMatrix& weight, int m, int n) {
  if (weight.rows() == 0 || weight.norm() == 0.0) throw InvalidWeight("weight is zero");
  const WeightedOperator w(weight, op);  // validates Hermitian PSD
  BracketEngine engine(w);
  Certificate c;
  c.outer_isometry = engine.omega(m, n).residual();
  c.outer_symmetry = engine.omega_dual(m, n).residual();
  c.recurrence = engine.by_recurrence(m, n, BracketTag::Omega).residual();
  c.max_residual = std::max({c.outer_isometry, c.outer_symmetry, c.recurrence});
  return c;
}

}  // namespace isosym
