#include "isosym/generators.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

namespace isosym {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

Rng Rng::stream(std::uint64_t master, std::uint64_t index) {
  return Rng(master ^ splitmix64(index + 1));
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

int Rng::integer(int lo, int hi) {
  if (hi < lo) throw InvalidArgument("empty integer range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Complex Rng::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return {re, im};
}

CMatrix rand_matrix(Index dim, Rng& rng) {
  if (dim < 1 || dim > kMaxDim) throw InvalidArgument("dimension must be in [1, 64]");
  CMatrix m(dim, dim);
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j) m(i, j) = rng.complex_gaussian();
  return m;
}

CMatrix rand_matrix(Index dim, std::uint64_t seed) {
  Rng rng(seed);
  return rand_matrix(dim, rng);
}

CMatrix rand_real_matrix(Index dim, Rng& rng) {
  if (dim < 1 || dim > kMaxDim) throw InvalidArgument("dimension must be in [1, 64]");
  CMatrix m(dim, dim);
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j) m(i, j) = rng.gaussian();
  return m;
}

CMatrix rand_hermitian(Index dim, Rng& rng) {
  const CMatrix g = rand_matrix(dim, rng);
  return (g + g.adjoint()) / 2.0;
}

CMatrix rand_psd(Index dim, Rng& rng) {
  const CMatrix g = rand_matrix(dim, rng);
  return g.adjoint() * g;
}

CMatrix rand_psd(Index dim, std::uint64_t seed) {
  Rng rng(seed);
  return rand_psd(dim, rng);
}

CMatrix rand_positive_definite(Index dim, Rng& rng, double lo, double hi) {
  const CMatrix u = rand_unitary(dim, rng);
  Eigen::VectorXd ev(dim);
  for (Index i = 0; i < dim; ++i) ev(i) = rng.uniform(lo, hi);
  CMatrix a = u * ev.cast<Complex>().asDiagonal() * u.adjoint();
  return (a + a.adjoint()) / 2.0;
}

CMatrix rand_unitary(Index dim, Rng& rng) {
  const CMatrix g = rand_matrix(dim, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(dim, dim);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

CMatrix rand_unitary(Index dim, std::uint64_t seed) {
  Rng rng(seed);
  return rand_unitary(dim, rng);
}

CVector rand_unit_vector(Index dim, Rng& rng) {
  CVector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = rng.complex_gaussian();
  return v / v.norm();
}

CMatrix jordan_nilpotent(Index dim, int r) {
  if (r < 1 || r > dim) throw BadOrder("nilpotency order must satisfy 1 <= r <= dim");
  CMatrix n = CMatrix::Zero(dim, dim);
  for (Index start = 0; start < dim; start += r) {
    const Index end = std::min<Index>(start + r, dim);
    for (Index i = start; i + 1 < end; ++i) n(i, i + 1) = 1.0;
  }
  return n;
}

OperatorPair doubly_commuting_pair(const CMatrix& r, const CMatrix& n) {
  require_square(r, "R");
  require_square(n, "N");
  return {kron(r, identity(n.rows())), kron(identity(r.rows()), n)};
}

namespace {

CMatrix rand_unitary_diagonalizable(Index dim, Rng& rng) {
  const CMatrix v = rand_unitary(dim, rng);
  CVector phases(dim);
  for (Index i = 0; i < dim; ++i) phases(i) = std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi));
  return v * phases.asDiagonal() * v.adjoint();
}

}  // namespace

MemberCore member_core(MemberFamily family, Index dim, Rng& rng) {
  if (dim < 1) throw InvalidArgument("dimension must be positive");
  switch (family) {
    case MemberFamily::Unitary:
      return {rand_unitary_diagonalizable(dim, rng), 1, 0};
    case MemberFamily::Hermitian:
      return {rand_hermitian(dim, rng), 0, 1};
    case MemberFamily::UnitaryPlusHermitian: {
      if (dim < 2) throw InvalidArgument("direct sum needs dimension >= 2");
      const Index first = dim / 2;
      return {direct_sum(rand_unitary_diagonalizable(first, rng), rand_hermitian(dim - first, rng)),
              1, 1};
    }
    case MemberFamily::HermitianPlusNilpotent: {
      const Index half = std::max<Index>(1, dim / 2);
      const auto pair = doubly_commuting_pair(rand_hermitian(half, rng), jordan_nilpotent(2, 2));
      return {pair.t + pair.q, 0, 3};
    }
    case MemberFamily::UnitaryPlusNilpotent: {
      const Index half = std::max<Index>(1, dim / 2);
      const auto pair =
          doubly_commuting_pair(rand_unitary_diagonalizable(half, rng), jordan_nilpotent(2, 2));
      return {pair.t + pair.q, 3, 0};
    }
  }
  throw InvalidArgument("unknown member family");
}

WeightedOperator similar_member(const CMatrix& u, const CMatrix& weight) {
  if (min_hermitian_eigenvalue(weight) <= 1e-8 * weight.norm()) {
    throw SingularWeight("similar_member needs an invertible weight");
  }
  return WeightedOperator(weight, psd_inverse_sqrt(weight) * u * psd_sqrt(weight));
}

WeightedOperator degenerate_member(const CMatrix& u, const CMatrix& weight1, Index extra,
                                   Rng& rng) {
  require_square(u, "U");
  if (weight1.rows() != u.rows()) throw DimensionMismatch("weight block must match U");
  if (extra < 1) throw InvalidArgument("need at least one padding dimension");
  const Index d = u.rows();
  CMatrix t = CMatrix::Zero(d + extra, d + extra);
  t.topLeftCorner(d, d) = u;
  for (Index i = 0; i < extra; ++i) {
    for (Index j = 0; j < d + extra; ++j) t(d + i, j) = rng.complex_gaussian();
  }
  CMatrix a = CMatrix::Zero(d + extra, d + extra);
  a.topLeftCorner(d, d) = weight1;
  return WeightedOperator(a, t);
}

}  // namespace isosym
