#include "isosym/classify.hpp"

#include <algorithm>

namespace isosym {

Membership is_member(const WeightedOperator& w, const ClassQuery& q) {
  if (!(q.rho > 0.0)) throw InvalidArgument("membership tolerance must be positive");
  BracketEngine engine(w);
  double residual = 0.0;
  switch (q.kind) {
    case ClassKind::Isometry:
      residual = engine.isometry(q.m).residual();
      break;
    case ClassKind::Symmetry:
      residual = engine.symmetry(q.n).residual();
      break;
    case ClassKind::SkewSymmetry:
      residual = engine.skew_symmetry(q.n).residual();
      break;
    case ClassKind::Isosymmetry:
      residual = std::max(engine.omega(q.m, q.n).residual(), engine.omega_dual(q.m, q.n).residual());
      break;
    case ClassKind::SkewIsosymmetry:
      residual =
          std::max(engine.lambda(q.m, q.n).residual(), engine.lambda_dual(q.m, q.n).residual());
      break;
  }
  return {residual <= q.rho, residual};
}

OrderProfile minimal_orders(const WeightedOperator& w, int max_m, int max_n, double rho) {
  require_order(max_m);
  require_order(max_n);
  OrderProfile out;
  out.max_m = max_m;
  out.max_n = max_n;
  out.member.assign(static_cast<std::size_t>(max_m + 1),
                    std::vector<bool>(static_cast<std::size_t>(max_n + 1), false));
  out.residual.assign(static_cast<std::size_t>(max_m + 1),
                      std::vector<double>(static_cast<std::size_t>(max_n + 1), 0.0));

  BracketEngine engine(w);
  CMatrix column_head = w.weight();  // Omega^{0,n}
  for (int n = 0; n <= max_n; ++n) {
    if (n > 0) column_head = recurrence_step(w.op(), column_head, Step::N);
    CMatrix cell = column_head;
    for (int m = 0; m <= max_m; ++m) {
      if (m > 0) cell = recurrence_step(w.op(), cell, Step::M);
      const Bracket b{cell, engine.scale_of(expand(BracketKind::omega(m, n)))};
      const double r = b.residual();
      out.residual[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)] = r;
      out.member[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)] = r <= rho;
    }
  }

  auto at = [&](int m, int n) {
    return static_cast<bool>(out.member[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)]);
  };
  for (int m = 0; m <= max_m; ++m) {
    for (int n = 0; n <= max_n; ++n) {
      if (!at(m, n)) continue;
      if ((m < max_m && !at(m + 1, n)) || (n < max_n && !at(m, n + 1))) {
        out.warnings.push_back("upward closure broken above (" + std::to_string(m) + "," +
                               std::to_string(n) + ")");
      }
      bool has_member_below = false;
      for (int a = 0; a <= m && !has_member_below; ++a)
        for (int b = 0; b <= n && !has_member_below; ++b)
          if ((a != m || b != n) && at(a, b)) has_member_below = true;
      if (!has_member_below) out.minimal.emplace_back(m, n);
    }
  }
  return out;
}

Membership left_inverse_check(const CMatrix& weight, const CMatrix& r, const CMatrix& s, int m,
                              double rho) {
  require_order(m);
  require_square(weight, "weight");
  require_square(r, "left inverse");
  require_square(s, "operator");
  if (r.rows() != weight.rows() || s.rows() != weight.rows()) {
    throw DimensionMismatch("left_inverse_check: dimensions differ");
  }
  CMatrix value = CMatrix::Zero(weight.rows(), weight.cols());
  double scale = 0.0;
  CMatrix rk = CMatrix::Identity(r.rows(), r.cols());
  CMatrix sk = CMatrix::Identity(s.rows(), s.cols());
  for (int k = 0; k <= m; ++k) {
    if (k > 0) {
      rk = rk * r;
      sk = sk * s;
    }
    const double c = ((m - k) % 2 == 0 ? 1.0 : -1.0) * static_cast<double>(binomial(m, k));
    const CMatrix term = rk * weight * sk;
    value += c * term;
    scale += std::abs(c) * term.norm();
  }
  const double residual = Bracket{value, scale}.residual();
  return {residual <= rho, residual};
}

IsoSkewParts decompose_iso_skew(const CMatrix& weight, const CMatrix& op) {
  const WeightedOperator w(weight, op);
  if (min_hermitian_eigenvalue(weight) <= 1e-8 * weight.norm()) {
    throw SingularWeight("decompose_iso_skew needs an invertible weight");
  }
  const CMatrix sharp = weight.partialPivLu().solve(CMatrix(op.adjoint() * weight));
  return {(op + sharp) / 2.0, (op - sharp) / 2.0};
}

}  // namespace isosym
