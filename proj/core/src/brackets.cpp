#include "isosym/brackets.hpp"

#include <cmath>

namespace isosym {

namespace {

constexpr double kScaleFloor = 1e-14;

double sign(int e) { return (e % 2 == 0) ? 1.0 : -1.0; }

CMatrix matrix_power(const CMatrix& m, int k) {
  CMatrix out = CMatrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

double Bracket::residual() const {
  const double nrm = norm();
  return scale < kScaleFloor ? nrm : nrm / scale;
}

double relative_gap(const Bracket& a, const Bracket& b) {
  const double gap = (a.value - b.value).norm();
  const double scale = std::max(a.scale, b.scale);
  return scale < kScaleFloor ? gap : gap / scale;
}

BracketEngine::BracketEngine(const WeightedOperator& w) : w_(w) {
  powers_.push_back(CMatrix::Identity(w.dim(), w.dim()));
  adj_powers_.push_back(CMatrix::Identity(w.dim(), w.dim()));
}

const CMatrix& BracketEngine::power(int k) {
  while (static_cast<int>(powers_.size()) <= k) powers_.push_back(powers_.back() * w_.op());
  return powers_[static_cast<std::size_t>(k)];
}

const CMatrix& BracketEngine::adj_power(int k) {
  while (static_cast<int>(adj_powers_.size()) <= k) {
    adj_powers_.push_back(adj_powers_.back() * w_.op().adjoint());
  }
  return adj_powers_[static_cast<std::size_t>(k)];
}

double BracketEngine::term_norm(int i, int j) {
  const auto key = std::make_pair(i, j);
  const auto it = term_norms_.find(key);
  if (it != term_norms_.end()) return it->second;
  const double v = (adj_power(i) * w_.weight() * power(j)).norm();
  term_norms_.emplace(key, v);
  return v;
}

Bracket BracketEngine::evaluate(const CoeffTable& table) {
  Bracket out{CMatrix::Zero(w_.dim(), w_.dim()), 0.0};
  for (int i = 0; i <= table.degree(); ++i) {
    for (int j = 0; j <= table.degree(); ++j) {
      const auto c = table(i, j);
      if (c == 0) continue;
      out.value += static_cast<double>(c) * (adj_power(i) * w_.weight() * power(j));
      out.scale += std::abs(static_cast<double>(c)) * term_norm(i, j);
    }
  }
  return out;
}

double BracketEngine::scale_of(const CoeffTable& table) {
  double scale = 0.0;
  for (int i = 0; i <= table.degree(); ++i)
    for (int j = 0; j <= table.degree(); ++j)
      if (table(i, j) != 0) scale += std::abs(static_cast<double>(table(i, j))) * term_norm(i, j);
  return scale;
}

Bracket BracketEngine::nested(const CoeffTable& outer, const CMatrix& inner, double scale) {
  Bracket out{CMatrix::Zero(w_.dim(), w_.dim()), scale};
  for (int p = 0; p <= outer.degree(); ++p) {
    for (int q = 0; q <= outer.degree(); ++q) {
      const auto c = outer(p, q);
      if (c == 0) continue;
      out.value += static_cast<double>(c) * (adj_power(p) * inner * power(q));
    }
  }
  return out;
}

Bracket BracketEngine::isometry(int m) { return evaluate(expand(BracketKind::isometry(m))); }
Bracket BracketEngine::symmetry(int n) { return evaluate(expand(BracketKind::symmetry(n))); }
Bracket BracketEngine::skew_symmetry(int n) {
  return evaluate(expand(BracketKind::skew_symmetry(n)));
}

Bracket BracketEngine::omega(int m, int n) {
  const CoeffTable full = expand(BracketKind::omega(m, n));
  return nested(expand(BracketKind::isometry(m)), symmetry(n).value, scale_of(full));
}

Bracket BracketEngine::omega_dual(int m, int n) {
  const CoeffTable full = expand(BracketKind::omega(m, n));
  return nested(expand(BracketKind::symmetry(n)), isometry(m).value, scale_of(full));
}

Bracket BracketEngine::lambda(int m, int n) {
  const CoeffTable full = expand(BracketKind::lambda(m, n));
  return nested(expand(BracketKind::isometry(m)), skew_symmetry(n).value, scale_of(full));
}

Bracket BracketEngine::lambda_dual(int m, int n) {
  const CoeffTable full = expand(BracketKind::lambda(m, n));
  return nested(expand(BracketKind::skew_symmetry(n)), isometry(m).value, scale_of(full));
}

Bracket BracketEngine::by_recurrence(int m, int n, BracketTag family) {
  if (family != BracketTag::Omega && family != BracketTag::Lambda) {
    throw InvalidArgument("recurrence chains exist for omega and lambda");
  }
  require_order(m);
  require_order(n);
  CMatrix x = w_.weight();
  for (int k = 0; k < n; ++k) x = recurrence_step(w_.op(), x, Step::N, family);
  for (int k = 0; k < m; ++k) x = recurrence_step(w_.op(), x, Step::M, family);
  const double scale = scale_of(expand(BracketKind{family, m, n}));
  return {std::move(x), scale};
}

Bracket BracketEngine::evaluate(const BracketKind& kind) {
  switch (kind.tag) {
    case BracketTag::Isometry:
      return isometry(kind.m);
    case BracketTag::Symmetry:
      return symmetry(kind.n);
    case BracketTag::SkewSymmetry:
      return skew_symmetry(kind.n);
    case BracketTag::Omega:
      return omega(kind.m, kind.n);
    case BracketTag::Lambda:
      return lambda(kind.m, kind.n);
  }
  throw InvalidArgument("unknown bracket kind");
}

Bracket isometry_bracket(const WeightedOperator& w, int m) { return BracketEngine(w).isometry(m); }
Bracket symmetry_bracket(const WeightedOperator& w, int n) { return BracketEngine(w).symmetry(n); }
Bracket skew_bracket(const WeightedOperator& w, int n) { return BracketEngine(w).skew_symmetry(n); }
Bracket omega(const WeightedOperator& w, int m, int n) { return BracketEngine(w).omega(m, n); }
Bracket lambda(const WeightedOperator& w, int m, int n) { return BracketEngine(w).lambda(m, n); }
Bracket bracket(const WeightedOperator& w, const BracketKind& kind) {
  return BracketEngine(w).evaluate(kind);
}

CMatrix recurrence_step(const CMatrix& op, const CMatrix& value, Step step, BracketTag family) {
  const CMatrix adj = op.adjoint();
  if (step == Step::M) return adj * value * op - value;
  if (family == BracketTag::Lambda) return adj * value + value * op;
  return adj * value - value * op;
}

CMatrix omega_recurrence_step(const WeightedOperator& w, int m, int n, Step step) {
  return recurrence_step(w.op(), omega(w, m, n).value, step, BracketTag::Omega);
}

namespace {

// (T* - s)^k for k = 0..m.
std::vector<CMatrix> shifted_adj_powers(const CMatrix& op, double s, int m) {
  const CMatrix base = op.adjoint() - s * CMatrix::Identity(op.rows(), op.cols());
  std::vector<CMatrix> out{CMatrix::Identity(op.rows(), op.cols())};
  for (int k = 1; k <= m; ++k) out.push_back(out.back() * base);
  return out;
}

}  // namespace

Bracket omega_translate(const WeightedOperator& w, int m, int n, double s) {
  require_order(m);
  require_order(n);
  BracketEngine engine(w);
  std::vector<Bracket> inner;
  for (int h = 0; h <= m; ++h) inner.push_back(engine.omega(h, n));
  const auto left = shifted_adj_powers(w.op(), s, m);
  Bracket out{CMatrix::Zero(w.dim(), w.dim()), 0.0};
  for (int k = 0; k <= m; ++k) {
    for (int j = 0; j <= m - k; ++j) {
      const double c = static_cast<double>(binomial(m, k) * binomial(m - k, j)) * std::pow(-s, k + j);
      const Bracket& om = inner[static_cast<std::size_t>(m - k - j)];
      out.value += c * (left[static_cast<std::size_t>(k)] * om.value * engine.power(j));
      out.scale += std::abs(c) * left[static_cast<std::size_t>(k)].norm() * om.scale *
                   engine.power(j).norm();
    }
  }
  return out;
}

Bracket lambda_translate(const WeightedOperator& w, int m, int n, double s) {
  require_order(m);
  require_order(n);
  BracketEngine engine(w);
  const auto left = shifted_adj_powers(w.op(), s, m);
  Bracket out{CMatrix::Zero(w.dim(), w.dim()), 0.0};
  for (int k = 0; k <= m; ++k) {
    for (int j = 0; j <= m - k; ++j) {
      for (int i = 0; i <= n; ++i) {
        const double c = static_cast<double>(binomial(m, k) * binomial(m - k, j) * binomial(n, i)) *
                         std::pow(-s, k + j) * std::pow(-2.0 * s, n - i);
        if (c == 0.0) continue;
        const Bracket inner = engine.lambda(m - k - j, i);
        out.value += c * (left[static_cast<std::size_t>(k)] * inner.value * engine.power(j));
        out.scale += std::abs(c) * left[static_cast<std::size_t>(k)].norm() * inner.scale *
                     engine.power(j).norm();
      }
    }
  }
  return out;
}

Bracket weighted_sum_identity(const WeightedOperator& w, int m, int n, int p, int i,
                              WeightedForm form) {
  require_order(m);
  require_order(n);
  require_order(p);
  if (i < 0) throw InvalidArgument("moment index must be >= 0");
  BracketEngine engine(w);
  Bracket out{CMatrix::Zero(w.dim(), w.dim()),
              engine.scale_of(weighted_sum_table(m, n, p, i, form))};
  const CMatrix inner = form == WeightedForm::SymmetryInner ? engine.symmetry(n).value
                                                            : engine.isometry(m).value;
  for (int k = 0; k <= p; ++k) {
    const double c = sign(p - k) * static_cast<double>(binomial(p, k)) * std::pow(double(k), i);
    if (c == 0.0) continue;
    const int right = form == WeightedForm::SymmetryInner ? k : p - k;
    out.value += c * (engine.adj_power(k) * inner * engine.power(right));
  }
  return out;
}

Bracket exp_expansion_lhs(const WeightedOperator& w, int m, double s, int k, bool skew) {
  require_order(m);
  const Bracket im = isometry_bracket(w, m);
  const CMatrix right = matrix_exp(w.op(), s * k);
  const CMatrix left =
      skew ? CMatrix(matrix_exp(w.op(), -s * k).adjoint()) : CMatrix(right.adjoint());
  return {left * im.value * right, left.norm() * right.norm() * im.scale};
}

Bracket exp_expansion_rhs(const WeightedOperator& w, int m, int n, double s, int k, bool skew) {
  require_order(m);
  require_order(n);
  BracketEngine engine(w);
  Bracket out{CMatrix::Zero(w.dim(), w.dim()), 0.0};
  const Complex base = skew ? Complex(0.0, s * k) : Complex(0.0, -s * k);
  for (int h = 0; h < n; ++h) {
    const Complex c = std::pow(base, h) / factorial(h);
    const Bracket term = skew ? engine.lambda(m, h) : engine.omega(m, h);
    out.value += c * term.value;
    out.scale += std::abs(c) * term.scale;
  }
  return out;
}

Bracket exp_bracket_sum(const WeightedOperator& w, int m, int n, double s, bool skew) {
  require_order(m);
  require_order(n);
  Bracket out{CMatrix::Zero(w.dim(), w.dim()), 0.0};
  for (int k = 0; k <= n; ++k) {
    const double c = sign(n - k) * static_cast<double>(binomial(n, k));
    const Bracket lk = exp_expansion_lhs(w, m, s, k, skew);
    out.value += c * lk.value;
    out.scale += std::abs(c) * lk.scale;
  }
  return out;
}

bool doubly_commuting(const CMatrix& t, const CMatrix& s, double tol) {
  if (t.rows() != s.rows() || t.cols() != s.cols()) {
    throw DimensionMismatch("commutator operands differ in size");
  }
  const double bound = tol * t.norm() * s.norm();
  const CMatrix sa = s.adjoint();
  return (t * s - s * t).norm() <= bound && (t * sa - sa * t).norm() <= bound;
}

Bracket perturb_expansion_rhs(const WeightedOperator& w, const CMatrix& s, int m, int n,
                              bool skew) {
  require_order(m);
  require_order(n);
  require_square(s, "perturbation");
  if (s.rows() != w.dim()) throw DimensionMismatch("perturbation size differs from T");
  if (!doubly_commuting(w.op(), s)) {
    throw NotDoublyCommuting("T and S must satisfy TS = ST and TS* = S*T");
  }
  BracketEngine engine(w);
  std::vector<std::vector<Bracket>> inner(static_cast<std::size_t>(m + 1));
  for (int h = 0; h <= m; ++h) {
    for (int q = 0; q <= n; ++q) {
      inner[static_cast<std::size_t>(h)].push_back(skew ? engine.lambda(h, q) : engine.omega(h, q));
    }
  }
  const CMatrix sum_adj = w.op().adjoint() + s.adjoint();
  std::vector<CMatrix> sum_adj_pow, s_adj_pow, s_pow;
  for (int e = 0; e <= m + n; ++e) {
    sum_adj_pow.push_back(matrix_power(sum_adj, e));
    s_adj_pow.push_back(matrix_power(s.adjoint(), e));
    s_pow.push_back(matrix_power(s, e));
  }

  Bracket out{CMatrix::Zero(w.dim(), w.dim()), 0.0};
  for (int k = 0; k <= n; ++k) {
    for (int j = 0; j <= n - k; ++j) {
      const double outer = static_cast<double>(binomial(n, k) * binomial(n - k, j)) *
                           (skew ? 1.0 : sign(k));
      for (int i = 0; i <= m; ++i) {
        for (int l = 0; l <= m - i; ++l) {
          const int h = m - i - l;
          const double c = outer * static_cast<double>(multinomial(i, l, h));
          const Bracket& om = inner[static_cast<std::size_t>(h)][static_cast<std::size_t>(n - k - j)];
          const CMatrix lhs = sum_adj_pow[static_cast<std::size_t>(i)] *
                              s_adj_pow[static_cast<std::size_t>(l + j)];
          const CMatrix rhs = engine.power(l) * s_pow[static_cast<std::size_t>(i + k)];
          out.value += c * (lhs * om.value * rhs);
          out.scale += std::abs(c) * lhs.norm() * om.scale * rhs.norm();
        }
      }
    }
  }
  return out;
}

}  // namespace isosym
