#pragma once

// Numerical evaluation of the bracket transforms and of the closed-form
// identities built from them.

#include <map>
#include <utility>
#include <vector>

#include "isosym/matrix.hpp"
#include "isosym/symbolic.hpp"

namespace isosym {

/// A computed bracket value together with the magnitude it cancelled from:
/// scale is the sum of |coefficient| * |term|_F over the unmerged terms.
struct Bracket {
  CMatrix value;
  double scale = 0.0;

  double norm() const { return value.norm(); }
  /// |value|_F / scale, or the absolute norm when scale < 1e-14.
  double residual() const;
};

/// Relative gap between two evaluations of the same quantity.
double relative_gap(const Bracket& a, const Bracket& b);

/// Caches T^k, T*^k and the term norms |T*^i A T^j|_F for one (A, T).
class BracketEngine {
 public:
  explicit BracketEngine(const WeightedOperator& w);

  const WeightedOperator& weighted() const { return w_; }
  const CMatrix& power(int k);
  const CMatrix& adj_power(int k);
  double term_norm(int i, int j);

  /// sum c_ij T*^i A T^j.
  Bracket evaluate(const CoeffTable& table);
  /// The scale evaluate() would report, without forming the sum.
  double scale_of(const CoeffTable& table);

  Bracket isometry(int m);
  Bracket symmetry(int n);
  Bracket skew_symmetry(int n);
  /// Outer isometry sum around S^n.
  Bracket omega(int m, int n);
  /// Outer symmetry sum around I^m.
  Bracket omega_dual(int m, int n);
  Bracket lambda(int m, int n);
  Bracket lambda_dual(int m, int n);
  /// Chain of recurrence steps starting from A.
  Bracket by_recurrence(int m, int n, BracketTag family);

  Bracket evaluate(const BracketKind& kind);

 private:
  Bracket nested(const CoeffTable& outer, const CMatrix& inner, double scale);

  WeightedOperator w_;
  std::vector<CMatrix> powers_;
  std::vector<CMatrix> adj_powers_;
  std::map<std::pair<int, int>, double> term_norms_;
};

Bracket isometry_bracket(const WeightedOperator& w, int m);
Bracket symmetry_bracket(const WeightedOperator& w, int n);
Bracket skew_bracket(const WeightedOperator& w, int n);
Bracket omega(const WeightedOperator& w, int m, int n);
Bracket lambda(const WeightedOperator& w, int m, int n);
Bracket bracket(const WeightedOperator& w, const BracketKind& kind);

/// One recurrence step applied to a bracket value of the given family:
/// Step::M gives T* X T - X, Step::N gives T* X - X T (Omega) or T* X + X T
/// (Lambda).
CMatrix recurrence_step(const CMatrix& op, const CMatrix& value, Step step,
                        BracketTag family = BracketTag::Omega);
/// Omega^{m,n} stepped once in the given direction.
CMatrix omega_recurrence_step(const WeightedOperator& w, int m, int n, Step step);

/// Shift expansion of Omega^{m,n}(T - s) evaluated from the brackets of T.
Bracket omega_translate(const WeightedOperator& w, int m, int n, double s);
/// Shift expansion of Lambda^{m,n}(T - s) evaluated from the brackets of T.
Bracket lambda_translate(const WeightedOperator& w, int m, int n, double s);

/// sum_k (-1)^{p-k} C(p,k) k^i T*^k X T^k with X = S^n (SymmetryInner) or
/// sum_k (-1)^{p-k} C(p,k) k^i T*^k I^m T^{p-k} (IsometryInner).
Bracket weighted_sum_identity(const WeightedOperator& w, int m, int n, int p, int i,
                              WeightedForm form);

/// Left side of the exponential expansion: (e^{isT})*^k I^m (e^{isT})^k, or
/// (e^{isT*})^k I^m (e^{isT})^k when skew.
Bracket exp_expansion_lhs(const WeightedOperator& w, int m, double s, int k, bool skew);
/// Truncated series sum_{h<n} (-isk)^h / h! Omega^{m,h}, or (isk)^h / h!
/// Lambda^{m,h} when skew.
Bracket exp_expansion_rhs(const WeightedOperator& w, int m, int n, double s, int k, bool skew);
/// sum_k (-1)^{n-k} C(n,k) L_k where L_k is the left side above at power k.
Bracket exp_bracket_sum(const WeightedOperator& w, int m, int n, double s, bool skew);

/// Whether TS = ST and TS* = S*T to 1e-10 * |T|_F |S|_F.
bool doubly_commuting(const CMatrix& t, const CMatrix& s, double tol = 1e-10);

/// Triple-sum expansion of Omega^{m,n}(T + S) (Lambda when skew) from the
/// brackets of T. Throws NotDoublyCommuting unless both commutators vanish.
Bracket perturb_expansion_rhs(const WeightedOperator& w, const CMatrix& s, int m, int n,
                              bool skew);

}  // namespace isosym
