#pragma once

// Exact coefficient algebra for bracket polynomials.
//
// A table c[i][j] stands for sum c_ij * y^i a x^j with y -> T*, x -> T and
// a -> A. Because every term has the single weight letter in the middle, the
// product "y^p (table) x^q" is plain bivariate polynomial multiplication, which
// is what makes all the identities below decidable by entrywise comparison.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "isosym/errors.hpp"

namespace isosym {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr int kMaxOrder = 24;

enum class BracketTag { Isometry, Symmetry, SkewSymmetry, Omega, Lambda };

struct BracketKind {
  BracketTag tag = BracketTag::Omega;
  int m = 0;
  int n = 0;

  static BracketKind isometry(int m) { return {BracketTag::Isometry, m, 0}; }
  static BracketKind symmetry(int n) { return {BracketTag::Symmetry, 0, n}; }
  static BracketKind skew_symmetry(int n) { return {BracketTag::SkewSymmetry, 0, n}; }
  static BracketKind omega(int m, int n) { return {BracketTag::Omega, m, n}; }
  static BracketKind lambda(int m, int n) { return {BracketTag::Lambda, m, n}; }

  bool operator==(const BracketKind&) const = default;
};

std::string to_string(const BracketKind& kind);

/// Throws InvalidArgument for a negative order and OrderTooLarge above 24.
void require_order(int order);

/// Which index a recurrence step raises.
enum class Step { M, N };

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_sub(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t binomial(int n, int k);
std::int64_t multinomial(int i, int l, int h);

namespace detail {
inline std::int64_t coeff_add(std::int64_t a, std::int64_t b) { return checked_add(a, b); }
inline std::int64_t coeff_mul(std::int64_t a, std::int64_t b) { return checked_mul(a, b); }
inline Rational coeff_add(const Rational& a, const Rational& b) { return a + b; }
inline Rational coeff_mul(const Rational& a, const Rational& b) { return a * b; }
}  // namespace detail

template <class Coeff>
class BasicCoeffTable {
 public:
  BasicCoeffTable() : BasicCoeffTable(0) {}
  explicit BasicCoeffTable(int degree)
      : degree_(degree), c_(static_cast<std::size_t>((degree + 1) * (degree + 1)), Coeff(0)) {
    if (degree < 0) throw InvalidArgument("coefficient table degree must be >= 0");
  }

  int degree() const { return degree_; }

  Coeff operator()(int i, int j) const {
    if (i < 0 || j < 0 || i > degree_ || j > degree_) return Coeff(0);
    return c_[index(i, j)];
  }

  /// Adds c to the (i, j) entry, growing the degree bound when needed.
  void add(int i, int j, const Coeff& c) {
    if (i < 0 || j < 0) throw InvalidArgument("negative exponent");
    if (i > degree_ || j > degree_) grow(std::max(i, j));
    auto& slot = c_[index(i, j)];
    slot = detail::coeff_add(slot, c);
  }

  bool is_zero() const {
    for (const auto& v : c_) {
      if (v != 0) return false;
    }
    return true;
  }

  /// Largest exponent of y (resp. x) with a nonzero coefficient; -1 if zero.
  int y_degree() const {
    int best = -1;
    for (int i = 0; i <= degree_; ++i)
      for (int j = 0; j <= degree_; ++j)
        if ((*this)(i, j) != 0) best = std::max(best, i);
    return best;
  }
  int x_degree() const {
    int best = -1;
    for (int i = 0; i <= degree_; ++i)
      for (int j = 0; j <= degree_; ++j)
        if ((*this)(i, j) != 0) best = std::max(best, j);
    return best;
  }

  /// y^p * (this) * x^q scaled by c, accumulated into out.
  void accumulate_into(BasicCoeffTable& out, int p, int q, const Coeff& c) const {
    if (c == 0) return;
    for (int i = 0; i <= degree_; ++i)
      for (int j = 0; j <= degree_; ++j) {
        const Coeff& v = c_[index(i, j)];
        if (v != 0) out.add(i + p, j + q, detail::coeff_mul(v, c));
      }
  }

  BasicCoeffTable shifted(int p, int q) const {
    BasicCoeffTable out(degree_ + std::max(p, q));
    accumulate_into(out, p, q, Coeff(1));
    return out;
  }

  BasicCoeffTable scaled(const Coeff& c) const {
    BasicCoeffTable out(degree_);
    accumulate_into(out, 0, 0, c);
    return out;
  }

  BasicCoeffTable& operator+=(const BasicCoeffTable& o) {
    o.accumulate_into(*this, 0, 0, Coeff(1));
    return *this;
  }
  BasicCoeffTable& operator-=(const BasicCoeffTable& o) {
    o.accumulate_into(*this, 0, 0, Coeff(-1));
    return *this;
  }
  friend BasicCoeffTable operator+(BasicCoeffTable a, const BasicCoeffTable& b) { return a += b; }
  friend BasicCoeffTable operator-(BasicCoeffTable a, const BasicCoeffTable& b) { return a -= b; }

  /// Entrywise equality; differing degree bounds are padded with zeros.
  friend bool operator==(const BasicCoeffTable& a, const BasicCoeffTable& b) {
    const int d = std::max(a.degree_, b.degree_);
    for (int i = 0; i <= d; ++i)
      for (int j = 0; j <= d; ++j)
        if (a(i, j) != b(i, j)) return false;
    return true;
  }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i * (degree_ + 1) + j);
  }
  void grow(int degree) {
    BasicCoeffTable bigger(degree);
    for (int i = 0; i <= degree_; ++i)
      for (int j = 0; j <= degree_; ++j) bigger.c_[bigger.index(i, j)] = c_[index(i, j)];
    *this = std::move(bigger);
  }

  int degree_;
  std::vector<Coeff> c_;
};

using CoeffTable = BasicCoeffTable<std::int64_t>;
using RationalTable = BasicCoeffTable<Rational>;

RationalTable to_rational(const CoeffTable& t);

/// Sum over outer entries c_pq of c_pq * y^p (inner) x^q.
CoeffTable sandwich(const CoeffTable& outer, const CoeffTable& inner);

/// Expansion through the outer isometry sum (the S^n / zeta^n inner form).
CoeffTable expand(const BracketKind& kind);
/// Expansion through the outer symmetry sum with I^m inside. Equals expand()
/// for the single-index kinds.
CoeffTable expand_dual(const BracketKind& kind);

bool dual_forms_equal(int m, int n, BracketTag which);

/// Table of the next bracket in the family: Step::M multiplies by (yx - 1),
/// Step::N by (y - x) for Omega or (y + x) for Lambda.
CoeffTable recurrence_step(const CoeffTable& t, Step step, BracketTag family);
/// Both steps from (m, n) reproduce expand() at (m+1, n) and (m, n+1).
bool recurrence_check(int m, int n, BracketTag family = BracketTag::Omega);

/// Polynomial in the real shift s with rational table coefficients;
/// terms[e] multiplies s^e.
struct RationalPoly {
  std::vector<RationalTable> terms;

  void add(int power, const RationalTable& t);
  friend bool operator==(const RationalPoly& a, const RationalPoly& b);
};

/// Substitutes y -> y - s and x -> x - s into t.
RationalPoly translate_substitute(const CoeffTable& t);
/// Right-hand side of the shift expansion of Omega^{m,n}(T - s), or of the
/// Lambda version when skew is set.
RationalPoly translate_expand(int m, int n, bool skew = false);
bool translate_check(int m, int n, bool skew = false);

/// c[i][j] -> c[k i][k j], i.e. the bracket evaluated at T^k.
CoeffTable power_substitute(const CoeffTable& t, int k);
/// Whether target = sum alpha_pq y^p G x^q for rational alpha (exact solve).
bool bilateral_span_membership(const CoeffTable& target, const CoeffTable& generator);
/// Omega (or Lambda) at T^k lies in the span generated by the order (m, n)
/// bracket of T.
bool power_span_check(int m, int n, int k, bool skew = false);

enum class WeightedForm { SymmetryInner, IsometryInner };

/// sum_k (-1)^{p-k} C(p,k) k^i y^k S^n x^k (SymmetryInner) or
/// sum_k (-1)^{p-k} C(p,k) k^i y^k I^m x^{p-k} (IsometryInner).
CoeffTable weighted_sum_table(int m, int n, int p, int i, WeightedForm form);

/// Exponents of y1, y2, x1, x2 (weight letter between the y's and x's);
/// index 0/2 belong to T, index 1/3 to the doubly commuting partner S.
using PairExponents = std::array<int, 4>;

class PairCoeffTable {
 public:
  void add(const PairExponents& e, std::int64_t c);
  std::int64_t operator()(const PairExponents& e) const;
  const std::map<PairExponents, std::int64_t>& entries() const { return c_; }
  std::size_t size() const { return c_.size(); }
  friend bool operator==(const PairCoeffTable&, const PairCoeffTable&) = default;

 private:
  std::map<PairExponents, std::int64_t> c_;
};

/// Omega^{m,n} (Lambda when skew) of T + S by substituting y -> y1 + y2,
/// x -> x1 + x2 into the single-operator table.
PairCoeffTable pair_expand(int m, int n, bool skew);
/// The triple-sum expansion in terms of the brackets of T alone.
PairCoeffTable pair_expand_rhs(int m, int n, bool skew);
bool pair_identity_check(int m, int n, bool skew);

/// Every term of the triple-sum expansion at (m + 2r - 2, n + 2r - 1) carries
/// an S-power >= r on one side or an inner bracket of order >= (m, n).
bool nilpotent_vanishing_certificate(int m, int n, int r);

/// sum_k (-1)^{n-k} C(n,k) k^j, exactly.
std::int64_t binomial_moment(int n, int j);
/// Moment vanishes for j < n and equals n! at j = n.
bool binomial_moment_identity(int n);

nlohmann::json table_to_json(const CoeffTable& t);
CoeffTable table_from_json(const nlohmann::json& j);
nlohmann::json pair_table_to_json(const PairCoeffTable& t);

}  // namespace isosym
