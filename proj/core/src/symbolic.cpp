#include "isosym/symbolic.hpp"

#include <limits>

namespace isosym {

std::string to_string(const BracketKind& kind) {
  switch (kind.tag) {
    case BracketTag::Isometry:
      return "isometry(" + std::to_string(kind.m) + ")";
    case BracketTag::Symmetry:
      return "symmetry(" + std::to_string(kind.n) + ")";
    case BracketTag::SkewSymmetry:
      return "skew_symmetry(" + std::to_string(kind.n) + ")";
    case BracketTag::Omega:
      return "omega(" + std::to_string(kind.m) + "," + std::to_string(kind.n) + ")";
    case BracketTag::Lambda:
      return "lambda(" + std::to_string(kind.m) + "," + std::to_string(kind.n) + ")";
  }
  return "unknown";
}

void require_order(int order) {
  if (order < 0) throw InvalidArgument("bracket orders must be >= 0");
  if (order > kMaxOrder) {
    throw OrderTooLarge("order " + std::to_string(order) + " exceeds " + std::to_string(kMaxOrder));
  }
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow("int64 addition overflow");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow("int64 subtraction overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow("int64 multiplication overflow");
  return r;
}

std::int64_t binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    // r * (n - k + i) is divisible by i at every step.
    r = checked_mul(r, n - k + i) / i;
  }
  return r;
}

std::int64_t multinomial(int i, int l, int h) {
  if (i < 0 || l < 0 || h < 0) return 0;
  return checked_mul(binomial(i + l + h, i), binomial(l + h, l));
}

namespace {

std::int64_t sign(int e) { return (e % 2 == 0) ? 1 : -1; }

CoeffTable isometry_table(int m) {
  CoeffTable t(m);
  for (int k = 0; k <= m; ++k) t.add(k, k, sign(m - k) * binomial(m, k));
  return t;
}

CoeffTable symmetry_table(int n, bool skew) {
  CoeffTable t(n);
  for (int k = 0; k <= n; ++k) t.add(k, n - k, (skew ? 1 : sign(n - k)) * binomial(n, k));
  return t;
}

void require_kind(const BracketKind& kind) {
  require_order(kind.m);
  require_order(kind.n);
}

}  // namespace

RationalTable to_rational(const CoeffTable& t) {
  RationalTable out(t.degree());
  for (int i = 0; i <= t.degree(); ++i)
    for (int j = 0; j <= t.degree(); ++j)
      if (t(i, j) != 0) out.add(i, j, Rational(t(i, j)));
  return out;
}

CoeffTable sandwich(const CoeffTable& outer, const CoeffTable& inner) {
  CoeffTable out(outer.degree() + inner.degree());
  for (int p = 0; p <= outer.degree(); ++p)
    for (int q = 0; q <= outer.degree(); ++q)
      inner.accumulate_into(out, p, q, outer(p, q));
  return out;
}

CoeffTable expand(const BracketKind& kind) {
  require_kind(kind);
  switch (kind.tag) {
    case BracketTag::Isometry:
      return isometry_table(kind.m);
    case BracketTag::Symmetry:
      return symmetry_table(kind.n, false);
    case BracketTag::SkewSymmetry:
      return symmetry_table(kind.n, true);
    case BracketTag::Omega:
      return sandwich(isometry_table(kind.m), symmetry_table(kind.n, false));
    case BracketTag::Lambda:
      return sandwich(isometry_table(kind.m), symmetry_table(kind.n, true));
  }
  throw InvalidArgument("unknown bracket kind");
}

CoeffTable expand_dual(const BracketKind& kind) {
  require_kind(kind);
  switch (kind.tag) {
    case BracketTag::Omega:
      return sandwich(symmetry_table(kind.n, false), isometry_table(kind.m));
    case BracketTag::Lambda:
      return sandwich(symmetry_table(kind.n, true), isometry_table(kind.m));
    default:
      return expand(kind);
  }
}

bool dual_forms_equal(int m, int n, BracketTag which) {
  if (which != BracketTag::Omega && which != BracketTag::Lambda) {
    throw InvalidArgument("dual forms exist for omega and lambda only");
  }
  const BracketKind kind{which, m, n};
  return expand(kind) == expand_dual(kind);
}

CoeffTable recurrence_step(const CoeffTable& t, Step step, BracketTag family) {
  CoeffTable out(t.degree() + 1);
  if (step == Step::M) {
    t.accumulate_into(out, 1, 1, 1);
    t.accumulate_into(out, 0, 0, -1);
  } else {
    t.accumulate_into(out, 1, 0, 1);
    t.accumulate_into(out, 0, 1, family == BracketTag::Lambda ? 1 : -1);
  }
  return out;
}

bool recurrence_check(int m, int n, BracketTag family) {
  if (family != BracketTag::Omega && family != BracketTag::Lambda) {
    throw InvalidArgument("recurrence_check applies to omega and lambda");
  }
  const CoeffTable base = expand({family, m, n});
  return recurrence_step(base, Step::M, family) == expand({family, m + 1, n}) &&
         recurrence_step(base, Step::N, family) == expand({family, m, n + 1});
}

void RationalPoly::add(int power, const RationalTable& t) {
  if (power < 0) throw InvalidArgument("negative power of s");
  if (static_cast<int>(terms.size()) <= power) terms.resize(static_cast<std::size_t>(power + 1));
  terms[static_cast<std::size_t>(power)] += t;
}

bool operator==(const RationalPoly& a, const RationalPoly& b) {
  const std::size_t len = std::max(a.terms.size(), b.terms.size());
  const RationalTable zero;
  for (std::size_t e = 0; e < len; ++e) {
    const RationalTable& ta = e < a.terms.size() ? a.terms[e] : zero;
    const RationalTable& tb = e < b.terms.size() ? b.terms[e] : zero;
    if (!(ta == tb)) return false;
  }
  return true;
}

namespace {

// (z - s)^k = sum_a C(k,a) z^a (-s)^{k-a}; returns coefficient of z^a s^e.
Rational shift_coeff(int k, int a) {
  return Rational(binomial(k, a) * sign(k - a));
}

}  // namespace

RationalPoly translate_substitute(const CoeffTable& t) {
  RationalPoly out;
  for (int i = 0; i <= t.degree(); ++i) {
    for (int j = 0; j <= t.degree(); ++j) {
      const std::int64_t c = t(i, j);
      if (c == 0) continue;
      for (int a = 0; a <= i; ++a) {
        for (int b = 0; b <= j; ++b) {
          RationalTable mono(std::max(a, b));
          mono.add(a, b, Rational(c) * shift_coeff(i, a) * shift_coeff(j, b));
          out.add(i - a + j - b, mono);
        }
      }
    }
  }
  return out;
}

RationalPoly translate_expand(int m, int n, bool skew) {
  require_order(m);
  require_order(n);
  RationalPoly out;
  // sum_{k,j} C(m,k) C(m-k,j) (y - s)^k (-s)^{k+j} [bracket^{m-k-j,*}] x^j
  for (int k = 0; k <= m; ++k) {
    for (int j = 0; j <= m - k; ++j) {
      const std::int64_t outer = checked_mul(binomial(m, k), binomial(m - k, j)) * sign(k + j);
      // Inner factor as a polynomial in s: Omega has a single term; Lambda
      // expands ((y + x) - 2s)^n = sum_i C(n,i) (y + x)^i (-2s)^{n-i}.
      std::vector<std::pair<int, RationalTable>> inner;
      if (!skew) {
        inner.emplace_back(0, to_rational(expand(BracketKind::omega(m - k - j, n))));
      } else {
        for (int i = 0; i <= n; ++i) {
          Rational w = Rational(binomial(n, i));
          for (int e = 0; e < n - i; ++e) w *= -2;
          inner.emplace_back(n - i, to_rational(expand(BracketKind::lambda(m - k - j, i))).scaled(w));
        }
      }
      for (int a = 0; a <= k; ++a) {
        const Rational left = Rational(outer) * shift_coeff(k, a);
        for (const auto& [s_power, table] : inner) {
          RationalTable term(table.degree() + std::max(a, j));
          table.accumulate_into(term, a, j, left);
          out.add((k - a) + (k + j) + s_power, term);
        }
      }
    }
  }
  return out;
}

bool translate_check(int m, int n, bool skew) {
  const BracketKind kind = skew ? BracketKind::lambda(m, n) : BracketKind::omega(m, n);
  return translate_expand(m, n, skew) == translate_substitute(expand(kind));
}

CoeffTable power_substitute(const CoeffTable& t, int k) {
  if (k < 1) throw InvalidArgument("power must be >= 1");
  CoeffTable out(checked_mul(t.degree(), k));
  for (int i = 0; i <= t.degree(); ++i)
    for (int j = 0; j <= t.degree(); ++j)
      if (t(i, j) != 0) out.add(k * i, k * j, t(i, j));
  return out;
}

bool bilateral_span_membership(const CoeffTable& target, const CoeffTable& generator) {
  if (target.is_zero()) return true;
  if (generator.is_zero()) return false;
  const int ty = target.y_degree();
  const int tx = target.x_degree();
  const int py = ty - generator.y_degree();
  const int qx = tx - generator.x_degree();
  if (py < 0 || qx < 0) return false;

  // Unknown alpha_{p,q} sits in column p * (qx + 1) + q; one row per monomial.
  const int unknowns = (py + 1) * (qx + 1);
  const int rows = (ty + 1) * (tx + 1);
  std::vector<std::vector<Rational>> aug(static_cast<std::size_t>(rows),
                                         std::vector<Rational>(static_cast<std::size_t>(unknowns + 1)));
  for (int a = 0; a <= ty; ++a) {
    for (int b = 0; b <= tx; ++b) {
      auto& row = aug[static_cast<std::size_t>(a * (tx + 1) + b)];
      for (int p = 0; p <= std::min(a, py); ++p)
        for (int q = 0; q <= std::min(b, qx); ++q)
          row[static_cast<std::size_t>(p * (qx + 1) + q)] = generator(a - p, b - q);
      row[static_cast<std::size_t>(unknowns)] = target(a, b);
    }
  }

  int pivot_row = 0;
  for (int col = 0; col < unknowns && pivot_row < rows; ++col) {
    int found = -1;
    for (int r = pivot_row; r < rows; ++r) {
      if (aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
        found = r;
        break;
      }
    }
    if (found < 0) continue;
    std::swap(aug[static_cast<std::size_t>(found)], aug[static_cast<std::size_t>(pivot_row)]);
    const auto& prow = aug[static_cast<std::size_t>(pivot_row)];
    const Rational pivot = prow[static_cast<std::size_t>(col)];
    for (int r = pivot_row + 1; r < rows; ++r) {
      auto& row = aug[static_cast<std::size_t>(r)];
      if (row[static_cast<std::size_t>(col)] == 0) continue;
      const Rational f = row[static_cast<std::size_t>(col)] / pivot;
      for (int c = col; c <= unknowns; ++c) {
        row[static_cast<std::size_t>(c)] -= f * prow[static_cast<std::size_t>(c)];
      }
    }
    ++pivot_row;
  }
  // Consistent iff no remaining row reads 0 = nonzero.
  for (int r = pivot_row; r < rows; ++r) {
    if (aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(unknowns)] != 0) return false;
  }
  return true;
}

bool power_span_check(int m, int n, int k, bool skew) {
  const BracketKind kind = skew ? BracketKind::lambda(m, n) : BracketKind::omega(m, n);
  const CoeffTable g = expand(kind);
  return bilateral_span_membership(power_substitute(g, k), g);
}

CoeffTable weighted_sum_table(int m, int n, int p, int i, WeightedForm form) {
  require_order(m);
  require_order(n);
  require_order(p);
  if (i < 0) throw InvalidArgument("moment index must be >= 0");
  CoeffTable out(p + m + n);
  const CoeffTable inner =
      form == WeightedForm::SymmetryInner ? symmetry_table(n, false) : isometry_table(m);
  for (int k = 0; k <= p; ++k) {
    std::int64_t c = sign(p - k) * binomial(p, k);
    for (int e = 0; e < i; ++e) c = checked_mul(c, k);
    if (form == WeightedForm::SymmetryInner) {
      inner.accumulate_into(out, k, k, c);
    } else {
      inner.accumulate_into(out, k, p - k, c);
    }
  }
  return out;
}

void PairCoeffTable::add(const PairExponents& e, std::int64_t c) {
  if (c == 0) return;
  auto it = c_.find(e);
  if (it == c_.end()) {
    c_.emplace(e, c);
    return;
  }
  it->second = checked_add(it->second, c);
  if (it->second == 0) c_.erase(it);
}

std::int64_t PairCoeffTable::operator()(const PairExponents& e) const {
  const auto it = c_.find(e);
  return it == c_.end() ? 0 : it->second;
}

PairCoeffTable pair_expand(int m, int n, bool skew) {
  const CoeffTable t = expand(skew ? BracketKind::lambda(m, n) : BracketKind::omega(m, n));
  PairCoeffTable out;
  for (int i = 0; i <= t.degree(); ++i) {
    for (int j = 0; j <= t.degree(); ++j) {
      const std::int64_t c = t(i, j);
      if (c == 0) continue;
      for (int a = 0; a <= i; ++a)
        for (int b = 0; b <= j; ++b)
          out.add({a, i - a, b, j - b}, checked_mul(c, checked_mul(binomial(i, a), binomial(j, b))));
    }
  }
  return out;
}

PairCoeffTable pair_expand_rhs(int m, int n, bool skew) {
  require_order(m);
  require_order(n);
  PairCoeffTable out;
  for (int k = 0; k <= n; ++k) {
    for (int j = 0; j <= n - k; ++j) {
      const std::int64_t outer_nk =
          checked_mul(binomial(n, k), binomial(n - k, j)) * (skew ? 1 : sign(k));
      for (int i = 0; i <= m; ++i) {
        for (int l = 0; l <= m - i; ++l) {
          const int h = m - i - l;
          const std::int64_t coef = checked_mul(outer_nk, multinomial(i, l, h));
          const CoeffTable inner =
              expand(skew ? BracketKind::lambda(h, n - k - j) : BracketKind::omega(h, n - k - j));
          // (y1 + y2)^i y2^{l+j} [inner in y1, x1] x1^l x2^{i+k}
          for (int a = 0; a <= i; ++a) {
            const std::int64_t ca = checked_mul(coef, binomial(i, a));
            for (int p = 0; p <= inner.degree(); ++p) {
              for (int q = 0; q <= inner.degree(); ++q) {
                const std::int64_t c = inner(p, q);
                if (c == 0) continue;
                out.add({a + p, (i - a) + l + j, q + l, i + k}, checked_mul(ca, c));
              }
            }
          }
        }
      }
    }
  }
  return out;
}

bool pair_identity_check(int m, int n, bool skew) {
  return pair_expand(m, n, skew) == pair_expand_rhs(m, n, skew);
}

bool nilpotent_vanishing_certificate(int m, int n, int r) {
  if (r < 1) throw InvalidArgument("nilpotency order must be >= 1");
  const int big_m = m + 2 * r - 2;
  const int big_n = n + 2 * r - 1;
  for (int k = 0; k <= big_n; ++k) {
    for (int j = 0; j <= big_n - k; ++j) {
      for (int i = 0; i <= big_m; ++i) {
        for (int l = 0; l <= big_m - i; ++l) {
          const int h = big_m - i - l;
          const bool left_power_kills = l + j >= r;   // S*^{l+j}
          const bool right_power_kills = i + k >= r;  // S^{i+k}
          const bool inner_vanishes = h >= m && big_n - k - j >= n;
          if (!left_power_kills && !right_power_kills && !inner_vanishes) return false;
        }
      }
    }
  }
  return true;
}

std::int64_t binomial_moment(int n, int j) {
  if (n < 0 || j < 0) throw InvalidArgument("moment indices must be >= 0");
  std::int64_t total = 0;
  for (int k = 0; k <= n; ++k) {
    std::int64_t term = sign(n - k) * binomial(n, k);
    for (int e = 0; e < j; ++e) term = checked_mul(term, k);
    total = checked_add(total, term);
  }
  return total;
}

bool binomial_moment_identity(int n) {
  std::int64_t factorial = 1;
  for (int k = 2; k <= n; ++k) factorial = checked_mul(factorial, k);
  for (int j = 0; j < n; ++j) {
    if (binomial_moment(n, j) != 0) return false;
  }
  return binomial_moment(n, n) == factorial;
}

nlohmann::json table_to_json(const CoeffTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i <= t.degree(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j <= t.degree(); ++j) row.push_back(t(i, j));
    rows.push_back(std::move(row));
  }
  return {{"D", t.degree()}, {"coeffs", std::move(rows)}};
}

CoeffTable table_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("D") || !j.contains("coeffs")) {
    throw InvalidArgument("coefficient JSON needs D and coeffs");
  }
  const int d = j["D"].get<int>();
  const auto& rows = j["coeffs"];
  if (d < 0 || !rows.is_array() || static_cast<int>(rows.size()) != d + 1) {
    throw InvalidArgument("coefficient JSON has a malformed coeffs array");
  }
  CoeffTable t(d);
  for (int i = 0; i <= d; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != d + 1) {
      throw InvalidArgument("coefficient JSON rows must have D+1 entries");
    }
    for (int k = 0; k <= d; ++k) {
      if (!row[static_cast<std::size_t>(k)].is_number_integer()) {
        throw InvalidArgument("coefficients must be integers");
      }
      t.add(i, k, row[static_cast<std::size_t>(k)].get<std::int64_t>());
    }
  }
  return t;
}

nlohmann::json pair_table_to_json(const PairCoeffTable& t) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : t.entries()) terms.push_back({e[0], e[1], e[2], e[3], c});
  return {{"order", {"y1", "y2", "x1", "x2"}}, {"terms", std::move(terms)}};
}

}  // namespace isosym
