#include <doctest.h>

#include "isosym/generators.hpp"
#include "isosym/symbolic.hpp"
#include "oracles.hpp"

using namespace isosym;

namespace {

bool table_matches(const CoeffTable& t, const oracle::Poly& p) {
  for (int i = 0; i <= t.degree(); ++i)
    for (int j = 0; j <= t.degree(); ++j) {
      const auto it = p.find({i, j});
      const long long expected = it == p.end() ? 0 : it->second;
      if (t(i, j) != expected) return false;
    }
  for (const auto& [e, c] : p)
    if (t(e.first, e.second) != c) return false;
  return true;
}

/// Evaluates sum c y1^a y2^b A x1^c x2^d with y -> adjoint, x -> operator.
CMatrix evaluate_pair(const PairCoeffTable& table, const CMatrix& a, const CMatrix& t,
                      const CMatrix& s) {
  CMatrix out = CMatrix::Zero(a.rows(), a.cols());
  for (const auto& [e, c] : table.entries()) {
    out += static_cast<double>(c) * oracle::power(t.adjoint(), e[0]) *
           oracle::power(s.adjoint(), e[1]) * a * oracle::power(t, e[2]) * oracle::power(s, e[3]);
  }
  return out;
}

}  // namespace

TEST_CASE("expand examples") {
  const CoeffTable iso = expand(BracketKind::isometry(1));
  CHECK(iso(1, 1) == 1);
  CHECK(iso(0, 0) == -1);
  CHECK(iso(0, 1) == 0);

  const CoeffTable sym = expand(BracketKind::symmetry(2));
  CHECK(sym(0, 2) == 1);
  CHECK(sym(1, 1) == -2);
  CHECK(sym(2, 0) == 1);

  const CoeffTable om = expand(BracketKind::omega(1, 1));
  CHECK(om(2, 1) == 1);
  CHECK(om(1, 2) == -1);
  CHECK(om(1, 0) == -1);
  CHECK(om(0, 1) == 1);
  int nonzero = 0;
  for (int i = 0; i <= om.degree(); ++i)
    for (int j = 0; j <= om.degree(); ++j) nonzero += om(i, j) != 0;
  CHECK(nonzero == 4);
}

TEST_CASE("expand agrees with direct polynomial multiplication") {
  for (int m = 0; m <= 6; ++m)
    for (int n = 0; n <= 6; ++n) {
      CHECK(table_matches(expand(BracketKind::omega(m, n)), oracle::omega_poly(m, n)));
      CHECK(table_matches(expand(BracketKind::lambda(m, n)), oracle::omega_poly(m, n, true)));
      CHECK(table_matches(expand_dual(BracketKind::omega(m, n)), oracle::omega_poly(m, n)));
    }
  CHECK(table_matches(expand(BracketKind::skew_symmetry(3)), oracle::omega_poly(0, 3, true)));
}

TEST_CASE("dual forms agree for m, n <= 6") {
  for (int m = 0; m <= 6; ++m)
    for (int n = 0; n <= 6; ++n) {
      CHECK(dual_forms_equal(m, n, BracketTag::Omega));
      CHECK(dual_forms_equal(m, n, BracketTag::Lambda));
    }
}

TEST_CASE("recurrence") {
  CHECK(recurrence_step(expand(BracketKind::omega(0, 0)), Step::M, BracketTag::Omega) ==
        expand(BracketKind::isometry(1)));
  for (int m = 0; m <= 6; ++m)
    for (int n = 0; n <= 6; ++n) {
      CHECK(recurrence_check(m, n, BracketTag::Omega));
      CHECK(recurrence_check(m, n, BracketTag::Lambda));
    }
  // Shift-left-minus-shift-right, checked entrywise against the next table.
  const CoeffTable t = expand(BracketKind::omega(2, 2));
  const CoeffTable up = expand(BracketKind::omega(2, 3));
  for (int i = 0; i <= up.degree(); ++i)
    for (int j = 0; j <= up.degree(); ++j) CHECK(up(i, j) == t(i - 1, j) - t(i, j - 1));
}

TEST_CASE("invariants of expand") {
  for (int m = 0; m <= 5; ++m)
    for (int n = 0; n <= 5; ++n) {
      const CoeffTable t = expand(BracketKind::omega(m, n));
      long long total = 0;
      for (int i = 0; i <= t.degree(); ++i)
        for (int j = 0; j <= t.degree(); ++j) {
          total += t(i, j);
          if (i > m + n || j > m + n) CHECK(t(i, j) == 0);
        }
      if (m + n >= 1) CHECK(total == 0);
    }
}

TEST_CASE("translation expansion") {
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) {
      CHECK(translate_check(m, n, false));
      CHECK(translate_check(m, n, true));
    }
  // s^0 coefficient is the bracket itself.
  const RationalPoly p = translate_expand(2, 2);
  CHECK(p.terms.at(0) == to_rational(expand(BracketKind::omega(2, 2))));

  // Oracle: ((y - s)(x - s) - 1)^m (y - x)^n at s = 2 by direct multiplication.
  const int s = 2;
  const oracle::Poly iso{{{1, 1}, 1}, {{1, 0}, -s}, {{0, 1}, -s}, {{0, 0}, s * s - 1}};
  const oracle::Poly sym{{{1, 0}, 1}, {{0, 1}, -1}};
  const oracle::Poly expected = oracle::multiply(oracle::poly_power(iso, 2), oracle::poly_power(sym, 1));
  const RationalPoly q = translate_expand(2, 1);
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; j <= 4; ++j) {
      Rational v = 0;
      Rational sp = 1;
      for (const auto& term : q.terms) {
        v += sp * term(i, j);
        sp *= s;
      }
      const auto it = expected.find({i, j});
      CHECK(v == Rational(it == expected.end() ? 0 : it->second));
    }
}

TEST_CASE("power substitution and span membership") {
  const CoeffTable g = expand(BracketKind::omega(1, 1));
  const CoeffTable g2 = power_substitute(g, 2);
  CHECK(g2(4, 2) == 1);
  CHECK(g2(2, 4) == -1);
  CHECK(g2(2, 0) == -1);
  CHECK(g2(0, 2) == 1);
  CHECK(power_substitute(g, 1) == g);
  CHECK(bilateral_span_membership(g, g));
  for (int m = 0; m <= 2; ++m)
    for (int n = 0; n <= 2; ++n)
      for (int k = 1; k <= 3; ++k) {
        CHECK(power_span_check(m, n, k, false));
        // Skew powers stay in the span only for odd k.
        if (k % 2) CHECK(power_span_check(m, n, k, true));
      }
  for (int n = 1; n <= 2; ++n) CHECK_FALSE(power_span_check(1, n, 2, true));
  CHECK(power_span_check(2, 1, 3, false));
  // The weight letter alone is not a two-sided multiple of Omega^{1,1}.
  CoeffTable a_only(0);
  a_only.add(0, 0, 1);
  CHECK_FALSE(bilateral_span_membership(a_only, g));
  // y^2 a is not a two-sided multiple of y a - a x.
  CoeffTable yya(2);
  yya.add(2, 0, 1);
  CHECK_FALSE(bilateral_span_membership(yya, expand(BracketKind::symmetry(1))));
}

TEST_CASE("pair expansion identity") {
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) {
      CHECK(pair_identity_check(m, n, false));
      CHECK(pair_identity_check(m, n, true));
    }
  CHECK(pair_identity_check(2, 3, true));
}

TEST_CASE("pair expansion evaluated on doubly commuting matrices") {
  Rng rng(101);
  for (int trial = 0; trial < 6; ++trial) {
    const CMatrix r = rand_matrix(2, rng);
    const CMatrix n2 = rand_matrix(2, rng);
    const auto pair = doubly_commuting_pair(r, n2);
    const CMatrix a = rand_psd(4, rng);
    const int m = trial % 3, n = (trial + 1) % 3;
    for (bool skew : {false, true}) {
      const CMatrix direct = oracle::bracket(a, pair.t + pair.q, m, n, skew);
      const CMatrix lhs = evaluate_pair(pair_expand(m, n, skew), a, pair.t, pair.q);
      const CMatrix rhs = evaluate_pair(pair_expand_rhs(m, n, skew), a, pair.t, pair.q);
      const double scale = oracle::bracket_scale(a, pair.t + pair.q, m, n) + 1.0;
      CHECK((direct - lhs).norm() / scale < 1e-11);
      CHECK((direct - rhs).norm() / scale < 1e-11);
    }
  }
}

TEST_CASE("pair expansion with m = 0 is the binomial split") {
  // (y1 + y2 - x1 - x2)^n: coefficient of y1^a y2^b x1^c x2^d is the
  // multinomial n!/(a!b!c!d!) times (-1)^{c+d}.
  const int n = 3;
  const PairCoeffTable t = pair_expand(0, n, false);
  auto fact = [](int k) {
    long long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  for (int a = 0; a <= n; ++a)
    for (int b = 0; a + b <= n; ++b)
      for (int c = 0; a + b + c <= n; ++c) {
        const int d = n - a - b - c;
        const long long expected =
            fact(n) / (fact(a) * fact(b) * fact(c) * fact(d)) * (((c + d) % 2) ? -1 : 1);
        CHECK(t({a, b, c, d}) == expected);
      }
}

TEST_CASE("nilpotent vanishing certificate") {
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n)
      for (int r = 1; r <= 3; ++r) CHECK(nilpotent_vanishing_certificate(m, n, r));
  CHECK(nilpotent_vanishing_certificate(1, 1, 2));
  CHECK(nilpotent_vanishing_certificate(0, 1, 2));
  CHECK(nilpotent_vanishing_certificate(2, 2, 3));
}

TEST_CASE("binomial moments") {
  for (int n = 0; n <= 12; ++n) {
    CHECK(binomial_moment_identity(n));
    for (int j = 0; j <= n; ++j) {
      long long direct = 0;
      for (int k = 0; k <= n; ++k) {
        long long kp = 1;
        for (int e = 0; e < j; ++e) kp *= k;
        direct += (((n - k) % 2) ? -1 : 1) * oracle::choose_int(n, k) * kp;
      }
      CHECK(binomial_moment(n, j) == direct);
    }
  }
  CHECK(binomial_moment(5, 5) == 120);
  CHECK(binomial_moment(5, 4) == 0);
}

TEST_CASE("weighted sum table with i = 0 and p = m is the dual form") {
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) {
      CHECK(weighted_sum_table(m, n, m, 0, WeightedForm::SymmetryInner) ==
            expand(BracketKind::omega(m, n)));
      CHECK(weighted_sum_table(m, n, n, 0, WeightedForm::IsometryInner) ==
            expand(BracketKind::omega(m, n)));
    }
}

TEST_CASE("checked arithmetic and order limits") {
  CHECK(binomial(24, 12) == 2704156);
  CHECK(multinomial(1, 1, 1) == 6);
  CHECK_THROWS_AS(checked_mul(std::int64_t{1} << 40, std::int64_t{1} << 40), Overflow);
  CHECK_THROWS_AS(checked_add(INT64_MAX, 1), Overflow);
  CHECK_THROWS_AS(require_order(25), OrderTooLarge);
  CHECK_THROWS_AS(require_order(-1), InvalidArgument);
  CHECK_THROWS_AS(expand(BracketKind::omega(25, 0)), OrderTooLarge);
}

TEST_CASE("table JSON round-trip") {
  const CoeffTable t = expand(BracketKind::omega(2, 3));
  const auto j = table_to_json(t);
  CHECK(j["D"] == t.degree());
  CHECK(table_from_json(j) == t);
  CHECK(table_from_json(nlohmann::json::parse(j.dump())) == t);
  CHECK_THROWS_AS(table_from_json(nlohmann::json{{"D", 1}}), InvalidArgument);
}
