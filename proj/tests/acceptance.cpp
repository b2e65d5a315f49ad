// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "isosym/admissible.hpp"
#include "isosym/brackets.hpp"
#include "isosym/classify.hpp"
#include "isosym/gallery.hpp"
#include "isosym/generators.hpp"
#include "isosym/lab.hpp"
#include "isosym/symbolic.hpp"
#include "oracles.hpp"

using namespace isosym;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void criterion(int id, const char* title, double time_limit_s, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  const bool in_time = secs < time_limit_s;
  const bool pass = o.pass && in_time;
  failures += !pass;
  std::printf("%s criterion %d (%s): %s; %.3f s (limit %.0f s)%s\n", pass ? "PASS" : "FAIL", id,
              title, o.detail.c_str(), secs, time_limit_s, in_time ? "" : " TIMEOUT");
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double iso_residual(const WeightedOperator& w, int m, int n) { return omega(w, m, n).residual(); }

Outcome gallery_exact() {
  Outcome o;
  const Fixture f2 = fixture("ex1_2x2");
  const double s1 = symmetry_bracket(f2.weighted(), 1).norm();
  const double r11 = iso_residual(f2.weighted(), 1, 1);
  const double rid = iso_residual(WeightedOperator(identity(2), f2.op), 1, 1);
  const Fixture f3 = fixture("ex1_3x3");
  const double a11 = iso_residual(f3.weighted(), 1, 1);
  const double a10 = iso_residual(f3.weighted(), 1, 0);
  const double a01 = iso_residual(f3.weighted(), 0, 1);
  o.pass = s1 <= 1e-14 && r11 <= 1e-10 && rid > 1e-2 && a11 <= 1e-12 && a10 > 1e-2 && a01 > 1e-2;
  o.detail = fmt("ex1_2x2 |S1|=%.2g, (1,1) res %.2g, A=I res %.3g", s1, r11, rid) +
             fmt("; ex1_3x3 (1,1) %.2g, (1,0) %.3g, (0,1) %.3g", a11, a10, a01);
  return o;
}

/// Members are sampled on the condition set; non-members at least 0.05 away
/// from it, so the 1e-6 margin is meaningful.
Outcome parametric_iff() {
  constexpr double kMemberTol = 1e-10;
  constexpr double kMargin = 1e-6;
  constexpr double kAway = 0.05;
  Rng rng(2024);
  int members = 0, non_members = 0, wrong = 0;
  double worst_member = 0.0, weakest_non = INFINITY;
  auto record = [&](bool expected, double res) {
    if (expected) {
      ++members;
      worst_member = std::max(worst_member, res);
      wrong += !(res <= kMemberTol);
    } else {
      ++non_members;
      weakest_non = std::min(weakest_non, res);
      wrong += !(res > kMargin);
    }
  };
  auto p = [&] { return rng.uniform(-3.0, 3.0); };

  for (int k = 0; k < 200; ++k) {
    double a = p(), b = p(), c = p(), d = p();
    switch (k % 3) {
      case 0:
        c = 0.0;
        break;
      case 1:
        // ad - bc = 1, resampled until |d| <= 3.
        do {
          a = p(), b = p(), c = p();
          d = std::abs(a) > 1e-3 ? (1.0 + b * c) / a : 99.0;
        } while (std::abs(d) > 3.0);
        break;
      default:
        while (std::abs(c) < kAway || std::abs(a * d - b * c - 1.0) < kAway) {
          a = p(), b = p(), c = p(), d = p();
        }
    }
    const bool expected = std::abs(c) <= 1e-12 || std::abs(a * d - b * c - 1.0) <= 1e-12;
    record(expected, iso_residual(ex4_generic(a, b, c, d).weighted(), 1, 1));
  }

  for (int k = 0; k < 200; ++k) {
    const double a = p(), b = p();
    double d;
    if (k % 2 == 0) {
      d = static_cast<double>(rng.integer(-1, 1));
    } else {
      do d = p();
      while (std::abs(d) < kAway || std::abs(std::abs(d) - 1.0) < kAway);
    }
    const bool expected = d == 0.0 || std::abs(d) == 1.0;
    record(expected, lambda(ex4_upper(a, b, d).weighted(), 1, 1).residual());
  }

  Outcome o;
  o.pass = wrong == 0;
  o.detail = fmt("%g members max res %.2g", members, worst_member) +
             fmt(", %g non-members min res %.3g, %g misclassified", non_members, weakest_non, wrong);
  return o;
}

Outcome nilpotent_class() {
  Rng rng(11);
  double worst = 0.0;
  for (int r = 2; r <= 4; ++r) {
    const CMatrix n = jordan_nilpotent(r, r);
    for (int k = 0; k < 20; ++k)
      worst = std::max(worst, iso_residual(WeightedOperator(rand_psd(r, rng), n), 2 * r - 2, 2 * r - 1));
  }
  return {worst <= 1e-10, fmt("60 weights, max residual %.3g", worst)};
}

Outcome symbolic_exact() {
  int bad = 0, total = 0;
  auto tally = [&](bool ok) {
    ++total;
    bad += !ok;
  };
  for (int m = 0; m <= 6; ++m)
    for (int n = 0; n <= 6; ++n)
      for (auto tag : {BracketTag::Omega, BracketTag::Lambda}) {
        tally(dual_forms_equal(m, n, tag));
        tally(recurrence_check(m, n, tag));
      }
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n)
      for (bool skew : {false, true}) {
        tally(translate_check(m, n, skew));
        tally(pair_identity_check(m, n, skew));
        for (int r = 1; r <= 3; ++r)
          if (!skew) tally(nilpotent_vanishing_certificate(m, n, r));
      }
  for (int m = 0; m <= 2; ++m)
    for (int n = 0; n <= 2; ++n)
      for (int k = 1; k <= 3; ++k)
        for (bool skew : {false, true})
          if (!skew || k % 2) tally(power_span_check(m, n, k, skew));
  for (int n = 0; n <= 12; ++n) tally(binomial_moment_identity(n));
  return {bad == 0, fmt("%g exact identities, %g false", total, bad)};
}

Outcome theorem_suite() {
  CheckOptions opts;
  opts.trials = 50;
  opts.seed = 42;
  bool ok = true;
  std::ostringstream detail;
  for (const auto& r : run_all(opts)) {
    const bool vacuous_allowed = r.sampled_hypothesis;
    bool good = r.verdict != Verdict::Fail;
    if (!vacuous_allowed) good = good && r.verdict == Verdict::Pass && r.executed() >= 10;
    ok = ok && good;
    detail << (detail.tellp() > 0 ? ", " : "") << r.theorem << ' ' << to_string(r.verdict) << ' '
           << r.executed() << '/' << r.trials;
  }
  return {ok, detail.str()};
}

Outcome inverse_problem() {
  const Fixture f = fixture("ex1_3x3");
  const auto sol = solve_admissible(f.op, 1, 1, 200, 7);
  if (!sol) return {false, "no weight found"};
  const double found = certify(f.op, sol->weight, 1, 1).max_residual;
  const double own = certify(f.op, f.weight, 1, 1).max_residual;
  const bool psd = psd_check(sol->weight);
  return {psd && found <= 1e-9 && own <= 1e-14,
          fmt("found weight certify %.3g (psd margin %.2g), given weight %.2g", found,
              sol->psd_margin, own)};
}

Outcome cross_oracle() {
  Rng rng(77);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Index d = rng.integer(1, 4);
    const int m = rng.integer(0, 4), n = rng.integer(0, 4);
    const bool skew = k % 2 == 1;
    const CMatrix a = rand_psd(d, rng);
    const CMatrix t = rand_matrix(d, rng) * rng.uniform(0.3, 1.2);
    BracketEngine engine{WeightedOperator(a, t)};
    const Bracket table = engine.evaluate(skew ? BracketKind::lambda(m, n) : BracketKind::omega(m, n));
    const Bracket chain = engine.by_recurrence(m, n, skew ? BracketTag::Lambda : BracketTag::Omega);
    const CMatrix direct = oracle::bracket(a, t, m, n, skew);
    const double scale = std::max(table.scale, 1e-300);
    worst = std::max({worst, (table.value - direct).norm() / scale,
                      (chain.value - direct).norm() / scale,
                      (table.value - chain.value).norm() / scale});
  }
  return {worst <= 1e-11, fmt("100 cases, max pairwise gap / scale %.3g", worst)};
}

}  // namespace

int main() {
  criterion(1, "gallery reproduction", 1.0, gallery_exact);
  criterion(2, "parametric 2x2 iff", 5.0, parametric_iff);
  criterion(3, "nilpotent class", 60.0, nilpotent_class);
  criterion(4, "symbolic exactness", 30.0, symbolic_exact);
  criterion(5, "theorem suite, 50 trials, seed 42", 180.0, theorem_suite);
  criterion(6, "inverse problem", 60.0, inverse_problem);
  criterion(7, "cross-oracle agreement", 60.0, cross_oracle);
  std::printf("%d of 7 criteria failed\n", failures);
  return failures;
}
