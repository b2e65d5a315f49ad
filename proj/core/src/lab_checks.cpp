// Algebraic checks: hierarchy, shifts, positivity transfer, inverses and
// powers, moment sums, exponentials, order reduction.

#include <cmath>

#include <Eigen/Eigenvalues>

#include "isosym/admissible.hpp"
#include "isosym/brackets.hpp"
#include "lab_internal.hpp"

namespace isosym {

using lab::Instance;
using lab::kHypothesisTol;
using lab::TrialOutcome;

namespace {

const Complex kI(0.0, 1.0);

std::string orders(int m, int n) {
  return "(" + std::to_string(m) + "," + std::to_string(n) + ")";
}

bool invertible(const CMatrix& t) {
  Eigen::JacobiSVD<CMatrix> svd(t);
  const auto& sv = svd.singularValues();
  return sv(sv.size() - 1) > 1e-8 * sv(0);
}

/// Amount by which a computed (cancelled) Hermitian bracket fails to be PSD,
/// relative to the magnitude it was computed from.
double psd_violation(const Bracket& b) {
  const double ref = b.scale > 0.0 ? b.scale : 1.0;
  const double skew = (b.value - b.value.adjoint()).norm() / ref;
  const double neg = std::max(0.0, -min_hermitian_eigenvalue(b.value)) / ref;
  return std::max(skew, neg);
}

/// Hermitian part with negative rounding eigenvalues removed.
CMatrix clip_psd(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es((m + m.adjoint()) / 2.0);
  const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

Bracket reversed_bracket_sum(const WeightedOperator& w, int m, int p, double s) {
  Bracket out{CMatrix::Zero(w.dim(), w.dim()), 0.0};
  for (int k = 0; k <= p; ++k) {
    const double c = ((p - k) % 2 == 0 ? 1.0 : -1.0) * static_cast<double>(binomial(p, k));
    const Bracket lk = exp_expansion_lhs(w, m, s, p - k, true);
    out.value += c * lk.value;
    out.scale += std::abs(c) * lk.scale;
  }
  return out;
}

Instance identity_instance(Rng& rng) {
  const Index d = rng.integer(2, 5);
  const int m = rng.integer(0, 2);
  const int n = m == 0 ? rng.integer(1, 2) : rng.integer(0, 2);
  return {rand_psd(d, rng), identity(d), m, n, "identity"};
}

}  // namespace

VerificationReport check_hierarchy(const CheckOptions& o) {
  return lab::run_trials("hierarchy", o, false, [](Rng& rng, int t) {
    const Instance inst = t % 7 == 6 ? identity_instance(rng) : lab::member_instance(rng, t);
    const auto w = inst.weighted();
    TrialOutcome out;
    out.instance = inst.to_json();
    if (lab::omega_residual(w, inst.m, inst.n) > kHypothesisTol) {
      return TrialOutcome::skip(inst.origin + " not a member at " + orders(inst.m, inst.n));
    }
    out.observe(lab::omega_residual(w, inst.m + 1, inst.n));
    out.observe(lab::omega_residual(w, inst.m, inst.n + 1));
    out.observe(lab::omega_residual(w, inst.m + 2, inst.n + 2));
    out.note = inst.origin + " " + orders(inst.m, inst.n);
    return out;
  });
}

VerificationReport check_translation(const CheckOptions& o) {
  return lab::run_trials("translation", o, false, [](Rng& rng, int t) {
    const Instance inst = lab::symmetric_instance(rng, t);
    const auto w = inst.weighted();
    const int n = inst.n;
    const int m = rng.integer(1, 2);
    TrialOutcome out;
    out.instance = inst.to_json();
    if (lab::class_residual(w, ClassKind::Symmetry, 0, n) > kHypothesisTol) {
      return TrialOutcome::skip("not symmetric of order " + std::to_string(n));
    }
    const Index d = w.dim();
    const CMatrix skew_op = kI * w.op();
    const auto skew_w = w.with_op(skew_op);
    if (lab::class_residual(skew_w, ClassKind::SkewSymmetry, 0, n) > kHypothesisTol) {
      return TrialOutcome::skip("i T not skew symmetric");
    }
    // A shift equal to an eigenvalue of a scalar-plus-nilpotent T makes every
    // term of the sum rounding noise, so the relative residual is meaningless
    // there; a random shift avoids it with probability one.
    for (double s : {0.3, 1.7, rng.uniform(-2.0, 2.0)}) {
      const auto shifted = w.with_op(w.op() - s * identity(d));
      out.observe(lab::omega_residual(shifted, m, n));
      out.observe(relative_gap(omega(shifted, m, n), omega_translate(w, m, n, s)));
      // Skew case: the shift that preserves the class is imaginary.
      out.observe(lab::lambda_residual(skew_w.with_op(skew_op - kI * s * identity(d)), m, n));
      out.observe(relative_gap(lambda(skew_w.with_op(skew_op - s * identity(d)), m, n),
                               lambda_translate(skew_w, m, n, s)));
    }
    out.note = inst.origin + " " + orders(m, n);
    return out;
  });
}

VerificationReport check_positivity_transfer(const CheckOptions& o) {
  return lab::run_trials("positivity_transfer", o, false, [](Rng& rng, int t) {
    TrialOutcome out;
    const int kind = t % 4;
    Instance inst;
    if (kind == 0) {
      // Involution: isometric and symmetric, derived weight is A itself.
      const Index d = rng.integer(2, 5);
      const CMatrix weight = rand_positive_definite(d, rng);
      const auto w = similar_member(lab::random_involution(d, rng), weight);
      inst = {w.weight(), w.op(), 1, 1, "involution"};
    } else {
      const Index half = rng.integer(1, 2);
      const int r = rng.integer(2, 3);
      inst = lab::involution_plus_nilpotent(rng, half, r);
      inst.m = 2 * r - 1;
      inst.n = 2 * r - 1;
    }
    out.instance = inst.to_json();
    const auto w = inst.weighted();
    BracketEngine engine(w);

    if (kind == 0 || kind == 1) {
      // Isometric of order m with Omega^{m-1,n} = 0: I^{m-1}/(m-1)! is a
      // weight making T symmetric of order n.
      const int m = kind == 0 ? 1 : inst.m;
      const int n = 1;
      if (engine.isometry(m).residual() > kHypothesisTol ||
          engine.omega(m - 1, n).residual() > kHypothesisTol) {
        return TrialOutcome::skip("isometric-side hypotheses fail");
      }
      Bracket b = engine.isometry(m - 1);
      b.value /= factorial(m - 1);
      b.scale /= factorial(m - 1);
      out.observe(psd_violation(b));
      const WeightedOperator derived(clip_psd(b.value), w.op());
      out.observe(symmetry_bracket(derived, n).residual());
      out.note = inst.origin + " isometric side m=" + std::to_string(m);
    } else if (kind == 2) {
      // Symmetric of order n with Omega^{m,n-1} = 0: (-i)^{n-1} S^{n-1}/(n-1)!
      // is a weight making T isometric of order m.
      const int n = inst.n;
      const int m = 1;
      if (engine.symmetry(n).residual() > kHypothesisTol ||
          engine.omega(m, n - 1).residual() > kHypothesisTol) {
        return TrialOutcome::skip("symmetric-side hypotheses fail");
      }
      Bracket b = engine.symmetry(n - 1);
      b.value *= std::pow(-kI, n - 1) / factorial(n - 1);
      b.scale /= factorial(n - 1);
      out.observe(psd_violation(b));
      const WeightedOperator derived(clip_psd(b.value), w.op());
      out.observe(isometry_bracket(derived, m).residual());
      out.note = inst.origin + " symmetric side n=" + std::to_string(n);
    } else {
      // Consequences for symmetric T with Omega^{m,n-1} = 0:
      // n = 2p+1, p even gives Omega^{m-1,2p} >= 0; n even gives
      // Omega^{m-1,n-1} = 0.
      const int n_odd = inst.n == 5 ? 5 : 1;
      const int m = 1;
      if (n_odd == 5) {
        if (engine.symmetry(5).residual() > kHypothesisTol ||
            engine.omega(m, 4).residual() > kHypothesisTol) {
          return TrialOutcome::skip("odd-order hypotheses fail");
        }
        out.observe(psd_violation(engine.omega(m - 1, 4)));
      }
      const int n_even = inst.n + 1;
      if (engine.symmetry(n_even).residual() > kHypothesisTol ||
          engine.omega(m, n_even - 1).residual() > kHypothesisTol) {
        return TrialOutcome::skip("even-order hypotheses fail");
      }
      out.observe(engine.omega(m - 1, n_even - 1).residual());
      out.note = inst.origin + " consequences";
    }
    return out;
  });
}

VerificationReport check_inverse_and_powers(const CheckOptions& o) {
  return lab::run_trials("inverse_powers", o, false, [](Rng& rng, int t) {
    const Instance inst = lab::member_instance(rng, t);
    const auto w = inst.weighted();
    const int m = inst.m;
    const int n = inst.n;
    TrialOutcome out;
    out.instance = inst.to_json();
    if (lab::omega_residual(w, m, n) > kHypothesisTol) {
      return TrialOutcome::skip("not a member at " + orders(m, n));
    }
    const CMatrix& op = w.op();
    const CMatrix sq = op * op;
    out.observe(lab::omega_residual(w.with_op(sq), m, n));
    out.observe(lab::omega_residual(w.with_op(sq * op), m, n));

    const CMatrix skew_op = kI * op;
    out.observe(lab::lambda_residual(w.with_op(skew_op * skew_op * skew_op), m, n));

    std::string note = inst.origin + " " + orders(m, n);
    if (invertible(op)) {
      const CMatrix inv = op.inverse();
      out.observe(lab::omega_residual(w.with_op(inv), m, n));
      out.observe(lab::lambda_residual(w.with_op(skew_op.inverse()), m, n));
      note += " with inverse";
    }
    out.note = note;
    return out;
  });
}

VerificationReport check_weighted_sums(const CheckOptions& o) {
  return lab::run_trials("weighted_sums", o, false, [](Rng& rng, int t) {
    const Instance inst = lab::member_instance(rng, t);
    const auto w = inst.weighted();
    const int m = inst.m;
    const int n = inst.n;
    TrialOutcome out;
    out.instance = inst.to_json();
    if (lab::omega_residual(w, m, n) > kHypothesisTol) {
      return TrialOutcome::skip("not a member at " + orders(m, n));
    }
    for (int p = m; p <= m + 2; ++p)
      for (int i = 0; i <= p - m; ++i)
        out.observe(weighted_sum_identity(w, m, n, p, i, WeightedForm::SymmetryInner).residual());
    for (int p = n; p <= n + 2; ++p)
      for (int i = 0; i <= p - n; ++i)
        out.observe(weighted_sum_identity(w, m, n, p, i, WeightedForm::IsometryInner).residual());
    out.note = inst.origin + " " + orders(m, n);
    return out;
  });
}

VerificationReport check_exponential(const CheckOptions& o) {
  return lab::run_trials("exponential", o, false, [](Rng& rng, int t) {
    const Instance inst = t % 3 == 2 ? lab::symmetric_instance(rng, t) : lab::member_instance(rng, t);
    const auto w = inst.weighted();
    const int m = inst.m;
    const int n = inst.n;
    TrialOutcome out;
    out.instance = inst.to_json();
    if (lab::omega_residual(w, m, n) > kHypothesisTol) {
      return TrialOutcome::skip("not a member at " + orders(m, n));
    }
    const auto skew_w = w.with_op(kI * w.op());
    std::string note = inst.origin + " " + orders(m, n);

    for (double s : {0.1, 0.5}) {
      for (int k = 1; k <= 3; ++k) {
        out.observe(relative_gap(exp_expansion_lhs(w, m, s, k, false),
                                 exp_expansion_rhs(w, m, n, s, k, false)));
        out.observe(relative_gap(exp_expansion_lhs(skew_w, m, s, k, true),
                                 exp_expansion_rhs(skew_w, m, n, s, k, true)));
      }
      out.observe(exp_bracket_sum(w, m, n, s, false).residual());
      out.observe(exp_bracket_sum(skew_w, m, n, s, true).residual());
    }

    // When I^m is PSD it is itself a weight for the exponential.
    const Bracket im = isometry_bracket(w, m);
    if (psd_violation(im) <= kHypothesisTol && im.norm() > 1e-8 * im.scale) {
      const CMatrix b = clip_psd(im.value);
      for (double s : {0.1, 0.5}) {
        const WeightedOperator ew(b, matrix_exp(w.op(), s));
        out.observe(isometry_bracket(ew, n).residual());
        const CMatrix sk = skew_w.op();
        out.observe(left_inverse_check(b, matrix_exp(sk.adjoint(), s), matrix_exp(sk, s), n)
                        .residual);
      }
      note += " +weight I^m";
    }

    // Commuting skew symmetric pair R (order mr) and S (order 1).
    const Index d = rng.integer(1, 3);
    auto [h1, h2] = lab::commuting_hermitians(d, rng);
    int mr = 1;
    if (rng.uniform() < 0.5) {
      const auto pair = doubly_commuting_pair(h1, jordan_nilpotent(2, 2));
      h1 = pair.t + pair.q;
      h2 = kron(h2, identity(2));
      mr = 3;
    }
    const CMatrix a = rand_positive_definite(h1.rows(), rng);
    const CMatrix r = kI * similar_member(h1, a).op();
    const CMatrix s_op = kI * similar_member(h2, a).op();
    const WeightedOperator rw(a, r);
    const WeightedOperator sw(a, s_op);
    if (skew_bracket(rw, mr).residual() <= kHypothesisTol &&
        skew_bracket(sw, 1).residual() <= kHypothesisTol) {
      for (double s : {0.1, 0.5}) {
        const CMatrix sum = r + s_op;
        out.observe(
            left_inverse_check(a, matrix_exp(sum.adjoint(), s), matrix_exp(sum, s), mr).residual);
      }
      note += " +pair";
    }
    out.note = note;
    return out;
  });
}

VerificationReport check_order_reduction(const CheckOptions& o) {
  return lab::run_trials("order_reduction", o, false, [](Rng& rng, int t) {
    TrialOutcome out;
    const int kind = t % 5;
    Instance inst;
    switch (kind) {
      case 0:  // even m, invertible, S^n >= 0
        if (rng.uniform() < 0.5) {
          inst = lab::similar_instance(rng, MemberFamily::Unitary, rng.integer(2, 5));
          inst.m = 2;
          inst.n = 0;
        } else {
          inst = lab::involution_plus_nilpotent(rng, rng.integer(1, 2), 3);
          inst.m = 2;
          inst.n = 4;
        }
        break;
      case 1:  // even n, I^m >= 0
        if (rng.uniform() < 0.5) {
          inst = lab::similar_instance(rng, MemberFamily::Hermitian, rng.integer(2, 5));
          inst.n = 2;
        } else {
          inst = lab::similar_instance(rng, MemberFamily::HermitianPlusNilpotent,
                                       2 * rng.integer(1, 2));
          inst.n = 4;
        }
        inst.m = 0;
        break;
      case 2:  // invertible isometric of even order
        if (rng.uniform() < 0.5) {
          inst = lab::similar_instance(rng, MemberFamily::Unitary, rng.integer(2, 5));
          inst.m = 2;
        } else {
          inst = lab::similar_instance(rng, MemberFamily::UnitaryPlusNilpotent,
                                       2 * rng.integer(1, 2));
          inst.m = 4;
        }
        inst.n = 0;
        break;
      case 3: {  // symmetric of even order
        const int pick = rng.integer(0, 2);
        if (pick == 0) {
          inst = lab::similar_instance(rng, MemberFamily::Hermitian, rng.integer(2, 5));
          inst.n = 2;
        } else if (pick == 1) {
          inst = lab::similar_instance(rng, MemberFamily::HermitianPlusNilpotent,
                                       2 * rng.integer(1, 2));
          inst.n = 4;
        } else {
          const Index d = rng.integer(2, 5);
          const auto w = similar_member(lab::random_involution(d, rng),
                                        rand_positive_definite(d, rng));
          inst = {w.weight(), w.op(), 0, 2, "involution"};
        }
        inst.m = 0;
        break;
      }
      default: {  // pooled member, pushed to an even order
        inst = lab::member_instance(rng, t);
        if (rng.uniform() < 0.5) {
          inst.m += inst.m % 2;
        } else {
          inst.n += inst.n % 2;
        }
        break;
      }
    }
    out.instance = inst.to_json();
    const auto w = inst.weighted();
    BracketEngine engine(w);
    const int m = inst.m;
    const int n = inst.n;
    if (engine.omega(m, n).residual() > kHypothesisTol ||
        engine.omega_dual(m, n).residual() > kHypothesisTol) {
      return TrialOutcome::skip("not a member at " + orders(m, n));
    }

    bool applied = false;
    if (m % 2 == 0 && m > 0 && invertible(w.op())) {
      const Bracket sn = engine.symmetry(n);
      if (psd_violation(sn) <= kHypothesisTol) {
        out.observe(lab::omega_residual(w, m - 1, n));
        if (n == 0) out.observe(isometry_bracket(w, m - 1).residual());
        applied = true;
      }
    }
    if (n % 2 == 0 && n > 0) {
      const Bracket im = engine.isometry(m);
      if (psd_violation(im) <= kHypothesisTol) {
        out.observe(lab::omega_residual(w, m, n - 1));
        if (m == 0) out.observe(symmetry_bracket(w, n - 1).residual());
        applied = true;
      }
    }
    if (!applied) return TrialOutcome::skip("no reduction hypothesis holds at " + orders(m, n));
    out.note = inst.origin + " " + orders(m, n);
    return out;
  });
}

VerificationReport check_order_reduction_sampled(const CheckOptions& o) {
  return lab::run_trials("order_reduction_sampled", o, true, [](Rng& rng, int t) {
    Instance inst;
    switch (t % 4) {
      case 0:
        inst = lab::similar_instance(rng, MemberFamily::Hermitian, rng.integer(2, 5));
        inst.m = 0;
        inst.n = 2;
        break;
      case 1:
        inst = lab::similar_instance(rng, MemberFamily::HermitianPlusNilpotent,
                                     2 * rng.integer(1, 2));
        inst.m = 0;
        inst.n = 4;
        break;
      case 2:
        inst = lab::involution_plus_nilpotent(rng, rng.integer(1, 2), 2);
        inst.m = 1;
        inst.n = 2;
        break;
      default:
        inst = lab::similar_instance(rng, MemberFamily::Unitary, rng.integer(2, 4));
        inst.m = 1;
        inst.n = 2;
        break;
    }
    const auto base = inst.weighted();
    const auto w = base.with_op(kI * base.op());  // skew member
    inst.op = w.op();
    const int m = inst.m;
    const int n = inst.n;
    TrialOutcome out;
    out.instance = inst.to_json();
    if (lab::lambda_residual(w, m, n) > kHypothesisTol) {
      return TrialOutcome::skip("not a skew member at " + orders(m, n));
    }
    const double samples[] = {0.1, 0.5, 1.0};
    for (double s : samples) {
      // H1 is the skew bracket sum of order n-1; H2 pairs each sign with the
      // complementary power.
      const Bracket h1 = exp_bracket_sum(w, m, n - 1, s, true);
      const Bracket h2 = reversed_bracket_sum(w, m, n - 1, s);
      if (psd_violation(h1) > kHypothesisTol || psd_violation(h2) > kHypothesisTol) {
        return TrialOutcome::skip("sampled positivity hypothesis fails at s=" + std::to_string(s));
      }
      if (exp_bracket_sum(w, m, n, s, true).residual() > kHypothesisTol) {
        return TrialOutcome::skip("order-n bracket sum does not vanish");
      }
      out.observe(h1.residual());
    }
    out.observe(lab::lambda_residual(w, m, n - 1));
    out.note = inst.origin + " skew " + orders(m, n) + " sampled s in {0.1,0.5,1}";
    return out;
  });
}

}  // namespace isosym
