// Structural checks: nilpotent perturbations, spectra, block operators.

#include <cmath>
#include <limits>

#include "isosym/brackets.hpp"
#include "isosym/gallery.hpp"
#include "isosym/matrix_json.hpp"
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

/// |lhs - rhs|_F relative to the sizes of the products involved.
double identity_gap(const CMatrix& lhs, const CMatrix& rhs, double scale) {
  const double gap = (lhs - rhs).norm();
  return scale < 1e-14 ? gap : gap / scale;
}

/// Non-membership assertion with a margin: 0 when the residual is clearly
/// away from zero, 1 otherwise.
double expect_non_member(double residual) {
  return residual > lab::kNonMemberMargin ? 0.0 : 1.0;
}

}  // namespace

VerificationReport check_nilpotent_perturbation(const CheckOptions& o) {
  return lab::run_trials("nilpotent_perturbation", o, false, [](Rng& rng, int t) {
    Instance inst;
    do {
      inst = lab::member_instance(rng, t);
    } while (inst.op.rows() > 4);
    const int m = inst.m;
    const int n = inst.n;
    TrialOutcome out;
    out.instance = inst.to_json();
    const auto base = inst.weighted();
    if (lab::omega_residual(base, m, n) > kHypothesisTol) {
      return TrialOutcome::skip("not a member at " + orders(m, n));
    }

    const int r = (m + n > 2 || t % 10 == 0) ? 2 : rng.integer(2, 3);
    const bool zero_q = t % 10 == 0;
    const Index d = inst.op.rows();
    const CMatrix factor_weight = rng.uniform() < 0.5 ? identity(r) : rand_psd(r, rng);
    const CMatrix weight = kron(inst.weight, factor_weight);
    const auto pair = doubly_commuting_pair(inst.op, zero_q ? CMatrix::Zero(r, r).eval()
                                                            : jordan_nilpotent(r, r));
    if (!zero_q && !doubly_commuting(pair.t, pair.q)) {
      throw NotDoublyCommuting("Kronecker pair failed the commutator test");
    }
    const WeightedOperator lifted_base(weight, pair.t);
    const int lm = zero_q ? m : m + 2 * r - 2;
    const int ln = zero_q ? n : n + 2 * r - 1;
    const CMatrix sum = pair.t + pair.q;
    const auto w_sum = lifted_base.with_op(sum);

    // When every term of the lifted sum is rounding noise (e.g. A T = 0 with
    // a nilpotent factor), the relative residual is noise over noise.
    if (omega(w_sum, lm, ln).scale < 1e-10 * weight.norm()) {
      return TrialOutcome::skip("every term of the lifted sum vanishes");
    }
    out.observe(lab::omega_residual(w_sum, lm, ln));
    out.observe(lab::omega_residual(w_sum.with_op(sum * sum), lm, ln));
    // The triple-sum expansion from the brackets of T alone.
    out.observe(relative_gap(omega(w_sum, lm, ln),
                             perturb_expansion_rhs(lifted_base, pair.q, lm, ln, false)));

    const CMatrix skew_t = kI * pair.t;
    const CMatrix skew_sum = skew_t + pair.q;
    const auto w_skew = lifted_base.with_op(skew_sum);
    out.observe(lab::lambda_residual(w_skew, lm, ln));
    out.observe(lab::lambda_residual(w_skew.with_op(skew_sum * skew_sum * skew_sum), lm, ln));
    out.observe(relative_gap(lambda(w_skew, lm, ln),
                             perturb_expansion_rhs(lifted_base.with_op(skew_t), pair.q, lm, ln,
                                                   true)));

    // [[R, S], [0, R]] with S doubly commuting with R.
    if (d <= 3) {
      const CMatrix m2 = rand_matrix(2, rng);
      const CMatrix rr = kron(inst.op, identity(2));
      const CMatrix ss = kron(identity(d), m2);
      const CMatrix bw = kron(inst.weight, rand_psd(2, rng));
      const auto k = k_block(bw, rr, ss);
      out.observe(lab::omega_residual(k, m + 2, n + 3));
    }
    out.note = inst.origin + " " + orders(m, n) + " r=" + std::to_string(r) +
               (zero_q ? " Q=0" : "");
    return out;
  });
}

SpectralReport spectral_report(const WeightedOperator& w, int m, int n) {
  SpectralReport rep;
  const CMatrix& a = w.weight();
  const double anorm = a.norm();
  const EigenSet es = eigenpairs(w.op());
  const double tnorm = w.op().norm();
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < es.size(); ++i) {
    const Complex lam = es.values[i];
    rep.eigenvalues.push_back(lam);
    const double dist = std::min(std::abs(std::abs(lam) - 1.0), std::abs(lam.imag()));
    rep.distance.push_back(dist);
    rep.max_distance = std::max(rep.max_distance, dist);
    const double mag2 = std::norm(lam);
    const Complex ax = semi_inner(a, es.vectors[i], es.vectors[i]);
    double value = std::pow(1.0 - mag2, m) * std::pow(2.0 * lam.imag(), n) * std::abs(ax);
    const double scale = std::pow(1.0 + mag2, m) * std::pow(2.0 * std::abs(lam), n) * anorm;
    value = scale > 0.0 ? value / scale : value;
    rep.scalar_identity.push_back(value);
    rep.max_scalar_identity = std::max(rep.max_scalar_identity, value);
    if (es.accepted(i, tnorm)) kept.push_back(i);
  }
  constexpr double kGap = 1e-4;
  for (std::size_t a_i = 0; a_i < kept.size(); ++a_i) {
    for (std::size_t b_i = 0; b_i < kept.size(); ++b_i) {
      if (a_i == b_i) continue;
      const std::size_t i = kept[a_i];
      const std::size_t j = kept[b_i];
      const Complex lam = es.values[i];
      const Complex mu = es.values[j];
      const bool degenerate = std::abs(lam - mu) <= kGap ||
                              (m > 0 && std::abs(lam * std::conj(mu) - 1.0) <= kGap) ||
                              (n > 0 && std::abs(lam - std::conj(mu)) <= kGap);
      if (degenerate) {
        ++rep.skipped_pairs;
        continue;
      }
      const double inner = std::abs(semi_inner(a, es.vectors[i], es.vectors[j])) / anorm;
      rep.pairs.push_back({i, j, inner});
      rep.max_a_inner = std::max(rep.max_a_inner, inner);
    }
  }
  return rep;
}

VerificationReport check_spectral(const CheckOptions& o) {
  return lab::run_trials("spectral", o, false, [](Rng& rng, int t) {
    const Instance inst = lab::member_instance(rng, t, true);
    const auto w = inst.weighted();
    TrialOutcome out;
    out.instance = inst.to_json();
    if (min_hermitian_eigenvalue(w.weight()) < 1e-6 * w.weight().norm()) {
      return TrialOutcome::skip("weight not invertible");
    }
    if (lab::omega_residual(w, inst.m, inst.n) > kHypothesisTol) {
      return TrialOutcome::skip("not a member at " + orders(inst.m, inst.n));
    }
    const SpectralReport rep = spectral_report(w, inst.m, inst.n);
    out.observe(rep.max_distance);
    out.observe(rep.max_scalar_identity);
    out.observe(rep.max_a_inner);
    out.note = inst.origin + " " + orders(inst.m, inst.n) + " pairs=" +
               std::to_string(rep.pairs.size()) + " skipped_pairs=" +
               std::to_string(rep.skipped_pairs);
    return out;
  });
}

namespace {

struct BlockParts {
  CMatrix n, e, x;
};

/// Moves an identity-weight block instance to the weight B^2 by similarity.
BlockParts conjugate(const BlockParts& p, const CMatrix& b) {
  const CMatrix bi = b.inverse();
  return {bi * p.n * b, bi * p.e * b, bi * p.x * b};
}

CMatrix random_member_or_not(Rng& rng, Index d, bool member) {
  if (!member) return rand_matrix(d, rng);
  return rng.uniform() < 0.5 ? rand_unitary(d, rng) : rand_hermitian(d, rng);
}

/// Isometric N, E = NEX, N* E = E X (identity weight), in three shapes:
/// E = 0, E supported on a corner, E unitary.
BlockParts isometric_family(Rng& rng, int mode, bool x_member) {
  const Index p = rng.integer(1, 2);
  const Index q = rng.integer(1, 2);
  const Index d = p + q;
  if (mode == 0) {
    return {rand_unitary(d, rng), CMatrix::Zero(d, d), random_member_or_not(rng, d, x_member)};
  }
  if (mode == 1) {
    const CMatrix n1 = rand_unitary(p, rng);
    const CMatrix n2 = rand_unitary(q, rng);
    const CMatrix w = rand_unitary(p, rng);
    const CMatrix e = direct_sum(w, CMatrix::Zero(q, q));
    const CMatrix x = direct_sum(w.adjoint() * n1.adjoint() * w, random_member_or_not(rng, q, x_member));
    return {direct_sum(n1, n2), e, x};
  }
  const CMatrix n = rand_unitary(d, rng);
  const CMatrix w = rand_unitary(d, rng);
  return {n, w, w.adjoint() * n.adjoint() * w};
}

/// Symmetric N with NE = EX (identity weight).
BlockParts symmetric_family(Rng& rng, int mode, bool x_member, bool involutive) {
  const Index p = rng.integer(1, 2);
  const Index q = rng.integer(1, 2);
  const Index d = p + q;
  auto herm = [&](Index k) {
    return involutive ? lab::random_involution(k, rng) : rand_hermitian(k, rng);
  };
  if (mode == 0) {
    return {herm(d), CMatrix::Zero(d, d), random_member_or_not(rng, d, x_member)};
  }
  if (mode == 1) {
    const CMatrix n1 = herm(p);
    const CMatrix n2 = rand_hermitian(q, rng);
    const CMatrix w = rand_unitary(p, rng);
    const CMatrix e = direct_sum(w, CMatrix::Zero(q, q));
    const CMatrix x = direct_sum(w.adjoint() * n1 * w, random_member_or_not(rng, q, x_member));
    return {direct_sum(n1, n2), e, x};
  }
  const CMatrix n = herm(d);
  const CMatrix w = rand_unitary(d, rng);
  return {n, w, w.adjoint() * n * w};
}

TrialOutcome iff_outcome(double block_residual, double condition_residual) {
  TrialOutcome out;
  if (condition_residual <= kHypothesisTol) {
    out.observe(block_residual);
    out.note = "condition holds";
  } else if (condition_residual > lab::kNonMemberMargin) {
    out.observe(expect_non_member(block_residual));
    out.note = "condition fails";
  } else {
    return TrialOutcome::skip("condition residual in the ambiguous band");
  }
  return out;
}

TrialOutcome isometric_block_trial(Rng& rng) {
  const int mode = rng.integer(0, 2);
  const bool x_member = rng.uniform() < 0.5;
  const BlockParts base = isometric_family(rng, mode, x_member);
  const CMatrix b = psd_sqrt(rand_positive_definite(base.n.rows(), rng));
  const BlockParts p = conjugate(base, b);
  const CMatrix a = b * b;

  const double h1 = identity_gap(p.e, p.n * p.e * p.x, p.e.norm() + (p.n * p.e * p.x).norm());
  const double h2 = identity_gap(p.n.adjoint() * a * p.e, a * p.e * p.x,
                                 (p.n.adjoint() * a * p.e).norm() + (a * p.e * p.x).norm());
  const double h3 = isometry_bracket(WeightedOperator(a, p.n), 1).residual();
  if (std::max({h1, h2, h3}) > lab::kBlockHypothesisTol) {
    return TrialOutcome::skip("isometric block hypotheses fail");
  }
  const double xr = lab::omega_residual(WeightedOperator(a, p.x), 1, 1);
  const double br = lab::omega_residual(block_operator(a, p.n, p.e, p.x), 1, 1);
  TrialOutcome out = iff_outcome(br, xr);
  out.note = "isometric N, mode " + std::to_string(mode) + ", " + out.note;
  out.instance = {{"A", matrix_to_json(a)}, {"N", matrix_to_json(p.n)},
                  {"E", matrix_to_json(p.e)}, {"X", matrix_to_json(p.x)}};
  return out;
}

TrialOutcome symmetric_block_trial(Rng& rng) {
  const int mode = rng.integer(0, 2);
  const bool x_member = rng.uniform() < 0.5;
  const bool involutive = rng.uniform() < 0.5;
  const BlockParts base = symmetric_family(rng, mode, x_member, involutive);
  const CMatrix b = psd_sqrt(rand_positive_definite(base.n.rows(), rng));
  const BlockParts p = conjugate(base, b);
  const CMatrix a = b * b;

  const double h1 = symmetry_bracket(WeightedOperator(a, p.n), 1).residual();
  const double h2 = identity_gap(p.n * p.e, p.e * p.x, (p.n * p.e).norm() + (p.e * p.x).norm());
  if (std::max(h1, h2) > lab::kBlockHypothesisTol) {
    return TrialOutcome::skip("symmetric block hypotheses fail");
  }
  const double xr = lab::omega_residual(WeightedOperator(a, p.x), 1, 1);
  const CMatrix lhs = a * p.e;
  const CMatrix rhs = a * p.n * p.e * p.x;
  const double side = identity_gap(lhs, rhs, lhs.norm() + rhs.norm());
  const double br = lab::omega_residual(block_operator(a, p.n, p.e, p.x), 1, 1);
  TrialOutcome out = iff_outcome(br, std::max(xr, side));
  out.note = "symmetric N, mode " + std::to_string(mode) + ", " + out.note;
  out.instance = {{"A", matrix_to_json(a)}, {"N", matrix_to_json(p.n)},
                  {"E", matrix_to_json(p.e)}, {"X", matrix_to_json(p.x)}};
  return out;
}

/// Weight A1 (+) 0 so that N* A E = 0 can hold with E != 0.
TrialOutcome orthogonal_block_trial(Rng& rng) {
  const Index p = rng.integer(1, 2);
  const Index q = rng.integer(1, 2);
  const Index d = p + q;
  const CMatrix a1 = rand_positive_definite(p, rng);
  const auto nw = degenerate_member(similar_member(rand_unitary(p, rng), a1).op(), a1, q, rng);
  const CMatrix a = nw.weight();
  const CMatrix n = nw.op();
  CMatrix e = CMatrix::Zero(d, d);
  e.bottomRows(q) = rand_matrix(d, rng).bottomRows(q);
  CMatrix x;
  if (rng.uniform() < 0.5) {
    const CMatrix core = rng.uniform() < 0.5 ? rand_unitary(p, rng) : rand_hermitian(p, rng);
    x = degenerate_member(similar_member(core, a1).op(), a1, q, rng).op();
  } else {
    x = rand_matrix(d, rng);
  }

  const double h1 = isometry_bracket(WeightedOperator(a, n), 1).residual();
  const double h2 = (n.adjoint() * a * e).norm() / std::max(1.0, n.norm() * a.norm() * e.norm());
  if (std::max(h1, h2) > lab::kBlockHypothesisTol) {
    return TrialOutcome::skip("orthogonality hypotheses fail");
  }
  // Block membership is equivalent to X* C = C X with C = E* A E + I^1_A(X).
  const Bracket ix = isometry_bracket(WeightedOperator(a, x), 1);
  const CMatrix c = e.adjoint() * a * e + ix.value;
  const double cscale = (e.adjoint() * a * e).norm() + ix.scale;
  const double cond = identity_gap(x.adjoint() * c, c * x, 2.0 * x.norm() * cscale);
  const double br = lab::omega_residual(block_operator(a, n, e, x), 1, 1);
  TrialOutcome out = iff_outcome(br, cond);
  out.note = "N* A E = 0, " + out.note;
  out.instance = {{"A", matrix_to_json(a)}, {"N", matrix_to_json(n)},
                  {"E", matrix_to_json(e)}, {"X", matrix_to_json(x)}};
  return out;
}

/// N an A1-isometry with E* A1 N = 0: the first summand lies in the kernel of
/// I^1_A(T) for A = A1 (+) A2.
TrialOutcome kernel_block_trial(Rng& rng) {
  const Index p1 = rng.integer(1, 2);
  const Index k = rng.integer(0, 1);
  const Index p = p1 + k;
  const Index q = rng.integer(1, 3);
  const CMatrix a11 = rand_positive_definite(p1, rng);
  WeightedOperator nw = similar_member(rand_unitary(p1, rng), a11);
  if (k > 0) nw = degenerate_member(nw.op(), a11, k, rng);
  const CMatrix a1 = nw.weight();
  const CMatrix n = nw.op();
  CMatrix e = CMatrix::Zero(p, q);
  for (Index i = p1; i < p; ++i)
    for (Index j = 0; j < q; ++j) e(i, j) = rng.complex_gaussian();
  const CMatrix a2 = rand_psd(q, rng);
  const CMatrix x = rand_matrix(q, rng);

  const double h1 = isometry_bracket(WeightedOperator(a1, n), 1).residual();
  const double h2 = (e.adjoint() * a1 * n).norm() / std::max(1.0, e.norm() * a1.norm() * n.norm());
  if (std::max(h1, h2) > lab::kBlockHypothesisTol) {
    return TrialOutcome::skip("kernel hypotheses fail");
  }
  const WeightedOperator tw(direct_sum(a1, a2), block2x2(n, e, x));
  const Bracket i1 = isometry_bracket(tw, 1);
  TrialOutcome out;
  out.observe(identity_gap(i1.value.leftCols(p), CMatrix::Zero(p + q, p), i1.scale));
  out.note = "kernel of I^1 contains the first summand";
  out.instance = {{"A", matrix_to_json(tw.weight())}, {"T", matrix_to_json(tw.op())}};
  return out;
}

}  // namespace

VerificationReport check_block_triangular(const CheckOptions& o) {
  return lab::run_trials("block_triangular", o, false, [](Rng& rng, int t) {
    switch (t % 4) {
      case 0:
        return isometric_block_trial(rng);
      case 1:
        return symmetric_block_trial(rng);
      case 2:
        return orthogonal_block_trial(rng);
      default:
        return kernel_block_trial(rng);
    }
  });
}

}  // namespace isosym
