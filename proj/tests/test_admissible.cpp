#include <doctest.h>

#include "isosym/admissible.hpp"
#include "isosym/classify.hpp"
#include "isosym/gallery.hpp"
#include "isosym/generators.hpp"
#include "oracles.hpp"

using namespace isosym;

namespace {

/// Applies the assembled real map to a Hermitian H and compares with Omega.
CMatrix apply_map(const HermitianMap& map, const CMatrix& h) {
  const Eigen::VectorXd image = map.matrix * hermitian_coordinates(h);
  const Index d = map.dim;
  CMatrix out(d, d);
  for (Index c = 0; c < d; ++c)
    for (Index r = 0; r < d; ++r) {
      const Index k = c * d + r;
      out(r, c) = Complex(image(k), image(d * d + k));
    }
  return out;
}

bool in_span(const CMatrix& target, const std::vector<CMatrix>& basis) {
  CMatrix rest = target;
  for (const auto& b : basis) rest -= (b.adjoint() * target).trace().real() * b;
  return rest.norm() <= 1e-9 * target.norm();
}

}  // namespace

TEST_CASE("constraint map reproduces Omega as a function of A") {
  Rng rng(1);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix t = rand_matrix(3, rng);
    const int m = trial % 3, n = (trial + 1) % 3;
    const HermitianMap map = constraint_map(t, m, n);
    CHECK(map.matrix.cols() == 9);
    const CMatrix h = rand_hermitian(3, rng);
    CHECK((apply_map(map, h) - oracle::bracket(h, t, m, n)).norm() < 1e-11 * (1.0 + map.matrix.norm()));
  }
}

TEST_CASE("constraint map examples") {
  CHECK(constraint_map(identity(3), 1, 1).matrix.norm() < 1e-14);
  CHECK(admissible_basis(identity(3), 1, 1).size() == 9);

  // T = diag(2, 1/2), (1,0): T*AT = A forces A11 = A22 = 0, A12 free.
  CMatrix t = identity(2);
  t(0, 0) = 2.0;
  t(1, 1) = 0.5;
  const auto basis = admissible_basis(t, 1, 0);
  CHECK(basis.size() == 2);
  for (const auto& b : basis) {
    CHECK(std::abs(b(0, 0)) < 1e-12);
    CHECK(std::abs(b(1, 1)) < 1e-12);
  }

  const Fixture f = fixture("ex1_3x3");
  CHECK(in_span(f.weight, admissible_basis(f.op, 1, 1)));
}

TEST_CASE("solve_admissible") {
  Rng rng(2);
  const auto id = solve_admissible(identity(3), 1, 1, 10, 1);
  REQUIRE(id.has_value());
  CHECK(psd_check(id->weight));

  const Fixture f = fixture("ex1_3x3");
  const auto sol = solve_admissible(f.op, 1, 1, 200, 7);
  REQUIRE(sol.has_value());
  CHECK(sol->residual <= 1e-9);
  CHECK(sol->psd_margin >= -1e-10);
  CHECK(std::abs(sol->weight.norm() - 1.0) < 1e-12);
  CHECK(certify(f.op, sol->weight, 1, 1).max_residual <= 1e-9);
  CHECK(certify(f.op, f.weight, 1, 1).max_residual <= 1e-14);

  const auto nil = solve_admissible(jordan_nilpotent(2, 2), 2, 3, 10, 3);
  REQUIRE(nil.has_value());
  CHECK(nil->nullspace_dim == 4);

  CHECK_THROWS_AS(solve_admissible(identity(17), 1, 1, 1, 1), InvalidArgument);
}

TEST_CASE("returned weights are fixed points of the repair step") {
  Rng rng(3);
  for (int trial = 0; trial < 6; ++trial) {
    const auto core = member_core(static_cast<MemberFamily>(trial % 3), 3, rng);
    const CMatrix t = similar_member(core.op, rand_positive_definite(core.op.rows(), rng)).op();
    const auto sol = solve_admissible(t, core.m, core.n, 50, trial);
    REQUIRE(sol.has_value());
    CHECK(certify(t, sol->weight, core.m, core.n).max_residual <= 1e-9);
    const auto basis = admissible_basis(t, core.m, core.n);
    CHECK((repair_step(sol->weight, basis) - sol->weight).norm() <= 1e-10);
  }
}

TEST_CASE("certify") {
  const Fixture f = fixture("ex1_2x2");
  CHECK(certify(f.op, f.weight, 1, 1).max_residual <= 1e-14);

  Rng rng(4);
  const Fixture g = fixture("ex1_3x3");
  CMatrix noise = rand_psd(3, rng);
  noise *= 1e-3 / noise.norm();
  const Certificate c = certify(g.op, g.weight + noise, 1, 1);
  // Omega is linear in A, so the residual is |Omega_noise| / scale.
  const CMatrix direct = oracle::bracket(noise, g.op, 1, 1);
  const double scale = oracle::bracket_scale(g.weight + noise, g.op, 1, 1);
  CHECK(c.max_residual == doctest::Approx(direct.norm() / scale).epsilon(0.5));
  CHECK(c.max_residual > 1e-5);

  CHECK_THROWS_AS(certify(g.op, CMatrix::Zero(3, 3), 1, 1), InvalidWeight);

  // Linearity on a cone of admissible weights.
  const auto basis_sol = solve_admissible(g.op, 1, 1, 50, 11);
  REQUIRE(basis_sol.has_value());
  const double r1 = certify(g.op, g.weight, 1, 1).max_residual;
  const double r2 = basis_sol->residual;
  const Certificate sum = certify(g.op, 0.3 * g.weight + 2.0 * basis_sol->weight, 1, 1);
  CHECK(sum.max_residual <= 0.3 * r1 + 2.0 * r2 + 1e-12);
}
