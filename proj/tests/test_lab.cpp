#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "isosym/errors.hpp"
#include "isosym/gallery.hpp"
#include "isosym/lab.hpp"
#include "lab_internal.hpp"

using namespace isosym;

namespace {

void check_invariants(const VerificationReport& r) {
  CHECK(r.log.size() == static_cast<std::size_t>(r.trials));
  int skipped = 0;
  double max_res = 0.0;
  bool any_fail = false;
  for (const auto& t : r.log) {
    if (t.skipped) {
      ++skipped;
      continue;
    }
    max_res = std::max(max_res, t.residual);
    any_fail = any_fail || !(t.residual <= r.tolerance);
  }
  CHECK(skipped == r.skipped);
  CHECK(max_res == r.max_residual);
  CHECK(r.failures.size() == static_cast<std::size_t>(std::count_if(
                                 r.log.begin(), r.log.end(), [&](const TrialRecord& t) {
                                   return !t.skipped && !(t.residual <= r.tolerance);
                                 })));
  if (r.skipped == r.trials) {
    CHECK(r.verdict == Verdict::Vacuous);
  } else {
    CHECK(r.verdict == (any_fail ? Verdict::Fail : Verdict::Pass));
  }
}

}  // namespace

TEST_CASE("check registry") {
  const auto names = check_names();
  CHECK(names.size() == 11);
  CHECK(names.front() == "hierarchy");
  for (const auto& n : names) {
    CHECK(resolve_check(n) == n);
    CHECK(default_tolerance(n) > 0.0);
  }
  CHECK(resolve_check("bibb") == "nilpotent_perturbation");
  CHECK(resolve_check("positivity") == "positivity_transfer");
  CHECK(default_tolerance("spectral") == 1e-6);
  CHECK_THROWS_AS(resolve_check("no_such_check"), InvalidArgument);
  CHECK_THROWS_AS(run_check("hierarchy", CheckOptions{0, 1, 0.0, ""}), InvalidArgument);
}

TEST_CASE("every check passes with reproducible reports") {
  CheckOptions o;
  o.trials = 12;
  o.seed = 5;
  for (const auto& name : check_names()) {
    CAPTURE(name);
    const VerificationReport a = run_check(name, o);
    const VerificationReport b = run_check(name, o);
    check_invariants(a);
    CHECK(a.verdict == Verdict::Pass);
    CHECK(a.theorem == name);
    CHECK(a.seed == 5);
    CHECK(report_to_json(a) == report_to_json(b));
    CHECK(a.sampled_hypothesis == (name == "order_reduction_sampled"));
  }
}

TEST_CASE("seeds change the instances") {
  CheckOptions o;
  o.trials = 5;
  o.seed = 1;
  const auto a = run_check("hierarchy", o);
  o.seed = 2;
  const auto b = run_check("hierarchy", o);
  bool differ = false;
  for (int i = 0; i < 5; ++i) differ = differ || a.log[i].residual != b.log[i].residual;
  CHECK(differ);
}

TEST_CASE("tiny tolerance records and dumps hard failures") {
  const auto dir = std::filesystem::temp_directory_path() / "isosym_test_dump";
  std::filesystem::remove_all(dir);
  CheckOptions o;
  o.trials = 6;
  o.seed = 3;
  o.tolerance = 1e-300;
  o.dump_dir = dir.string();
  const auto r = run_check("hierarchy", o);
  check_invariants(r);
  REQUIRE(r.verdict == Verdict::Fail);
  REQUIRE(!r.failures.empty());
  int files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    ++files;
    std::ifstream in(entry.path());
    const auto j = nlohmann::json::parse(in);
    CHECK(j["check"] == "hierarchy");
    CHECK(j["instance"].contains("A"));
    CHECK(j["instance"].contains("T"));
  }
  CHECK(files == static_cast<int>(r.failures.size()));
  std::filesystem::remove_all(dir);
}

TEST_CASE("verdict semantics of the trial runner") {
  CheckOptions o;
  o.trials = 4;
  const auto all_skip = lab::run_trials("hierarchy", o, false, [](Rng&, int) {
    return lab::TrialOutcome::skip("hypothesis not met");
  });
  CHECK(all_skip.verdict == Verdict::Vacuous);
  CHECK(all_skip.executed() == 0);

  const auto singular = lab::run_trials("hierarchy", o, false, [](Rng&, int t) -> lab::TrialOutcome {
    if (t % 2) throw SingularWeight("weight");
    return {false, 1e-12, "", {}};
  });
  CHECK(singular.verdict == Verdict::Pass);
  CHECK(singular.skipped == 2);

  const auto one_bad = lab::run_trials("hierarchy", o, false, [](Rng&, int t) -> lab::TrialOutcome {
    return {false, t == 2 ? 1.0 : 0.0, "", {}};
  });
  CHECK(one_bad.verdict == Verdict::Fail);
  CHECK(one_bad.failures.size() == 1);
  CHECK(one_bad.log[2].note.rfind("hard fail", 0) == 0);

  const auto nan = lab::run_trials("hierarchy", o, false, [](Rng&, int) -> lab::TrialOutcome {
    return {false, std::nan(""), "", {}};
  });
  CHECK(nan.verdict == Verdict::Fail);
}

TEST_CASE("spectral report on a known member") {
  // Hermitian operator for the identity weight: real spectrum, orthogonal
  // eigenvectors.
  CMatrix h = identity(3);
  h(0, 0) = 2.0;
  h(1, 1) = -1.0;
  h(0, 1) = h(1, 0) = 0.5;
  const auto r = spectral_report(WeightedOperator(identity(3), h), 0, 1);
  CHECK(r.eigenvalues.size() == 3);
  CHECK(r.max_distance < 1e-12);
  CHECK(r.max_scalar_identity < 1e-12);
  CHECK(r.max_a_inner < 1e-12);
  // Ordered pairs i != j, none degenerate for a simple real spectrum.
  CHECK(r.pairs.size() == 6);
  CHECK(r.skipped_pairs == 0);

  const Fixture f = fixture("ex1_3x3");
  const auto g = spectral_report(f.weighted(), 1, 1);
  CHECK(g.max_scalar_identity < 1e-12);
}
