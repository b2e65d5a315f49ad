#include "isosym/lab.hpp"

#include <filesystem>
#include <fstream>
#include <map>

#include "isosym/admissible.hpp"
#include "isosym/gallery.hpp"
#include "isosym/matrix_json.hpp"
#include "lab_internal.hpp"

namespace isosym {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Vacuous:
      return "vacuous";
  }
  return "unknown";
}

nlohmann::json report_to_json(const VerificationReport& r) {
  nlohmann::json log = nlohmann::json::array();
  for (const auto& t : r.log) {
    log.push_back({{"trial", t.index}, {"skipped", t.skipped}, {"residual", t.residual},
                   {"note", t.note}});
  }
  return {{"theorem", r.theorem},
          {"trials", r.trials},
          {"skipped", r.skipped},
          {"max_residual", r.max_residual},
          {"verdict", to_string(r.verdict)},
          {"seed", r.seed},
          {"tolerance", r.tolerance},
          {"sampled_hypothesis", r.sampled_hypothesis},
          {"log", log},
          {"failures", r.failures}};
}

namespace {

using CheckFn = VerificationReport (*)(const CheckOptions&);

struct CheckEntry {
  const char* name;
  CheckFn fn;
  double tolerance;
};

const std::vector<CheckEntry>& entries() {
  static const std::vector<CheckEntry> table = {
      {"hierarchy", check_hierarchy, 1e-8},
      {"translation", check_translation, 1e-8},
      {"positivity_transfer", check_positivity_transfer, 1e-8},
      {"inverse_powers", check_inverse_and_powers, 1e-8},
      {"weighted_sums", check_weighted_sums, 1e-8},
      {"exponential", check_exponential, 1e-8},
      {"order_reduction", check_order_reduction, 1e-8},
      {"order_reduction_sampled", check_order_reduction_sampled, 1e-8},
      {"nilpotent_perturbation", check_nilpotent_perturbation, 1e-8},
      {"spectral", check_spectral, 1e-6},
      {"block_triangular", check_block_triangular, 1e-8},
  };
  return table;
}

const std::map<std::string, std::string>& aliases() {
  static const std::map<std::string, std::string> table = {
      {"bibb", "nilpotent_perturbation"},
      {"inverse_and_powers", "inverse_powers"},
      {"positivity", "positivity_transfer"},
  };
  return table;
}

const CheckEntry& entry(const std::string& name) {
  const std::string canonical = resolve_check(name);
  for (const auto& e : entries()) {
    if (canonical == e.name) return e;
  }
  throw InvalidArgument("unknown check: " + name);
}

}  // namespace

std::vector<std::string> check_names() {
  std::vector<std::string> out;
  for (const auto& e : entries()) out.emplace_back(e.name);
  return out;
}

std::string resolve_check(const std::string& name) {
  for (const auto& e : entries()) {
    if (name == e.name) return name;
  }
  const auto it = aliases().find(name);
  if (it != aliases().end()) return it->second;
  throw InvalidArgument("unknown check: " + name);
}

double default_tolerance(const std::string& name) { return entry(name).tolerance; }

VerificationReport run_check(const std::string& name, const CheckOptions& options) {
  return entry(name).fn(options);
}

std::vector<VerificationReport> run_all(const CheckOptions& options) {
  std::vector<VerificationReport> out;
  for (const auto& e : entries()) out.push_back(e.fn(options));
  return out;
}

namespace lab {

VerificationReport run_trials(const std::string& name, const CheckOptions& options,
                              bool sampled_hypothesis, const TrialFn& fn) {
  if (options.trials < 1) throw InvalidArgument("trials must be positive");
  VerificationReport report;
  report.theorem = name;
  report.trials = options.trials;
  report.seed = options.seed;
  report.tolerance = options.tolerance > 0.0 ? options.tolerance : default_tolerance(name);
  report.sampled_hypothesis = sampled_hypothesis;

  bool failed = false;
  for (int t = 0; t < options.trials; ++t) {
    Rng rng = Rng::stream(options.seed, static_cast<std::uint64_t>(t));
    TrialOutcome out;
    try {
      out = fn(rng, t);
    } catch (const SingularWeight& e) {
      out = TrialOutcome::skip(std::string("singular weight: ") + e.what());
    } catch (const InvalidWeight& e) {
      out = TrialOutcome::skip(std::string("invalid weight: ") + e.what());
    }
    TrialRecord rec{t, out.skipped, out.residual, out.note};
    if (out.skipped) {
      ++report.skipped;
    } else {
      report.max_residual = std::max(report.max_residual, out.residual);
      if (!(out.residual <= report.tolerance)) {
        failed = true;
        rec.note = "hard fail" + (out.note.empty() ? "" : ": " + out.note);
        nlohmann::json dump = {{"check", name},
                               {"trial", t},
                               {"seed", options.seed},
                               {"residual", out.residual},
                               {"instance", out.instance}};
        if (!options.dump_dir.empty()) {
          std::filesystem::create_directories(options.dump_dir);
          std::ofstream f(std::filesystem::path(options.dump_dir) /
                          (name + "_trial" + std::to_string(t) + ".json"));
          f << dump.dump(2) << "\n";
        }
        report.failures.push_back(std::move(dump));
      }
    }
    report.log.push_back(std::move(rec));
  }

  if (report.skipped == report.trials) {
    report.verdict = Verdict::Vacuous;
  } else {
    report.verdict = failed ? Verdict::Fail : Verdict::Pass;
  }
  return report;
}

nlohmann::json Instance::to_json() const {
  return {{"origin", origin}, {"m", m}, {"n", n}, {"A", matrix_to_json(weight)},
          {"T", matrix_to_json(op)}};
}

double omega_residual(const WeightedOperator& w, int m, int n) {
  return is_member(w, {ClassKind::Isosymmetry, m, n, 1.0}).residual;
}

double lambda_residual(const WeightedOperator& w, int m, int n) {
  return is_member(w, {ClassKind::SkewIsosymmetry, m, n, 1.0}).residual;
}

double class_residual(const WeightedOperator& w, ClassKind kind, int m, int n) {
  return is_member(w, {kind, m, n, 1.0}).residual;
}

CMatrix random_involution(Index dim, Rng& rng) {
  const CMatrix w = rand_unitary(dim, rng);
  CVector signs(dim);
  for (Index i = 0; i < dim; ++i) signs(i) = rng.uniform() < 0.5 ? -1.0 : 1.0;
  return w * signs.asDiagonal() * w.adjoint();
}

std::pair<CMatrix, CMatrix> commuting_hermitians(Index dim, Rng& rng) {
  const CMatrix w = rand_unitary(dim, rng);
  CVector d1(dim), d2(dim);
  for (Index i = 0; i < dim; ++i) {
    d1(i) = rng.uniform(-1.5, 1.5);
    d2(i) = rng.uniform(-1.5, 1.5);
  }
  return {w * d1.asDiagonal() * w.adjoint(), w * d2.asDiagonal() * w.adjoint()};
}

namespace {

MemberFamily pick_family(Rng& rng, bool diagonalizable) {
  if (diagonalizable) return static_cast<MemberFamily>(rng.integer(0, 2));
  return static_cast<MemberFamily>(rng.integer(0, 4));
}

Index pick_dim(Rng& rng, MemberFamily f) {
  if (f == MemberFamily::HermitianPlusNilpotent || f == MemberFamily::UnitaryPlusNilpotent) {
    return 2 * rng.integer(1, 3);
  }
  return rng.integer(2, 6);
}

}  // namespace

Instance similar_instance(Rng& rng, MemberFamily family, Index dim) {
  const MemberCore core = member_core(family, dim, rng);
  const CMatrix weight = rand_positive_definite(core.op.rows(), rng);
  const auto w = similar_member(core.op, weight);
  return {w.weight(), w.op(), core.m, core.n, "similar"};
}

Instance involution_plus_nilpotent(Rng& rng, Index half, int r) {
  const auto pair = doubly_commuting_pair(random_involution(half, rng), jordan_nilpotent(r, r));
  const CMatrix core = pair.t + pair.q;
  const CMatrix weight = rand_positive_definite(core.rows(), rng);
  const auto w = similar_member(core, weight);
  return {w.weight(), w.op(), 1, r == 2 ? 1 : 3, "involution_plus_nilpotent"};
}

Instance member_instance(Rng& rng, int trial, bool diagonalizable) {
  const int source = trial % 6;
  switch (source) {
    case 0:
    case 1: {
      const MemberFamily f = pick_family(rng, diagonalizable);
      return similar_instance(rng, f, pick_dim(rng, f));
    }
    case 2: {
      if (diagonalizable) return involution_plus_nilpotent(rng, rng.integer(1, 3), 2);
      const MemberFamily f = pick_family(rng, false);
      const MemberCore core = member_core(f, pick_dim(rng, f), rng);
      const CMatrix w1 = rand_positive_definite(core.op.rows(), rng);
      const auto inner = similar_member(core.op, w1);
      const auto w = degenerate_member(inner.op(), w1, rng.integer(1, 2), rng);
      return {w.weight(), w.op(), core.m, core.n, "degenerate"};
    }
    case 3: {
      static const char* names[] = {"ex1_3x3", "ex1_2x2", "identity", "projection"};
      static const std::pair<int, int> orders[] = {{1, 1}, {0, 1}, {1, 0}, {0, 1}};
      const int k = rng.integer(0, diagonalizable ? 1 : 3);
      const Fixture fx = fixture(names[k]);
      return {fx.weight, fx.op, orders[k].first, orders[k].second, fx.name};
    }
    case 4: {
      const MemberFamily f = pick_family(rng, true);
      const Instance base = similar_instance(rng, f, rng.integer(2, 4));
      const auto sol = solve_admissible(base.op, base.m, base.n, 10, rng.next());
      if (!sol) return base;
      return {sol->weight, base.op, base.m, base.n, "solver"};
    }
    default: {
      const Index half = rng.integer(1, 3);
      const int r = diagonalizable ? 2 : rng.integer(2, 3);
      return involution_plus_nilpotent(rng, half, r);
    }
  }
}

Instance symmetric_instance(Rng& rng, int trial) {
  switch (trial % 5) {
    case 0:
      return similar_instance(rng, MemberFamily::Hermitian, rng.integer(2, 6));
    case 1:
      return similar_instance(rng, MemberFamily::HermitianPlusNilpotent, 2 * rng.integer(1, 3));
    case 2: {
      const Fixture fx = fixture("ex1_2x2");
      return {fx.weight, fx.op, 0, 1, fx.name};
    }
    case 3: {
      const Index d = rng.integer(2, 4);
      const CMatrix w1 = rand_positive_definite(d, rng);
      const auto inner = similar_member(rand_hermitian(d, rng), w1);
      const auto w = degenerate_member(inner.op(), w1, rng.integer(1, 2), rng);
      return {w.weight(), w.op(), 0, 1, "degenerate"};
    }
    default: {
      Instance inst = involution_plus_nilpotent(rng, rng.integer(1, 2), 2);
      inst.m = 0;
      inst.n = 3;
      return inst;
    }
  }
}

}  // namespace lab
}  // namespace isosym
