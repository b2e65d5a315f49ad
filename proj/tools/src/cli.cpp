#include "isosym/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "isosym/admissible.hpp"
#include "isosym/classify.hpp"
#include "isosym/gallery.hpp"
#include "isosym/lab.hpp"
#include "isosym/matrix_json.hpp"
#include "isosym/symbolic.hpp"

namespace isosym::cli {
namespace {

struct MatrixArgs {
  std::string a;
  std::string t;
};

std::uint64_t default_seed(std::uint64_t fallback) {
  const char* env = std::getenv("ISOSYM_SEED");
  if (env == nullptr || *env == '\0') return fallback;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument(std::string("ISOSYM_SEED is not an unsigned integer: ") + env);
  }
}

BracketKind parse_bracket_kind(const std::string& name, int m, int n) {
  if (name == "isometry") return BracketKind::isometry(m);
  if (name == "symmetry") return BracketKind::symmetry(n);
  if (name == "skew-symmetry" || name == "skew_symmetry" || name == "skew")
    return BracketKind::skew_symmetry(n);
  if (name == "omega") return BracketKind::omega(m, n);
  if (name == "lambda") return BracketKind::lambda(m, n);
  throw InvalidArgument("unknown bracket kind '" + name + "'");
}

ClassKind parse_class_kind(const std::string& name) {
  static const std::map<std::string, ClassKind> kinds = {
      {"isometry", ClassKind::Isometry},
      {"symmetry", ClassKind::Symmetry},
      {"skew-symmetry", ClassKind::SkewSymmetry},
      {"skew_symmetry", ClassKind::SkewSymmetry},
      {"isosym", ClassKind::Isosymmetry},
      {"isosymmetry", ClassKind::Isosymmetry},
      {"skew-isosym", ClassKind::SkewIsosymmetry},
      {"skew_isosym", ClassKind::SkewIsosymmetry},
  };
  const auto it = kinds.find(name);
  if (it == kinds.end()) throw InvalidArgument("unknown class kind '" + name + "'");
  return it->second;
}

WeightedOperator load(const MatrixArgs& args) {
  return WeightedOperator(read_matrix(args.a), read_matrix(args.t));
}

void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot write " + path);
  f << j.dump(2) << '\n';
}

void print_complex(std::ostream& out, Complex z) {
  out << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
}

// ---------------------------------------------------------------- commands

struct BracketCmd {
  MatrixArgs in;
  std::string kind = "omega";
  int m = 1;
  int n = 1;
  std::string out;

  int operator()(std::ostream& os) const {
    const auto w = load(in);
    const BracketKind k = parse_bracket_kind(kind, m, n);
    const Bracket b = bracket(w, k);
    os << "bracket " << to_string(k) << "\n"
       << "norm " << b.norm() << "\n"
       << "scale " << b.scale << "\n"
       << "residual " << b.residual() << "\n";
    if (out.empty()) {
      os << matrix_to_json(b.value).dump() << "\n";
    } else {
      write_matrix(out, b.value);
    }
    return kExitOk;
  }
};

struct CheckCmd {
  MatrixArgs in;
  std::string kind = "isosym";
  int m = 1;
  int n = 1;
  double rho = 1e-10;

  int operator()(std::ostream& os) const {
    const auto w = load(in);
    const Membership r = is_member(w, {parse_class_kind(kind), m, n, rho});
    os << "member " << (r.member ? "true" : "false") << "\n"
       << "residual " << r.residual << "\n"
       << "rho " << rho << "\n";
    return r.member ? kExitOk : kExitNegative;
  }
};

struct ProfileCmd {
  MatrixArgs in;
  int max_m = 6;
  int max_n = 6;
  double rho = 1e-10;

  int operator()(std::ostream& os) const {
    const auto w = load(in);
    const OrderProfile p = minimal_orders(w, max_m, max_n, rho);
    os << "m\\n";
    for (int n = 0; n <= p.max_n; ++n) os << ' ' << n % 10;
    os << "\n";
    for (int m = 0; m <= p.max_m; ++m) {
      os << std::setw(3) << m;
      for (int n = 0; n <= p.max_n; ++n) {
        os << ' ' << (p.member[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)] ? '#' : '.');
      }
      os << "\n";
    }
    os << "minimal";
    if (p.minimal.empty()) os << " none";
    for (const auto& [m, n] : p.minimal) os << " (" << m << "," << n << ")";
    os << "\n";
    for (const auto& warning : p.warnings) os << "warning " << warning << "\n";
    return kExitOk;
  }
};

struct ExpandCmd {
  std::string kind = "omega";
  int m = 1;
  int n = 1;
  bool pair = false;
  std::string out;

  int operator()(std::ostream& os) const {
    const BracketKind k = parse_bracket_kind(kind, m, n);
    nlohmann::json j;
    if (pair) {
      if (k.tag != BracketTag::Omega && k.tag != BracketTag::Lambda) {
        throw InvalidArgument("--pair needs --kind omega or lambda");
      }
      j = pair_table_to_json(pair_expand(m, n, k.tag == BracketTag::Lambda));
    } else {
      j = table_to_json(expand(k));
    }
    if (out.empty()) {
      os << j.dump() << "\n";
    } else {
      write_json(out, j);
      os << "wrote " << out << "\n";
    }
    return kExitOk;
  }
};

struct FindACmd {
  std::string t;
  int m = 1;
  int n = 1;
  int attempts = 200;
  std::optional<std::uint64_t> seed;
  std::string out;

  int operator()(std::ostream& os) const {
    const CMatrix op = read_matrix(t);
    const auto sol = solve_admissible(op, m, n, attempts, seed.value_or(default_seed(7)));
    if (!sol) {
      os << "NotFound\n";
      return kExitNegative;
    }
    os << "found\n"
       << "residual " << sol->residual << "\n"
       << "nullspace_dim " << sol->nullspace_dim << "\n"
       << "psd_margin " << sol->psd_margin << "\n"
       << "attempts_used " << sol->attempts_used << "\n";
    if (out.empty()) {
      os << matrix_to_json(sol->weight).dump() << "\n";
    } else {
      write_matrix(out, sol->weight);
    }
    return kExitOk;
  }
};

struct VerifyCmd {
  std::string theorem;
  bool all = false;
  int trials = 50;
  std::optional<std::uint64_t> seed;
  double tol = 0.0;
  std::string json;
  std::string dump_dir;

  int operator()(std::ostream& os) const {
    if (all == !theorem.empty()) throw InvalidArgument("give exactly one of --theorem and --all");
    if (trials < 1) throw InvalidArgument("--trials must be positive");
    CheckOptions o;
    o.trials = trials;
    o.seed = seed.value_or(default_seed(42));
    o.tolerance = tol;
    o.dump_dir = dump_dir;
    if (!dump_dir.empty()) std::filesystem::create_directories(dump_dir);

    std::vector<VerificationReport> reports;
    if (all) {
      reports = run_all(o);
    } else {
      reports.push_back(run_check(theorem, o));
    }
    bool failed = false;
    for (const auto& r : reports) {
      os << std::left << std::setw(24) << r.theorem << std::right << ' ' << to_string(r.verdict)
         << "  executed " << r.executed() << "/" << r.trials << "  max_residual "
         << r.max_residual << "  tol " << r.tolerance
         << (r.sampled_hypothesis ? "  sampled-hypothesis" : "") << "\n";
      failed = failed || r.verdict == Verdict::Fail;
    }
    if (!json.empty()) {
      nlohmann::json j;
      if (all) {
        j = nlohmann::json::array();
        for (const auto& r : reports) j.push_back(report_to_json(r));
      } else {
        j = report_to_json(reports.front());
      }
      write_json(json, j);
    }
    return failed ? kExitNegative : kExitOk;
  }
};

struct GalleryCmd {
  std::string name;
  std::string out;

  int operator()(std::ostream& os) const {
    std::vector<Fixture> fixtures;
    if (name.empty()) {
      fixtures = gallery();
    } else {
      fixtures.push_back(fixture(name));
    }
    if (!out.empty()) std::filesystem::create_directories(out);
    for (const auto& f : fixtures) {
      os << f.name << ": " << f.description << "\n";
      if (out.empty()) continue;
      const std::filesystem::path dir(out);
      write_matrix(dir / (f.name + "_A.json"), f.weight);
      write_matrix(dir / (f.name + "_T.json"), f.op);
    }
    return kExitOk;
  }
};

struct SpectrumCmd {
  MatrixArgs in;
  int m = 1;
  int n = 1;

  int operator()(std::ostream& os) const {
    const auto w = load(in);
    const SpectralReport r = spectral_report(w, m, n);
    const bool invertible =
        min_hermitian_eigenvalue(w.weight()) >= 1e-6 * w.weight().norm();
    os << "weight_invertible " << (invertible ? "true" : "false") << "\n";
    os << "eigenvalues (distance to unit circle or real axis, scalar identity)\n";
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
      os << "  [" << i << "] ";
      print_complex(os, r.eigenvalues[i]);
      os << "  " << r.distance[i] << "  " << r.scalar_identity[i] << "\n";
    }
    os << "A-orthogonality |<Ax_i|x_j>| / |A|_F\n";
    for (const auto& p : r.pairs) os << "  (" << p.i << "," << p.j << ") " << p.a_inner << "\n";
    os << "skipped_pairs " << r.skipped_pairs << "\n"
       << "max_distance " << r.max_distance << "\n"
       << "max_a_inner " << r.max_a_inner << "\n";
    return kExitOk;
  }
};

void add_matrix_args(CLI::App* sub, MatrixArgs& in) {
  sub->add_option("--A", in.a, "weight matrix JSON")->required();
  sub->add_option("--T", in.t, "operator matrix JSON")->required();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification tools for (A,(m,n))-isosymmetric operators", "isosym"};
  app.require_subcommand(1);

  BracketCmd bracket_cmd;
  auto* bracket_sub = app.add_subcommand("bracket", "evaluate a bracket transform");
  add_matrix_args(bracket_sub, bracket_cmd.in);
  bracket_sub->add_option("--kind", bracket_cmd.kind, "isometry|symmetry|skew-symmetry|omega|lambda");
  bracket_sub->add_option("--m", bracket_cmd.m);
  bracket_sub->add_option("--n", bracket_cmd.n);
  bracket_sub->add_option("--out", bracket_cmd.out, "write the bracket matrix here");

  CheckCmd check_cmd;
  auto* check_sub = app.add_subcommand("check", "membership test");
  add_matrix_args(check_sub, check_cmd.in);
  check_sub->add_option("--kind", check_cmd.kind,
                        "isometry|symmetry|skew-symmetry|isosym|skew-isosym");
  check_sub->add_option("--m", check_cmd.m);
  check_sub->add_option("--n", check_cmd.n);
  check_sub->add_option("--rho", check_cmd.rho, "relative residual threshold");

  ProfileCmd profile_cmd;
  auto* profile_sub = app.add_subcommand("profile", "membership grid and minimal orders");
  add_matrix_args(profile_sub, profile_cmd.in);
  profile_sub->add_option("--M", profile_cmd.max_m);
  profile_sub->add_option("--N", profile_cmd.max_n);
  profile_sub->add_option("--rho", profile_cmd.rho);

  ExpandCmd expand_cmd;
  auto* expand_sub = app.add_subcommand("expand", "exact coefficient table");
  expand_sub->add_option("--kind", expand_cmd.kind);
  expand_sub->add_option("--m", expand_cmd.m);
  expand_sub->add_option("--n", expand_cmd.n);
  expand_sub->add_flag("--pair", expand_cmd.pair, "expansion of T + S in two commuting letters");
  expand_sub->add_option("--out", expand_cmd.out);

  FindACmd find_cmd;
  auto* find_sub = app.add_subcommand("find-a", "search for an admissible PSD weight");
  find_sub->add_option("--T", find_cmd.t)->required();
  find_sub->add_option("--m", find_cmd.m);
  find_sub->add_option("--n", find_cmd.n);
  find_sub->add_option("--attempts", find_cmd.attempts);
  find_sub->add_option("--seed", find_cmd.seed, "default: ISOSYM_SEED or 7");
  find_sub->add_option("--out", find_cmd.out, "write the weight here");

  VerifyCmd verify_cmd;
  auto* verify_sub = app.add_subcommand("verify", "randomized theorem checks");
  verify_sub->add_option("--theorem", verify_cmd.theorem, "check name or alias");
  verify_sub->add_flag("--all", verify_cmd.all, "run every check");
  verify_sub->add_option("--trials", verify_cmd.trials);
  verify_sub->add_option("--seed", verify_cmd.seed, "default: ISOSYM_SEED or 42");
  verify_sub->add_option("--tol", verify_cmd.tol, "override the check tolerance");
  verify_sub->add_option("--json", verify_cmd.json, "write the report(s) here");
  verify_sub->add_option("--dump-dir", verify_cmd.dump_dir, "write failing instances here");

  GalleryCmd gallery_cmd;
  auto* gallery_sub = app.add_subcommand("gallery", "list or export fixtures");
  gallery_sub->add_option("--name", gallery_cmd.name);
  gallery_sub->add_option("--out", gallery_cmd.out, "directory for <name>_A.json, <name>_T.json");

  SpectrumCmd spectrum_cmd;
  auto* spectrum_sub = app.add_subcommand("spectrum", "eigenvalue localization report");
  add_matrix_args(spectrum_sub, spectrum_cmd.in);
  spectrum_sub->add_option("--m", spectrum_cmd.m);
  spectrum_sub->add_option("--n", spectrum_cmd.n);

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("isosym");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto precision = out.precision(17);
  try {
    int code = kExitUsage;
    if (*bracket_sub) code = bracket_cmd(out);
    else if (*check_sub) code = check_cmd(out);
    else if (*profile_sub) code = profile_cmd(out);
    else if (*expand_sub) code = expand_cmd(out);
    else if (*find_sub) code = find_cmd(out);
    else if (*verify_sub) code = verify_cmd(out);
    else if (*gallery_sub) code = gallery_cmd(out);
    else if (*spectrum_sub) code = spectrum_cmd(out);
    out.precision(precision);
    return code;
  } catch (const std::exception& e) {
    out.precision(precision);
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace isosym::cli
