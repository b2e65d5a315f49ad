#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "isosym/cli.hpp"
#include "isosym/matrix_json.hpp"

namespace fs = std::filesystem;
using isosym::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path fixtures_dir() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "isosym_cli_fixtures";
    fs::remove_all(d);
    REQUIRE(call({"gallery", "--out", d.string()}).code == 0);
    return d;
  }();
  return dir;
}

std::string file(const std::string& name) { return (fixtures_dir() / name).string(); }

}  // namespace

TEST_CASE("gallery export") {
  const Result r = call({"gallery"});
  CHECK(r.code == 0);
  CHECK(r.out.find("ex1_3x3") != std::string::npos);
  CHECK(fs::exists(file("ex1_3x3_A.json")));
  CHECK(fs::exists(file("k_block_T.json")));
  CHECK(call({"gallery", "--name", "nope"}).code == 2);
}

TEST_CASE("check exit codes") {
  const auto a = file("ex1_3x3_A.json"), t = file("ex1_3x3_T.json");
  CHECK(call({"check", "--A", a, "--T", t, "--m", "1", "--n", "1"}).code == 0);
  const Result no = call({"check", "--A", a, "--T", t, "--m", "1", "--n", "0"});
  CHECK(no.code == 1);
  CHECK(no.out.find("residual") != std::string::npos);
  CHECK(call({"check", "--A", a, "--T", t, "--kind", "bogus"}).code == 2);
  CHECK(call({"check", "--A", "/nonexistent.json", "--T", t}).code == 2);
  CHECK(call({"check", "--A", a}).code == 2);
}

TEST_CASE("expand output") {
  const Result r = call({"expand", "--m", "1", "--n", "1"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["D"] == 2);
  CHECK(j["coeffs"] == nlohmann::json::parse("[[0,1,0],[-1,0,-1],[0,1,0]]"));
  CHECK(call({"expand", "--m", "2", "--n", "2", "--pair"}).code == 0);
  CHECK(call({"expand", "--m", "30", "--n", "0"}).code == 2);
}

TEST_CASE("bracket, profile, spectrum") {
  const auto a = file("ex1_3x3_A.json"), t = file("ex1_3x3_T.json");
  const auto out = (fixtures_dir() / "omega.json").string();
  CHECK(call({"bracket", "--A", a, "--T", t, "--kind", "omega", "--out", out}).code == 0);
  CHECK(isosym::read_matrix(out).norm() == 0.0);
  const Result p = call({"profile", "--A", a, "--T", t, "--M", "2", "--N", "2"});
  CHECK(p.code == 0);
  CHECK(p.out.find("minimal (1,1)") != std::string::npos);
  const Result s = call({"spectrum", "--A", a, "--T", t});
  CHECK(s.code == 0);
  CHECK(s.out.find("weight_invertible") != std::string::npos);
}

TEST_CASE("find-a") {
  const Result r = call({"find-a", "--T", file("ex1_3x3_T.json")});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("found", 0) == 0);
  const auto out = (fixtures_dir() / "found_A.json").string();
  CHECK(call({"find-a", "--T", file("nilpotent_r2_T.json"), "--m", "2", "--n", "3", "--out", out})
            .code == 0);
  CHECK(isosym::psd_check(isosym::read_matrix(out)));
}

TEST_CASE("verify") {
  const Result r = call({"verify", "--theorem", "bibb", "--trials", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("nilpotent_perturbation") != std::string::npos);
  const auto json = (fixtures_dir() / "report.json").string();
  CHECK(call({"verify", "--theorem", "hierarchy", "--trials", "3", "--json", json}).code == 0);
  std::ifstream in(json);
  CHECK(nlohmann::json::parse(in)["verdict"] == "pass");
  CHECK(call({"verify", "--theorem", "hierarchy", "--trials", "3", "--tol", "1e-300"}).code == 1);
  CHECK(call({"verify"}).code == 2);
  CHECK(call({"verify", "--theorem", "unknown"}).code == 2);
  CHECK(call({"verify", "--all", "--theorem", "hierarchy"}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"--help"}).code == 0);
}
