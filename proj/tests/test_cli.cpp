#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dlv/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = dlv::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("dlv_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("verify a caption instance") {
  const auto r = cli({"verify", "CH12_TW", "--a", "25", "--e", "2"});
  CHECK(r.code == dlv::kExitOk);
  CHECK(contains(r.out, "alpha=11/2"));
  CHECK(contains(r.out, "check=residual:CH12_TW status=PASS"));
}

TEST_CASE("verify with --param") {
  const auto r = cli({"verify", "CH12_TW", "--param", "a=25", "--param", "e=2"});
  CHECK(r.code == dlv::kExitOk);
  CHECK(contains(r.out, "alpha=11/2"));
}

TEST_CASE("verify --all covers the catalog") {
  const auto r = cli({"verify", "--all"});
  CHECK(r.code == dlv::kExitOk);
  CHECK(contains(r.out, "17 entries"));
  CHECK(contains(r.out, "0 failed"));
  CHECK(contains(r.out, "check=coverage:catalog status=PASS"));
}

TEST_CASE("verify failures exit 1") {
  const auto r = cli({"verify", "FISHER_FRONT", "--tol", "1e-30"});
  CHECK(r.code == dlv::kExitVerifyFailed);
  CHECK(contains(r.out, "status=FAIL"));
}

TEST_CASE("usage errors exit 2") {
  CHECK(cli({"verify", "BOGUS"}).code == dlv::kExitUsage);
  CHECK(cli({}).code == dlv::kExitUsage);
  CHECK(cli({"frobnicate"}).code == dlv::kExitUsage);
  CHECK(cli({"verify", "CH12_TW", "--nonsense", "1"}).code == dlv::kExitUsage);
  CHECK(cli({"verify"}).code == dlv::kExitUsage);
  CHECK(cli({"figure", "9-9"}).code == dlv::kExitUsage);
  CHECK(cli({"tanh", "CD11_TRIG"}).code == dlv::kExitUsage);
  CHECK(cli({"reduce", "HK_SIN"}).code == dlv::kExitUsage);
  CHECK(cli({"simulate", "--preset", "nope"}).code == dlv::kExitUsage);
  CHECK(cli({"simulate", "--solution", "FISHER_FRONT", "--scheme", "euler"}).code == dlv::kExitUsage);
  const auto r = cli({"show", "PREDPREY_FRONT", "--a1", "0.2", "--a2", "1"});
  CHECK(r.code == dlv::kExitUsage);
  CHECK(contains(r.err, "restriction violated"));
}

TEST_CASE("explicit step above the limit exits 2 with a suggestion") {
  const auto r = cli({"simulate", "--solution", "FISHER_FRONT", "--dt", "1", "--T", "0.1"});
  CHECK(r.code == dlv::kExitUsage);
  CHECK(contains(r.err, "dt <="));
}

TEST_CASE("missing spec file exits 2") {
  CHECK(cli({"simulate", "--model", "/nonexistent/spec.json"}).code == dlv::kExitUsage);
  CHECK(cli({"steady", "--model", "/nonexistent/model.json"}).code == dlv::kExitUsage);
}

TEST_CASE("blow-up exits 3 and keeps the partial trajectory") {
  const fs::path dir = scratch("blowup");
  fs::create_directories(dir);
  {
    std::ofstream os(dir / "spec.json");
    os << R"({"model": {"name": "explosive", "m": 2, "lambda": [1, 1], "a": [0, 0], "b": [[1, 0], [0, 1]]},
             "initial": [1, 1]})";
  }
  const auto r = cli({"simulate", "--model", (dir / "spec.json").string(), "--grid", "0,1,11", "--T", "2",
                      "--dt", "0.001", "--out", (dir / "run").string()});
  CHECK(r.code == dlv::kExitRuntime);
  CHECK(contains(r.out, "partial trajectory"));
  CHECK(fs::exists(dir / "run" / "snapshots.csv"));
  fs::remove_all(dir);
}

TEST_CASE("model spec without blow-up reports ranges") {
  const fs::path dir = scratch("logistic");
  fs::create_directories(dir);
  {
    std::ofstream os(dir / "spec.json");
    os << R"({"model": {"lambda": [1, 1], "a": [1, 1], "b": [[-1, 0], [0, -1]]}, "initial": [0.5, 0.5],
             "perturbation": 0.1})";
  }
  const auto r = cli({"simulate", "--model", (dir / "spec.json").string(), "--grid", "0,1,21", "--T", "0.5"});
  CHECK(r.code == dlv::kExitOk);
  CHECK(contains(r.out, "u1 range"));
  fs::remove_all(dir);
}

TEST_CASE("I/O failures exit 3") {
  const fs::path dir = scratch("io");
  fs::create_directories(dir);
  { std::ofstream(dir / "blocker") << "x"; }
  CHECK(cli({"figure", "4-1", "--out", (dir / "blocker").string()}).code == dlv::kExitRuntime);
  CHECK(cli({"verify", "CH12_TW", "--out", (dir / "blocker" / "sub").string()}).code == dlv::kExitRuntime);
  fs::remove_all(dir);
}

TEST_CASE("figure 4-1 samples the closed form and is reproducible") {
  const fs::path d1 = scratch("fig1"), d2 = scratch("fig2");
  CHECK(cli({"figure", "4-1", "--out", d1.string()}).code == dlv::kExitOk);
  CHECK(cli({"figure", "4-1", "--out", d2.string()}).code == dlv::kExitOk);
  const std::string a = slurp(d1 / "fig_4-1.csv"), b = slurp(d2 / "fig_4-1.csv");
  CHECK(!a.empty());
  CHECK(a == b);
  CHECK(a.rfind("t,x,u1,u2,u3\n", 0) == 0);
  CHECK(contains(a, "\n0,0,12.5,6.25,4\n"));
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST_CASE("figure --all writes every preset") {
  const fs::path d = scratch("figall");
  const auto r = cli({"figure", "--all", "--out", d.string()});
  CHECK(r.code == dlv::kExitOk);
  for (const char* f : {"4-1", "6-1", "6-2", "7-1", "7-2"}) CHECK(fs::exists(d / (std::string("fig_") + f + ".csv")));
  CHECK(contains(r.out, "fig 7-1 CD13_3COMP"));
  fs::remove_all(d);
}

TEST_CASE("list and show") {
  const auto l = cli({"list"});
  CHECK(l.code == dlv::kExitOk);
  CHECK(contains(l.out, "CPP_FRONT m=3"));
  const auto s = cli({"show", "CPP_FRONT"});
  CHECK(s.code == dlv::kExitOk);
  CHECK(contains(s.out, "lambda1=5/2"));
  CHECK(contains(s.out, "lambda2=13/6"));
}

TEST_CASE("tanh, reduce and steady subcommands") {
  const auto t = cli({"tanh", "PREDPREY_FRONT", "--dump"});
  CHECK(t.code == dlv::kExitOk);
  CHECK(contains(t.out, "u1 T^0:"));
  CHECK(contains(t.out, "status=converged"));
  CHECK(contains(t.out, "PASS"));

  const auto r = cli({"reduce", "CD11_TRIG"});
  CHECK(r.code == dlv::kExitOk);
  CHECK(contains(r.out, "lift_difference"));
  CHECK(contains(r.out, "PASS"));

  const auto st = cli({"steady", "CD21_CASE1", "--b", "3/2", "--c", "3"});
  CHECK(st.code == dlv::kExitOk);
  CHECK(contains(st.out, "steady (2, 0)"));
  CHECK(contains(st.out, "steady (0, 0.5)"));
}

TEST_CASE("simulation presets") {
  const auto e = cli({"simulate", "--preset", "example1", "--T", "0.1"});
  CHECK(e.code == dlv::kExitOk);
  CHECK(contains(e.out, "asymptote (a1/b, 0) = (6, 0)"));

  const auto f = cli({"simulate", "--preset", "front", "--T", "0.2", "--grid", "-40,40,401"});
  CHECK(f.code == dlv::kExitOk);
  const auto pos = f.out.find("Linf ");
  REQUIRE(pos != std::string::npos);
  CHECK(std::stod(f.out.substr(pos + 5)) <= 1e-4);
}

TEST_CASE("simulate writes snapshots and a manifest") {
  const fs::path d = scratch("sim");
  const auto r = cli({"simulate", "--solution", "CD11_TRIG", "--grid", "0,4,41", "--T", "0.05", "--stride", "10",
                      "--out", d.string()});
  CHECK(r.code == dlv::kExitOk);
  CHECK(contains(r.out, "Linf"));
  CHECK(fs::exists(d / "snapshots.csv"));
  CHECK(contains(slurp(d / "manifest.json"), "\"scheme\": \"rk4\""));
  const std::string first = slurp(d / "snapshots.csv");
  CHECK(cli({"simulate", "--solution", "CD11_TRIG", "--grid", "0,4,41", "--T", "0.05", "--stride", "10", "--out",
             d.string()})
            .code == dlv::kExitOk);
  CHECK(slurp(d / "snapshots.csv") == first);
  fs::remove_all(d);
}
