#include "boxlab/commands.hpp"

#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace boxlab;

namespace {

const std::string kData = std::string(BOXLAB_SOURCE_DIR) + "/tests/data/";

struct Run {
  int code = -1;
  std::string out;
};

// Runs the installed binary, capturing stdout; stderr goes to a scratch file.
Run run_cli(const std::string& args) {
  const std::string cmd = std::string(BOXLAB_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  while (std::fgets(buf.data(), buf.size(), p)) r.out += buf.data();
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Json parse(const Run& r) {
  INFO(r.out);
  return Json::parse(r.out);
}

}  // namespace

TEST_CASE("analyze the two named boxes") {
  const Run e = run_cli("analyze " + kData + "example2.json --dimA 2");
  REQUIRE(e.code == 0);
  const Json je = parse(e);
  CHECK(je["classification"] == "super-unsteerable:min-dim-3");
  CHECK(je["min_dim_lhvlhs"] == 3);
  CHECK(je["bell_local"] == true);
  CHECK(je["unsteerable_mub"] == true);
  CHECK(je["chsh_max"] == "1");

  const Run b = run_cli("analyze " + kData + "bb84_half.json --dimA 2");
  REQUIRE(b.code == 0);
  const Json jb = parse(b);
  CHECK(jb["classification"] == "super-unsteerable:min-dim-4");
  CHECK(jb["min_dim_lhvlhs"] == 4);
  CHECK(jb["superlocal"] == true);

  const Run s = run_cli("analyze " + kData + "bb84_nine_tenths.json");
  REQUIRE(s.code == 0);
  const Json js = parse(s);
  CHECK(js["classification"] == "steerable");
  CHECK(js["min_dim_lhvlhs"].is_null());
  CHECK(js["dimA"] == 2);
  CHECK(js["steering_value"].get<double>() == doctest::Approx(2 * std::sqrt(2.0) * 0.9).epsilon(1e-11));
}

TEST_CASE("analyze named constructors and state files") {
  const Run w = run_cli("analyze werner:V=1/2");
  REQUIRE(w.code == 0);
  CHECK(parse(w)["classification"] == "super-unsteerable:min-dim-4");
  const Run er = run_cli("analyze erasure:V=1/2");
  REQUIRE(er.code == 0);
  const Json je = parse(er);
  CHECK(je["dimA"] == 3);
  CHECK(je["super_unsteerable"]["3"] == true);
  const Run st = run_cli("analyze " + kData + "werner_half_state.json");
  REQUIRE(st.code == 0);
  CHECK(parse(st)["box"] == parse(run_cli("analyze bb84:V=1/2"))["box"]);
}

TEST_CASE("mindim") {
  const Run n = run_cli("mindim " + kData + "noise.json --model lhv");
  REQUIRE(n.code == 0);
  CHECK(parse(n)["min_dim"] == 1);
  const Run n2 = run_cli("mindim " + kData + "noise.json --model lhvlhs");
  REQUIRE(n2.code == 0);
  CHECK(parse(n2)["min_dim"] == 1);
  const Run e = run_cli("mindim " + kData + "example2.json --model lhvlhs");
  REQUIRE(e.code == 0);
  const Json je = parse(e);
  CHECK(je["min_dim"] == 3);
  CHECK(je["witness"]["terms"].size() == 3);
  const Run el = run_cli("mindim example2 --model lhv");
  REQUIRE(el.code == 0);
  CHECK(parse(el)["min_dim"] == 3);
}

TEST_CASE("reproduce targets") {
  for (const auto& t : reproduce_targets()) {
    CAPTURE(t);
    const Run r = run_cli("reproduce " + t);
    CHECK(r.code == 0);
    const Json j = parse(r);
    CHECK(j["pass"] == true);
    CHECK(j["target"] == t);
  }
  const Run e = run_cli("reproduce erasure-born --v 3/5");
  CHECK(e.code == 0);
  const Run b = run_cli("reproduce bb84 --v 1/2");
  REQUIRE(b.code == 0);
  CHECK(parse(b)["result"]["box"]["entries"][0][0] == "3/8");
}

TEST_CASE("errors exit with code 2 and a JSON error object") {
  const Run missing = run_cli("analyze /nonexistent/box.json");
  CHECK(missing.code == 2);
  CHECK(parse(missing)["error"] == "ParseError");
  const Run bad = run_cli("analyze bb84:V=3/2");
  CHECK(bad.code == 2);
  CHECK(parse(bad)["error"] == "DomainError");
  CHECK(run_cli("reproduce no-such-target").code != 0);
}

TEST_CASE("in-process commands") {
  std::ostringstream diag;
  AnalyzeOptions o;
  o.input = kData + "example2.json";
  const CommandResult r = run_analyze(o, diag);
  CHECK(r.exit_code == 0);
  CHECK(diag.str().find("dimA not given") != std::string::npos);
  CHECK(r.output["no_signalling"] == true);

  ReproduceOptions ro;
  ro.target = "bb84";
  ro.v = "7/10";
  const CommandResult rr = run_reproduce(ro, diag);
  CHECK(rr.exit_code == 0);
  CHECK(rr.output["parameters"]["V"] == "7/10");
}
