#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const char* cli = std::getenv("TWISTVOL_CLI");
  REQUIRE_MESSAGE(cli != nullptr, "TWISTVOL_CLI is not set");
  const std::string cmd = std::string(cli) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

nlohmann::json json_of(const Run& r) {
  REQUIRE(r.status == 0);
  return nlohmann::json::parse(r.out);
}

const std::string kData = TWISTVOL_DATA_DIR;

}  // namespace

TEST_CASE("jones on a diagram file") {
  const auto j = json_of(run("jones " + kData + "/corpus/trefoil.pd"));
  CHECK(j["betaSum"] == 1);
  CHECK(j["writhe"] == -3);
  CHECK(j["jones"]["text"] == "q^-2 + q^-6 - q^-8");
}

TEST_CASE("corpus names, stdin and inline text format") {
  const auto a = json_of(run("twist corpus:figure-8"));
  CHECK(a["tw"] == 2);
  const Run b = run("parse - < " + kData + "/corpus/figure-8.pd");
  CHECK(json_of(b)["crossings"] == 4);
  const Run t = run("--format text adequacy corpus:trefoil");
  CHECK(t.status == 0);
  CHECK(t.out.find("adequate: true") != std::string::npos);
}

TEST_CASE("bounds") {
  const auto j = json_of(run("bounds link --tw 2 --min-crossings 7"));
  CHECK(j["lower"].get<double>() == doctest::Approx(0.70735).epsilon(1e-5));
  CHECK(run("bounds filling --vol 2 --lmin 6").status == 1);
  CHECK(run("bounds surgered --tw 3 --min-crossings 5").status == 1);
  CHECK(run("bounds filling --vol -2 --lmin 7").status == 2);
  const auto m = json_of(run("bounds metric --vol 2 --lmin 8 --zeta 0.5 --cusp-volumes 0.5"));
  CHECK(m["bound"].get<double>() < m["supremum"].get<double>());
}

TEST_CASE("tube build certificate") {
  const auto j = json_of(run("tube build --l1 8 --l2 5 --zeta 0.99"));
  CHECK(j["volume"].get<double>() >= 19.8);
  CHECK(j["volumeOk"] == true);
  CHECK(j["curvatureOk"] == true);
  CHECK(run("tube build --l1 6 --l2 5 --zeta 0.5").status == 1);
}

TEST_CASE("tube sweep as csv") {
  const Run r = run("--format csv tube sweep --l1 8 --n 3");
  REQUIRE(r.status == 0);
  CHECK(r.out.rfind("t,eps,m,iterations,volume\n", 0) == 0);
  int lines = 0;
  for (char c : r.out) lines += c == '\n';
  CHECK(lines == 4);
}

TEST_CASE("exit codes for bad input") {
  CHECK(run("").status == 2);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("parse /nonexistent/file.pd").status == 2);
  CHECK(run("parse corpus:no-such-knot").status == 2);
  CHECK(run("--format yaml parse corpus:trefoil").status == 2);
  CHECK(run("parse corpus:trefoil+hopf").status == 0);
  const std::string bad = "twistvol_cli_bad.pd";
  std::ofstream(bad) << "X(1,2,3)\n";
  CHECK(run("parse " + bad).status == 2);
  std::remove(bad.c_str());
}

TEST_CASE("hypothesis gates") {
  CHECK(run("coeffs corpus:trefoil+hopf").status == 1);
  CHECK(run("bounds diagram corpus:trefoil").status == 1);
  CHECK(run("tube sweep --l1 8 --tmin 0.3 --tmax 0.5").status == 1);
}

TEST_CASE("output is byte-identical across runs") {
  for (const char* args : {"coeffs 'corpus:P(3,3,-2,-2)'", "geography 'corpus:C(3,3,3)'", "tube build --l1 9 --l2 2 --zeta 0.7",
                           "census " TWISTVOL_DATA_DIR "/census_synthetic.csv", "--threads 3 bracket --method both 'corpus:T(3,4)'"}) {
    CAPTURE(std::string(args));
    const Run a = run(args), b = run(args);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
  }
  const auto both = json_of(run("bracket --method both 'corpus:T(3,4)'"));
  CHECK(both["agree"] == true);
}

TEST_CASE("verify-all subset") {
  const Run r = run("verify-all --only 6,7");
  CHECK(r.status == 0);
  CHECK(r.out.find("[PASS] 6") != std::string::npos);
  CHECK(r.out.find("[PASS] 7") != std::string::npos);
  CHECK(r.out.find("2/2 criteria pass") != std::string::npos);
}
