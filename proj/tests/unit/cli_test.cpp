#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "parity_sieve_cli/config.hpp"
#include "parity_sieve_cli/dispatch.hpp"
#include "parity_sieve_cli/splitmix.hpp"

using namespace parity_sieve::cli;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = run_main(args, out, err);
  return {status, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("parity_sieve_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("sum report") {
  const auto r = run({"sum", "--x", "1000000", "--y", "100", "--k", "3", "--format", "json"});
  REQUIRE(r.status == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["command"] == "sum");
  CHECK(j["results"]["value"].is_string());
  CHECK(j["results"]["value"] == "-1260080");
  for (const char* key : {"command", "params", "results", "residuals", "verdicts", "provenance"})
    CHECK(j.contains(key));
  CHECK(j["provenance"]["case"] == "Case 1");
  CHECK(j["provenance"]["version"] == "0.1.0");
  CHECK(j["provenance"]["derived"]["alpha"].get<double>() == doctest::Approx(3.0));
  CHECK(j["provenance"]["derived"]["beta_ell"].size() == 3);
  CHECK(j["provenance"]["calibration_hash"].get<std::string>().size() == 16);
}

TEST_CASE("small sums through the cli") {
  CHECK(Json::parse(run({"sum", "--x", "10", "--k", "1"}).out)["results"]["value"] == "-4");
  CHECK(Json::parse(run({"sum", "--x", "10", "--y", "4", "--z", "0"}).out)["results"]["value"] == "3");
  const auto c = Json::parse(run({"sum", "--x", "20", "--y", "3", "--z", "i", "--h", "1.5"}).out);
  CHECK(c["residuals"]["buchstab_relative"].get<double>() < 1e-12);
}

TEST_CASE("usage errors exit 2 with one line") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"bogus"},
           {"sum"},
           {"sum", "--x", "10"},
           {"sum", "--x", "10", "--k", "1", "--z", "2"},
           {"sum", "--x", "10", "--k", "0"},
           {"sum", "--x", "10", "--k", "1", "--format", "csv"},
           {"wk", "--k", "1", "--step", "1/100"},
           {"wk", "--k", "1", "--alpha-max", "100"},
           {"dirichlet", "--N", "10", "--k", "1"},
           {"fj", "--x", "10", "--y", "20", "--k", "1"},
           {"approx", "--x", "100", "--y", "1000", "--k", "1"},
           {"verify", "--calibration", "/nonexistent/calibration.txt"},
           {"sum", "--x", "ten", "--k", "1"}}) {
    const auto r = run(args);
    CHECK_MESSAGE(r.status == 2, args[0]);
    CHECK(r.out.empty());
    CHECK(!r.err.empty());
    CHECK(r.err.find('\n') == r.err.size() - 1);
  }
}

TEST_CASE("help exits 0") { CHECK(run({"--help"}).status == 0); }

TEST_CASE("verify buchstab suite") {
  const auto r = run({"verify", "--suite", "buchstab", "--trials", "200", "--seed", "7"});
  REQUIRE(r.status == 0);
  const auto j = Json::parse(r.out);
  const auto& tuples = j["results"]["buchstab"]["tuples"];
  CHECK(tuples.size() == 200);
  for (const auto& t : tuples) CHECK(t["residual"] == "0");
}

TEST_CASE("verify oracle suite") {
  const auto r = run({"verify", "--suite", "oracle", "--trials", "40", "--seed", "3"});
  CHECK(r.status == 0);
  CHECK(Json::parse(r.out)["results"]["oracle"]["failed"] == 0);
}

TEST_CASE("report is independent of thread count") {
  const auto one = run({"verify", "--suite", "buchstab", "--trials", "20", "--seed", "11", "--threads", "1"});
  const auto four = run({"verify", "--suite", "buchstab", "--trials", "20", "--seed", "11", "--threads", "4"});
  CHECK(one.out == four.out);
  const auto d1 = run({"dirichlet", "--N", "2000000", "--k", "3", "--j", "3", "--threads", "1"});
  const auto d4 = run({"dirichlet", "--N", "2000000", "--k", "3", "--j", "3", "--threads", "3"});
  CHECK(d1.out == d4.out);
  const auto c1 = run({"constants", "--k", "3", "--cutoff", "3000000", "--threads", "1"});
  const auto c4 = run({"constants", "--k", "3", "--cutoff", "3000000", "--threads", "4"});
  CHECK(c1.out == c4.out);
}

TEST_CASE("different seeds give different trials") {
  const auto a = Json::parse(run({"verify", "--suite", "buchstab", "--trials", "5", "--seed", "1"}).out);
  const auto b = Json::parse(run({"verify", "--suite", "buchstab", "--trials", "5", "--seed", "2"}).out);
  CHECK(a["results"]["buchstab"]["tuples"] != b["results"]["buchstab"]["tuples"]);
}

TEST_CASE("wk csv") {
  const std::string path = temp_path("m2.csv");
  const auto r = run({"wk", "--k", "1", "--alpha-max", "16", "--step", "1/1024", "--emit-csv", path});
  REQUIRE(r.status == 0);
  const std::string csv = slurp(path);
  CHECK(csv.rfind("alpha,side,w,m\n", 0) == 0);
  std::size_t lines = 0;
  for (char ch : csv) lines += ch == '\n';
  CHECK(lines == 1 + 15 * 1025);
  CHECK(csv.find("1.5,,1.3333333333333333,") != std::string::npos);
  const auto j = Json::parse(r.out);
  CHECK(j["provenance"]["case"] == "Case 2");
  CHECK(j["results"]["limit"]["halves_from_5"] == true);
  std::remove(path.c_str());
}

TEST_CASE("csv output for series commands") {
  const auto h = run({"histogram", "--x", "10", "--y", "11", "--format", "csv"});
  CHECK(h.out == "nu,count\n0,1\n1,7\n2,2\n");
  const auto f = run({"fj", "--x", "3", "--k", "1", "--j", "1", "--format", "csv"});
  CHECK(f.out.rfind("j,f_j,error\n1,0.5,", 0) == 0);
}

TEST_CASE("config file supplies defaults and flags win") {
  const std::string path = temp_path("run.conf");
  {
    std::ofstream f(path);
    f << "x = 10\nk = 1\n";
  }
  CHECK(Json::parse(run({"sum", "--config", path}).out)["results"]["value"] == "-4");
  CHECK(Json::parse(run({"sum", "--config", path, "--x", "6", "--k", "2"}).out)["results"]["value"] == "-3");
  std::remove(path.c_str());
}

TEST_CASE("output file") {
  const std::string path = temp_path("report.json");
  const auto r = run({"dirichlet", "--N", "10", "--k", "1", "--j", "0", "--output", path});
  CHECK(r.status == 0);
  CHECK(r.out.empty());
  const auto j = Json::parse(slurp(path));
  CHECK(j["results"]["sums"][0]["value"].get<double>() == doctest::Approx(-0.395635).epsilon(1e-6));
  std::remove(path.c_str());
}

TEST_CASE("approx report carries the model pieces") {
  const auto r = run({"approx", "--x", "1000000", "--y", "3000", "--k", "1"});
  REQUIRE(r.status == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["results"]["expansion"]["terms"].size() == 3);
  CHECK(j["results"]["exact"].is_string());
  CHECK(j["verdicts"].size() == 2);
  CHECK(j["provenance"]["derived"]["beta"].get<double>() == doctest::Approx(1e6 / 3000));
}

TEST_CASE("step and complex parsing") {
  CHECK(parse_step("1/1024") == 1.0 / 1024);
  CHECK(parse_step("0.5") == 0.5);
  const auto a = parse_complex("1+2i");
  CHECK(a.re == 1);
  CHECK(a.im == 2);
  const auto b = parse_complex("-i");
  CHECK(b.re == 0);
  CHECK(b.im == -1);
  const auto c = parse_complex("-3");
  CHECK(c.re == -3);
  CHECK(c.im == 0);
  const auto d = parse_complex("2.5e-1-1e+1i");
  CHECK(d.re == 0.25);
  CHECK(d.im == -10);
}

TEST_CASE("splitmix64 reference stream") {
  // first outputs for seed 0 of the published generator
  SplitMix64 g(0);
  CHECK(g.next() == 0xE220A8397B1DCDAFull);
  CHECK(g.next() == 0x6E789E6AA1B965F4ull);
  SplitMix64 u(5);
  for (int i = 0; i < 1000; ++i) {
    const auto v = u.uniform(3, 9);
    CHECK(v >= 3);
    CHECK(v <= 9);
    const double d = u.unit();
    CHECK(d >= 0.0);
    CHECK(d < 1.0);
  }
}

TEST_CASE("calibration hash") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}
