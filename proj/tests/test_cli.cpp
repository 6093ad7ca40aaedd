// End-to-end checks of the torosc binary; TOROSC_CLI points at it (set by
// CTest). Each run goes through a scratch directory under the build tree.

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "torosc/io.hpp"

using namespace torosc;

namespace {

struct CliRunner {
  std::string cli;
  std::string dir = "cli_test_tmp";

  CliRunner() {
    const char* env = std::getenv("TOROSC_CLI");
    if (env != nullptr) cli = env;
    if (std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str()) != 0)
      throw std::runtime_error("cli test: cannot prepare scratch directory");
  }
  bool available() const { return !cli.empty(); }

  void write(const std::string& name, const std::string& content) const {
    std::ofstream out(dir + "/" + name);
    out << content;
  }
  int run(const std::string& args, const std::string& out_name = "") const {
    std::string cmd = cli + " " + args;
    if (!out_name.empty()) cmd += " --out " + dir + "/" + out_name;
    cmd += " > " + dir + "/stdout.txt 2> " + dir + "/stderr.txt";
    return WEXITSTATUS(std::system(cmd.c_str()));
  }
  json read(const std::string& name) const {
    std::ifstream in(dir + "/" + name);
    REQUIRE(in.good());
    return json::parse(in);
  }
  std::string slurp(const std::string& name) const {
    std::ifstream in(dir + "/" + name);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }
};

}  // namespace

TEST_CASE("cli example runs") {
  CliRunner cli;
  if (!cli.available()) {
    MESSAGE("TOROSC_CLI not set; skipping CLI end-to-end checks");
    return;
  }

  SUBCASE("classify example") {
    cli.write("A.json", R"js({"dim": 2, "rows": [[1, 1], [0, 1]]})js");
    CHECK(cli.run("classify --matrix " + cli.dir + "/A.json", "c.json") == 0);
    json r = cli.read("c.json");
    CHECK(r.at("zero_entropy") == true);
    CHECK(r.at("m") == 1);
    CHECK(r.at("l") == 2);
    CHECK(r.contains("config"));
    CHECK(r.contains("artifact_version"));
  }

  SUBCASE("realize example verifies below 1e-8") {
    cli.write("P.json", R"js({"coeffs": ["0", "0", "sqrt(2)"]})js");
    CHECK(cli.run("realize --poly " + cli.dir + "/P.json --verify 10000", "r.json") == 0);
    json r = cli.read("r.json");
    CHECK(r.at("verify").at("max_error").get<double>() < 1e-8);
    CHECK(r.at("start")[1] == "sqrt(2)");
  }

  SUBCASE("counterexample example exits 2 with the exact refutation") {
    int rc = cli.run(
        "counterexample --d 2 --alpha \"sqrt(2)\" --beta \"sqrt(3)\" --N 5000 --grid 32",
        "cx.json");
    CHECK(rc == 2);
    json r = cli.read("cx.json");
    CHECK(r.at("refutation_phase_average").at("abs").get<double>() ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.at("weak").at("verdict") == "consistent-with-weakly-oscillating");
    CHECK(r.at("oscillation_refuted") == true);
  }

  SUBCASE("counterexample rejects rational alpha") {
    int rc = cli.run("counterexample --d 2 --alpha \"1/2\" --beta \"sqrt(3)\" --N 100");
    CHECK(rc == 1);
    CHECK(cli.slurp("stderr.txt").find("alpha") != std::string::npos);
  }

  SUBCASE("malformed input names the offending field and exits 1") {
    cli.write("bad.json", R"js({"dim": 2, "rows": [[1, 1]]})js");
    CHECK(cli.run("classify --matrix " + cli.dir + "/bad.json") == 1);
    CHECK(cli.slurp("stderr.txt").find("rows") != std::string::npos);

    cli.write("badsys.json", R"js({"A": {"dim": 1, "rows": [[1]]}, "mode": "quick"})js");
    CHECK(cli.run("orbit --system " + cli.dir + "/badsys.json") == 1);
    CHECK(cli.slurp("stderr.txt").find("mode") != std::string::npos);

    CHECK(cli.run("classify --matrix " + cli.dir + "/nonexistent.json") == 1);
  }

  SUBCASE("unknown flags are rejected") {
    cli.write("A.json", R"js({"dim": 1, "rows": [[1]]})js");
    CHECK(cli.run("classify --matrix " + cli.dir + "/A.json --frobnicate") != 0);
  }

  SUBCASE("average command reports the exact path") {
    cli.write("seq.json", R"js({"kind": "moebius", "length": 2000})js");
    cli.write("half.json", R"js({"coeffs": ["0", "1/2"]})js");
    CHECK(cli.run("average --seq " + cli.dir + "/seq.json --poly " + cli.dir +
                      "/half.json --N 1000,2000",
                  "avg.json") == 0);
    json r = cli.read("avg.json");
    CHECK(r.at("exact_path") == true);
    CHECK(r.at("rows").size() == 2);
  }
}
