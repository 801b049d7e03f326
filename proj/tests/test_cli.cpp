#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "mudens/partial_sums.hpp"
#include "mudens/trace_io.hpp"

namespace {

std::string cli_path() {
  const char* p = std::getenv("MUDENS_CLI");
  REQUIRE_MESSAGE(p != nullptr, "MUDENS_CLI must point at the built binary");
  return p;
}

std::string src_dir() {
  const char* p = std::getenv("MUDENS_SRC_DIR");
  REQUIRE_MESSAGE(p != nullptr, "MUDENS_SRC_DIR must point at the source tree");
  return p;
}

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string out_file = "/tmp/mudens_test_out.txt";
  const std::string cmd = cli_path() + " " + args + " > " + out_file + " 2>&1";
  const int raw = std::system(cmd.c_str());
  std::ifstream in(out_file);
  std::ostringstream buf;
  buf << in.rdbuf();
  return {WEXITSTATUS(raw), buf.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("cli: csv output is byte-stable and matches the golden file") {
  const std::string args =
      "sum --set beatty:pi --limit 1000 --checkpoints 10,100,1000 --format csv";
  const auto first = run(args);
  const auto second = run(args);
  CHECK(first.code == 0);
  CHECK(first.out == second.out);
  CHECK(first.out == slurp(src_dir() + "/tests/golden/beatty_small.csv"));
}

TEST_CASE("cli: --out writes the same csv") {
  const auto r = run(
      "sum --set beatty:pi --limit 1000 --checkpoints 10,100,1000 "
      "--format csv --out /tmp/mudens_trace.csv");
  CHECK(r.code == 0);
  CHECK(slurp("/tmp/mudens_trace.csv") == r.out);
}

TEST_CASE("cli: table format ends with the density row") {
  const auto r = run("sum --set beatty:pi --limit 1000 --checkpoints 10,100,1000");
  CHECK(r.code == 0);
  CHECK(r.out.find("0.31831") != std::string::npos);
  CHECK(r.out.find("inf") != std::string::npos);
  CHECK(r.out.find("0.33333") != std::string::npos);
}

TEST_CASE("cli: sato-tate prints the theoretical measure") {
  const auto r = run("sato-tate --curve -1,1 --limit 200 --checkpoints 100,200");
  CHECK(r.code == 0);
  CHECK(r.out.find("0.60900") != std::string::npos);
}

TEST_CASE("cli: verify passes honestly and fails the negative control") {
  const auto ok = run("verify --limit 2000");
  CHECK(ok.code == 0);
  CHECK(ok.out.find("FAIL") == std::string::npos);
  CHECK(ok.out.find("PASS") != std::string::npos);

  const auto bad = run("verify --limit 2000 --corrupt-mu");
  CHECK(bad.code == 5);
  CHECK(bad.out.find("FAIL") != std::string::npos);
}

TEST_CASE("cli: verify with a number field runs the ideal sweeps") {
  const auto r =
      run("verify --limit 1000 --field " + src_dir() + "/data/fields/qi.field");
  CHECK(r.code == 0);
  CHECK(r.out.find("Q(i)") != std::string::npos);
}

TEST_CASE("cli: distinct exit codes per error class") {
  CHECK(run("sum --set nope --limit 100").code == 2);          // config
  CHECK(run("sum --set all --limit 100 --checkpoints 5000").code == 2);
  CHECK(run("nonsense").code == 2);                            // usage
  CHECK(run("sum --set all --field " + src_dir() + "/data/fields/qi.field" +
            " --limit 5e9").code == 3);                        // resource
  CHECK(run("sum --set beatty:3.14 --limit 100000").code == 4);  // precision
}

TEST_CASE("cli: json config mirrors the flags") {
  {
    std::ofstream cfg("/tmp/mudens_cfg.json");
    cfg << R"({"set": "beatty:pi", "limit": "1000", "checkpoints": [10, 100, 1000],
               "format": "csv"})";
  }
  const auto from_cfg = run("sum --config /tmp/mudens_cfg.json");
  const auto from_flags =
      run("sum --set beatty:pi --limit 1000 --checkpoints 10,100,1000 --format csv");
  CHECK(from_cfg.code == 0);
  CHECK(from_cfg.out == from_flags.out);

  // explicit flags override the config file
  const auto overridden = run("sum --config /tmp/mudens_cfg.json --set ap:4,1");
  CHECK(overridden.code == 0);
  CHECK(overridden.out != from_cfg.out);
}

TEST_CASE("library csv writer round-trips through the documented format") {
  mudens::SumTrace t;
  t.set_label = "demo";
  t.field_label = "Q";
  t.density = 0.5;
  t.checkpoints = {{10, 0.125, 1e-16}, {100, -0.25, 2e-16}};
  std::ostringstream out;
  mudens::write_sum_trace_csv(out, t);
  CHECK(out.str() ==
        "X,value,error_bound\n10,0.125,1.000e-16\n100,-0.25,2.000e-16\n");
  const auto table = mudens::render_sum_table(t);
  CHECK(table.find("inf") != std::string::npos);
  CHECK(table.find("0.50000") != std::string::npos);
}
