#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "ufs/config.hpp"
#include "ufs/csv.hpp"
#include "ufs/svg_plot.hpp"

using namespace ufs;

namespace {

const char* kSmallConfig = R"({
  "M": 4, "N": 32, "K": 2, "phi_max": 0.2, "snr_db": 20,
  "trials": 30, "master_seed": 7, "scheme": "ufs", "attack": true,
  "sweep_axis": "power_ratio_db", "sweep_values": [0, 10]
})";

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

int run(const std::string& args) {
  std::string cmd = std::string(UFS_SIM_BINARY) + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("valid config resolves dB fields to linear") {
    ExperimentConfig cfg = parse_experiment_config(kSmallConfig);
    CHECK(cfg.scenario.noise_var == doctest::Approx(0.01));
    CHECK(cfg.scenario.p_bob == 1.0);
    CHECK(cfg.trials == 30);
    CHECK(cfg.scheme == Scheme::ufs);
  }
  SUBCASE("unknown key is rejected by name") {
    std::string bad = kSmallConfig;
    auto pos = bad.find("phi_max");
    bad.replace(pos, 7, "phimax\"x");  // mangle into an unknown key
    bad = R"({"phimax": 0.2, "M": 4, "N": 32, "K": 2, "snr_db": 20, "trials": 30,
              "master_seed": 7, "scheme": "ufs", "attack": true,
              "sweep_axis": "power_ratio_db", "sweep_values": [0]})";
    try {
      parse_experiment_config(bad);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("phimax") != std::string::npos);
    }
  }
  SUBCASE("missing key and bad types are rejected") {
    CHECK_THROWS_AS(parse_experiment_config("{}"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config("not json"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(R"({"M": "four"})"), ConfigError);
  }
  SUBCASE("illegal sweep value caught at parse time") {
    std::string bad = R"({"M": 4, "N": 32, "K": 2, "phi_max": 0.2, "snr_db": 20,
      "trials": 30, "master_seed": 7, "scheme": "ufs", "attack": true,
      "sweep_axis": "segments", "sweep_values": [2, 5]})";
    CHECK_THROWS_AS(parse_experiment_config(bad), ConfigError);
  }
}

TEST_CASE("CSV round trip") {
  SweepResult r;
  PointResult p{};
  p.sweep_value = 1.5;
  p.miss_rate = 0.25;
  p.miss_ci_lo = 0.2;
  p.miss_ci_hi = 0.3;
  p.fa_rate = std::nan("");
  p.fa_ci_lo = std::nan("");
  p.fa_ci_hi = std::nan("");
  p.channel_mse = std::nan("");
  p.cfo_mse = std::nan("");
  p.trials_used = 100;
  p.failures = 0;
  r.points.push_back(p);
  std::string csv = sweep_to_csv(r, "{\"x\":1}");
  CHECK(csv.find("# config: {\"x\":1}") == 0);
  CHECK(csv.back() == '\n');
  CsvData d = parse_sweep_csv(csv);
  CHECK(d.rows.size() == 1);
  CHECK(d.rows[0][d.column_index("miss_rate")] == doctest::Approx(0.25));
  CHECK(std::isnan(d.rows[0][d.column_index("false_alarm_rate")]));
  SUBCASE("empty body rejected") {
    std::string header_only = csv.substr(0, csv.find('\n', csv.find("sweep_value")) + 1);
    CHECK_THROWS_AS(parse_sweep_csv(header_only), std::invalid_argument);
  }
}

TEST_CASE("simulate subcommand") {
  const std::string dir = "/tmp/ufs_cli_test";
  REQUIRE(std::system(("mkdir -p " + dir).c_str()) == 0);
  spit(dir + "/cfg.json", kSmallConfig);

  SUBCASE("CSV rows follow sweep order and workers do not change bytes") {
    REQUIRE(run("simulate --config " + dir + "/cfg.json --out " + dir + "/a.csv --workers 1") == 0);
    REQUIRE(run("simulate --config " + dir + "/cfg.json --out " + dir + "/b.csv --workers 8") == 0);
    std::string a = slurp(dir + "/a.csv");
    CHECK(a == slurp(dir + "/b.csv"));
    CsvData d = parse_sweep_csv(a);
    REQUIRE(d.rows.size() == 2);
    CHECK(d.rows[0][0] == 0.0);
    CHECK(d.rows[1][0] == 10.0);
    CHECK(a.find("master_seed") != std::string::npos);
  }
  SUBCASE("malformed key exits 2") {
    spit(dir + "/bad.json", R"({"phimax": 0.2})");
    CHECK(run("simulate --config " + dir + "/bad.json --out " + dir + "/x.csv") == 2);
  }
  SUBCASE("seed override changes the result deterministically") {
    REQUIRE(run("simulate --config " + dir + "/cfg.json --out " + dir + "/s1.csv --seed 1") == 0);
    REQUIRE(run("simulate --config " + dir + "/cfg.json --out " + dir + "/s2.csv --seed 1") == 0);
    CHECK(slurp(dir + "/s1.csv") == slurp(dir + "/s2.csv"));
  }
}

TEST_CASE("analytic subcommand") {
  CHECK(run("analytic sync --M 16 --N 64 --noise-var 0.01") == 0);
  CHECK(run("analytic rho --delta-phi 0 --Q 16") == 0);
  CHECK(run("analytic sync --M 16") == 2);          // missing parameters
  CHECK(run("analytic nosuchkind --M 16") == 2);    // unknown kind
  CHECK(run("analytic lemma1-cfo --Q 1 --noise-var 0.01") == 2);  // invalid Q
}

TEST_CASE("plot subcommand") {
  const std::string dir = "/tmp/ufs_cli_test";
  REQUIRE(std::system(("mkdir -p " + dir).c_str()) == 0);
  spit(dir + "/cfg.json", kSmallConfig);
  REQUIRE(run("simulate --config " + dir + "/cfg.json --out " + dir + "/p.csv") == 0);

  SUBCASE("valid CSV produces an SVG with a polyline") {
    REQUIRE(run("plot --csv " + dir + "/p.csv --out " + dir + "/p.svg --log-y --overlay-bound") == 0);
    std::string svg = slurp(dir + "/p.svg");
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);  // analytic overlay present
  }
  SUBCASE("empty CSV body exits 2") {
    spit(dir + "/empty.csv", "sweep_value,miss_rate\n");
    CHECK(run("plot --csv " + dir + "/empty.csv --out " + dir + "/e.svg") == 2);
  }
  SUBCASE("overlay values equal the analytic evaluations") {
    // The dashed overlay is computed by the same closed forms the analytic
    // subcommand prints; spot-check through the library path.
    std::string csv = slurp(dir + "/p.csv");
    CsvData d = parse_sweep_csv(csv);
    PlotOptions opts;
    opts.overlay_bound = true;
    std::string svg = render_sweep_svg(d, opts);
    CHECK(svg.find("miss_bound") != std::string::npos);
    CHECK(svg.find("miss_lower_bound") != std::string::npos);
  }
}
