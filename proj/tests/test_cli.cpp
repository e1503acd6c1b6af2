// End-to-end tests that drive the installed command line binary.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "srb/data_pipeline.hpp"
#include "srb/fit.hpp"
#include "srb/resampler.hpp"
#include "srb/residuals.hpp"
#include "srb/rng.hpp"
#include "support/stats.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

CliResult run_cli(const std::string& args, const fs::path& workdir) {
  fs::path out_file = workdir / "__stdout.txt";
  fs::path err_file = workdir / "__stderr.txt";
  std::string cmd = "cd '" + workdir.string() + "' && '" + SRB_CLI_PATH + "' " + args +
                    " > '" + out_file.string() + "' 2> '" + err_file.string() + "'";
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, slurp(out_file), slurp(err_file)};
}

fs::path make_workdir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("srb_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_gaussian_fixture(const fs::path& file, int n, unsigned seed) {
  srb::RngStream rng(seed, 0);
  std::ofstream out(file);
  out.precision(17);
  out << "x1,x2,y\n";
  for (int i = 0; i < n; ++i) {
    double x1 = 2.0 * rng.next_unit() - 1.0;
    double x2 = 2.0 * rng.next_unit() - 1.0;
    double y = 1.5 * x1 - 0.5 * x2 + rng.next_normal();
    out << x1 << ',' << x2 << ',' << y << '\n';
  }
}

void write_logistic_fixture(const fs::path& file, int n, unsigned seed) {
  srb::RngStream rng(seed, 0);
  std::ofstream out(file);
  out.precision(17);
  out << "x1,x2,y\n";
  for (int i = 0; i < n; ++i) {
    double x1 = 2.0 * rng.next_unit() - 1.0;
    double x2 = 2.0 * rng.next_unit() - 1.0;
    double p = 1.0 / (1.0 + std::exp(-(0.8 * x1 + 0.4 * x2)));
    out << x1 << ',' << x2 << ',' << rng.next_bernoulli(p) << '\n';
  }
}

}  // namespace

TEST_CASE("cli fit matches the library and reports convergence") {
  fs::path dir = make_workdir("fit");
  write_gaussian_fixture(dir / "data.csv", 60, 11);

  CliResult res = run_cli("fit --data data.csv --response y --family gaussian", dir);
  REQUIRE(res.exit_code == 0);
  json j = json::parse(slurp(dir / "fit.json"));

  srb::CsvSchema schema;
  schema.response_column = "y";
  srb::TabularDataset ds = srb::load_csv(dir / "data.csv", schema);
  srb::DesignMatrix x(ds.feature_matrix());
  srb::ResponseVector y = srb::ResponseVector::continuous(ds.columns[2]);
  srb::FittedModel fit = srb::fit_ols(x, y);

  REQUIRE(j["beta_hat"].size() == 2);
  CHECK(j["beta_hat"][0].get<double>() == fit.beta_hat[0]);
  CHECK(j["beta_hat"][1].get<double>() == fit.beta_hat[1]);
  CHECK(j["converged"].get<bool>());
  CHECK(j["meta"]["version"] == "0.1.0");
  CHECK(j["meta"]["data_checksum"].get<std::string>().rfind("fnv1a64:", 0) == 0);
}

TEST_CASE("cli rejects unknown families with a usage error") {
  fs::path dir = make_workdir("family");
  write_gaussian_fixture(dir / "data.csv", 30, 12);
  CliResult res = run_cli("fit --data data.csv --response y --family probit", dir);
  CHECK(res.exit_code == 2);
}

TEST_CASE("cli fit honors the IRLS tolerance flag") {
  fs::path dir = make_workdir("tol");
  write_logistic_fixture(dir / "data.csv", 400, 13);

  CliResult loose = run_cli(
      "fit --data data.csv --response y --family logistic --tol 1e-2 --output loose", dir);
  CliResult tight = run_cli(
      "fit --data data.csv --response y --family logistic --tol 1e-12 --output tight", dir);
  REQUIRE(loose.exit_code == 0);
  REQUIRE(tight.exit_code == 0);
  int it_loose = json::parse(slurp(dir / "loose/fit.json"))["iterations"].get<int>();
  int it_tight = json::parse(slurp(dir / "tight/fit.json"))["iterations"].get<int>();
  CHECK(it_loose < it_tight);
}

TEST_CASE("cli bootstrap: srb at gamma 1 equals rb on the same seed") {
  fs::path dir = make_workdir("reduction");
  write_gaussian_fixture(dir / "data.csv", 80, 14);

  std::string common =
      "bootstrap --data data.csv --response y --family gaussian "
      "--resamples 60 --level 0.95 --seed 99 --threads 1 ";
  CliResult srb_run = run_cli(common + "--method srb --gamma 1.0 --output srb_out", dir);
  CliResult rb_run = run_cli(common + "--method rb --output rb_out", dir);
  REQUIRE(srb_run.exit_code == 0);
  REQUIRE(rb_run.exit_code == 0);

  double q_srb = json::parse(slurp(dir / "srb_out/bootstrap.json"))["q_hat"].get<double>();
  double q_rb = json::parse(slurp(dir / "rb_out/bootstrap.json"))["q_hat"].get<double>();
  CHECK(q_srb == q_rb);
}

TEST_CASE("cli bootstrap q_hat is the quantile of the emitted roots") {
  fs::path dir = make_workdir("roots");
  write_gaussian_fixture(dir / "data.csv", 100, 15);

  CliResult res = run_cli(
      "bootstrap --data data.csv --response y --family gaussian --method srb "
      "--gamma 0.7 --resamples 100 --level 0.95 --seed 5 --threads 1",
      dir);
  REQUIRE(res.exit_code == 0);
  json j = json::parse(slurp(dir / "bootstrap.json"));

  std::istringstream roots_csv(slurp(dir / "roots.csv"));
  std::string line;
  std::getline(roots_csv, line);
  REQUIRE(line == "root");
  std::vector<double> roots;
  while (std::getline(roots_csv, line)) roots.push_back(std::stod(line));
  REQUIRE(roots.size() == 100);
  std::sort(roots.begin(), roots.end());
  CHECK(j["q_hat"].get<double>() == roots[94]);  // rank 95 of 100
}

TEST_CASE("cli bootstrap matches a direct library invocation bitwise") {
  fs::path dir = make_workdir("bitwise");
  write_gaussian_fixture(dir / "data.csv", 70, 16);

  CliResult res = run_cli(
      "bootstrap --data data.csv --response y --family gaussian --method srb "
      "--b 20 --resamples 40 --level 0.9 --seed 4242 --threads 2",
      dir);
  REQUIRE(res.exit_code == 0);
  double q_cli = json::parse(slurp(dir / "bootstrap.json"))["q_hat"].get<double>();

  srb::CsvSchema schema;
  schema.response_column = "y";
  srb::TabularDataset ds = srb::load_csv(dir / "data.csv", schema);
  srb::DesignMatrix x(ds.feature_matrix());
  srb::ResponseVector y = srb::ResponseVector::continuous(ds.columns[2]);
  srb::FittedModel fit = srb::fit_ols(x, y);
  srb::ResidualSet rs = srb::centered_modified_residuals(fit, y);
  srb::BootstrapConfig cfg;
  cfg.b = 20;
  cfg.replicates = 40;
  cfg.quantile_level = 0.9;
  cfg.seed = srb::RngStream(4242, 0);
  cfg.threads = 1;  // thread count must not change the statistics
  srb::BootstrapResult direct = srb::run_bootstrap(fit, x, rs, cfg);
  CHECK(q_cli == direct.q_hat);
}

TEST_CASE("cli bootstrap rejects b larger than n") {
  fs::path dir = make_workdir("too_big");
  write_gaussian_fixture(dir / "data.csv", 30, 17);
  CliResult res = run_cli(
      "bootstrap --data data.csv --response y --family gaussian --method srb --b 31",
      dir);
  CHECK(res.exit_code == 2);
}

TEST_CASE("cli bootstrap emits the replicate matrix on request") {
  fs::path dir = make_workdir("betas");
  write_gaussian_fixture(dir / "data.csv", 50, 18);
  CliResult res = run_cli(
      "bootstrap --data data.csv --response y --family gaussian --method rb "
      "--resamples 25 --seed 3 --emit-betas",
      dir);
  REQUIRE(res.exit_code == 0);
  std::istringstream betas(slurp(dir / "betas.csv"));
  std::string line;
  std::getline(betas, line);
  CHECK(line == "x1,x2");
  int rows = 0;
  while (std::getline(betas, line)) ++rows;
  CHECK(rows == 25);
}

TEST_CASE("cli simulate smoke run with deterministic error columns") {
  fs::path dir = make_workdir("simulate");
  json design{{"family", "gaussian"},
              {"n", 400},
              {"p", 3},
              {"quantile_level", 0.95},
              {"gamma_grid", {0.6, 0.9}},
              {"replicates", 40},
              {"datasets", 1},
              {"iterations", 1},
              {"master_seed", 31},
              {"oracle_mc", 120}};
  std::ofstream(dir / "design.json") << design.dump();

  CliResult first = run_cli("simulate --design design.json --output run1 --threads 2", dir);
  REQUIRE(first.exit_code == 0);
  std::string report = slurp(dir / "run1/report.csv");
  std::istringstream lines(report);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "method,gamma,avg_error_pct,sd_error_pct,avg_time_sec");
  int rows = 0;
  std::string line;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 3);  // rb + two gammas
  CHECK(fs::exists(dir / "run1/report.json"));
  CHECK(fs::exists(dir / "run1/report_long.csv"));

  CliResult second = run_cli("simulate --design design.json --output run2 --threads 1", dir);
  REQUIRE(second.exit_code == 0);

  // identical error columns; time columns exempt
  auto error_columns = [](const std::string& csv) {
    std::istringstream in(csv);
    std::string row, acc;
    std::getline(in, row);
    while (std::getline(in, row)) {
      std::size_t last_comma = row.rfind(',');
      acc += row.substr(0, last_comma) + "\n";
    }
    return acc;
  };
  CHECK(error_columns(report) == error_columns(slurp(dir / "run2/report.csv")));
}

TEST_CASE("cli preprocess prunes and feeds fit") {
  fs::path dir = make_workdir("preprocess");
  srb::RngStream rng(2030, 0);
  std::ofstream csv(dir / "data.csv");
  csv.precision(17);
  csv << "q1,q2,dup,const,y\n";
  for (int i = 0; i < 300; ++i) {
    double q1 = rng.next_normal();
    double q2 = rng.next_normal();
    int cls = 1 + int(rng.next_index(3));  // classes 1..3
    csv << q1 << ',' << q2 << ',' << q1 << ',' << 7 << ',' << cls << '\n';
  }
  csv.close();

  CliResult res = run_cli(
      "preprocess --data data.csv --response y --classes 1 2 --vif-threshold 2.0", dir);
  REQUIRE(res.exit_code == 0);
  json log = json::parse(slurp(dir / "prune_log.json"));
  REQUIRE(log["removed"].size() == 2);
  CHECK(log["removed"][0]["column"] == "const");
  CHECK(log["removed"][0]["reason"] == "constant");
  CHECK(log["removed"][1]["reason"] == "vif");

  // the pruned file is directly consumable by fit
  CliResult fit = run_cli(
      "fit --data pruned.csv --response y --family logistic --add-intercept", dir);
  CHECK(fit.exit_code == 0);

  SUBCASE("huge threshold keeps correlated-but-finite columns") {
    CliResult res2 = run_cli(
        "preprocess --data data.csv --response y --classes 1 2 --vif-threshold 1e9 "
        "--output none",
        dir);
    REQUIRE(res2.exit_code == 0);
    json log2 = json::parse(slurp(dir / "none/prune_log.json"));
    // the exact duplicate still goes (infinite VIF); nothing else does
    CHECK(log2["removed"].size() == 2);
  }
}

TEST_CASE("cli error code contract") {
  fs::path dir = make_workdir("errors");

  SUBCASE("missing file is a data error") {
    CliResult res = run_cli("fit --data nothere.csv --response y", dir);
    CHECK(res.exit_code == 2);
  }
  SUBCASE("separated logistic data is a numerical failure") {
    std::ofstream csv(dir / "sep.csv");
    csv << "x,y\n";
    for (int i = 0; i < 40; ++i) {
      double x = i < 20 ? -1.0 - 0.01 * i : 1.0 + 0.01 * i;
      csv << x << ',' << (i < 20 ? 0 : 1) << '\n';
    }
    csv.close();
    CliResult res = run_cli("fit --data sep.csv --response y --family logistic", dir);
    CHECK(res.exit_code == 3);
  }
  SUBCASE("missing required flag is a usage error") {
    CliResult res = run_cli("fit --response y", dir);
    CHECK(res.exit_code == 2);
  }
  SUBCASE("help exits zero") {
    CliResult res = run_cli("--help", dir);
    CHECK(res.exit_code == 0);
  }
}

TEST_CASE("cli benchmark reports the timing table") {
  fs::path dir = make_workdir("bench");
  CliResult res = run_cli(
      "benchmark --family gaussian --n 2000 --p 10 --resamples 20 --gammas 0.6 0.8 "
      "--seed 9 --threads 1",
      dir);
  REQUIRE(res.exit_code == 0);
  std::istringstream lines(slurp(dir / "benchmark.csv"));
  std::string header;
  std::getline(lines, header);
  CHECK(header == "method,gamma,b,overhead_sec,loop_sec,per_replicate_sec,q_hat");
  int rows = 0;
  std::string line;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 3);
}
