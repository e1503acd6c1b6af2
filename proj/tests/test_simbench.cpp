#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "srb/errors.hpp"
#include "srb/resampler.hpp"
#include "srb/simbench.hpp"
#include "support/stats.hpp"

using namespace srb;

namespace {

SimDesign tiny_linear_design() {
  SimDesign d = SimDesign::desk_linear();
  d.n = 300;
  d.p = 3;
  d.datasets = 2;
  d.iterations = 2;
  d.replicates = 50;
  d.gamma_grid = {0.6, 0.9};
  d.oracle_mc = 150;
  d.master_seed = 71;
  return d;
}

}  // namespace

TEST_CASE("default coefficient vectors") {
  Eigen::VectorXd lin = default_beta(Family::gaussian, 4);
  CHECK(lin[0] == 1.0);
  CHECK(lin[1] == 1.0);
  CHECK(lin[2] == 0.0);
  CHECK(lin[3] == 0.0);

  Eigen::VectorXd glm = default_beta(Family::bernoulli_logit, 5);
  CHECK(glm[0] == 0.2);
  CHECK(glm[1] == 0.2);
  CHECK(glm.tail(3).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("linear dataset generator") {
  SimDesign d = SimDesign::desk_linear();
  d.n = 4000;
  d.p = 6;
  d.master_seed = 5;
  Dataset ds = gen_linear_dataset(d, 0);

  SUBCASE("noise has mean 0 within sampling tolerance") {
    Eigen::VectorXd eps = ds.Y.values() - ds.X.data() * ds.beta_true;
    CHECK(std::abs(eps.mean()) <= 4.0 * std::sqrt(2.0 / double(d.n)));
  }
  SUBCASE("pareto covariates sit above 1") {
    CHECK(ds.X.data().minCoeff() >= 1.0);
  }
  SUBCASE("deterministic per dataset seed") {
    Dataset again = gen_linear_dataset(d, 0);
    CHECK((again.X.data() - ds.X.data()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((again.Y.values() - ds.Y.values()).cwiseAbs().maxCoeff() == 0.0);
    Dataset other = gen_linear_dataset(d, 1);
    CHECK((other.Y.values() - ds.Y.values()).cwiseAbs().maxCoeff() > 0.0);
  }
}

TEST_CASE("glm dataset generators") {
  SimDesign d = SimDesign::desk_glm(Family::bernoulli_logit);
  d.n = 4000;
  d.p = 4;
  d.beta_true = Eigen::VectorXd::Zero(4);
  d.master_seed = 6;

  SUBCASE("zero-beta bernoulli has mean near one half") {
    Dataset ds = gen_glm_dataset(d, 0);
    CHECK(std::abs(ds.Y.values().mean() - 0.5) <= 4.0 / std::sqrt(4.0 * d.n));
    CHECK(ds.Y.kind() == ResponseKind::binary);
  }
  SUBCASE("zero-beta poisson has mean near one") {
    d.family = GlmFamily::poisson_log();
    Dataset ds = gen_glm_dataset(d, 0);
    CHECK(std::abs(ds.Y.values().mean() - 1.0) <= 4.0 / std::sqrt(double(d.n)));
    CHECK(ds.Y.kind() == ResponseKind::count);
  }
  SUBCASE("uniform covariates stay in (-1, 1)") {
    Dataset ds = gen_glm_dataset(d, 0);
    CHECK(ds.X.data().minCoeff() >= -1.0);
    CHECK(ds.X.data().maxCoeff() <= 1.0);
  }
}

TEST_CASE("oracle quantile") {
  SUBCASE("zero noise collapses q to zero") {
    SimDesign d = SimDesign::desk_linear();
    d.n = 200;
    d.p = 3;
    d.noise_scale = 0.0;
    d.oracle_mc = 120;
    CHECK(oracle_quantile(d, 120, 1) <= 1e-10);
  }
  SUBCASE("monotone in the level") {
    SimDesign d = tiny_linear_design();
    std::vector<double> roots = oracle_roots(d, 150, 3);
    CHECK(empirical_quantile(roots, 0.95) <= empirical_quantile(roots, 0.99));
  }
  SUBCASE("two independent runs agree") {
    SimDesign d = SimDesign::desk_linear();
    d.n = 2000;
    d.p = 10;
    d.oracle_mc = 2000;
    d.threads = 2;
    double q1 = oracle_quantile(d, 2000, 100);
    double q2 = oracle_quantile(d, 2000, 200);
    CHECK(std::abs(q1 / q2 - 1.0) <= 0.03);
  }
  SUBCASE("minimum Monte Carlo size enforced") {
    CHECK_THROWS_AS(oracle_quantile(tiny_linear_design(), 50, 1), DataError);
  }
}

TEST_CASE("error rate") {
  CHECK(error_rate(2.5, 2.5) == 0.0);
  CHECK(error_rate(1.098, 1.0) == doctest::Approx(0.098).epsilon(1e-12));
  CHECK(error_rate(0.5, 2.0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK_THROWS_AS(error_rate(1.0, 0.0), DataError);
}

TEST_CASE("required_mb pooled-variance rule") {
  SUBCASE("constant pilot needs a single cell") {
    Eigen::MatrixXd pilot = Eigen::MatrixXd::Constant(3, 4, 0.07);
    CHECK(required_mb(pilot, 0.01) == 1);
  }
  SUBCASE("known variance 0.04 at d = 0.01 gives exactly 400") {
    Eigen::MatrixXd pilot(2, 2);
    pilot << 0.4, 0.4, 0.0, 0.0;  // between-dataset variance 0.04, within 0
    CHECK(required_mb(pilot, 0.01) == 400);
  }
  SUBCASE("variance 0.12 reproduces the 1200-cell budget at d = 0.01") {
    double a = 0.2, b = std::sqrt(0.08);
    Eigen::MatrixXd pilot(2, 2);
    pilot << a, -a, b, -b;  // within-dataset variances 2a^2 and 2b^2
    std::size_t mb = required_mb(pilot, 0.01);
    CHECK(mb == 1200);
    CHECK(std::sqrt(0.12 / double(mb)) <= 0.01 + 1e-12);
  }
  SUBCASE("synthetic arithmetic") {
    Eigen::MatrixXd pilot(2, 2);
    pilot << 0.5, 0.5, 0.0, 0.0;  // between variance 0.0625
    CHECK(required_mb(pilot, 0.25) == 1);   // 0.0625/0.0625 = 1
    CHECK(required_mb(pilot, 0.05) == 25);  // 0.0625/0.0025
  }
  SUBCASE("validation") {
    Eigen::MatrixXd pilot(1, 4);
    pilot.setConstant(0.1);
    CHECK_THROWS_AS(required_mb(pilot, 0.01), DataError);
    Eigen::MatrixXd ok = Eigen::MatrixXd::Constant(2, 2, 0.1);
    CHECK_THROWS_AS(required_mb(ok, 0.0), DataError);
  }
}

TEST_CASE("run_experiment end to end at toy scale") {
  SimDesign d = tiny_linear_design();
  ExperimentReport report = run_experiment(d);

  REQUIRE(report.rows.size() == 3);  // rb + two gammas
  CHECK(report.rows[0].method == "rb");
  CHECK(report.rows[1].method == "srb");
  CHECK(report.rows[1].gamma == 0.6);
  CHECK(report.rows[2].gamma == 0.9);
  CHECK(report.cells.size() == 3 * d.datasets * d.iterations);
  for (const auto& row : report.rows) {
    CHECK(row.avg_error_pct >= 0.0);
    CHECK(row.avg_time_sec >= 0.0);
  }
  CHECK(report.oracle_q > 0.0);

  SUBCASE("statistical columns are deterministic, time columns exempt") {
    ExperimentReport again = run_experiment(d);
    SimDesign threaded = d;
    threaded.threads = 2;
    ExperimentReport parallel = run_experiment(threaded);
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
      CHECK(report.rows[r].avg_error_pct == again.rows[r].avg_error_pct);
      CHECK(report.rows[r].sd_error_pct == again.rows[r].sd_error_pct);
      CHECK(report.rows[r].avg_error_pct == parallel.rows[r].avg_error_pct);
    }
  }

  SUBCASE("sink sees every cell") {
    std::size_t count = 0;
    run_experiment(d, [&](const ExperimentCell&) { ++count; });
    CHECK(count == report.cells.size());
  }

  SUBCASE("csv writers") {
    std::ostringstream csv;
    write_report_csv(report, csv);
    std::istringstream lines(csv.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "method,gamma,avg_error_pct,sd_error_pct,avg_time_sec");

    std::ostringstream long_csv;
    write_report_long_csv(report, long_csv);
    std::istringstream long_lines(long_csv.str());
    std::getline(long_lines, header);
    CHECK(header == "method,gamma,error,time");
    std::size_t rows = 0;
    std::string line;
    while (std::getline(long_lines, line)) ++rows;
    CHECK(rows == report.cells.size());

    std::ostringstream json;
    write_report_json(report, json, "{\"tool\":\"test\"}");
    CHECK(json.str().find("\"oracle\"") != std::string::npos);
    CHECK(json.str().find("\"ci95_error_pct\"") != std::string::npos);
  }
}

TEST_CASE("zero-noise experiment reports the degenerate oracle") {
  SimDesign d = tiny_linear_design();
  d.datasets = 1;
  d.iterations = 1;
  d.noise_scale = 0.0;
  CHECK_THROWS_AS(run_experiment(d), DataError);
}

TEST_CASE("rb error rate stays moderate on a well-specified design") {
  SimDesign d = SimDesign::desk_linear();
  d.n = 2000;
  d.p = 5;
  d.datasets = 3;
  d.iterations = 3;
  d.replicates = 100;
  d.gamma_grid = {0.7};
  d.oracle_mc = 400;
  d.master_seed = 99;
  d.threads = 2;
  ExperimentReport report = run_experiment(d);
  CHECK(report.rows[0].avg_error_pct <= 25.0);
}

TEST_CASE("per-iteration runtime is ordered by resample size") {
  // median over repetitions: srb(0.5) < srb(0.9) < rb
  const int n = 20000, p = 30;
  SimDesign d = SimDesign::desk_linear();
  d.n = n;
  d.p = p;
  d.master_seed = 55;
  Dataset ds = gen_linear_dataset(d, 0);
  FittedModel fit = fit_dataset(d, ds);
  ResidualSet rs = residuals_for(fit, ds.Y);

  auto timed = [&](double gamma, std::size_t b) {
    std::vector<double> seconds;
    for (int rep = 0; rep < 5; ++rep) {
      BootstrapConfig cfg;
      if (gamma > 0) {
        cfg.gamma = gamma;
      } else {
        cfg.b = b;
      }
      cfg.replicates = 100;
      cfg.seed = RngStream(7, rep);
      BootstrapResult res = run_bootstrap(fit, ds.X, rs, cfg);
      seconds.push_back(res.overhead_seconds + res.loop_seconds);
    }
    return srb::testing::median(seconds);
  };

  double t_small = timed(0.5, 0);
  double t_large = timed(0.9, 0);
  double t_rb = timed(-1.0, n);
  CHECK(t_small < t_large);
  CHECK(t_large < t_rb);
}
