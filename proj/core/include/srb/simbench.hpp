#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "srb/design.hpp"
#include "srb/family.hpp"
#include "srb/fit.hpp"
#include "srb/residuals.hpp"
#include "srb/rng.hpp"

namespace srb {

struct CovariateLaw {
  enum class Kind { pareto, uniform_unit };
  Kind kind = Kind::pareto;
  double alpha = 3.0;  // Pareto shape; scale fixed at 1, support [1, inf)

  static CovariateLaw pareto(double alpha = 3.0) { return {Kind::pareto, alpha}; }
  static CovariateLaw uniform() { return {Kind::uniform_unit, 0.0}; }
};

enum class NoiseLaw {
  chisq1_centered,   // Z^2 - 1: mean 0, variance 2 (linear model)
  family_intrinsic,  // draw the response from the family itself
};

// One simulation configuration: data-generating process, the quantile of
// the l2 root being targeted, the gamma grid for the subsampled method, and
// the M x B x R replication plan.
struct SimDesign {
  GlmFamily family{Family::gaussian};
  std::size_t n = 10000;
  std::size_t p = 20;
  Eigen::VectorXd beta_true;  // empty -> default_beta(family, p)
  CovariateLaw covariates;
  NoiseLaw noise = NoiseLaw::chisq1_centered;
  double noise_scale = 1.0;  // linear-model noise multiplier; 0 degenerates q to 0
  double quantile_level = 0.99;
  std::vector<double> gamma_grid{0.5, 0.6, 0.7, 0.8, 0.9};
  std::size_t replicates = 100;  // R: resamples per bootstrap run
  std::size_t datasets = 12;     // M
  std::size_t iterations = 10;   // B: bootstrap runs per dataset and method
  std::uint64_t master_seed = 1;
  std::size_t oracle_mc = 2000;
  std::optional<double> oracle_q;  // skip the Monte Carlo oracle when supplied
  int threads = 1;
  IrlsOptions irls;

  Eigen::VectorXd resolved_beta() const;

  // Desk-scale defaults that finish in minutes on a laptop.
  static SimDesign desk_linear();
  static SimDesign desk_glm(Family family);
};

// Half ones for the linear model; (0.2, 0.2, 0, ..., 0) for GLMs.
Eigen::VectorXd default_beta(Family family, std::size_t p);

struct Dataset {
  DesignMatrix X;
  ResponseVector Y;
  Eigen::VectorXd beta_true;
};

// Pareto covariates with centered chi-square noise (or gaussian noise under
// family_intrinsic); Y = X beta + eps.
Dataset gen_linear_dataset(const SimDesign& design, std::uint64_t dataset_seed);

// Uniform(-1,1) covariates; Y drawn from the family at mean g^{-1}(X beta).
Dataset gen_glm_dataset(const SimDesign& design, std::uint64_t dataset_seed);

Dataset gen_dataset(const SimDesign& design, std::uint64_t dataset_seed);

// Fits a dataset the way the experiment does: OLS for gaussian, IRLS
// otherwise.
FittedModel fit_dataset(const SimDesign& design, const Dataset& ds);

ResidualSet residuals_for(const FittedModel& fit, const ResponseVector& Y);

// The n_mc Monte Carlo draws of ||beta_hat - beta_true||_2 behind the
// oracle quantile. Any fit failure aborts with the offending dataset seed
// in the message.
std::vector<double> oracle_roots(const SimDesign& design, std::size_t n_mc,
                                 std::uint64_t seed);

// Monte Carlo approximation of the target quantile q: order statistic of
// the oracle roots at the design's quantile level.
double oracle_quantile(const SimDesign& design, std::size_t n_mc, std::uint64_t seed);

// xi = |q_hat / q - 1|; q must be positive.
double error_rate(double q_hat, double q);

struct MethodSummary {
  std::string method;  // "rb" or "srb"
  double gamma = -1.0;  // < 0 for rb
  std::size_t b = 0;
  double avg_error_pct = 0.0;
  double sd_error_pct = 0.0;
  double avg_time_sec = 0.0;
  double avg_overhead_sec = 0.0;
};

struct ExperimentCell {
  std::string method;
  double gamma = -1.0;
  std::size_t dataset = 0;
  std::size_t iteration = 0;
  double error = 0.0;  // xi, as a fraction
  double seconds = 0.0;
  double overhead_seconds = 0.0;
};

struct ExperimentReport {
  std::vector<MethodSummary> rows;
  std::vector<ExperimentCell> cells;  // method-major, then dataset, iteration
  double oracle_q = 0.0;
  std::size_t oracle_mc = 0;
  SimDesign design;
};

// Invoked as cells complete (possibly from worker threads); lets callers
// flush partial results if a later cell fails.
using CellSink = std::function<void(const ExperimentCell&)>;

// Full protocol: oracle q (computed or supplied), then for each of M
// datasets fit once, build residuals once, and run B bootstrap iterations
// per method (RB plus SRB at every gamma in the grid), recording the error
// rate and wall time of each iteration. Statistical outputs depend only on
// (design, master_seed), not on the thread count.
ExperimentReport run_experiment(const SimDesign& design, const CellSink& sink = {});

// Appendix-style replication sizing: pooled variance of a pilot error
// matrix (mean within-dataset variance plus variance of dataset means),
// returned as ceil(Var / d^2) with an epsilon-robust ceiling. A constant
// pilot yields 1.
std::size_t required_mb(const Eigen::MatrixXd& pilot_errors, double d);

// report.csv: one aggregated row per method.
void write_report_csv(const ExperimentReport& report, std::ostream& out);
// Long format, one row per (method, dataset, iteration): method,gamma,error,time.
void write_report_long_csv(const ExperimentReport& report, std::ostream& out);
// Full metadata as JSON; meta_json is spliced in verbatim under "meta".
void write_report_json(const ExperimentReport& report, std::ostream& out,
                       const std::string& meta_json = "{}");

}  // namespace srb
