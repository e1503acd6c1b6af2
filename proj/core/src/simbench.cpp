#include "srb/simbench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "srb/errors.hpp"
#include "srb/parallel.hpp"
#include "srb/resampler.hpp"
#include "srb/version.hpp"

namespace srb {

namespace {

using Clock = std::chrono::steady_clock;

// Fixed tags so dataset, oracle and bootstrap substreams never collide.
constexpr std::uint64_t kDatasetTag = 0xDA7A5EED00000001ull;
constexpr std::uint64_t kOracleTag = 0x0AC1E00000000002ull;
constexpr std::uint64_t kBootstrapTag = 0xB0075EED00000003ull;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void fill_covariates(Eigen::MatrixXd& x, const CovariateLaw& law, RngStream& rng) {
  const Eigen::Index n = x.rows(), p = x.cols();
  switch (law.kind) {
    case CovariateLaw::Kind::pareto:
      for (Eigen::Index j = 0; j < p; ++j)
        for (Eigen::Index i = 0; i < n; ++i) x(i, j) = rng.next_pareto(law.alpha);
      break;
    case CovariateLaw::Kind::uniform_unit:
      for (Eigen::Index j = 0; j < p; ++j)
        for (Eigen::Index i = 0; i < n; ++i) x(i, j) = 2.0 * rng.next_unit() - 1.0;
      break;
  }
}

// shortest representation that round-trips exactly
std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc() ? std::string(buf, ptr) : std::to_string(v);
}

struct MethodSpec {
  std::string name;
  double gamma;  // < 0 for rb
};

std::vector<MethodSpec> method_specs(const SimDesign& design) {
  std::vector<MethodSpec> specs;
  specs.push_back({"rb", -1.0});
  for (double g : design.gamma_grid) specs.push_back({"srb", g});
  return specs;
}

}  // namespace

Eigen::VectorXd default_beta(Family family, std::size_t p) {
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p));
  if (family == Family::gaussian) {
    std::size_t ones = (p + 1) / 2;  // half of the coefficients
    for (std::size_t j = 0; j < ones; ++j) beta[static_cast<Eigen::Index>(j)] = 1.0;
  } else {
    beta[0] = 0.2;
    if (p > 1) beta[1] = 0.2;
  }
  return beta;
}

Eigen::VectorXd SimDesign::resolved_beta() const {
  if (beta_true.size() > 0) {
    if (static_cast<std::size_t>(beta_true.size()) != p)
      throw DataError("beta_true length does not match p");
    return beta_true;
  }
  return default_beta(family.id(), p);
}

SimDesign SimDesign::desk_linear() {
  SimDesign d;
  d.family = GlmFamily::gaussian();
  d.n = 10000;
  d.p = 20;
  d.covariates = CovariateLaw::pareto(3.0);
  d.noise = NoiseLaw::chisq1_centered;
  d.quantile_level = 0.99;
  d.datasets = 12;
  d.iterations = 10;
  d.replicates = 100;
  d.oracle_mc = 2000;
  return d;
}

SimDesign SimDesign::desk_glm(Family family) {
  SimDesign d;
  d.family = GlmFamily(family);
  d.n = 5000;
  d.p = 20;
  d.covariates = CovariateLaw::uniform();
  d.noise = NoiseLaw::family_intrinsic;
  d.quantile_level = 0.95;
  d.datasets = 12;
  d.iterations = 10;
  d.replicates = 100;
  d.oracle_mc = 2000;
  return d;
}

Dataset gen_linear_dataset(const SimDesign& design, std::uint64_t dataset_seed) {
  const Eigen::Index n = static_cast<Eigen::Index>(design.n);
  const Eigen::Index p = static_cast<Eigen::Index>(design.p);
  Eigen::VectorXd beta = design.resolved_beta();

  RngStream rng = RngStream(design.master_seed, kDatasetTag).derived(dataset_seed);
  Eigen::MatrixXd x(n, p);
  fill_covariates(x, design.covariates, rng);

  Eigen::VectorXd eps(n);
  if (design.noise == NoiseLaw::chisq1_centered) {
    for (Eigen::Index i = 0; i < n; ++i) eps[i] = rng.next_centered_chisq1();
  } else {
    for (Eigen::Index i = 0; i < n; ++i) eps[i] = rng.next_normal();
  }
  if (design.noise_scale != 1.0) eps *= design.noise_scale;

  Eigen::VectorXd y = x * beta + eps;
  return Dataset{DesignMatrix(std::move(x)), ResponseVector::continuous(std::move(y)),
                 std::move(beta)};
}

Dataset gen_glm_dataset(const SimDesign& design, std::uint64_t dataset_seed) {
  if (design.family.is_gaussian())
    throw DataError("gen_glm_dataset requires a bernoulli or poisson family");
  const Eigen::Index n = static_cast<Eigen::Index>(design.n);
  const Eigen::Index p = static_cast<Eigen::Index>(design.p);
  Eigen::VectorXd beta = design.resolved_beta();

  RngStream rng = RngStream(design.master_seed, kDatasetTag).derived(dataset_seed);
  Eigen::MatrixXd x(n, p);
  fill_covariates(x, design.covariates, rng);

  Eigen::VectorXd eta = x * beta;
  Eigen::VectorXd y(n);
  if (design.family.id() == Family::bernoulli_logit) {
    for (Eigen::Index i = 0; i < n; ++i)
      y[i] = rng.next_bernoulli(design.family.mean(eta[i]));
    return Dataset{DesignMatrix(std::move(x)), ResponseVector::binary(std::move(y)),
                   std::move(beta)};
  }
  for (Eigen::Index i = 0; i < n; ++i)
    y[i] = rng.next_poisson(std::exp(eta[i]));
  return Dataset{DesignMatrix(std::move(x)), ResponseVector::count(std::move(y)),
                 std::move(beta)};
}

Dataset gen_dataset(const SimDesign& design, std::uint64_t dataset_seed) {
  return design.family.is_gaussian() ? gen_linear_dataset(design, dataset_seed)
                                     : gen_glm_dataset(design, dataset_seed);
}

FittedModel fit_dataset(const SimDesign& design, const Dataset& ds) {
  if (design.family.is_gaussian()) return fit_ols(ds.X, ds.Y);
  return fit_irls(ds.X, ds.Y, design.family, design.irls);
}

ResidualSet residuals_for(const FittedModel& fit, const ResponseVector& Y) {
  return fit.family.is_gaussian() ? centered_modified_residuals(fit, Y)
                                  : centered_pearson_residuals(fit, Y);
}

std::vector<double> oracle_roots(const SimDesign& design, std::size_t n_mc,
                                 std::uint64_t seed) {
  if (n_mc < 100) throw DataError("oracle needs at least 100 Monte Carlo iterations");

  std::vector<double> roots(n_mc, 0.0);
  std::vector<std::exception_ptr> failures(n_mc);
  RngStream key(seed, kOracleTag);
  parallel_for(n_mc, design.threads, [&](std::size_t k) {
    std::uint64_t ds_seed = key.derived(k).stream_id();
    try {
      Dataset ds = gen_dataset(design, ds_seed);
      FittedModel fit = fit_dataset(design, ds);
      roots[k] = (fit.beta_hat - ds.beta_true).norm();
    } catch (...) {
      failures[k] = std::current_exception();
    }
  });
  for (std::size_t k = 0; k < n_mc; ++k) {
    if (failures[k]) {
      std::uint64_t ds_seed = key.derived(k).stream_id();
      try {
        std::rethrow_exception(failures[k]);
      } catch (const std::exception& e) {
        throw NumericalError("oracle fit failed on dataset seed " +
                             std::to_string(ds_seed) + ": " + e.what());
      }
    }
  }
  return roots;
}

double oracle_quantile(const SimDesign& design, std::size_t n_mc, std::uint64_t seed) {
  return empirical_quantile(oracle_roots(design, n_mc, seed), design.quantile_level);
}

double error_rate(double q_hat, double q) {
  if (!(q > 0)) throw DataError("error_rate requires a positive oracle quantile");
  return std::abs(q_hat / q - 1.0);
}

ExperimentReport run_experiment(const SimDesign& design, const CellSink& sink) {
  if (design.datasets < 1 || design.iterations < 1)
    throw DataError("experiment needs datasets >= 1 and iterations >= 1");
  for (double g : design.gamma_grid) {
    if (!(g > 0.0 && g <= 1.0))
      throw DataError("gamma grid values must lie in (0, 1]");
  }

  ExperimentReport report;
  report.design = design;
  report.oracle_mc = design.oracle_q ? 0 : design.oracle_mc;
  report.oracle_q = design.oracle_q
                        ? *design.oracle_q
                        : oracle_quantile(design, design.oracle_mc,
                                          design.master_seed);
  if (!(report.oracle_q > 1e-12))
    throw DataError("oracle quantile is numerically zero; error rates undefined");

  const auto specs = method_specs(design);
  const std::size_t M = design.datasets;
  const std::size_t B = design.iterations;
  const std::size_t n_methods = specs.size();

  std::vector<ExperimentCell> cells(n_methods * M * B);
  std::vector<std::exception_ptr> failures(M);
  std::mutex sink_mutex;

  RngStream boot_key(design.master_seed, kBootstrapTag);
  parallel_for(M, design.threads, [&](std::size_t i) {
    try {
      Dataset ds = gen_dataset(design, i);
      FittedModel fit = fit_dataset(design, ds);
      ResidualSet rs = residuals_for(fit, ds.Y);

      for (std::size_t m = 0; m < n_methods; ++m) {
        for (std::size_t t = 0; t < B; ++t) {
          BootstrapConfig cfg;
          if (specs[m].gamma < 0) {
            cfg.b = design.n;
          } else {
            cfg.gamma = specs[m].gamma;
          }
          cfg.replicates = design.replicates;
          cfg.quantile_level = design.quantile_level;
          cfg.seed = boot_key.derived(i).derived(m).derived(t);
          cfg.threads = 1;

          BootstrapResult res = run_bootstrap(fit, ds.X, rs, cfg);

          ExperimentCell cell;
          cell.method = specs[m].name;
          cell.gamma = specs[m].gamma;
          cell.dataset = i;
          cell.iteration = t;
          cell.error = error_rate(res.q_hat, report.oracle_q);
          cell.seconds = res.overhead_seconds + res.loop_seconds;
          cell.overhead_seconds = res.overhead_seconds;
          cells[(m * M + i) * B + t] = cell;
          if (sink) {
            std::lock_guard<std::mutex> lock(sink_mutex);
            sink(cell);
          }
        }
      }
    } catch (...) {
      failures[i] = std::current_exception();
    }
  });
  for (std::size_t i = 0; i < M; ++i) {
    if (failures[i]) std::rethrow_exception(failures[i]);
  }

  report.cells = std::move(cells);
  for (std::size_t m = 0; m < n_methods; ++m) {
    MethodSummary row;
    row.method = specs[m].name;
    row.gamma = specs[m].gamma;
    row.b = specs[m].gamma < 0
                ? design.n
                : static_cast<std::size_t>(std::ceil(
                      std::pow(static_cast<double>(design.n), specs[m].gamma)));
    double sum_err = 0.0, sum_time = 0.0, sum_overhead = 0.0;
    const std::size_t count = M * B;
    for (std::size_t c = 0; c < count; ++c) {
      const auto& cell = report.cells[m * count + c];
      sum_err += cell.error;
      sum_time += cell.seconds;
      sum_overhead += cell.overhead_seconds;
    }
    double mean_err = sum_err / static_cast<double>(count);
    double ss = 0.0;
    for (std::size_t c = 0; c < count; ++c) {
      double d = report.cells[m * count + c].error - mean_err;
      ss += d * d;
    }
    row.avg_error_pct = 100.0 * mean_err;
    row.sd_error_pct =
        count > 1 ? 100.0 * std::sqrt(ss / static_cast<double>(count - 1)) : 0.0;
    row.avg_time_sec = sum_time / static_cast<double>(count);
    row.avg_overhead_sec = sum_overhead / static_cast<double>(count);
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::size_t required_mb(const Eigen::MatrixXd& pilot_errors, double d) {
  const Eigen::Index M = pilot_errors.rows();
  const Eigen::Index B = pilot_errors.cols();
  if (M < 2 || B < 2) throw DataError("pilot needs at least 2 datasets and 2 iterations");
  if (!(d > 0)) throw DataError("acceptable error d must be positive");

  Eigen::VectorXd row_means = pilot_errors.rowwise().mean();
  double within = 0.0;
  for (Eigen::Index i = 0; i < M; ++i) {
    double ss = (pilot_errors.row(i).array() - row_means[i]).square().sum();
    within += ss / static_cast<double>(B - 1);
  }
  within /= static_cast<double>(M);
  double grand = row_means.mean();
  double between =
      (row_means.array() - grand).square().sum() / static_cast<double>(M);

  double variance = within + between;
  if (variance == 0.0) return 1;
  double ratio = variance / (d * d);
  // epsilon-robust ceiling: decimal inputs whose exact ratio is integral
  // round to that integer instead of one past it
  auto mb = static_cast<std::size_t>(std::ceil(ratio * (1.0 - 1e-9)));
  return mb < 1 ? 1 : mb;
}

void write_report_csv(const ExperimentReport& report, std::ostream& out) {
  out << "method,gamma,avg_error_pct,sd_error_pct,avg_time_sec\n";
  for (const auto& row : report.rows) {
    out << row.method << ',';
    if (row.gamma >= 0) out << format_double(row.gamma);
    out << ',' << format_double(row.avg_error_pct) << ','
        << format_double(row.sd_error_pct) << ','
        << format_double(row.avg_time_sec) << '\n';
  }
}

void write_report_long_csv(const ExperimentReport& report, std::ostream& out) {
  out << "method,gamma,error,time\n";
  for (const auto& cell : report.cells) {
    out << cell.method << ',';
    if (cell.gamma >= 0) out << format_double(cell.gamma);
    out << ',' << format_double(100.0 * cell.error) << ','
        << format_double(cell.seconds) << '\n';
  }
}

void write_report_json(const ExperimentReport& report, std::ostream& out,
                       const std::string& meta_json) {
  nlohmann::json j;
  j["meta"] = nlohmann::json::parse(meta_json);

  const SimDesign& d = report.design;
  nlohmann::json jd;
  jd["family"] = std::string(d.family.name());
  jd["n"] = d.n;
  jd["p"] = d.p;
  Eigen::VectorXd beta = d.resolved_beta();
  jd["beta_true"] = std::vector<double>(beta.data(), beta.data() + beta.size());
  jd["covariate_law"] =
      d.covariates.kind == CovariateLaw::Kind::pareto
          ? "pareto(" + std::to_string(d.covariates.alpha) + ")"
          : "uniform(-1,1)";
  jd["noise_law"] = d.noise == NoiseLaw::chisq1_centered ? "chisq1-centered"
                                                         : "family-intrinsic";
  jd["quantile_level"] = d.quantile_level;
  jd["gamma_grid"] = d.gamma_grid;
  jd["replicates"] = d.replicates;
  jd["datasets"] = d.datasets;
  jd["iterations"] = d.iterations;
  jd["master_seed"] = d.master_seed;
  j["design"] = jd;

  j["oracle"] = {{"q", report.oracle_q}, {"mc_iterations", report.oracle_mc}};

  const double cell_count =
      static_cast<double>(d.datasets) * static_cast<double>(d.iterations);
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    nlohmann::json jr;
    jr["method"] = row.method;
    if (row.gamma >= 0) jr["gamma"] = row.gamma;
    jr["b"] = row.b;
    jr["avg_error_pct"] = row.avg_error_pct;
    jr["sd_error_pct"] = row.sd_error_pct;
    double half_width = 1.96 * row.sd_error_pct / std::sqrt(cell_count);
    jr["ci95_error_pct"] = {row.avg_error_pct - half_width,
                            row.avg_error_pct + half_width};
    jr["avg_time_sec"] = row.avg_time_sec;
    jr["avg_overhead_sec"] = row.avg_overhead_sec;
    rows.push_back(std::move(jr));
  }
  j["methods"] = std::move(rows);

  j["environment"] = {{"version", kVersion}, {"threads", resolve_threads(d.threads)}};
  out << j.dump(2) << '\n';
}

}  // namespace srb
