// srb: subsampled residual bootstrap for generalized linear models.
//
// Subcommands: fit, bootstrap, simulate, preprocess, benchmark. Every run
// embeds its resolved configuration, the tool version and a checksum of the
// input data in its JSON output. Exit codes: 0 success, 2 usage/data error,
// 3 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "srb/data_pipeline.hpp"
#include "srb/errors.hpp"
#include "srb/family.hpp"
#include "srb/fit.hpp"
#include "srb/parallel.hpp"
#include "srb/resampler.hpp"
#include "srb/residuals.hpp"
#include "srb/rng.hpp"
#include "srb/simbench.hpp"
#include "srb/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fnv1a64_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw srb::DataError("cannot open '" + path.string() + "'");
  std::uint64_t hash = 1469598103934665603ull;
  char buffer[1 << 15];
  while (in.read(buffer, sizeof(buffer)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<unsigned char>(buffer[i]);
      hash *= 1099511628211ull;
    }
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << hash;
  return os.str();
}

json meta_json(const json& config, const std::string& checksum) {
  return json{{"tool", "srb"},
              {"version", srb::kVersion},
              {"config", config},
              {"data_checksum", checksum}};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw srb::DataError("cannot write '" + path.string() + "'");
  out << text;
}

fs::path prepare_output_dir(const std::string& dir) {
  fs::path out(dir);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw srb::DataError("cannot create output directory '" + dir + "'");
  return out;
}

struct LoadedData {
  srb::DesignMatrix X;
  srb::ResponseVector Y;
  std::vector<std::string> feature_names;
};

LoadedData load_model_data(const fs::path& data_path, const std::string& response,
                           const srb::GlmFamily& family, bool add_intercept) {
  srb::CsvSchema schema;
  schema.response_column = response;
  srb::TabularDataset ds = srb::load_csv(data_path, schema);

  Eigen::MatrixXd features = ds.feature_matrix();
  std::vector<std::string> names = ds.feature_names();
  if (add_intercept) {
    Eigen::MatrixXd with_icpt(features.rows(), features.cols() + 1);
    with_icpt.col(0).setOnes();
    with_icpt.rightCols(features.cols()) = features;
    features = std::move(with_icpt);
    names.insert(names.begin(), "(intercept)");
  }

  Eigen::VectorXd y = ds.columns[*ds.response];
  srb::ResponseVector resp = [&] {
    switch (family.response_kind()) {
      case srb::ResponseKind::binary: return srb::ResponseVector::binary(std::move(y));
      case srb::ResponseKind::count: return srb::ResponseVector::count(std::move(y));
      default: return srb::ResponseVector::continuous(std::move(y));
    }
  }();
  return LoadedData{srb::DesignMatrix(std::move(features)), std::move(resp),
                    std::move(names)};
}

srb::FittedModel fit_by_family(const LoadedData& data, const srb::GlmFamily& family,
                               const srb::IrlsOptions& options) {
  if (family.is_gaussian()) return srb::fit_ols(data.X, data.Y);
  return srb::fit_irls(data.X, data.Y, family, options);
}

json fit_summary_json(const srb::FittedModel& fit, const srb::ResidualSet& rs,
                      const std::vector<std::string>& names) {
  json j;
  j["family"] = std::string(fit.family.name());
  j["beta_hat"] = std::vector<double>(fit.beta_hat.data(),
                                      fit.beta_hat.data() + fit.beta_hat.size());
  j["feature_names"] = names;
  j["converged"] = fit.converged;
  j["iterations"] = fit.iterations;
  j["sigma2_hat"] = rs.sigma2_hat;
  j["hat_diag"] = {{"min", fit.hat_diag.minCoeff()},
                   {"max", fit.hat_diag.maxCoeff()},
                   {"sum", fit.hat_diag.sum()}};
  return j;
}

// ---------------------------------------------------------------- fit ----

struct FitArgs {
  std::string data, response, family = "gaussian", output = ".";
  double tol = 1e-8;
  int max_iter = 50;
  bool add_intercept = false;
};

int cmd_fit(const FitArgs& args) {
  srb::GlmFamily family = srb::GlmFamily::from_name(args.family);
  LoadedData data = load_model_data(args.data, args.response, family,
                                    args.add_intercept);
  srb::FittedModel fit =
      fit_by_family(data, family, {.tol = args.tol, .max_iter = args.max_iter});
  srb::ResidualSet rs = family.is_gaussian()
                            ? srb::centered_modified_residuals(fit, data.Y)
                            : srb::centered_pearson_residuals(fit, data.Y);

  json config{{"command", "fit"},          {"data", args.data},
              {"response", args.response}, {"family", args.family},
              {"tol", args.tol},           {"max_iter", args.max_iter},
              {"add_intercept", args.add_intercept}};
  json out = fit_summary_json(fit, rs, data.feature_names);
  out["meta"] = meta_json(config, fnv1a64_file(args.data));

  fs::path dir = prepare_output_dir(args.output);
  std::string text = out.dump(2) + "\n";
  write_text(dir / "fit.json", text);
  std::cout << text;
  return 0;
}

// ---------------------------------------------------------- bootstrap ----

struct BootstrapArgs {
  std::string data, response, family = "gaussian", method = "srb", output = ".";
  double gamma = -1.0;
  std::size_t b = 0;
  std::size_t resamples = 100;
  double level = 0.95;
  std::uint64_t seed = 12345;
  int threads = 0;
  bool emit_betas = false;
  bool add_intercept = false;
  double tol = 1e-8;
  int max_iter = 50;
  std::string root = "l2";
  int coefficient = 0;
};

int cmd_bootstrap(const BootstrapArgs& args) {
  srb::GlmFamily family = srb::GlmFamily::from_name(args.family);
  LoadedData data = load_model_data(args.data, args.response, family,
                                    args.add_intercept);
  srb::FittedModel fit =
      fit_by_family(data, family, {.tol = args.tol, .max_iter = args.max_iter});
  srb::ResidualSet rs = family.is_gaussian()
                            ? srb::centered_modified_residuals(fit, data.Y)
                            : srb::centered_pearson_residuals(fit, data.Y);

  srb::BootstrapConfig cfg;
  if (args.method == "rb") {
    cfg.b = static_cast<std::size_t>(data.X.n());
  } else if (args.method == "srb") {
    if (args.b > 0 && args.gamma > 0)
      throw srb::DataError("--b and --gamma are mutually exclusive");
    if (args.b > 0) {
      cfg.b = args.b;
    } else if (args.gamma > 0) {
      cfg.gamma = args.gamma;
    } else {
      throw srb::DataError("srb needs --gamma or --b");
    }
  } else {
    throw srb::DataError("unknown method '" + args.method + "' (rb or srb)");
  }
  cfg.replicates = args.resamples;
  cfg.quantile_level = args.level;
  cfg.seed = srb::RngStream(args.seed, 0);
  cfg.threads = srb::resolve_threads(args.threads);
  cfg.retain_betas = args.emit_betas;
  if (args.root == "l2") {
    cfg.root.kind = srb::RootStat::Kind::l2_distance;
  } else if (args.root == "coef") {
    cfg.root.kind = srb::RootStat::Kind::per_coefficient;
    cfg.root.coefficient = args.coefficient;
  } else {
    throw srb::DataError("unknown root '" + args.root + "' (l2 or coef)");
  }

  srb::BootstrapResult res = srb::run_bootstrap(fit, data.X, rs, cfg);
  if (res.b_below_sqrt_n) {
    std::cerr << "warning: b = " << res.b_used
              << " is at or below sqrt(n); theory wants b >> sqrt(n)\n";
  }

  json config{{"command", "bootstrap"},
              {"data", args.data},
              {"response", args.response},
              {"family", args.family},
              {"method", args.method},
              {"resamples", args.resamples},
              {"level", args.level},
              {"seed", args.seed},
              {"threads", cfg.threads},
              {"root", args.root},
              {"add_intercept", args.add_intercept}};
  if (args.gamma > 0) config["gamma"] = args.gamma;
  if (args.b > 0) config["b"] = args.b;

  json out;
  out["meta"] = meta_json(config, fnv1a64_file(args.data));
  out["q_hat"] = res.q_hat;
  out["b"] = res.b_used;
  out["replicates"] = res.replicates;
  out["level"] = res.quantile_level;
  out["b_below_sqrt_n"] = res.b_below_sqrt_n;
  out["timing"] = {{"overhead_seconds", res.overhead_seconds},
                   {"loop_seconds", res.loop_seconds},
                   {"per_replicate_seconds", res.per_replicate_seconds}};
  out["sigma2_hat"] = rs.sigma2_hat;

  fs::path dir = prepare_output_dir(args.output);
  std::string text = out.dump(2) + "\n";
  write_text(dir / "bootstrap.json", text);

  {
    std::ofstream roots(dir / "roots.csv", std::ios::binary);
    roots << "root\n";
    roots.precision(17);
    for (double r : res.roots) roots << r << '\n';
  }
  if (res.betas_star) {
    std::ofstream betas(dir / "betas.csv", std::ios::binary);
    betas.precision(17);
    for (std::size_t j = 0; j < data.feature_names.size(); ++j) {
      if (j) betas << ',';
      betas << data.feature_names[j];
    }
    betas << '\n';
    for (Eigen::Index i = 0; i < res.betas_star->rows(); ++i) {
      for (Eigen::Index j = 0; j < res.betas_star->cols(); ++j) {
        if (j) betas << ',';
        betas << (*res.betas_star)(i, j);
      }
      betas << '\n';
    }
  }
  std::cout << text;
  return 0;
}

// ----------------------------------------------------------- simulate ----

srb::SimDesign parse_design(const fs::path& path, int thread_override) {
  std::ifstream in(path);
  if (!in) throw srb::DataError("cannot open design file '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw srb::DataError("design file is not valid JSON: " + std::string(e.what()));
  }

  std::string family_name = j.value("family", "gaussian");
  srb::GlmFamily family = srb::GlmFamily::from_name(family_name);
  srb::SimDesign d = family.is_gaussian()
                         ? srb::SimDesign::desk_linear()
                         : srb::SimDesign::desk_glm(family.id());

  if (j.contains("n")) d.n = j["n"].get<std::size_t>();
  if (j.contains("p")) d.p = j["p"].get<std::size_t>();
  if (j.contains("beta")) {
    std::vector<double> beta = j["beta"].get<std::vector<double>>();
    d.beta_true = Eigen::Map<Eigen::VectorXd>(beta.data(),
                                              static_cast<Eigen::Index>(beta.size()));
  }
  if (j.contains("covariates")) {
    std::string law = j["covariates"].get<std::string>();
    if (law == "pareto") {
      d.covariates = srb::CovariateLaw::pareto(j.value("pareto_alpha", 3.0));
    } else if (law == "uniform") {
      d.covariates = srb::CovariateLaw::uniform();
    } else {
      throw srb::DataError("unknown covariate law '" + law + "'");
    }
  }
  if (j.contains("noise")) {
    std::string noise = j["noise"].get<std::string>();
    if (noise == "chisq1-centered") {
      d.noise = srb::NoiseLaw::chisq1_centered;
    } else if (noise == "family-intrinsic") {
      d.noise = srb::NoiseLaw::family_intrinsic;
    } else {
      throw srb::DataError("unknown noise law '" + noise + "'");
    }
  }
  d.noise_scale = j.value("noise_scale", d.noise_scale);
  d.quantile_level = j.value("quantile_level", d.quantile_level);
  if (j.contains("gamma_grid"))
    d.gamma_grid = j["gamma_grid"].get<std::vector<double>>();
  d.replicates = j.value("replicates", d.replicates);
  d.datasets = j.value("datasets", d.datasets);
  d.iterations = j.value("iterations", d.iterations);
  d.master_seed = j.value("master_seed", d.master_seed);
  d.oracle_mc = j.value("oracle_mc", d.oracle_mc);
  if (j.contains("oracle_q")) d.oracle_q = j["oracle_q"].get<double>();
  d.irls.tol = j.value("tol", d.irls.tol);
  d.irls.max_iter = j.value("max_iter", d.irls.max_iter);
  d.threads = thread_override > 0 ? thread_override
                                  : j.value("threads", 0);
  d.threads = srb::resolve_threads(d.threads);
  return d;
}

struct SimulateArgs {
  std::string design, output = ".";
  int threads = 0;
};

int cmd_simulate(const SimulateArgs& args) {
  srb::SimDesign design = parse_design(args.design, args.threads);
  fs::path dir = prepare_output_dir(args.output);

  json config{{"command", "simulate"}, {"design", args.design},
              {"threads", design.threads}};
  json meta = meta_json(config, fnv1a64_file(args.design));

  // Long rows are flushed as they complete so a late failure still leaves
  // partial results on disk.
  std::vector<srb::ExperimentCell> partial;
  try {
    srb::ExperimentReport report = srb::run_experiment(
        design, [&](const srb::ExperimentCell& cell) { partial.push_back(cell); });

    std::ostringstream csv, long_csv, js;
    srb::write_report_csv(report, csv);
    srb::write_report_long_csv(report, long_csv);
    srb::write_report_json(report, js, meta.dump());
    write_text(dir / "report.csv", csv.str());
    write_text(dir / "report_long.csv", long_csv.str());
    write_text(dir / "report.json", js.str());
    std::cout << csv.str();
    std::cout << "oracle_q=" << report.oracle_q << "\n";
    std::cout << "wrote " << (dir / "report.csv").string() << ", report_long.csv, report.json\n";
    return 0;
  } catch (...) {
    if (!partial.empty()) {
      std::ostringstream long_csv;
      long_csv << "method,gamma,error,time\n";
      long_csv.precision(17);
      for (const auto& cell : partial) {
        long_csv << cell.method << ',';
        if (cell.gamma >= 0) long_csv << cell.gamma;
        long_csv << ',' << 100.0 * cell.error << ',' << cell.seconds << '\n';
      }
      write_text(dir / "report_long.partial.csv", long_csv.str());
      std::cerr << "flushed " << partial.size() << " completed cells to "
                << (dir / "report_long.partial.csv").string() << "\n";
    }
    throw;
  }
}

// --------------------------------------------------------- preprocess ----

struct PreprocessArgs {
  std::string data, response, output = ".";
  std::vector<double> classes;
  double vif_threshold = 2.0;
};

int cmd_preprocess(const PreprocessArgs& args) {
  srb::CsvSchema schema;
  schema.response_column = args.response;
  srb::TabularDataset ds = srb::load_csv(args.data, schema);
  std::size_t rows_in = ds.rows();

  if (!args.classes.empty()) {
    if (args.classes.size() != 2)
      throw srb::DataError("--classes needs exactly two class codes");
    ds = srb::subset_binary(ds, args.classes[0], args.classes[1]);
  }

  auto [no_constants, constant_log] = srb::drop_constant_columns(ds);
  auto [pruned, vif_log] = srb::iterative_vif_prune(no_constants, args.vif_threshold);

  srb::PruneLog combined;
  combined.entries = constant_log.entries;
  combined.entries.insert(combined.entries.end(), vif_log.entries.begin(),
                          vif_log.entries.end());
  combined.stopped_early = vif_log.stopped_early;

  fs::path dir = prepare_output_dir(args.output);
  srb::write_csv(pruned, dir / "pruned.csv");

  json config{{"command", "preprocess"},
              {"data", args.data},
              {"response", args.response},
              {"classes", args.classes},
              {"vif_threshold", args.vif_threshold}};
  json out = json::parse(combined.to_json());
  out["meta"] = meta_json(config, fnv1a64_file(args.data));
  out["rows_in"] = rows_in;
  out["rows_out"] = pruned.rows();
  out["features_out"] = pruned.n_columns() - (pruned.response ? 1 : 0);
  write_text(dir / "prune_log.json", out.dump(2) + "\n");

  std::cout << "kept " << pruned.rows() << " rows, "
            << out["features_out"].get<std::size_t>() << " features; removed "
            << combined.entries.size() << " columns\n";
  std::cout << "wrote " << (dir / "pruned.csv").string() << ", prune_log.json\n";
  return 0;
}

// ---------------------------------------------------------- benchmark ----

struct BenchmarkArgs {
  std::string family = "gaussian", output = ".";
  std::size_t n = 100000, p = 50, resamples = 200;
  std::vector<double> gammas{0.5, 0.6, 0.7, 0.8, 0.9};
  std::uint64_t seed = 1;
  int threads = 0;
};

int cmd_benchmark(const BenchmarkArgs& args) {
  srb::GlmFamily family = srb::GlmFamily::from_name(args.family);
  srb::SimDesign design = family.is_gaussian()
                              ? srb::SimDesign::desk_linear()
                              : srb::SimDesign::desk_glm(family.id());
  design.n = args.n;
  design.p = args.p;
  design.master_seed = args.seed;

  srb::Dataset ds = srb::gen_dataset(design, 0);
  srb::FittedModel fit = srb::fit_dataset(design, ds);
  srb::ResidualSet rs = srb::residuals_for(fit, ds.Y);

  struct Row {
    std::string method;
    double gamma;
    srb::BootstrapResult res;
  };
  std::vector<Row> rows;
  auto run = [&](const std::string& method, double gamma) {
    srb::BootstrapConfig cfg;
    if (gamma > 0) {
      cfg.gamma = gamma;
    } else {
      cfg.b = args.n;
    }
    cfg.replicates = args.resamples;
    cfg.quantile_level = design.quantile_level;
    cfg.seed = srb::RngStream(args.seed, 1);
    cfg.threads = srb::resolve_threads(args.threads);
    rows.push_back({method, gamma, srb::run_bootstrap(fit, ds.X, rs, cfg)});
  };
  run("rb", -1.0);
  for (double g : args.gammas) run("srb", g);

  std::ostringstream csv;
  csv << "method,gamma,b,overhead_sec,loop_sec,per_replicate_sec,q_hat\n";
  csv.precision(17);
  for (const auto& row : rows) {
    csv << row.method << ',';
    if (row.gamma > 0) csv << row.gamma;
    csv << ',' << row.res.b_used << ',' << row.res.overhead_seconds << ','
        << row.res.loop_seconds << ',' << row.res.per_replicate_seconds << ','
        << row.res.q_hat << '\n';
  }

  json config{{"command", "benchmark"}, {"family", args.family},
              {"n", args.n},            {"p", args.p},
              {"resamples", args.resamples}, {"gammas", args.gammas},
              {"seed", args.seed}};
  json out;
  out["meta"] = meta_json(config, "fnv1a64:0");
  json jrows = json::array();
  for (const auto& row : rows) {
    json jr{{"method", row.method},
            {"b", row.res.b_used},
            {"overhead_sec", row.res.overhead_seconds},
            {"loop_sec", row.res.loop_seconds},
            {"per_replicate_sec", row.res.per_replicate_seconds},
            {"q_hat", row.res.q_hat}};
    if (row.gamma > 0) jr["gamma"] = row.gamma;
    jrows.push_back(std::move(jr));
  }
  out["rows"] = std::move(jrows);

  fs::path dir = prepare_output_dir(args.output);
  write_text(dir / "benchmark.csv", csv.str());
  write_text(dir / "benchmark.json", out.dump(2) + "\n");
  std::cout << csv.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subsampled residual bootstrap for generalized linear models"};
  app.set_config("--config", "", "read options from an INI/TOML config file");
  app.require_subcommand(1);

  FitArgs fit_args;
  CLI::App* fit = app.add_subcommand("fit", "fit a GLM and summarize it as JSON");
  fit->add_option("--data", fit_args.data, "input CSV")->required();
  fit->add_option("--response", fit_args.response, "response column name")->required();
  fit->add_option("--family", fit_args.family, "gaussian|logistic|poisson");
  fit->add_option("--tol", fit_args.tol, "IRLS convergence tolerance");
  fit->add_option("--max-iter", fit_args.max_iter, "IRLS iteration cap");
  fit->add_flag("--add-intercept", fit_args.add_intercept, "prepend a ones column");
  fit->add_option("--output", fit_args.output, "output directory");

  BootstrapArgs boot_args;
  CLI::App* boot = app.add_subcommand("bootstrap", "estimate a root-statistic quantile");
  boot->add_option("--data", boot_args.data, "input CSV")->required();
  boot->add_option("--response", boot_args.response, "response column name")->required();
  boot->add_option("--family", boot_args.family, "gaussian|logistic|poisson");
  boot->add_option("--method", boot_args.method, "rb|srb");
  boot->add_option("--gamma", boot_args.gamma, "subsample exponent, b = ceil(n^gamma)");
  boot->add_option("--b", boot_args.b, "subsample size");
  boot->add_option("--resamples", boot_args.resamples, "bootstrap replicates R");
  boot->add_option("--level", boot_args.level, "quantile level in (0,1)");
  boot->add_option("--seed", boot_args.seed, "master seed");
  boot->add_option("--threads", boot_args.threads, "worker threads (0 = all cores)")
      ->envname("SRB_THREADS");
  boot->add_flag("--emit-betas", boot_args.emit_betas, "write the R x p replicate matrix");
  boot->add_flag("--add-intercept", boot_args.add_intercept, "prepend a ones column");
  boot->add_option("--tol", boot_args.tol, "IRLS convergence tolerance");
  boot->add_option("--max-iter", boot_args.max_iter, "IRLS iteration cap");
  boot->add_option("--root", boot_args.root, "root statistic: l2|coef");
  boot->add_option("--coef", boot_args.coefficient, "coefficient index for --root coef");
  boot->add_option("--output", boot_args.output, "output directory");

  SimulateArgs sim_args;
  CLI::App* sim = app.add_subcommand("simulate", "run the full error-vs-runtime protocol");
  sim->add_option("--design", sim_args.design, "design JSON file")->required();
  sim->add_option("--threads", sim_args.threads, "worker threads (0 = all cores)")
      ->envname("SRB_THREADS");
  sim->add_option("--output", sim_args.output, "output directory");

  PreprocessArgs prep_args;
  CLI::App* prep = app.add_subcommand("preprocess",
                                      "subset classes, drop constants, prune by VIF");
  prep->add_option("--data", prep_args.data, "input CSV")->required();
  prep->add_option("--response", prep_args.response, "response column name")->required();
  prep->add_option("--classes", prep_args.classes,
                   "two response codes to keep (recoded 0/1)")
      ->expected(2);
  prep->add_option("--vif-threshold", prep_args.vif_threshold, "VIF removal threshold");
  prep->add_option("--output", prep_args.output, "output directory");

  BenchmarkArgs bench_args;
  CLI::App* bench = app.add_subcommand("benchmark", "time rb vs srb on synthetic data");
  bench->add_option("--family", bench_args.family, "gaussian|logistic|poisson");
  bench->add_option("--n", bench_args.n, "rows");
  bench->add_option("--p", bench_args.p, "features");
  bench->add_option("--resamples", bench_args.resamples, "replicates per method");
  bench->add_option("--gammas", bench_args.gammas, "srb exponents");
  bench->add_option("--seed", bench_args.seed, "master seed");
  bench->add_option("--threads", bench_args.threads, "worker threads (0 = all cores)")
      ->envname("SRB_THREADS");
  bench->add_option("--output", bench_args.output, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*fit) return cmd_fit(fit_args);
    if (*boot) return cmd_bootstrap(boot_args);
    if (*sim) return cmd_simulate(sim_args);
    if (*prep) return cmd_preprocess(prep_args);
    if (*bench) return cmd_benchmark(bench_args);
  } catch (const srb::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const srb::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
