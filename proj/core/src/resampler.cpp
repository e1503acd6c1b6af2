#include "srb/resampler.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "srb/errors.hpp"
#include "srb/parallel.hpp"

namespace srb {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

BootstrapOperator build_operator(const FittedModel& fit, const DesignMatrix& X,
                                 std::size_t b) {
  const std::size_t n = static_cast<std::size_t>(X.n());
  const Eigen::Index p = X.p();
  if (fit.n() != X.n()) throw DataError("fit and design matrix disagree on n");
  if (b < 1 || b > n) {
    throw DataError("subsample size b=" + std::to_string(b) +
                    " out of range [1, " + std::to_string(n) + "]");
  }
  if (fit.xtwx.empty()) throw DataError("fit carries no Gram factor");

  auto start = Clock::now();
  const Eigen::MatrixXd& x = X.data();

  // Fold: row i of sqrt(v) X lands in column i mod b. Full blocks and the
  // partial tail block are covered by the same congruence.
  Eigen::MatrixXd fold = Eigen::MatrixXd::Zero(p, static_cast<Eigen::Index>(b));
  for (std::size_t i = 0; i < n; ++i) {
    fold.col(static_cast<Eigen::Index>(i % b)) +=
        fit.sqrt_v[static_cast<Eigen::Index>(i)] *
        x.row(static_cast<Eigen::Index>(i)).transpose();
  }

  BootstrapOperator op;
  op.A = fit.xtwx.solve_matrix(fold);
  op.fold = std::move(fold);
  op.b = b;
  op.m_full = n / b;
  op.r_tail = n - op.m_full * b;
  op.n = n;
  op.beta_hat = fit.beta_hat;
  op.build_seconds = seconds_since(start);
  return op;
}

Eigen::VectorXd draw_resample_values(const ResidualSet& rs, std::size_t b,
                                     RngStream& rng) {
  const std::size_t n = static_cast<std::size_t>(rs.size());
  Eigen::VectorXd eps(static_cast<Eigen::Index>(b));
  for (std::size_t j = 0; j < b; ++j) {
    eps[static_cast<Eigen::Index>(j)] =
        rs.values[static_cast<Eigen::Index>(rng.next_index(n))];
  }
  return eps;
}

CoefficientVector replicate_from_values(const BootstrapOperator& op,
                                        const Eigen::VectorXd& eps_b) {
  if (static_cast<std::size_t>(eps_b.size()) != op.b)
    throw DataError("resample length does not match operator subsample size");
  return op.beta_hat + op.A * eps_b;
}

CoefficientVector srb_replicate(const BootstrapOperator& op, const ResidualSet& rs,
                                RngStream& rng) {
  return replicate_from_values(op, draw_resample_values(rs, op.b, rng));
}

CoefficientVector rb_replicate(const BootstrapOperator& op, const ResidualSet& rs,
                               RngStream& rng) {
  if (op.b != op.n)
    throw DataError("rb_replicate requires a full-size operator (b == n)");
  return replicate_from_values(op, draw_resample_values(rs, op.b, rng));
}

double RootStat::operator()(const Eigen::VectorXd& delta) const {
  if (custom) return custom(delta);
  switch (kind) {
    case Kind::l2_distance:
      return delta.norm();
    case Kind::per_coefficient:
      if (coefficient < 0 || coefficient >= delta.size())
        throw DataError("root coefficient index out of range");
      return std::abs(delta[coefficient]);
  }
  return delta.norm();
}

std::size_t BootstrapConfig::resolve_b(std::size_t n) const {
  if (b > 0 && gamma > 0)
    throw DataError("specify either b or gamma, not both");
  std::size_t resolved = b;
  if (resolved == 0) {
    if (gamma <= 0) throw DataError("neither b nor gamma specified");
    resolved = static_cast<std::size_t>(
        std::ceil(std::pow(static_cast<double>(n), gamma)));
  }
  if (resolved < 1) resolved = 1;
  if (resolved > n) {
    throw DataError("subsample size b=" + std::to_string(resolved) +
                    " exceeds n=" + std::to_string(n));
  }
  return resolved;
}

std::size_t quantile_rank(std::size_t count, double level) {
  if (count == 0) throw DataError("quantile of an empty sample");
  if (!(level > 0.0 && level < 1.0))
    throw DataError("quantile level must lie in (0, 1)");
  auto rank = static_cast<std::size_t>(
      std::ceil(level * static_cast<double>(count)));
  if (rank < 1) rank = 1;
  if (rank > count) rank = count;
  return rank;
}

double empirical_quantile(std::vector<double> values, double level) {
  std::size_t rank = quantile_rank(values.size(), level);
  std::nth_element(values.begin(), values.begin() + (rank - 1), values.end());
  return values[rank - 1];
}

BootstrapResult run_bootstrap(const FittedModel& fit, const DesignMatrix& X,
                              const ResidualSet& rs, const BootstrapConfig& cfg) {
  if (rs.size() != X.n()) throw DataError("residual set does not match design");
  if (cfg.replicates < 1) throw DataError("need at least one replicate");

  const std::size_t n = static_cast<std::size_t>(X.n());
  const std::size_t b = cfg.resolve_b(n);
  const std::size_t R = cfg.replicates;

  BootstrapResult result;
  result.b_used = b;
  result.replicates = R;
  result.quantile_level = cfg.quantile_level;
  result.seed_master = cfg.seed.master_seed();
  result.seed_stream = cfg.seed.stream_id();
  result.b_below_sqrt_n = b * b <= n;

  if (!cfg.root.custom && cfg.root.kind == RootStat::Kind::per_coefficient &&
      (cfg.root.coefficient < 0 || cfg.root.coefficient >= fit.p())) {
    throw DataError("root coefficient index out of range");
  }

  BootstrapOperator op = build_operator(fit, X, b);
  result.overhead_seconds = op.build_seconds;

  result.roots.assign(R, 0.0);
  if (cfg.retain_betas) {
    result.betas_star.emplace(static_cast<Eigen::Index>(R), fit.p());
  }

  auto loop_start = Clock::now();
  parallel_for(R, cfg.threads, [&](std::size_t j) {
    RngStream stream = cfg.seed.derived(j);
    Eigen::VectorXd eps = draw_resample_values(rs, b, stream);
    Eigen::VectorXd delta = op.A * eps;
    result.roots[j] = cfg.root(delta);
    if (result.betas_star) {
      result.betas_star->row(static_cast<Eigen::Index>(j)) =
          (op.beta_hat + delta).transpose();
    }
  });
  result.loop_seconds = seconds_since(loop_start);
  result.per_replicate_seconds = result.loop_seconds / static_cast<double>(R);

  result.q_hat = empirical_quantile(result.roots, cfg.quantile_level);
  return result;
}

Eigen::MatrixXd bootstrap_variance(const FittedModel& fit, const DesignMatrix& X,
                                   const ResidualSet& rs) {
  if (fit.n() != X.n() || rs.size() != X.n())
    throw DataError("fit, design and residual set disagree on n");
  Eigen::MatrixXd inv =
      fit.xtwx.solve_matrix(Eigen::MatrixXd::Identity(fit.p(), fit.p()));
  return rs.sigma2_hat * inv;
}

double starred_sigma(const FittedModel& fit, const DesignMatrix& X,
                     const BootstrapOperator& op, const Eigen::VectorXd& eps_b) {
  if (!fit.family.is_gaussian())
    throw DataError("starred_sigma is defined for gaussian fits only");
  if (static_cast<std::size_t>(eps_b.size()) != op.b)
    throw DataError("resample length does not match operator subsample size");

  const Eigen::Index n = X.n();
  Eigen::VectorXd delta = op.A * eps_b;
  Eigen::VectorXd x_delta = X.data() * delta;

  // eps_star_hat = eps_concat - X (beta_star - beta_hat)
  double sum = 0.0, sum_sq = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double e = eps_b[static_cast<Eigen::Index>(
                   static_cast<std::size_t>(i) % op.b)] -
               x_delta[i];
    sum += e;
    sum_sq += e * e;
  }
  double inv_n = 1.0 / static_cast<double>(n);
  double mean = sum * inv_n;
  return sum_sq * inv_n - mean * mean;
}

Eigen::MatrixXd normality_pivot(const FittedModel& fit, const BootstrapOperator& op) {
  Eigen::MatrixXd gram = op.fold * op.fold.transpose();  // X' V^{1/2} J'J V^{1/2} X
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  if (eig.info() != Eigen::Success)
    throw NumericalError("eigendecomposition of the fold Gram matrix failed");
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  double lmax = lambda.maxCoeff();
  if (!(lmax > 0) || lambda.minCoeff() < 1e-12 * lmax)
    throw NumericalError("fold Gram matrix is numerically singular");
  Eigen::VectorXd inv_sqrt = lambda.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd g_inv_half =
      eig.eigenvectors() * inv_sqrt.asDiagonal() * eig.eigenvectors().transpose();
  return g_inv_half * fit.xtwx.gram();
}

}  // namespace srb
