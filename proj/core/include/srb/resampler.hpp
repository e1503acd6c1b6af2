#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "srb/design.hpp"
#include "srb/fit.hpp"
#include "srb/residuals.hpp"
#include "srb/rng.hpp"

namespace srb {

// Precomputed resampling operator. A is the p x b matrix
//
//   A = (X'VX)^{-1} X' V^{1/2} J'      (V = I for gaussian fits)
//
// where J' stacks m identity blocks of order b (plus a partial block when b
// does not divide n). J' is never materialized: column j of the fold
// C = X'V^{1/2}J' accumulates sqrt(v_i) x_i over the rows i with
// i == j (mod b). A replicate is then beta_hat + A eps at O(bp) cost.
// At b = n the fold is exactly B' = (V^{1/2}X)', so A is the classical
// one-shot residual bootstrap matrix.
struct BootstrapOperator {
  Eigen::MatrixXd A;     // p x b
  Eigen::MatrixXd fold;  // C = X'V^{1/2}J', p x b; kept for the pivot Gram C C'
  std::size_t b = 0;
  std::size_t m_full = 0;  // complete concatenation blocks
  std::size_t r_tail = 0;  // leftover rows, n - m_full*b
  std::size_t n = 0;
  CoefficientVector beta_hat;
  double build_seconds = 0.0;
};

BootstrapOperator build_operator(const FittedModel& fit, const DesignMatrix& X,
                                 std::size_t b);

// b iid draws with replacement from the residual pool. Exposed so callers
// (and oracles) can share the exact draw path of a replicate.
Eigen::VectorXd draw_resample_values(const ResidualSet& rs, std::size_t b,
                                     RngStream& rng);

// beta_hat + A eps for an already-drawn subsample.
CoefficientVector replicate_from_values(const BootstrapOperator& op,
                                        const Eigen::VectorXd& eps_b);

// One subsampled replicate: draw b residuals, apply the operator. O(bp).
CoefficientVector srb_replicate(const BootstrapOperator& op, const ResidualSet& rs,
                                RngStream& rng);

// Classical residual-bootstrap replicate. Requires a full-size operator
// (op.b == n); the precomputed p x n matrix is the prescribed once-only
// overhead, so each replicate stays O(np). Identical draw and apply path as
// srb_replicate, hence bitwise equal to it at b = n for shared index draws.
CoefficientVector rb_replicate(const BootstrapOperator& op, const ResidualSet& rs,
                               RngStream& rng);

struct RootStat {
  enum class Kind { l2_distance, per_coefficient };
  Kind kind = Kind::l2_distance;
  int coefficient = 0;  // used by per_coefficient
  // Optional custom root T(beta_star - beta_hat); overrides kind when set.
  std::function<double(const Eigen::VectorXd&)> custom;

  double operator()(const Eigen::VectorXd& delta) const;
};

struct BootstrapConfig {
  // Subsample size: either b directly, or gamma with b = ceil(n^gamma).
  // Exactly one must be set; b = n gives classical RB.
  std::size_t b = 0;
  double gamma = -1.0;
  std::size_t replicates = 100;
  double quantile_level = 0.95;
  RootStat root;
  RngStream seed{0, 0};
  int threads = 1;
  bool retain_betas = false;

  std::size_t resolve_b(std::size_t n) const;
};

struct BootstrapResult {
  std::vector<double> roots;  // in replicate order
  double q_hat = 0.0;         // order statistic at rank ceil(R * level)
  std::optional<Eigen::MatrixXd> betas_star;  // R x p, only when requested
  double overhead_seconds = 0.0;       // operator build
  double loop_seconds = 0.0;           // whole replicate loop
  double per_replicate_seconds = 0.0;  // loop_seconds / R
  std::size_t b_used = 0;
  std::size_t replicates = 0;
  double quantile_level = 0.0;
  std::uint64_t seed_master = 0;
  std::uint64_t seed_stream = 0;
  bool b_below_sqrt_n = false;  // theory wants b >> sqrt(n)
};

// Full bootstrap run: builds the operator, draws R replicates (replicate j
// on the seed substream j, so the result is thread-count independent),
// and estimates the requested quantile of the root statistic.
BootstrapResult run_bootstrap(const FittedModel& fit, const DesignMatrix& X,
                              const ResidualSet& rs, const BootstrapConfig& cfg);

// Closed-form replicate covariance sigma2_hat * (X'VX)^{-1}; the centering
// term vanishes because the residual pool is mean-centered.
Eigen::MatrixXd bootstrap_variance(const FittedModel& fit, const DesignMatrix& X,
                                   const ResidualSet& rs);

// Diagnostic variance of the starred residuals for a gaussian fit:
// materializes the concatenated resample, forms
// eps_star_hat = eps_concat - X (beta_star - beta_hat), and returns
// mean(eps_star_hat^2) - mean(eps_star_hat)^2. O(np); not on the fast path.
double starred_sigma(const FittedModel& fit, const DesignMatrix& X,
                     const BootstrapOperator& op, const Eigen::VectorXd& eps_b);

// Pivot matrix P = G^{-1/2} F with F = X'VX and G = C C' (the fold Gram),
// computed by symmetric eigendecomposition of G. Conditional on the data,
// P (beta_star - beta_hat) has covariance sigma2_hat * I, so dividing by
// sigma_n yields an asymptotically standard normal vector. Test-suite
// diagnostic.
Eigen::MatrixXd normality_pivot(const FittedModel& fit, const BootstrapOperator& op);

// Rank ceil(count * level) clamped to [1, count], as a 0-based index + 1.
std::size_t quantile_rank(std::size_t count, double level);

// Order statistic at rank ceil(count * level) of an unsorted sample.
double empirical_quantile(std::vector<double> values, double level);

}  // namespace srb
