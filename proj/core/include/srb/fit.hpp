#pragma once

#include <Eigen/Core>
#include <vector>

#include "srb/design.hpp"
#include "srb/family.hpp"

namespace srb {

// Triangular factor of the (weighted) Gram matrix: R is upper triangular
// with R'R = X'WX, taken from a Householder QR of sqrt(W)X. Solves go
// through two triangular substitutions; the inverse is never formed.
struct GramFactor {
  Eigen::MatrixXd R;

  bool empty() const { return R.size() == 0; }

  void solve_in_place(Eigen::Ref<Eigen::MatrixXd> rhs) const;
  Eigen::VectorXd solve(Eigen::VectorXd rhs) const;
  Eigen::MatrixXd solve_matrix(Eigen::MatrixXd rhs) const;

  // X'WX reconstructed from the factor.
  Eigen::MatrixXd gram() const { return R.transpose() * R; }
};

struct FittedModel {
  GlmFamily family{Family::gaussian};
  CoefficientVector beta_hat;
  Eigen::VectorXd eta_hat;
  Eigen::VectorXd mu_hat;
  Eigen::VectorXd v_hat;    // variance weights at beta_hat (all ones for gaussian)
  Eigen::VectorXd sqrt_v;   // cached sqrt of v_hat, the row scaling of B = V^{1/2} X
  Eigen::VectorXd hat_diag;
  GramFactor xtwx;          // factor of X'VX (X'X for gaussian) at beta_hat
  int iterations = 0;
  bool converged = false;
  std::vector<double> loglik_trace;  // one entry per IRLS iteration

  Eigen::Index n() const { return eta_hat.size(); }
  Eigen::Index p() const { return beta_hat.size(); }
};

struct IrlsOptions {
  double tol = 1e-8;   // infinity norm of the coefficient update
  int max_iter = 50;
};

// Ordinary least squares through a Householder QR of X. hat_diag holds the
// leverages x_i'(X'X)^{-1}x_i; variance weights are all ones.
FittedModel fit_ols(const DesignMatrix& X, const ResponseVector& Y);

// Iteratively reweighted least squares under the canonical link: working
// response z = eta + (Y - mu)/v, weighted solve refreshed every iteration,
// stopping when the coefficient update drops below tol in infinity norm.
// Throws DivergenceError when the linear predictor saturates (|eta| > 35
// for bernoulli) or the Poisson mean overflows; returns converged = false
// when max_iter is exhausted. The gaussian family is accepted and
// reproduces fit_ols in one iteration.
FittedModel fit_irls(const DesignMatrix& X, const ResponseVector& Y,
                     const GlmFamily& family, const IrlsOptions& options = {});

// Diagonal of the weighted projection: h_i = w_i * x_i'(X'WX)^{-1}x_i,
// computed row by row in O(np^2) without forming the n x n projection.
Eigen::VectorXd hat_diagonals(const DesignMatrix& X, const Eigen::VectorXd& weights);

}  // namespace srb
