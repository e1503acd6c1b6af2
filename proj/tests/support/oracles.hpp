#pragma once

// Independent brute-force references for the test suite. These deliberately
// take the slow definitional route (explicit inverses, explicit projection
// and concatenation matrices) so they share no code path with the library.

#include <Eigen/Dense>
#include <cstddef>

namespace srb::testing {

// (X'X)^{-1} X' y with an explicit inverse.
Eigen::VectorXd ols_normal_equations(const Eigen::MatrixXd& x, const Eigen::VectorXd& y);

// Newton-Raphson directly on the Bernoulli log likelihood.
Eigen::VectorXd newton_bernoulli(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                 double tol = 1e-12, int max_iter = 100);

// Diagonal of sqrt(W) X (X'WX)^{-1} X' sqrt(W), forming the full n x n
// projection.
Eigen::VectorXd explicit_hat_diagonal(const Eigen::MatrixXd& x, const Eigen::VectorXd& w);

// The n x b concatenation matrix J' (stacked identity blocks plus a partial
// tail block), materialized.
Eigen::MatrixXd explicit_j_transpose(std::size_t n, std::size_t b);

// (X'VX)^{-1} X' V^{1/2} J' with explicit inverse and explicit J'.
Eigen::MatrixXd explicit_operator(const Eigen::MatrixXd& x, const Eigen::VectorXd& v,
                                  std::size_t b);

// eps** of length n: the subsample repeated block-wise.
Eigen::VectorXd concatenate_subsample(const Eigen::VectorXd& eps_b, std::size_t n);

// Gaussian full-refit reference: OLS on Y* = X beta_hat + eps_concat.
Eigen::VectorXd full_refit_gaussian(const Eigen::MatrixXd& x,
                                    const Eigen::VectorXd& beta_hat,
                                    const Eigen::VectorXd& eps_concat);

// GLM one-step reference: beta_hat + (B'B)^{-1} B' eps_concat with
// B = V^{1/2} X formed explicitly.
Eigen::VectorXd one_step_glm(const Eigen::MatrixXd& x, const Eigen::VectorXd& v,
                             const Eigen::VectorXd& beta_hat,
                             const Eigen::VectorXd& eps_concat);

// VIF by running every intercept-augmented auxiliary regression through
// explicit normal equations.
Eigen::VectorXd vif_definitional(const Eigen::MatrixXd& features);

}  // namespace srb::testing
