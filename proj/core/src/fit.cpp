#include "srb/fit.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "srb/errors.hpp"

namespace srb {

namespace {

constexpr double kBernoulliEtaLimit = 35.0;

// Upper-triangular factor from a Householder QR; signs of the rows are
// irrelevant since only R'R is used.
Eigen::MatrixXd factor_from_qr(const Eigen::HouseholderQR<Eigen::MatrixXd>& qr,
                               Eigen::Index p) {
  Eigen::MatrixXd r = qr.matrixQR().topRows(p).triangularView<Eigen::Upper>();
  double dmax = r.diagonal().cwiseAbs().maxCoeff();
  double dmin = r.diagonal().cwiseAbs().minCoeff();
  if (!(dmax > 0) || dmin / dmax < 1e-13) {
    throw NumericalError("singular (weighted) Gram matrix in least squares solve");
  }
  return r;
}

// h_i = || R^{-T} (sqrt(w_i) x_i) ||^2 for all rows at once.
Eigen::VectorXd leverages(const Eigen::MatrixXd& X, const Eigen::VectorXd& sqrt_w,
                          const Eigen::MatrixXd& R) {
  Eigen::MatrixXd bt = (sqrt_w.asDiagonal() * X).transpose();  // p x n
  R.triangularView<Eigen::Upper>().transpose().solveInPlace(bt);
  return bt.colwise().squaredNorm().transpose();
}

void check_family_response(const GlmFamily& family, const ResponseVector& Y) {
  if (Y.kind() != family.response_kind()) {
    throw DataError(std::string("response kind does not match family '") +
                    std::string(family.name()) + "'");
  }
}

}  // namespace

void GramFactor::solve_in_place(Eigen::Ref<Eigen::MatrixXd> rhs) const {
  R.triangularView<Eigen::Upper>().transpose().solveInPlace(rhs);
  R.triangularView<Eigen::Upper>().solveInPlace(rhs);
}

Eigen::VectorXd GramFactor::solve(Eigen::VectorXd rhs) const {
  R.triangularView<Eigen::Upper>().transpose().solveInPlace(rhs);
  R.triangularView<Eigen::Upper>().solveInPlace(rhs);
  return rhs;
}

Eigen::MatrixXd GramFactor::solve_matrix(Eigen::MatrixXd rhs) const {
  solve_in_place(rhs);
  return rhs;
}

FittedModel fit_ols(const DesignMatrix& X, const ResponseVector& Y) {
  if (Y.size() != X.n()) throw DataError("response length does not match design");
  if (Y.kind() != ResponseKind::continuous)
    throw DataError("fit_ols requires a continuous response");

  const Eigen::MatrixXd& x = X.data();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
  Eigen::MatrixXd r = factor_from_qr(qr, X.p());

  FittedModel fit;
  fit.family = GlmFamily::gaussian();
  fit.beta_hat = qr.solve(Y.values());
  if (!fit.beta_hat.allFinite()) throw NumericalError("non-finite OLS solution");
  fit.eta_hat = x * fit.beta_hat;
  fit.mu_hat = fit.eta_hat;
  fit.v_hat = Eigen::VectorXd::Ones(X.n());
  fit.sqrt_v = Eigen::VectorXd::Ones(X.n());
  fit.hat_diag = leverages(x, fit.sqrt_v, r);
  fit.xtwx = GramFactor{std::move(r)};
  fit.iterations = 0;
  fit.converged = true;
  return fit;
}

FittedModel fit_irls(const DesignMatrix& X, const ResponseVector& Y,
                     const GlmFamily& family, const IrlsOptions& options) {
  if (Y.size() != X.n()) throw DataError("response length does not match design");
  check_family_response(family, Y);
  if (options.max_iter < 1) throw DataError("fit_irls: max_iter must be >= 1");

  const Eigen::MatrixXd& x = X.data();
  const Eigen::VectorXd& y = Y.values();
  const Eigen::Index n = X.n();
  const Eigen::Index p = X.p();

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd eta = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd mu = family.mean(eta);
  Eigen::VectorXd v = family.variance(mu);

  FittedModel fit;
  fit.family = family;
  bool converged = false;
  int iter = 0;

  while (iter < options.max_iter) {
    ++iter;
    Eigen::VectorXd sqrt_v = v.cwiseSqrt();
    Eigen::VectorXd z = eta + (y - mu).cwiseQuotient(v);
    Eigen::MatrixXd b = sqrt_v.asDiagonal() * x;
    Eigen::VectorXd rhs = sqrt_v.cwiseProduct(z);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(b);
    factor_from_qr(qr, p);  // conditioning check only
    Eigen::VectorXd beta_next = qr.solve(rhs);
    double delta = (beta_next - beta).lpNorm<Eigen::Infinity>();

    beta = beta_next;
    eta = x * beta;
    if (family.id() == Family::bernoulli_logit &&
        eta.cwiseAbs().maxCoeff() > kBernoulliEtaLimit) {
      throw DivergenceError("logistic fit diverged: |eta| exceeded 35", iter);
    }
    mu = family.mean(eta);
    if (family.id() == Family::poisson_log && !mu.allFinite()) {
      throw DivergenceError("poisson fit diverged: mean overflow", iter);
    }
    v = family.variance(mu);
    fit.loglik_trace.push_back(family.loglik(y, eta));

    if (delta <= options.tol) {
      converged = true;
      break;
    }
  }

  if (!beta.allFinite()) throw NumericalError("non-finite IRLS solution");

  // Refresh the factor and leverages at the returned estimate, so hat_diag
  // and X'VX correspond to beta_hat rather than the previous iterate.
  Eigen::VectorXd sqrt_v = v.cwiseSqrt();
  Eigen::MatrixXd b = sqrt_v.asDiagonal() * x;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(b);
  Eigen::MatrixXd r = factor_from_qr(qr, p);

  fit.beta_hat = std::move(beta);
  fit.eta_hat = std::move(eta);
  fit.mu_hat = std::move(mu);
  fit.v_hat = std::move(v);
  fit.hat_diag = leverages(x, sqrt_v, r);
  fit.sqrt_v = std::move(sqrt_v);
  fit.xtwx = GramFactor{std::move(r)};
  fit.iterations = iter;
  fit.converged = converged;
  return fit;
}

Eigen::VectorXd hat_diagonals(const DesignMatrix& X, const Eigen::VectorXd& weights) {
  if (weights.size() != X.n()) throw DataError("weights length does not match design");
  if ((weights.array() < 0).any()) throw DataError("hat_diagonals: weights must be >= 0");

  Eigen::VectorXd sqrt_w = weights.cwiseSqrt();
  Eigen::MatrixXd b = sqrt_w.asDiagonal() * X.data();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(b);
  Eigen::MatrixXd r = factor_from_qr(qr, X.p());
  return leverages(X.data(), sqrt_w, r);
}

}  // namespace srb
