#include "srb/residuals.hpp"

#include <string>

#include "srb/errors.hpp"

namespace srb {

namespace {

constexpr double kLeverageLimit = 1.0 - 1e-12;

void check_leverage(const Eigen::VectorXd& h) {
  for (Eigen::Index i = 0; i < h.size(); ++i) {
    if (!(h[i] < kLeverageLimit)) {
      throw NumericalError("leverage-one observation at index " + std::to_string(i) +
                           " (h=" + std::to_string(h[i]) + ")");
    }
  }
}

ResidualSet center_and_scale(Eigen::VectorXd r, ResidualKind kind) {
  r.array() -= r.mean();
  ResidualSet rs;
  rs.sigma2_hat = r.squaredNorm() / static_cast<double>(r.size());
  rs.values = std::move(r);
  rs.kind = kind;
  return rs;
}

}  // namespace

ResidualSet centered_modified_residuals(const FittedModel& fit, const ResponseVector& Y) {
  if (!fit.family.is_gaussian())
    throw DataError("centered_modified_residuals requires a gaussian fit");
  if (Y.size() != fit.n()) throw DataError("response length does not match fit");
  check_leverage(fit.hat_diag);

  Eigen::VectorXd eps = Y.values() - fit.mu_hat;
  Eigen::VectorXd modified =
      eps.array() / (1.0 - fit.hat_diag.array()).sqrt();
  return center_and_scale(std::move(modified), ResidualKind::linear_modified);
}

ResidualSet centered_pearson_residuals(const FittedModel& fit, const ResponseVector& Y) {
  if (fit.family.is_gaussian())
    throw DataError("centered_pearson_residuals requires a bernoulli or poisson fit");
  if (Y.size() != fit.n()) throw DataError("response length does not match fit");
  for (Eigen::Index i = 0; i < fit.v_hat.size(); ++i) {
    if (!(fit.v_hat[i] > 0)) {
      throw NumericalError("nonpositive variance weight at index " + std::to_string(i));
    }
  }
  check_leverage(fit.hat_diag);

  Eigen::VectorXd eps = Y.values() - fit.mu_hat;
  Eigen::VectorXd standardized =
      eps.array() / (fit.v_hat.array() * (1.0 - fit.hat_diag.array())).sqrt();
  return center_and_scale(std::move(standardized), ResidualKind::glm_pearson);
}

}  // namespace srb
