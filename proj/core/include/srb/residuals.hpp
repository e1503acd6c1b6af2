#pragma once

#include <Eigen/Core>

#include "srb/design.hpp"
#include "srb/fit.hpp"

namespace srb {

enum class ResidualKind { linear_modified, glm_pearson };

// The resampling pool: centered, leverage-adjusted residuals together with
// their second moment sigma2_hat = mean of squared values. For GLMs these
// are only nearly exchangeable rather than iid draws, which is as close as
// the one-step resampling scheme gets.
struct ResidualSet {
  Eigen::VectorXd values;
  double sigma2_hat = 0.0;
  ResidualKind kind = ResidualKind::linear_modified;

  Eigen::Index size() const { return values.size(); }
};

// Linear-model residuals: e_i = Y_i - x_i'beta, scaled by 1/sqrt(1 - h_i)
// to match the error variance, then mean-centered. Requires a gaussian fit
// and h_i < 1 - 1e-12 everywhere.
ResidualSet centered_modified_residuals(const FittedModel& fit, const ResponseVector& Y);

// GLM analogue: standardized Pearson residuals
// (Y_i - mu_i)/sqrt(v_i (1 - h_i)), then mean-centered. Requires a
// non-gaussian fit with strictly positive variance weights.
ResidualSet centered_pearson_residuals(const FittedModel& fit, const ResponseVector& Y);

inline double residual_scale(const ResidualSet& rs) { return rs.sigma2_hat; }

}  // namespace srb
