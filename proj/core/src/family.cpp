#include "srb/family.hpp"

#include <cmath>
#include <string>

#include "srb/errors.hpp"

namespace srb {

GlmFamily GlmFamily::from_name(std::string_view name) {
  if (name == "gaussian" || name == "linear") return gaussian();
  if (name == "bernoulli" || name == "logistic" || name == "bernoulli-logit")
    return bernoulli_logit();
  if (name == "poisson" || name == "poisson-log") return poisson_log();
  throw DataError("unknown family '" + std::string(name) +
                  "' (expected gaussian, logistic or poisson)");
}

std::string_view GlmFamily::name() const {
  switch (id_) {
    case Family::gaussian: return "gaussian";
    case Family::bernoulli_logit: return "bernoulli-logit";
    case Family::poisson_log: return "poisson-log";
  }
  return "?";
}

ResponseKind GlmFamily::response_kind() const {
  switch (id_) {
    case Family::gaussian: return ResponseKind::continuous;
    case Family::bernoulli_logit: return ResponseKind::binary;
    case Family::poisson_log: return ResponseKind::count;
  }
  return ResponseKind::continuous;
}

double GlmFamily::mean(double eta) const {
  switch (id_) {
    case Family::gaussian:
      return eta;
    case Family::bernoulli_logit: {
      double mu;
      if (eta >= 0) {
        mu = 1.0 / (1.0 + std::exp(-eta));
      } else {
        double e = std::exp(eta);
        mu = e / (1.0 + e);
      }
      if (mu < kBernoulliMeanClamp) mu = kBernoulliMeanClamp;
      if (mu > 1.0 - kBernoulliMeanClamp) mu = 1.0 - kBernoulliMeanClamp;
      return mu;
    }
    case Family::poisson_log:
      return std::exp(eta);
  }
  return eta;
}

double GlmFamily::variance(double mu) const {
  switch (id_) {
    case Family::gaussian: return 1.0;
    case Family::bernoulli_logit: return mu * (1.0 - mu);
    case Family::poisson_log: return mu;
  }
  return 1.0;
}

double GlmFamily::link(double mu) const {
  switch (id_) {
    case Family::gaussian: return mu;
    case Family::bernoulli_logit: return std::log(mu / (1.0 - mu));
    case Family::poisson_log: return std::log(mu);
  }
  return mu;
}

Eigen::VectorXd GlmFamily::mean(const Eigen::VectorXd& eta) const {
  Eigen::VectorXd out(eta.size());
  for (Eigen::Index i = 0; i < eta.size(); ++i) out[i] = mean(eta[i]);
  return out;
}

Eigen::VectorXd GlmFamily::variance(const Eigen::VectorXd& mu) const {
  Eigen::VectorXd out(mu.size());
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    out[i] = variance(mu[i]);
    if (!(out[i] > 0)) {
      throw NumericalError("nonpositive variance weight at observation " +
                           std::to_string(i) + " (degenerate fit)");
    }
  }
  return out;
}

Eigen::VectorXd GlmFamily::link(const Eigen::VectorXd& mu) const {
  Eigen::VectorXd out(mu.size());
  for (Eigen::Index i = 0; i < mu.size(); ++i) out[i] = link(mu[i]);
  return out;
}

double GlmFamily::loglik(const Eigen::VectorXd& y, const Eigen::VectorXd& eta) const {
  double total = 0.0;
  switch (id_) {
    case Family::gaussian:
      total = -0.5 * (y - eta).squaredNorm();
      break;
    case Family::bernoulli_logit:
      for (Eigen::Index i = 0; i < y.size(); ++i) {
        double e = eta[i];
        // y*eta - log(1+exp(eta)), branch for stability
        double log1pexp = e > 0 ? e + std::log1p(std::exp(-e)) : std::log1p(std::exp(e));
        total += y[i] * e - log1pexp;
      }
      break;
    case Family::poisson_log:
      for (Eigen::Index i = 0; i < y.size(); ++i) {
        total += y[i] * eta[i] - std::exp(eta[i]) - std::lgamma(y[i] + 1.0);
      }
      break;
  }
  return total;
}

}  // namespace srb
