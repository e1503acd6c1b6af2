#pragma once

#include <Eigen/Core>
#include <string_view>

namespace srb {

enum class Family { gaussian, bernoulli_logit, poisson_log };

enum class ResponseKind { continuous, binary, count };

// Fitted Bernoulli means are clamped to (delta, 1-delta) so the Pearson
// variance weights mu(1-mu) stay strictly positive.
inline constexpr double kBernoulliMeanClamp = 1e-10;

// Exponential-family descriptor under the canonical link, so the linear
// predictor equals the canonical parameter: mean() is the cumulant
// derivative b', variance() is b'' expressed in the mean, and link() is the
// inverse of mean().
//
//   gaussian        identity link,  variance 1
//   bernoulli_logit logit link,     variance mu(1-mu)
//   poisson_log     log link,       variance mu
class GlmFamily {
 public:
  explicit GlmFamily(Family id) : id_(id) {}

  static GlmFamily gaussian() { return GlmFamily(Family::gaussian); }
  static GlmFamily bernoulli_logit() { return GlmFamily(Family::bernoulli_logit); }
  static GlmFamily poisson_log() { return GlmFamily(Family::poisson_log); }

  // Accepts "gaussian", "bernoulli" / "logistic", "poisson"; throws DataError.
  static GlmFamily from_name(std::string_view name);

  Family id() const { return id_; }
  std::string_view name() const;
  bool is_gaussian() const { return id_ == Family::gaussian; }
  ResponseKind response_kind() const;

  double mean(double eta) const;
  double variance(double mu) const;
  double link(double mu) const;

  Eigen::VectorXd mean(const Eigen::VectorXd& eta) const;
  // Throws NumericalError if any weight comes out <= 0 (degenerate fit).
  Eigen::VectorXd variance(const Eigen::VectorXd& mu) const;
  Eigen::VectorXd link(const Eigen::VectorXd& mu) const;

  // Log likelihood at linear predictor eta (gaussian up to the constant);
  // used for the IRLS iteration trace.
  double loglik(const Eigen::VectorXd& y, const Eigen::VectorXd& eta) const;

 private:
  Family id_;
};

}  // namespace srb
