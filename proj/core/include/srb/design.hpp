#pragma once

#include <Eigen/Core>
#include <cstddef>

#include "srb/family.hpp"

namespace srb {

using CoefficientVector = Eigen::VectorXd;

// Dense n x p design with fixed regressors. Construction validates
// n > p >= 1, finiteness, and full column rank (smallest singular value at
// least kRankTolerance times the largest).
class DesignMatrix {
 public:
  static constexpr double kRankTolerance = 1e-10;

  explicit DesignMatrix(Eigen::MatrixXd data);

  const Eigen::MatrixXd& data() const { return data_; }
  Eigen::Index n() const { return data_.rows(); }
  Eigen::Index p() const { return data_.cols(); }

  // min singular value / max singular value, as measured at construction.
  double singular_value_ratio() const { return sv_ratio_; }

 private:
  Eigen::MatrixXd data_;
  double sv_ratio_;
};

// Response paired with a DesignMatrix. The kind is validated at
// construction: binary entries must be exactly 0 or 1, counts must be
// nonnegative integers.
class ResponseVector {
 public:
  ResponseVector(Eigen::VectorXd values, ResponseKind kind);

  static ResponseVector continuous(Eigen::VectorXd v) {
    return ResponseVector(std::move(v), ResponseKind::continuous);
  }
  static ResponseVector binary(Eigen::VectorXd v) {
    return ResponseVector(std::move(v), ResponseKind::binary);
  }
  static ResponseVector count(Eigen::VectorXd v) {
    return ResponseVector(std::move(v), ResponseKind::count);
  }

  const Eigen::VectorXd& values() const { return values_; }
  ResponseKind kind() const { return kind_; }
  Eigen::Index size() const { return values_.size(); }

 private:
  Eigen::VectorXd values_;
  ResponseKind kind_;
};

}  // namespace srb
