#include "srb/design.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "srb/errors.hpp"

namespace srb {

DesignMatrix::DesignMatrix(Eigen::MatrixXd data) : data_(std::move(data)) {
  const Eigen::Index n = data_.rows();
  const Eigen::Index p = data_.cols();
  if (p < 1) throw DataError("design matrix needs at least one column");
  if (n <= p) {
    throw DataError("design matrix needs n > p (got n=" + std::to_string(n) +
                    ", p=" + std::to_string(p) + ")");
  }
  if (!data_.allFinite()) throw DataError("design matrix has non-finite entries");

  // Singular values of X equal those of the triangular factor of its QR,
  // which keeps the rank check O(np^2 + p^3).
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(data_);
  Eigen::MatrixXd r =
      qr.matrixQR().topRows(p).triangularView<Eigen::Upper>();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(r);
  const auto& sv = svd.singularValues();
  double smax = sv(0);
  double smin = sv(sv.size() - 1);
  sv_ratio_ = smax > 0 ? smin / smax : 0.0;
  if (!(sv_ratio_ >= kRankTolerance)) {
    throw DataError("design matrix is rank deficient (singular value ratio " +
                    std::to_string(sv_ratio_) + " below tolerance)");
  }
}

ResponseVector::ResponseVector(Eigen::VectorXd values, ResponseKind kind)
    : values_(std::move(values)), kind_(kind) {
  if (values_.size() == 0) throw DataError("empty response vector");
  if (!values_.allFinite()) throw DataError("response vector has non-finite entries");
  if (kind_ == ResponseKind::binary) {
    for (Eigen::Index i = 0; i < values_.size(); ++i) {
      if (values_[i] != 0.0 && values_[i] != 1.0) {
        throw DataError("binary response entry " + std::to_string(i) +
                        " is not 0/1: " + std::to_string(values_[i]));
      }
    }
  } else if (kind_ == ResponseKind::count) {
    for (Eigen::Index i = 0; i < values_.size(); ++i) {
      if (values_[i] < 0.0 || std::floor(values_[i]) != values_[i]) {
        throw DataError("count response entry " + std::to_string(i) +
                        " is not a nonnegative integer: " + std::to_string(values_[i]));
      }
    }
  }
}

}  // namespace srb
