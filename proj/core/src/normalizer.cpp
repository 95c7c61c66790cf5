#include "ltcsim/normalizer.hpp"

#include <stdexcept>
#include <string>

#include "ltcsim/errors.hpp"

namespace ltcsim {

Normalizer Normalizer::fit(const Eigen::MatrixXd& data, NormKind kind) {
  if (data.rows() < 2)
    throw std::invalid_argument("Normalizer::fit: need at least 2 samples");
  Normalizer n;
  n.kind_ = kind;
  const auto c = data.cols();
  n.shift_.resize(c);
  n.scale_.resize(c);
  for (Eigen::Index j = 0; j < c; ++j) {
    const auto col = data.col(j);
    if (kind == NormKind::ZScore) {
      const double mean = col.mean();
      const double var = (col.array() - mean).square().mean();
      const double sd = std::sqrt(var);
      if (!(sd > 0.0))
        throw DegenerateChannel("Normalizer::fit: constant channel " + std::to_string(j));
      n.shift_[j] = mean;
      n.scale_[j] = sd;
    } else {
      const double lo = col.minCoeff();
      const double hi = col.maxCoeff();
      if (!(hi > lo))
        throw DegenerateChannel("Normalizer::fit: constant channel " + std::to_string(j));
      n.shift_[j] = lo;
      n.scale_[j] = hi - lo;
    }
  }
  return n;
}

Normalizer Normalizer::identity(int channels) {
  Normalizer n;
  n.shift_ = Eigen::VectorXd::Zero(channels);
  n.scale_ = Eigen::VectorXd::Ones(channels);
  return n;
}

Normalizer Normalizer::from_parts(NormKind kind, Eigen::VectorXd shift, Eigen::VectorXd scale) {
  if (shift.size() != scale.size())
    throw SchemaMismatch("Normalizer: shift/scale length mismatch");
  if ((scale.array() <= 0.0).any())
    throw SchemaMismatch("Normalizer: nonpositive scale");
  Normalizer n;
  n.kind_ = kind;
  n.shift_ = std::move(shift);
  n.scale_ = std::move(scale);
  return n;
}

Eigen::MatrixXd Normalizer::apply(const Eigen::MatrixXd& data) const {
  if (data.cols() != channels())
    throw std::invalid_argument("Normalizer::apply: channel count mismatch");
  return (data.rowwise() - shift_.transpose()).array().rowwise() /
         scale_.transpose().array();
}

Eigen::MatrixXd Normalizer::invert(const Eigen::MatrixXd& data) const {
  if (data.cols() != channels())
    throw std::invalid_argument("Normalizer::invert: channel count mismatch");
  return (data.array().rowwise() * scale_.transpose().array()).matrix().rowwise() +
         shift_.transpose();
}

Eigen::VectorXd Normalizer::apply_row(const Eigen::VectorXd& row) const {
  return (row - shift_).cwiseQuotient(scale_);
}

Eigen::VectorXd Normalizer::invert_row(const Eigen::VectorXd& row) const {
  return row.cwiseProduct(scale_) + shift_;
}

}  // namespace ltcsim
