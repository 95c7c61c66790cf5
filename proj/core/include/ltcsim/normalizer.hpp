#pragma once

#include <Eigen/Dense>

namespace ltcsim {

enum class NormKind { ZScore, MinMax };

// Per-channel affine normalizer: normalized = (x - shift) / scale.
// ZScore uses (mean, std); MinMax uses (min, max - min).
class Normalizer {
 public:
  Normalizer() = default;

  // `data` is samples-by-channels. Throws DegenerateChannel if any channel is
  // constant; requires at least two samples.
  static Normalizer fit(const Eigen::MatrixXd& data, NormKind kind);
  static Normalizer identity(int channels);

  Eigen::MatrixXd apply(const Eigen::MatrixXd& data) const;
  Eigen::MatrixXd invert(const Eigen::MatrixXd& data) const;
  Eigen::VectorXd apply_row(const Eigen::VectorXd& row) const;
  Eigen::VectorXd invert_row(const Eigen::VectorXd& row) const;

  int channels() const { return static_cast<int>(shift_.size()); }
  NormKind kind() const { return kind_; }
  const Eigen::VectorXd& shift() const { return shift_; }
  const Eigen::VectorXd& scale() const { return scale_; }

  // Used by deserialization; validates scale > 0.
  static Normalizer from_parts(NormKind kind, Eigen::VectorXd shift, Eigen::VectorXd scale);

 private:
  NormKind kind_ = NormKind::ZScore;
  Eigen::VectorXd shift_, scale_;
};

}  // namespace ltcsim
