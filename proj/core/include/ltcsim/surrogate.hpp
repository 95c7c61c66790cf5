#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <vector>

#include "ltcsim/ltc.hpp"
#include "ltcsim/normalizer.hpp"

namespace ltcsim {

// A trained LTC node model: network plus per-channel normalizers and named
// input/output ports. All flows cross the model boundary in physical units;
// the network itself runs in normalized units.
struct SurrogateModel {
  std::string name;
  LtcNetwork net;
  double dt_hours = 1.0;
  std::vector<std::string> input_ports;
  std::vector<std::string> output_ports;
  Normalizer input_norm;
  Normalizer output_norm;
  bool trained = false;

  // Open-loop integration from a zero state; physical units in and out.
  Eigen::MatrixXd predict(const Eigen::MatrixXd& physical_inputs) const;
};

// Streaming single-step evaluator that owns the hidden state; used by the
// closed simulation loop where nodes advance hour by hour.
class ModelRunner {
 public:
  explicit ModelRunner(const SurrogateModel& model);
  Eigen::VectorXd step(const Eigen::VectorXd& physical_input);
  void reset();

 private:
  const SurrogateModel* model_;
  LtcState state_;
};

// Lossless structured-text (JSON) round trip at full double precision.
void save_model(const SurrogateModel& model, const std::filesystem::path& path);
SurrogateModel load_model(const std::filesystem::path& path);

}  // namespace ltcsim
