#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ltcsim/dataset.hpp"
#include "ltcsim/ltc.hpp"
#include "ltcsim/surrogate.hpp"

namespace ltcsim {

struct TrainConfig {
  int epochs = 125;
  double learning_rate = 0.01;
  // Truncation length for backpropagation through time. 0 means no
  // truncation (full-episode gradients, used for seasonal segments).
  int bptt_window = 64;
  int batch = 1;  // segments per parameter update (segmented datasets)
  std::uint64_t seed = 0;
  std::optional<int> early_stop_epoch;
  double grad_clip = 10.0;  // per-parameter magnitude clip

  void validate() const;
};

struct LossHistory {
  std::vector<double> train_mse;
  std::vector<double> val_mse;
  int best_epoch = -1;  // index into val_mse
};

void save_loss_history_csv(const std::filesystem::path& path, const LossHistory& h);

// ---- BPTT engine ----------------------------------------------------------

struct ForwardTrace {
  Eigen::MatrixXd states;   // (T+1) x n_hidden, row 0 = x0
  Eigen::MatrixXd outputs;  // T x n_motor
};

ForwardTrace forward_trace(const LtcNetwork& net, const Eigen::MatrixXd& inputs, double dt,
                           const Eigen::VectorXd& x0);

struct BackpropResult {
  LtcParams grads;              // d loss / d each trainable array
  Eigen::MatrixXd input_grads;  // T x n_sensory, d loss / d sensory input
};

// Reverse-mode differentiation through the fused_step recurrence given
// d loss / d motor-output at every step. `window` > 0 truncates gradient flow
// at window boundaries; 0 backpropagates through the whole sequence.
BackpropResult backprop_through_time(const LtcNetwork& net, const Eigen::MatrixXd& inputs,
                                     const ForwardTrace& trace,
                                     const Eigen::MatrixXd& output_grads, double dt,
                                     int window);

// Mean squared error over selected output channels (all when empty), plus the
// matching d loss / d output matrix (zeros on unselected channels).
double mse_with_grads(const Eigen::MatrixXd& outputs, const Eigen::MatrixXd& targets,
                      const std::vector<int>& channels, Eigen::MatrixXd& out_grads);

class AdamOptimizer {
 public:
  AdamOptimizer(const NeuronLayout& layout, double lr, double beta1 = 0.9,
                double beta2 = 0.999, double eps = 1e-8);
  void step(LtcParams& params, const LtcParams& grads, double grad_clip);

 private:
  double lr_, beta1_, beta2_, eps_;
  long t_ = 0;
  LtcParams m_, v_;
};

// ---- Training entry points --------------------------------------------------

// Gradient-descent fit on a pre-normalized dataset. Segmented data trains
// per-episode (seeded shuffle, `batch` episodes per update); continuous data
// streams truncated windows with carried state. Returns the parameters from
// the epoch with the lowest validation MSE.
std::pair<LtcNetwork, LossHistory> train_bptt(LtcNetwork net, const Dataset& train,
                                              const Dataset& val, const TrainConfig& cfg);

// Trains a controller through a frozen plant: loss is the MSE between the
// plant outputs on `loss_channels` and the desired trajectory; gradients flow
// through the plant, whose parameters are never touched.
std::pair<LtcNetwork, LossHistory> train_controller(LtcNetwork controller,
                                                    const SurrogateModel& plant,
                                                    const Dataset& desired,
                                                    const std::vector<int>& loss_channels,
                                                    const TrainConfig& cfg);

// ---- Evaluation and model-structure searches -------------------------------

// Per-output-channel RMSE of the integrated trajectory against the targets,
// in normalized units (inputs/targets pass through the model normalizers).
Eigen::VectorXd rmse(const SurrogateModel& model, const Dataset& test_physical);

// RMSE helpers on pre-normalized data, used by the searches.
Eigen::VectorXd rmse_normalized(const LtcNetwork& net, const Dataset& test_norm, double dt);
double pooled_rmse_normalized(const LtcNetwork& net, const Dataset& test_norm, double dt);

// Grows the hidden layer until the integrated model stops approximating a
// horizontal line: non-flat means var(prediction) >= flatness_ratio *
// var(target) on validation data. Returns the first non-flat hidden count.
int hidden_size_search(int n_sensory, int n_motor, const Dataset& data_norm,
                       const TrainConfig& cfg, int h_start = 4, int h_step = 4,
                       int h_max = 64, double flatness_ratio = 0.1);

// Greedy backward elimination of input channels: repeatedly drop the channel
// whose removal raises validation RMSE the least, while the increase stays
// under `rmse_tolerance`. Hidden count is held fixed during the search.
std::vector<std::string> input_ablation(const Dataset& data_norm, const TrainConfig& cfg,
                                        double rmse_tolerance = 0.02, int hidden_fixed = 31,
                                        int n_motor = 1);

}  // namespace ltcsim
