#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>

#include "ltcsim/errors.hpp"

namespace ltcsim {

struct NeuronLayout {
  int n_sensory = 1;
  int n_hidden = 1;
  int n_motor = 1;

  int total() const { return n_sensory + n_hidden + n_motor; }
  int pre_count() const { return n_sensory + n_hidden; }
  void validate() const;
  bool operator==(const NeuronLayout&) const = default;
};

// Trainable parameters of an LTC cell. Wiring is dense sensory->hidden and
// hidden->hidden; synapse arrays are n_hidden x pre_count with presynaptic
// columns ordered sensory first, then hidden. Positive quantities (tau, w)
// are stored as unconstrained values mapped through softplus, so gradient
// updates can never violate tau > 0 or w >= 0.
struct LtcParams {
  Eigen::MatrixXd tau_raw;       // n_hidden x 1
  Eigen::MatrixXd w_raw;         // n_hidden x pre
  Eigen::MatrixXd gain;          // sigmoid gain (gamma), n_hidden x pre
  Eigen::MatrixXd offset;        // sigmoid offset (mu), n_hidden x pre
  Eigen::MatrixXd reversal;      // target potential (A), n_hidden x pre
  Eigen::MatrixXd motor_weight;  // n_motor x n_hidden
  Eigen::MatrixXd motor_bias;    // n_motor x 1

  static LtcParams zeros(const NeuronLayout& layout);
  static constexpr std::array<Eigen::MatrixXd LtcParams::*, 7> fields() {
    return {&LtcParams::tau_raw,  &LtcParams::w_raw,        &LtcParams::gain,
            &LtcParams::offset,   &LtcParams::reversal,     &LtcParams::motor_weight,
            &LtcParams::motor_bias};
  }
  long scalar_count() const;
  bool same_shape(const LtcParams& other) const;
};

struct LtcState {
  Eigen::VectorXd x;  // per-hidden-neuron activation, normalized units
  double t_hours = 0.0;

  static LtcState zero(const NeuronLayout& layout);
};

class LtcNetwork {
 public:
  LtcNetwork() = default;
  LtcNetwork(const NeuronLayout& layout, LtcParams params);

  // Deterministic seeded initialization: tau ~ U[0.5, 2.0] h, gain ~ U[0.5, 1.5],
  // offset ~ U[-0.5, 0.5], raw w ~ N(0, 0.1), reversal ~ U[-1, 1],
  // motor readout ~ N(0, 0.1).
  static LtcNetwork init(const NeuronLayout& layout, std::uint64_t seed);

  const NeuronLayout& layout() const { return layout_; }
  const LtcParams& params() const { return params_; }

  // Mutable access for training; callers must sync() after editing so the
  // derived tau/weight caches match the raw values.
  LtcParams& params_mutable() { return params_; }
  void set_params(LtcParams p);
  void sync();

  const Eigen::ArrayXd& tau() const { return tau_; }
  const Eigen::ArrayXd& inv_tau() const { return inv_tau_; }
  const Eigen::ArrayXXd& weight() const { return weight_; }
  long synapse_count() const {
    return static_cast<long>(layout_.n_hidden) * layout_.pre_count();
  }

 private:
  NeuronLayout layout_;
  LtcParams params_;
  Eigen::ArrayXd tau_, inv_tau_;
  Eigen::ArrayXXd weight_;
};

// Per-step synapse activations: sig = sigma(gain*pre + offset), s = w.*sig,
// with row sums of s and s.*reversal.
struct SynapseActivation {
  Eigen::ArrayXXd sig;
  Eigen::ArrayXXd s;
  Eigen::ArrayXd s_sum;
  Eigen::ArrayXd sa_sum;
};
SynapseActivation synapse_activation(const LtcNetwork& net, const Eigen::VectorXd& input,
                                     const Eigen::VectorXd& x);

// Fused semi-implicit update:
//   x_i(t+dt) = (x_i + dt * sum_j s_ij A_ij) / (1 + dt (1/tau_i + sum_j s_ij)).
// The denominator exceeds 1 for any dt > 0, so the step is unconditionally
// stable. Throws NonFiniteState if the result is not finite.
LtcState fused_step(const LtcNetwork& net, const LtcState& state,
                    const Eigen::VectorXd& input, double dt);

// Affine readout from hidden state to motor outputs.
Eigen::VectorXd read_motor(const LtcNetwork& net, const LtcState& state);

// Sequential fused_step + read_motor over a uniformly sampled input series
// (rows = samples). Output has one row per input row.
Eigen::MatrixXd forward(const LtcNetwork& net, const Eigen::MatrixXd& inputs, double dt,
                        const LtcState& x0);

// Explicit-Euler fine-step reference integrator for the underlying ODE
//   dx_i/dt = -(1/tau_i + sum_j s_ij) x_i + sum_j s_ij A_ij.
// Test oracle only; requires dt_fine <= 1e-3 h.
LtcState reference_step(const LtcNetwork& net, const LtcState& state,
                        const Eigen::VectorXd& input, double dt_fine);

}  // namespace ltcsim
