#include "ltcsim/ltc.hpp"

#include <random>
#include <stdexcept>

#include "ltcsim/numeric.hpp"

namespace ltcsim {

void NeuronLayout::validate() const {
  if (n_sensory < 1 || n_hidden < 1 || n_motor < 1)
    throw std::invalid_argument("NeuronLayout: all neuron counts must be >= 1");
}

LtcParams LtcParams::zeros(const NeuronLayout& layout) {
  const int h = layout.n_hidden;
  const int pre = layout.pre_count();
  LtcParams p;
  p.tau_raw = Eigen::MatrixXd::Zero(h, 1);
  p.w_raw = Eigen::MatrixXd::Zero(h, pre);
  p.gain = Eigen::MatrixXd::Zero(h, pre);
  p.offset = Eigen::MatrixXd::Zero(h, pre);
  p.reversal = Eigen::MatrixXd::Zero(h, pre);
  p.motor_weight = Eigen::MatrixXd::Zero(layout.n_motor, h);
  p.motor_bias = Eigen::MatrixXd::Zero(layout.n_motor, 1);
  return p;
}

long LtcParams::scalar_count() const {
  long n = 0;
  for (auto f : fields()) n += (this->*f).size();
  return n;
}

bool LtcParams::same_shape(const LtcParams& other) const {
  for (auto f : fields()) {
    if ((this->*f).rows() != (other.*f).rows() || (this->*f).cols() != (other.*f).cols())
      return false;
  }
  return true;
}

LtcState LtcState::zero(const NeuronLayout& layout) {
  return LtcState{Eigen::VectorXd::Zero(layout.n_hidden), 0.0};
}

LtcNetwork::LtcNetwork(const NeuronLayout& layout, LtcParams params)
    : layout_(layout), params_(std::move(params)) {
  layout_.validate();
  if (!params_.same_shape(LtcParams::zeros(layout_)))
    throw std::invalid_argument("LtcNetwork: parameter shapes do not match layout");
  sync();
}

LtcNetwork LtcNetwork::init(const NeuronLayout& layout, std::uint64_t seed) {
  layout.validate();
  LtcParams p = LtcParams::zeros(layout);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u_tau(0.5, 2.0);
  std::uniform_real_distribution<double> u_gain(0.5, 1.5);
  std::uniform_real_distribution<double> u_offset(-0.5, 0.5);
  std::uniform_real_distribution<double> u_rev(-1.0, 1.0);
  std::normal_distribution<double> n_w(0.0, 0.1);
  std::normal_distribution<double> n_motor(0.0, 0.1);

  // Row-major draw order per array, arrays in field order; keeps the
  // parameter stream stable for a given layout and seed.
  for (Eigen::Index i = 0; i < p.tau_raw.rows(); ++i)
    p.tau_raw(i, 0) = softplus_inv(u_tau(rng));
  auto fill = [&](Eigen::MatrixXd& m, auto& dist) {
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = dist(rng);
  };
  fill(p.w_raw, n_w);
  fill(p.gain, u_gain);
  fill(p.offset, u_offset);
  fill(p.reversal, u_rev);
  fill(p.motor_weight, n_motor);
  fill(p.motor_bias, n_motor);
  return LtcNetwork(layout, std::move(p));
}

void LtcNetwork::set_params(LtcParams p) {
  if (!p.same_shape(params_))
    throw std::invalid_argument("LtcNetwork::set_params: shape mismatch");
  params_ = std::move(p);
  sync();
}

void LtcNetwork::sync() {
  const auto h = params_.tau_raw.rows();
  tau_.resize(h);
  for (Eigen::Index i = 0; i < h; ++i) tau_[i] = softplus(params_.tau_raw(i, 0));
  inv_tau_ = tau_.inverse();
  weight_ = softplus(Eigen::ArrayXXd(params_.w_raw.array()));
}

SynapseActivation synapse_activation(const LtcNetwork& net, const Eigen::VectorXd& input,
                                     const Eigen::VectorXd& x) {
  const auto& lay = net.layout();
  if (input.size() != lay.n_sensory)
    throw std::invalid_argument("synapse_activation: input length != n_sensory");
  if (x.size() != lay.n_hidden)
    throw std::invalid_argument("synapse_activation: state length != n_hidden");

  const auto& p = net.params();
  const int m = lay.pre_count();
  SynapseActivation act;
  act.sig.resize(lay.n_hidden, m);
  for (int j = 0; j < m; ++j) {
    const double pre = j < lay.n_sensory ? input[j] : x[j - lay.n_sensory];
    act.sig.col(j) =
        (p.gain.array().col(j) * pre + p.offset.array().col(j)).logistic();
  }
  act.s = net.weight() * act.sig;
  act.s_sum = act.s.rowwise().sum();
  act.sa_sum = (act.s * p.reversal.array()).rowwise().sum();
  return act;
}

LtcState fused_step(const LtcNetwork& net, const LtcState& state,
                    const Eigen::VectorXd& input, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("fused_step: dt must be > 0");
  const auto act = synapse_activation(net, input, state.x);
  const Eigen::ArrayXd denom = 1.0 + dt * (net.inv_tau() + act.s_sum);
  LtcState out;
  out.x = ((state.x.array() + dt * act.sa_sum) / denom).matrix();
  out.t_hours = state.t_hours + dt;
  if (!out.x.allFinite())
    throw NonFiniteState("fused_step: non-finite state (corrupted parameters?)");
  return out;
}

Eigen::VectorXd read_motor(const LtcNetwork& net, const LtcState& state) {
  return net.params().motor_weight * state.x + net.params().motor_bias.col(0);
}

Eigen::MatrixXd forward(const LtcNetwork& net, const Eigen::MatrixXd& inputs, double dt,
                        const LtcState& x0) {
  const auto T = inputs.rows();
  Eigen::MatrixXd out(T, net.layout().n_motor);
  LtcState s = x0;
  for (Eigen::Index k = 0; k < T; ++k) {
    s = fused_step(net, s, inputs.row(k).transpose(), dt);
    out.row(k) = read_motor(net, s).transpose();
  }
  return out;
}

LtcState reference_step(const LtcNetwork& net, const LtcState& state,
                        const Eigen::VectorXd& input, double dt_fine) {
  if (!(dt_fine > 0.0) || dt_fine > 1e-3 + 1e-12)
    throw std::invalid_argument("reference_step: dt_fine must be in (0, 1e-3] h");
  const auto act = synapse_activation(net, input, state.x);
  const Eigen::ArrayXd dx =
      -(net.inv_tau() + act.s_sum) * state.x.array() + act.sa_sum;
  LtcState out;
  out.x = state.x + dt_fine * dx.matrix();
  out.t_hours = state.t_hours + dt_fine;
  return out;
}

}  // namespace ltcsim
