#include "ltcsim/surrogate.hpp"

#include <stdexcept>

namespace ltcsim {

Eigen::MatrixXd SurrogateModel::predict(const Eigen::MatrixXd& physical_inputs) const {
  const Eigen::MatrixXd in = input_norm.apply(physical_inputs);
  const Eigen::MatrixXd out = forward(net, in, dt_hours, LtcState::zero(net.layout()));
  return output_norm.invert(out);
}

ModelRunner::ModelRunner(const SurrogateModel& model)
    : model_(&model), state_(LtcState::zero(model.net.layout())) {}

Eigen::VectorXd ModelRunner::step(const Eigen::VectorXd& physical_input) {
  const Eigen::VectorXd in = model_->input_norm.apply_row(physical_input);
  state_ = fused_step(model_->net, state_, in, model_->dt_hours);
  return model_->output_norm.invert_row(read_motor(model_->net, state_));
}

void ModelRunner::reset() { state_ = LtcState::zero(model_->net.layout()); }

}  // namespace ltcsim
