#include "ltcsim/training.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "ltcsim/csv.hpp"
#include "ltcsim/numeric.hpp"

namespace ltcsim {

namespace {
constexpr double kDtHours = 1.0;  // hourly resolution everywhere
}

void TrainConfig::validate() const {
  if (epochs < 1) throw std::invalid_argument("TrainConfig: epochs must be >= 1");
  if (bptt_window != 0 && bptt_window < 2)
    throw std::invalid_argument("TrainConfig: bptt_window must be 0 (full) or >= 2");
  if (!(learning_rate > 0.0))
    throw std::invalid_argument("TrainConfig: learning_rate must be > 0");
  if (batch < 1) throw std::invalid_argument("TrainConfig: batch must be >= 1");
}

void save_loss_history_csv(const std::filesystem::path& path, const LossHistory& h) {
  std::ofstream f(path);
  if (!f) throw IoError("save_loss_history_csv: cannot open " + path.string());
  f << "epoch,train_mse,val_mse\n";
  for (std::size_t i = 0; i < h.train_mse.size(); ++i)
    f << i << ',' << format_double(h.train_mse[i]) << ',' << format_double(h.val_mse[i])
      << '\n';
}

// ---- BPTT engine ------------------------------------------------------------

ForwardTrace forward_trace(const LtcNetwork& net, const Eigen::MatrixXd& inputs, double dt,
                           const Eigen::VectorXd& x0) {
  const auto T = inputs.rows();
  ForwardTrace tr;
  tr.states.resize(T + 1, net.layout().n_hidden);
  tr.outputs.resize(T, net.layout().n_motor);
  tr.states.row(0) = x0.transpose();
  LtcState s{x0, 0.0};
  for (Eigen::Index k = 0; k < T; ++k) {
    s = fused_step(net, s, inputs.row(k).transpose(), dt);
    tr.states.row(k + 1) = s.x.transpose();
    tr.outputs.row(k) = read_motor(net, s).transpose();
  }
  return tr;
}

BackpropResult backprop_through_time(const LtcNetwork& net, const Eigen::MatrixXd& inputs,
                                     const ForwardTrace& trace,
                                     const Eigen::MatrixXd& output_grads, double dt,
                                     int window) {
  const auto& lay = net.layout();
  const auto T = inputs.rows();
  if (trace.states.rows() != T + 1 || output_grads.rows() != T)
    throw std::invalid_argument("backprop_through_time: trace/grad shape mismatch");

  const auto& p = net.params();
  const Eigen::ArrayXXd gain = p.gain.array();
  const Eigen::ArrayXXd reversal = p.reversal.array();
  const Eigen::ArrayXXd w = net.weight();
  const Eigen::ArrayXXd dw_draw = Eigen::ArrayXXd(p.w_raw.array()).logistic();
  Eigen::ArrayXd dtau_draw(lay.n_hidden);
  for (Eigen::Index i = 0; i < lay.n_hidden; ++i)
    dtau_draw[i] = logistic(p.tau_raw(i, 0));
  const Eigen::ArrayXd inv_tau_sq = net.inv_tau() * net.inv_tau();

  BackpropResult res;
  res.grads = LtcParams::zeros(lay);
  res.input_grads = Eigen::MatrixXd::Zero(T, lay.n_sensory);

  const Eigen::Index W = window > 0 ? window : T;
  for (Eigen::Index wa = 0; wa < T; wa += W) {
    const Eigen::Index wb = std::min<Eigen::Index>(T, wa + W);
    Eigen::ArrayXd lambda = Eigen::ArrayXd::Zero(lay.n_hidden);
    for (Eigen::Index k = wb - 1; k >= wa; --k) {
      const Eigen::VectorXd x_prev = trace.states.row(k).transpose();
      const Eigen::ArrayXd x_new = trace.states.row(k + 1).transpose().array();
      const Eigen::VectorXd u = inputs.row(k).transpose();
      const Eigen::VectorXd gy = output_grads.row(k).transpose();

      res.grads.motor_weight.noalias() += gy * trace.states.row(k + 1);
      res.grads.motor_bias.col(0) += gy;

      const auto act = synapse_activation(net, u, x_prev);
      const Eigen::ArrayXd denom = 1.0 + dt * (net.inv_tau() + act.s_sum);
      const Eigen::ArrayXd g =
          lambda + (p.motor_weight.transpose() * gy).array();
      const Eigen::ArrayXd a = g / denom;

      // dL/ds_ij = dt * a_i * (A_ij - x_i'), dL/dA_ij = dt * a_i * s_ij
      Eigen::ArrayXXd gs = reversal;
      gs.colwise() -= x_new;
      gs.colwise() *= dt * a;
      res.grads.reversal.array() += (act.s.colwise() * (dt * a));
      res.grads.w_raw.array() += gs * act.sig * dw_draw;

      const Eigen::ArrayXXd gz = gs * w * act.sig * (1.0 - act.sig);
      res.grads.offset.array() += gz;
      const int m = lay.pre_count();
      Eigen::ArrayXd pre_grad(m);
      for (int j = 0; j < m; ++j) {
        const double pre = j < lay.n_sensory ? u[j] : x_prev[j - lay.n_sensory];
        res.grads.gain.col(j).array() += gz.col(j) * pre;
        pre_grad[j] = (gz.col(j) * gain.col(j)).sum();
      }
      res.grads.tau_raw.col(0).array() += a * x_new * dt * inv_tau_sq * dtau_draw;

      res.input_grads.row(k) = pre_grad.head(lay.n_sensory).transpose();
      lambda = a + pre_grad.tail(lay.n_hidden);
    }
  }
  return res;
}

double mse_with_grads(const Eigen::MatrixXd& outputs, const Eigen::MatrixXd& targets,
                      const std::vector<int>& channels, Eigen::MatrixXd& out_grads) {
  const auto T = outputs.rows();
  out_grads = Eigen::MatrixXd::Zero(T, outputs.cols());
  double sse = 0.0;
  double count = 0.0;
  if (channels.empty()) {
    if (targets.cols() != outputs.cols() || targets.rows() != T)
      throw std::invalid_argument("mse_with_grads: target shape mismatch");
    const Eigen::MatrixXd r = outputs - targets;
    sse = r.squaredNorm();
    count = static_cast<double>(T * outputs.cols());
    out_grads = 2.0 * r / count;
  } else {
    if (targets.cols() != static_cast<Eigen::Index>(channels.size()) || targets.rows() != T)
      throw std::invalid_argument("mse_with_grads: selected-target shape mismatch");
    count = static_cast<double>(T) * static_cast<double>(channels.size());
    for (std::size_t j = 0; j < channels.size(); ++j) {
      const Eigen::VectorXd r =
          outputs.col(channels[j]) - targets.col(static_cast<Eigen::Index>(j));
      sse += r.squaredNorm();
      out_grads.col(channels[j]) = 2.0 * r / count;
    }
  }
  return sse / count;
}

AdamOptimizer::AdamOptimizer(const NeuronLayout& layout, double lr, double beta1,
                             double beta2, double eps)
    : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {
  m_ = LtcParams::zeros(layout);
  v_ = LtcParams::zeros(layout);
}

void AdamOptimizer::step(LtcParams& params, const LtcParams& grads, double grad_clip) {
  ++t_;
  const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (auto f : LtcParams::fields()) {
    auto& p = params.*f;
    auto& m = m_.*f;
    auto& v = v_.*f;
    const Eigen::ArrayXXd g =
        (grads.*f).array().min(grad_clip).max(-grad_clip);
    m.array() = beta1_ * m.array() + (1.0 - beta1_) * g;
    v.array() = beta2_ * v.array() + (1.0 - beta2_) * g.square();
    const Eigen::ArrayXXd m_hat = m.array() / bc1;
    const Eigen::ArrayXXd v_hat = v.array() / bc2;
    p.array() -= lr_ * m_hat / (v_hat.sqrt() + eps_);
  }
}

// ---- shared training scaffolding -------------------------------------------

namespace {

double validation_mse(const std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)>& predict,
                      const Dataset& val) {
  double sse = 0.0;
  double count = 0.0;
  for (const auto& [b, e] : val.episodes()) {
    const Eigen::MatrixXd pred = predict(val.inputs.middleRows(b, e - b));
    const Eigen::MatrixXd r = pred - val.targets.middleRows(b, e - b);
    sse += r.squaredNorm();
    count += static_cast<double>(r.size());
  }
  return count > 0 ? sse / count : 0.0;
}

std::vector<std::size_t> epoch_order(std::size_t n, std::uint64_t seed, int epoch) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(epoch) + 1);
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

void add_params(LtcParams& into, const LtcParams& other) {
  for (auto f : LtcParams::fields()) (into.*f) += (other.*f);
}

void scale_params(LtcParams& p, double s) {
  for (auto f : LtcParams::fields()) (p.*f) *= s;
}

bool params_finite(const LtcParams& p) {
  for (auto f : LtcParams::fields())
    if (!(p.*f).allFinite()) return false;
  return true;
}

}  // namespace

std::pair<LtcNetwork, LossHistory> train_bptt(LtcNetwork net, const Dataset& train,
                                              const Dataset& val, const TrainConfig& cfg) {
  cfg.validate();
  const auto& lay = net.layout();
  if (train.inputs.cols() != lay.n_sensory || train.targets.cols() != lay.n_motor)
    throw std::invalid_argument("train_bptt: dataset channels do not match network layout");

  AdamOptimizer opt(lay, cfg.learning_rate);
  LossHistory hist;
  LtcParams best = net.params();
  double best_val = std::numeric_limits<double>::infinity();
  const int epochs = std::min(cfg.epochs, cfg.early_stop_epoch.value_or(cfg.epochs));
  const Eigen::Index n_h = lay.n_hidden;

  auto predictor = [&](const Eigen::MatrixXd& in) {
    return forward(net, in, kDtHours, LtcState{Eigen::VectorXd::Zero(n_h), 0.0});
  };

  for (int epoch = 0; epoch < epochs; ++epoch) {
    double loss_weighted = 0.0;
    double steps_total = 0.0;
    try {
      if (!train.segmented()) {
        const Eigen::Index T = train.rows();
        const Eigen::Index W = cfg.bptt_window > 0 ? cfg.bptt_window : T;
        Eigen::VectorXd carry = Eigen::VectorXd::Zero(n_h);
        for (Eigen::Index a = 0; a < T; a += W) {
          const Eigen::Index b = std::min<Eigen::Index>(T, a + W);
          const Eigen::MatrixXd in_chunk = train.inputs.middleRows(a, b - a);
          const auto tr = forward_trace(net, in_chunk, kDtHours, carry);
          Eigen::MatrixXd og;
          const double loss =
              mse_with_grads(tr.outputs, train.targets.middleRows(a, b - a), {}, og);
          if (!std::isfinite(loss)) throw NonFiniteLoss("train_bptt: non-finite loss");
          const auto bp = backprop_through_time(net, in_chunk, tr, og, kDtHours, 0);
          opt.step(net.params_mutable(), bp.grads, cfg.grad_clip);
          if (!params_finite(net.params()))
            throw NonFiniteLoss("train_bptt: parameters diverged");
          net.sync();
          carry = tr.states.row(tr.states.rows() - 1).transpose();
          loss_weighted += loss * static_cast<double>(b - a);
          steps_total += static_cast<double>(b - a);
        }
      } else {
        const auto order = epoch_order(train.segment_count(), cfg.seed, epoch);
        for (std::size_t at = 0; at < order.size(); at += static_cast<std::size_t>(cfg.batch)) {
          const auto batch_end =
              std::min(order.size(), at + static_cast<std::size_t>(cfg.batch));
          const auto n_in_batch = batch_end - at;
          std::vector<std::future<std::pair<double, LtcParams>>> futs;
          futs.reserve(n_in_batch);
          for (std::size_t i = at; i < batch_end; ++i) {
            const auto [b, e] = train.segments[order[i]];
            futs.push_back(std::async(std::launch::async, [&, b, e]() {
              const Eigen::MatrixXd in_ep = train.inputs.middleRows(b, e - b);
              const auto tr =
                  forward_trace(net, in_ep, kDtHours, Eigen::VectorXd::Zero(n_h));
              Eigen::MatrixXd og;
              const double loss =
                  mse_with_grads(tr.outputs, train.targets.middleRows(b, e - b), {}, og);
              auto bp =
                  backprop_through_time(net, in_ep, tr, og, kDtHours, cfg.bptt_window);
              return std::make_pair(loss * static_cast<double>(e - b),
                                    std::move(bp.grads));
            }));
          }
          LtcParams gsum = LtcParams::zeros(lay);
          for (std::size_t i = 0; i < futs.size(); ++i) {  // fixed-order reduction
            auto [wloss, g] = futs[i].get();
            if (!std::isfinite(wloss)) throw NonFiniteLoss("train_bptt: non-finite loss");
            add_params(gsum, g);
            loss_weighted += wloss;
            const auto [b, e] = train.segments[order[at + i]];
            steps_total += static_cast<double>(e - b);
          }
          scale_params(gsum, 1.0 / static_cast<double>(n_in_batch));
          opt.step(net.params_mutable(), gsum, cfg.grad_clip);
          if (!params_finite(net.params()))
            throw NonFiniteLoss("train_bptt: parameters diverged");
          net.sync();
        }
      }
    } catch (const NonFiniteState& e) {
      throw NonFiniteLoss(std::string("train_bptt: ") + e.what());
    }

    hist.train_mse.push_back(steps_total > 0 ? loss_weighted / steps_total : 0.0);
    const double v = validation_mse(predictor, val);
    hist.val_mse.push_back(v);
    if (v < best_val) {
      best_val = v;
      best = net.params();
      hist.best_epoch = epoch;
    }
  }
  net.set_params(best);
  return {std::move(net), std::move(hist)};
}

std::pair<LtcNetwork, LossHistory> train_controller(LtcNetwork controller,
                                                    const SurrogateModel& plant,
                                                    const Dataset& desired,
                                                    const std::vector<int>& loss_channels,
                                                    const TrainConfig& cfg) {
  cfg.validate();
  if (loss_channels.empty())
    throw std::invalid_argument("train_controller: loss_channels must be nonempty");
  const auto& clay = controller.layout();
  const auto& play = plant.net.layout();
  if (clay.n_motor != play.n_sensory)
    throw std::invalid_argument(
        "train_controller: controller motor count must equal plant sensory count");
  if (desired.inputs.cols() != clay.n_sensory)
    throw std::invalid_argument("train_controller: dataset channels mismatch");
  if (desired.targets.cols() != static_cast<Eigen::Index>(loss_channels.size()))
    throw std::invalid_argument("train_controller: targets must cover loss channels");

  AdamOptimizer opt(clay, cfg.learning_rate);
  LossHistory hist;
  LtcParams best = controller.params();
  double best_val = std::numeric_limits<double>::infinity();
  const int epochs = std::min(cfg.epochs, cfg.early_stop_epoch.value_or(cfg.epochs));

  auto predictor = [&](const Eigen::MatrixXd& in) -> Eigen::MatrixXd {
    const Eigen::MatrixXd feed =
        forward(controller, in, kDtHours, LtcState::zero(clay));
    const Eigen::MatrixXd out =
        forward(plant.net, feed, kDtHours, LtcState::zero(play));
    Eigen::MatrixXd sel(out.rows(), static_cast<Eigen::Index>(loss_channels.size()));
    for (std::size_t j = 0; j < loss_channels.size(); ++j)
      sel.col(static_cast<Eigen::Index>(j)) = out.col(loss_channels[j]);
    return sel;
  };

  // Validation compares plant outputs on the loss channels to the desired
  // trajectory, so Dataset::targets is already in the selected shape.
  auto val_predictor_mse = [&](const Dataset& ds) {
    double sse = 0.0, count = 0.0;
    for (const auto& [b, e] : ds.episodes()) {
      const Eigen::MatrixXd pred = predictor(ds.inputs.middleRows(b, e - b));
      const Eigen::MatrixXd r = pred - ds.targets.middleRows(b, e - b);
      sse += r.squaredNorm();
      count += static_cast<double>(r.size());
    }
    return count > 0 ? sse / count : 0.0;
  };

  auto [train_ds, val_ds] = train_val_split(desired, 0.9);

  for (int epoch = 0; epoch < epochs; ++epoch) {
    double loss_weighted = 0.0, steps_total = 0.0;
    try {
      for (const auto& [eb, ee] : train_ds.episodes()) {
        const Eigen::Index T = ee - eb;
        const Eigen::Index W = cfg.bptt_window > 0 ? cfg.bptt_window : T;
        Eigen::VectorXd carry_c = Eigen::VectorXd::Zero(clay.n_hidden);
        Eigen::VectorXd carry_p = Eigen::VectorXd::Zero(play.n_hidden);
        for (Eigen::Index a = eb; a < ee; a += W) {
          const Eigen::Index b = std::min<Eigen::Index>(ee, a + W);
          const Eigen::MatrixXd in_chunk = train_ds.inputs.middleRows(a, b - a);
          const auto tr_c = forward_trace(controller, in_chunk, kDtHours, carry_c);
          const auto tr_p = forward_trace(plant.net, tr_c.outputs, kDtHours, carry_p);
          Eigen::MatrixXd og_p;
          const double loss = mse_with_grads(
              tr_p.outputs, train_ds.targets.middleRows(a, b - a), loss_channels, og_p);
          if (!std::isfinite(loss)) throw NonFiniteLoss("train_controller: non-finite loss");
          // plant gradients are discarded: its parameters stay frozen
          const auto bp_p =
              backprop_through_time(plant.net, tr_c.outputs, tr_p, og_p, kDtHours, 0);
          const auto bp_c =
              backprop_through_time(controller, in_chunk, tr_c, bp_p.input_grads,
                                    kDtHours, 0);
          opt.step(controller.params_mutable(), bp_c.grads, cfg.grad_clip);
          if (!params_finite(controller.params()))
            throw NonFiniteLoss("train_controller: parameters diverged");
          controller.sync();
          carry_c = tr_c.states.row(tr_c.states.rows() - 1).transpose();
          carry_p = tr_p.states.row(tr_p.states.rows() - 1).transpose();
          loss_weighted += loss * static_cast<double>(b - a);
          steps_total += static_cast<double>(b - a);
        }
      }
    } catch (const NonFiniteState& e) {
      throw NonFiniteLoss(std::string("train_controller: ") + e.what());
    }

    hist.train_mse.push_back(steps_total > 0 ? loss_weighted / steps_total : 0.0);
    const double v = val_predictor_mse(val_ds);
    hist.val_mse.push_back(v);
    if (v < best_val) {
      best_val = v;
      best = controller.params();
      hist.best_epoch = epoch;
    }
  }
  controller.set_params(best);
  return {std::move(controller), std::move(hist)};
}

// ---- evaluation -------------------------------------------------------------

namespace {

Eigen::VectorXd rmse_impl(const LtcNetwork& net, const Eigen::MatrixXd& inputs,
                          const Eigen::MatrixXd& targets,
                          const std::vector<std::pair<Eigen::Index, Eigen::Index>>& episodes,
                          double dt) {
  Eigen::VectorXd sse = Eigen::VectorXd::Zero(targets.cols());
  double rows = 0.0;
  for (const auto& [b, e] : episodes) {
    const Eigen::MatrixXd pred =
        forward(net, inputs.middleRows(b, e - b), dt, LtcState::zero(net.layout()));
    sse += (pred - targets.middleRows(b, e - b)).array().square().colwise().sum().matrix().transpose();
    rows += static_cast<double>(e - b);
  }
  return (sse / rows).array().sqrt();
}

}  // namespace

Eigen::VectorXd rmse(const SurrogateModel& model, const Dataset& test_physical) {
  if (test_physical.rows() == 0)
    throw std::invalid_argument("rmse: empty test set");
  const Eigen::MatrixXd in = model.input_norm.apply(test_physical.inputs);
  const Eigen::MatrixXd tg = model.output_norm.apply(test_physical.targets);
  return rmse_impl(model.net, in, tg, test_physical.episodes(), model.dt_hours);
}

Eigen::VectorXd rmse_normalized(const LtcNetwork& net, const Dataset& test_norm, double dt) {
  return rmse_impl(net, test_norm.inputs, test_norm.targets, test_norm.episodes(), dt);
}

double pooled_rmse_normalized(const LtcNetwork& net, const Dataset& test_norm, double dt) {
  const Eigen::VectorXd per = rmse_normalized(net, test_norm, dt);
  return std::sqrt(per.array().square().mean());
}

int hidden_size_search(int n_sensory, int n_motor, const Dataset& data_norm,
                       const TrainConfig& cfg, int h_start, int h_step, int h_max,
                       double flatness_ratio) {
  if (h_start < 1 || h_step < 1 || h_max < h_start)
    throw std::invalid_argument("hidden_size_search: bad search range");
  auto [train_ds, val_ds] = train_val_split(data_norm, 0.9);

  double var_target = 0.0;
  for (Eigen::Index c = 0; c < val_ds.targets.cols(); ++c) {
    const auto col = val_ds.targets.col(c);
    var_target += (col.array() - col.mean()).square().mean();
  }
  if (var_target <= 0.0) return h_start;  // nothing can be flat against a flat target

  for (int h = h_start; h <= h_max; h += h_step) {
    auto net = LtcNetwork::init({n_sensory, h, n_motor}, cfg.seed);
    auto [trained, hist] = train_bptt(std::move(net), train_ds, val_ds, cfg);
    double var_pred = 0.0;
    for (const auto& [b, e] : val_ds.episodes()) {
      const Eigen::MatrixXd pred = forward(trained, val_ds.inputs.middleRows(b, e - b),
                                           kDtHours, LtcState::zero(trained.layout()));
      for (Eigen::Index c = 0; c < pred.cols(); ++c) {
        const auto col = pred.col(c);
        var_pred += (col.array() - col.mean()).square().mean() *
                    static_cast<double>(e - b) / static_cast<double>(val_ds.rows());
      }
    }
    if (var_pred >= flatness_ratio * var_target) return h;
  }
  throw SearchExhausted("hidden_size_search: all candidates integrate flat up to h_max");
}

namespace {

Dataset select_input_channels(const Dataset& ds, const std::vector<int>& keep) {
  Dataset out;
  for (int c : keep) out.input_names.push_back(ds.input_names[static_cast<std::size_t>(c)]);
  out.target_names = ds.target_names;
  out.inputs.resize(ds.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j)
    out.inputs.col(static_cast<Eigen::Index>(j)) = ds.inputs.col(keep[j]);
  out.targets = ds.targets;
  out.t_hours = ds.t_hours;
  out.segments = ds.segments;
  return out;
}

}  // namespace

std::vector<std::string> input_ablation(const Dataset& data_norm, const TrainConfig& cfg,
                                        double rmse_tolerance, int hidden_fixed,
                                        int n_motor) {
  const int n_ch = static_cast<int>(data_norm.inputs.cols());
  if (n_ch < 2) throw std::invalid_argument("input_ablation: need >= 2 candidate channels");

  auto evaluate = [&](const std::vector<int>& keep) {
    const Dataset ds = select_input_channels(data_norm, keep);
    auto [train_ds, val_ds] = train_val_split(ds, 0.9);
    auto net = LtcNetwork::init({static_cast<int>(keep.size()), hidden_fixed, n_motor},
                                cfg.seed);
    auto [trained, hist] = train_bptt(std::move(net), train_ds, val_ds, cfg);
    return pooled_rmse_normalized(trained, val_ds, kDtHours);
  };

  std::vector<int> current(n_ch);
  std::iota(current.begin(), current.end(), 0);
  double base = evaluate(current);

  while (current.size() >= 2) {
    double best_rmse = std::numeric_limits<double>::infinity();
    std::size_t best_pos = 0;
    for (std::size_t i = 0; i < current.size(); ++i) {
      std::vector<int> candidate = current;
      candidate.erase(candidate.begin() + static_cast<long>(i));
      const double r = evaluate(candidate);
      if (r < best_rmse) {
        best_rmse = r;
        best_pos = i;
      }
    }
    if (best_rmse - base < rmse_tolerance) {
      current.erase(current.begin() + static_cast<long>(best_pos));
      base = best_rmse;
    } else {
      break;
    }
  }

  std::vector<std::string> names;
  for (int c : current) names.push_back(data_norm.input_names[static_cast<std::size_t>(c)]);
  return names;
}

}  // namespace ltcsim
