#include "ltcsim/ltc.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ltcsim/numeric.hpp"

using namespace ltcsim;

namespace {

constexpr double kWeightOffRaw = -1000.0;  // softplus underflows to exactly 0

// Single hidden neuron driven by one sensory synapse (w=1, gamma=1, mu=0,
// A=1, tau=1); the hidden self-synapse is switched off.
LtcNetwork hand_net() {
  const NeuronLayout lay{1, 1, 1};
  LtcParams p = LtcParams::zeros(lay);
  p.tau_raw(0, 0) = softplus_inv(1.0);
  p.w_raw(0, 0) = softplus_inv(1.0);
  p.w_raw(0, 1) = kWeightOffRaw;
  p.gain(0, 0) = 1.0;
  p.offset(0, 0) = 0.0;
  p.reversal(0, 0) = 1.0;
  p.motor_weight(0, 0) = 1.0;
  return LtcNetwork(lay, p);
}

Eigen::MatrixXd random_inputs(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = u(rng);
  return m;
}

// Integrates one coarse step with the fine-step explicit reference.
LtcState reference_span(const LtcNetwork& net, LtcState s, const Eigen::VectorXd& input,
                        double span, double dt_fine) {
  const long n = std::lround(span / dt_fine);
  for (long i = 0; i < n; ++i) s = reference_step(net, s, input, dt_fine);
  return s;
}

// Random oracle-test net with the synaptic drive scaled into the effective
// time-constant regime the initializer is designed around ([0.3, 2] h); the
// first-order solver error at dt = 0.01 stays well under the oracle bound
// there.
LtcNetwork oracle_net(const NeuronLayout& lay, std::uint64_t seed) {
  auto net = LtcNetwork::init(lay, seed);
  std::mt19937_64 rng(seed ^ 0xabcdef12u);
  std::uniform_real_distribution<double> u(0.1, 0.7);
  auto& p = net.params_mutable();
  const double m = static_cast<double>(lay.pre_count());
  for (Eigen::Index i = 0; i < p.w_raw.rows(); ++i)
    for (Eigen::Index j = 0; j < p.w_raw.cols(); ++j)
      p.w_raw(i, j) = softplus_inv(u(rng) / m);
  net.sync();
  return net;
}

}  // namespace

TEST(InitNetwork, DeterministicGivenSeed) {
  const NeuronLayout lay{2, 8, 2};
  const auto a = LtcNetwork::init(lay, 42);
  const auto b = LtcNetwork::init(lay, 42);
  for (auto f : LtcParams::fields())
    EXPECT_TRUE((a.params().*f).isApprox(b.params().*f, 0.0));
  const auto c = LtcNetwork::init(lay, 43);
  EXPECT_FALSE((a.params().w_raw.isApprox(c.params().w_raw, 0.0)));
}

TEST(InitNetwork, DenseWiringSynapseCount) {
  const auto net = LtcNetwork::init({3, 20, 1}, 7);
  EXPECT_EQ(net.synapse_count(), 3 * 20 + 20 * 20);
}

TEST(InitNetwork, TimeConstantsPositiveAndInRange) {
  const auto net = LtcNetwork::init({2, 12, 2}, 123);
  ASSERT_EQ(net.tau().size(), 12);
  for (Eigen::Index i = 0; i < 12; ++i) {
    EXPECT_GT(net.tau()[i], 0.0);
    EXPECT_GE(net.tau()[i], 0.5 - 1e-9);
    EXPECT_LE(net.tau()[i], 2.0 + 1e-9);
  }
}

TEST(InitNetwork, BadLayoutThrows) {
  EXPECT_THROW(LtcNetwork::init({0, 4, 1}, 1), std::invalid_argument);
}

TEST(FusedStep, PureLeakClosedForm) {
  const NeuronLayout lay{1, 3, 1};
  LtcParams p = LtcParams::zeros(lay);
  p.tau_raw.setConstant(softplus_inv(1.0));
  p.w_raw.setConstant(kWeightOffRaw);
  const LtcNetwork net(lay, p);

  LtcState s{Eigen::VectorXd::Ones(3), 0.0};
  const Eigen::VectorXd input = Eigen::VectorXd::Zero(1);
  const double dt = 1.0;
  // one step: x' = x / (1 + dt/tau) bit-for-bit
  const auto one = fused_step(net, s, input, dt);
  for (int i = 0; i < 3; ++i)
    EXPECT_EQ(one.x[i], 1.0 / (1.0 + dt / net.tau()[i]));

  // n steps track the iterated closed form exactly and the power form closely
  LtcState cur = s;
  double closed = 1.0;
  for (int k = 0; k < 50; ++k) {
    cur = fused_step(net, cur, input, dt);
    closed = closed / (1.0 + dt / net.tau()[0]);
  }
  EXPECT_EQ(cur.x[0], closed);
  EXPECT_NEAR(cur.x[0], std::pow(1.0 + dt / net.tau()[0], -50.0), 1e-12);
}

TEST(FusedStep, HandEvaluatedSingleSynapse) {
  const auto net = hand_net();
  LtcState s{Eigen::VectorXd::Zero(1), 0.0};
  const Eigen::VectorXd input = Eigen::VectorXd::Zero(1);  // pre = 0 -> sigma = 0.5
  const auto out = fused_step(net, s, input, 0.1);
  // s = 1 * sigma(0) = 0.5; x' = 0.1*0.5 / (1 + 0.1*(1 + 0.5)) = 0.05 / 1.15
  EXPECT_NEAR(out.x[0], 0.05 / 1.15, 1e-12);
}

TEST(FusedStep, AgreesWithFineReferenceOnRandomNets) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> pick_s(1, 4), pick_h(1, 8);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const NeuronLayout lay{pick_s(rng), pick_h(rng), 1};
    const auto net = oracle_net(lay, 1000 + trial);
    const auto inputs = random_inputs(100, lay.n_sensory, 2000 + trial);
    LtcState fused = LtcState::zero(lay);
    LtcState ref = LtcState::zero(lay);
    const double dt = 0.01;
    for (int k = 0; k < 100; ++k) {
      const Eigen::VectorXd u = inputs.row(k).transpose();
      fused = fused_step(net, fused, u, dt);
      ref = reference_span(net, ref, u, dt, 1e-4);
      worst = std::max(worst, (fused.x - ref.x).cwiseAbs().maxCoeff());
    }
  }
  EXPECT_LT(worst, 1e-3);
}

TEST(FusedStep, LocalDifferenceToEulerIsSecondOrder) {
  const auto net = LtcNetwork::init({2, 5, 1}, 77);
  LtcState s{Eigen::VectorXd::Constant(5, 0.3), 0.0};
  const Eigen::VectorXd u = Eigen::VectorXd::Constant(2, 0.4);
  auto gap = [&](double dt) {
    const auto f = fused_step(net, s, u, dt);
    const auto e = reference_step(net, s, u, dt);
    return (f.x - e.x).cwiseAbs().maxCoeff();
  };
  const double e1 = gap(1e-3);
  const double e2 = gap(5e-4);
  const double order = std::log2(e1 / e2);
  EXPECT_GT(order, 1.7);  // O(dt^2) local difference
  EXPECT_LT(order, 2.3);
}

TEST(FusedStep, ConvergesToAnalyticFixedPoint) {
  const auto net = hand_net();
  // constant input 0: s = 0.5, x* = s*A / (1/tau + s) = 0.5 / 1.5
  LtcState s{Eigen::VectorXd::Zero(1), 0.0};
  const Eigen::VectorXd input = Eigen::VectorXd::Zero(1);
  for (int k = 0; k < 400; ++k) s = fused_step(net, s, input, 0.1);
  EXPECT_NEAR(s.x[0], 0.5 / 1.5, 1e-9);
}

TEST(FusedStep, StateStaysBoundedForAnyDt) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pick_dt(0.1, 50.0);
  for (int trial = 0; trial < 10; ++trial) {
    const NeuronLayout lay{2, 6, 1};
    const auto net = LtcNetwork::init(lay, 300 + trial);
    const double bound =
        net.params().reversal.cwiseAbs().maxCoeff() + 0.5;  // |A|max + |x0|max
    LtcState s{Eigen::VectorXd::Constant(6, 0.5), 0.0};
    const auto inputs = random_inputs(500, 2, 400 + trial);
    for (int k = 0; k < 500; ++k) {
      s = fused_step(net, s, inputs.row(k).transpose(), pick_dt(rng));
      ASSERT_TRUE(s.x.allFinite());
      EXPECT_LE(s.x.cwiseAbs().maxCoeff(), bound + 1e-12);
    }
  }
}

TEST(FusedStep, NonFiniteParametersThrow) {
  const NeuronLayout lay{1, 2, 1};
  LtcParams p = LtcParams::zeros(lay);
  p.reversal(0, 0) = std::numeric_limits<double>::quiet_NaN();
  const LtcNetwork net(lay, p);
  LtcState s = LtcState::zero(lay);
  EXPECT_THROW(fused_step(net, s, Eigen::VectorXd::Zero(1), 1.0), NonFiniteState);
}

TEST(ReadMotor, ZeroWeightsReturnBias) {
  const NeuronLayout lay{1, 4, 3};
  LtcParams p = LtcParams::zeros(lay);
  p.motor_bias << 1.5, -2.0, 0.25;
  const LtcNetwork net(lay, p);
  LtcState s{Eigen::VectorXd::Random(4), 0.0};
  const Eigen::VectorXd out = read_motor(net, s);
  EXPECT_DOUBLE_EQ(out[0], 1.5);
  EXPECT_DOUBLE_EQ(out[1], -2.0);
  EXPECT_DOUBLE_EQ(out[2], 0.25);
}

TEST(ReadMotor, IdentityReadoutPassesState) {
  const auto net = hand_net();
  LtcState s{Eigen::VectorXd::Constant(1, 0.3), 0.0};
  EXPECT_DOUBLE_EQ(read_motor(net, s)[0], 0.3);
}

TEST(ReadMotor, LipschitzInState) {
  const auto net = LtcNetwork::init({2, 6, 3}, 11);
  const double opnorm =
      net.params().motor_weight.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV)
          .singularValues()[0];
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    Eigen::VectorXd a(6), b(6);
    for (int i = 0; i < 6; ++i) {
      a[i] = g(rng);
      b[i] = a[i] + 1e-6 * g(rng);
    }
    const double dy = (read_motor(net, {a, 0.0}) - read_motor(net, {b, 0.0})).norm();
    EXPECT_LE(dy, opnorm * (a - b).norm() + 1e-15);
  }
}

TEST(Forward, ZeroNetworkEmitsConstantBias) {
  const NeuronLayout lay{1, 2, 1};
  LtcParams p = LtcParams::zeros(lay);
  p.tau_raw.setConstant(softplus_inv(1.0));
  p.w_raw.setConstant(kWeightOffRaw);
  p.motor_bias(0, 0) = 0.7;
  const LtcNetwork net(lay, p);
  const Eigen::MatrixXd inputs = Eigen::MatrixXd::Zero(20, 1);
  const Eigen::MatrixXd out = forward(net, inputs, 1.0, LtcState::zero(lay));
  for (Eigen::Index k = 0; k < out.rows(); ++k) EXPECT_DOUBLE_EQ(out(k, 0), 0.7);
}

TEST(Forward, MatchesChainedFusedSteps) {
  const auto net = hand_net();
  const auto inputs = random_inputs(10, 1, 9);
  const Eigen::MatrixXd out = forward(net, inputs, 1.0, LtcState::zero(net.layout()));
  LtcState s = LtcState::zero(net.layout());
  for (int k = 0; k < 10; ++k) {
    s = fused_step(net, s, inputs.row(k).transpose(), 1.0);
    EXPECT_DOUBLE_EQ(out(k, 0), read_motor(net, s)[0]);
  }
}

TEST(Forward, DeterministicTrajectories) {
  const auto net = LtcNetwork::init({3, 7, 2}, 21);
  const auto inputs = random_inputs(64, 3, 22);
  const auto a = forward(net, inputs, 1.0, LtcState::zero(net.layout()));
  const auto b = forward(net, inputs, 1.0, LtcState::zero(net.layout()));
  EXPECT_TRUE(a.isApprox(b, 0.0));
}

TEST(ReferenceStep, ExponentialDecayWithoutSynapses) {
  const NeuronLayout lay{1, 2, 1};
  LtcParams p = LtcParams::zeros(lay);
  p.tau_raw << softplus_inv(0.8), softplus_inv(1.7);
  p.w_raw.setConstant(kWeightOffRaw);
  const LtcNetwork net(lay, p);
  LtcState s{Eigen::VectorXd::Ones(2), 0.0};
  s = reference_span(net, s, Eigen::VectorXd::Zero(1), 1.0, 1e-4);
  EXPECT_NEAR(s.x[0], std::exp(-1.0 / net.tau()[0]), 1e-3);
  EXPECT_NEAR(s.x[1], std::exp(-1.0 / net.tau()[1]), 1e-3);
}

TEST(ReferenceStep, RejectsCoarseSteps) {
  const auto net = hand_net();
  LtcState s = LtcState::zero(net.layout());
  EXPECT_THROW(reference_step(net, s, Eigen::VectorXd::Zero(1), 0.01),
               std::invalid_argument);
}

TEST(ReferenceStep, FixedPointMatchesAnalytic) {
  const auto net = hand_net();
  LtcState s = LtcState::zero(net.layout());
  s = reference_span(net, s, Eigen::VectorXd::Zero(1), 20.0, 1e-3);
  EXPECT_NEAR(s.x[0], 0.5 / 1.5, 1e-6);
}
