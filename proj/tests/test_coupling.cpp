#include <gtest/gtest.h>

#include <cmath>

#include "ltcsim/graph.hpp"
#include "ltcsim/numeric.hpp"
#include "ltcsim/scenario.hpp"
#include "ltcsim/simulate.hpp"

using namespace ltcsim;

namespace {

// Hand-built surrogate whose motor output is a constant, for exercising the
// coupling machinery without any training.
SurrogateModel constant_model(const std::string& name,
                              const std::vector<std::string>& in_ports,
                              const std::vector<std::string>& out_ports,
                              const Eigen::VectorXd& constants) {
  const NeuronLayout lay{static_cast<int>(in_ports.size()), 2,
                         static_cast<int>(out_ports.size())};
  LtcParams p = LtcParams::zeros(lay);
  p.tau_raw.setConstant(softplus_inv(1.0));
  p.w_raw.setConstant(-1000.0);  // leak only; motor bias carries the value
  p.motor_bias = constants;
  SurrogateModel m;
  m.name = name;
  m.net = LtcNetwork(lay, p);
  m.input_ports = in_ports;
  m.output_ports = out_ports;
  m.input_norm = Normalizer::identity(lay.n_sensory);
  m.output_norm = Normalizer::identity(lay.n_motor);
  m.trained = true;
  return m;
}

SurrogateModel growth_model_const(double biomass_per_ha) {
  return constant_model("growth",
                        {"time_in_season_h", "precipitation_mm_h", "temperature_c"},
                        {"biomass_mg_per_ha"}, Eigen::VectorXd::Constant(1, biomass_per_ha));
}

struct Fixture {
  EcosystemGraph graph;
  ClimateSeries climate;
  TimeSeries demand;
  SimulationOptions opt;
};

// soybean_required constant `soy` Mg/h; growth yields `biomass` Mg/ha.
Fixture make_fixture(double biomass, double soy, int years) {
  const ScenarioConfig cfg = default_config();
  Eigen::VectorXd oil_ctrl_out(2);
  oil_ctrl_out << soy, 0.45 * soy;  // soybean, hexane
  Eigen::VectorXd diesel_ctrl_out(2);
  diesel_ctrl_out << 0.03, 0.014;  // oil feed, water
  Eigen::VectorXd oil_out(2);
  oil_out << 0.171 * soy, 0.78 * soy;
  Eigen::VectorXd diesel_out(2);
  diesel_out << 0.9 * 0.171 * soy, 0.005;

  Fixture f{EcosystemGraph::standard(
                growth_model_const(biomass),
                constant_model("oil_plant", {"soybean_mg_h", "hexane_mg_h"},
                               {"oil_mg_h", "meal_mg_h"}, oil_out),
                constant_model("diesel_plant", {"oil_mg_h", "water_mg_h"},
                               {"diesel_mg_h", "recycle_mg_h"}, diesel_out),
                constant_model("oil_controller", {"oil_desired", "soy_meal_desired"},
                               {"soybean_mg_h", "hexane_mg_h"}, oil_ctrl_out),
                constant_model("diesel_controller", {"diesel_desired", "oil_recycled_desired"},
                               {"oil_mg_h", "water_mg_h"}, diesel_ctrl_out),
                cfg.oil_plant, cfg.diesel_plant),
            ClimateSeries{}, TimeSeries{}, SimulationOptions{}};
  f.climate.start_year = 2006;
  f.climate.temperature_c.values.assign(static_cast<std::size_t>(years) * kHoursPerYear, 20.0);
  f.climate.precipitation_mm_h.values.assign(static_cast<std::size_t>(years) * kHoursPerYear,
                                             0.1);
  f.demand.values.assign(static_cast<std::size_t>(years) * kHoursPerYear, 0.02);
  f.opt.start_year = 2006;
  f.opt.end_year = 2006 + years - 1;
  f.opt.farm_ha = 500.0;
  f.opt.initial_stock_mg = 800.0;  // covers the months before the first harvest
  return f;
}

}  // namespace

TEST(Cascade, ClipsNegativeControllerOutputsToZero) {
  Eigen::VectorXd neg(2);
  neg << -0.5, -0.1;
  const auto octrl = constant_model("oc", {"oil_desired", "soy_meal_desired"},
                                    {"soybean_mg_h", "hexane_mg_h"}, neg);
  const auto dctrl = constant_model("dc", {"diesel_desired", "oil_recycled_desired"},
                                    {"oil_mg_h", "water_mg_h"}, neg);
  TimeSeries demand{0.0, 1.0, std::vector<double>(48, 0.02)};
  const auto r = controller_cascade(demand, octrl, dctrl, 0.07, 4.5);
  for (double v : r.soybean_required.values) ASSERT_EQ(v, 0.0);
  for (double v : r.hexane.values) ASSERT_EQ(v, 0.0);
  for (double v : r.oil_required.values) ASSERT_EQ(v, 0.0);
  for (double v : r.water.values) ASSERT_EQ(v, 0.0);
}

TEST(Cascade, RefusesUntrainedControllers) {
  auto octrl = constant_model("oc", {"oil_desired", "soy_meal_desired"},
                              {"soybean_mg_h", "hexane_mg_h"}, Eigen::VectorXd::Zero(2));
  auto dctrl = constant_model("dc", {"diesel_desired", "oil_recycled_desired"},
                              {"oil_mg_h", "water_mg_h"}, Eigen::VectorXd::Zero(2));
  octrl.trained = false;
  TimeSeries demand{0.0, 1.0, {0.02, 0.02}};
  EXPECT_THROW(controller_cascade(demand, octrl, dctrl, 0.07, 4.5), UntrainedController);
}

TEST(Cascade, EmptyDemandThrows) {
  const auto octrl = constant_model("oc", {"oil_desired", "soy_meal_desired"},
                                    {"soybean_mg_h", "hexane_mg_h"}, Eigen::VectorXd::Zero(2));
  const auto dctrl = constant_model("dc", {"diesel_desired", "oil_recycled_desired"},
                                    {"oil_mg_h", "water_mg_h"}, Eigen::VectorXd::Zero(2));
  EXPECT_THROW(controller_cascade(TimeSeries{}, octrl, dctrl, 0.07, 4.5), EmptySeries);
}

TEST(Graph, ValidatesPortBindings) {
  const auto f = make_fixture(3.0, 0.1, 1);
  EXPECT_NO_THROW(f.graph.validate());
  EcosystemGraph broken = f.graph;
  broken.bindings.pop_back();  // unbind one input
  EXPECT_THROW(broken.validate(), std::invalid_argument);
  EcosystemGraph doubled = f.graph;
  doubled.bindings.push_back(doubled.bindings.front());
  EXPECT_THROW(doubled.validate(), std::invalid_argument);
}

TEST(Graph, ByproductRatiosFromPlantSpecs) {
  const ScenarioConfig cfg = default_config();
  const auto f = make_fixture(3.0, 0.1, 1);
  EXPECT_NEAR(f.graph.meal_per_oil, cfg.oil_plant.byproduct_ratio(1, 0), 1e-12);
  EXPECT_NEAR(f.graph.recycle_per_diesel, cfg.diesel_plant.byproduct_ratio(1, 0), 1e-12);
  EXPECT_GT(f.graph.meal_per_oil, 1.0);   // meal dominates oil by mass
  EXPECT_LT(f.graph.recycle_per_diesel, 0.2);
}

TEST(SimulateHorizon, AbundantHarvestRunsClean) {
  // 500 ha x 3 Mg/ha = 1500 Mg/yr against ~875 Mg/yr of withdrawals
  const auto f = make_fixture(3.0, 0.1, 8);
  const auto trace = simulate_horizon(f.graph, f.climate, f.demand, f.opt);
  EXPECT_TRUE(trace.failures.empty());
  EXPECT_DOUBLE_EQ(trace.total_imports_mg(), 0.0);
  EXPECT_GT(trace.total_waste_mg(), 0.0);  // surplus expires
  for (double p : trace.diesel_production_mg_h) ASSERT_GE(p, 0.0);
  for (int y = 0; y < trace.years(); ++y)
    EXPECT_NEAR(trace.yearly_harvest_mg[static_cast<std::size_t>(y)], 1500.0, 1e-9);
}

TEST(SimulateHorizon, ZeroYieldFailsEveryPeriodAndTalliesImports) {
  auto f = make_fixture(0.0, 0.1, 3);
  f.opt.initial_stock_mg = 0.0;
  const auto trace = simulate_horizon(f.graph, f.climate, f.demand, f.opt);
  const int periods = trace.periods_per_year() * trace.years();
  EXPECT_EQ(static_cast<int>(trace.failures.size()), periods);
  // required imports equal the whole soybean plan
  const double plan = 0.1 * static_cast<double>(trace.years()) * kHoursPerYear;
  EXPECT_NEAR(trace.total_imports_mg(), plan, 1e-6 * plan);
  for (double p : trace.diesel_production_mg_h) ASSERT_EQ(p, 0.0);
}

TEST(SimulateHorizon, FailureFlagsMatchZeroProductionPeriods) {
  // marginal supply so some periods fail and others do not
  auto f = make_fixture(1.05, 0.12, 10);
  f.opt.initial_stock_mg = 100.0;
  const auto trace = simulate_horizon(f.graph, f.climate, f.demand, f.opt);
  EXPECT_GT(trace.failures.size(), 0u);
  EXPECT_LT(static_cast<int>(trace.failures.size()),
            trace.periods_per_year() * trace.years());
  std::set<std::pair<int, int>> failed;
  for (const auto& fr : trace.failures) failed.insert({fr.year, fr.week});
  for (int y = 0; y < trace.years(); ++y) {
    for (int p = 0; p * trace.period_hours < kHoursPerYear; ++p) {
      const long a = static_cast<long>(y) * kHoursPerYear + p * trace.period_hours;
      const long b = std::min<long>((y + 1L) * kHoursPerYear, a + trace.period_hours);
      double prod = 0.0;
      for (long h = a; h < b; ++h)
        prod += trace.diesel_production_mg_h[static_cast<std::size_t>(h)];
      const bool flagged = failed.count({trace.start_year + y, p}) > 0;
      EXPECT_EQ(flagged, prod == 0.0) << "year " << y << " period " << p;
    }
  }
}

TEST(SimulateHorizon, MassLedgerBalances) {
  auto f = make_fixture(1.05, 0.12, 12);
  const auto trace = simulate_horizon(f.graph, f.climate, f.demand, f.opt);
  // requested mass comes from the same open-loop cascade the simulation used
  const auto plan = controller_cascade(f.demand, f.graph.oil_controller,
                                       f.graph.diesel_controller,
                                       f.graph.recycle_per_diesel, f.graph.meal_per_oil);
  double requested = 0.0;
  for (double v : plan.soybean_required.values) requested += v;
  const double withdrawn = requested - trace.total_imports_mg();
  double harvests = 0.0;
  for (double h : trace.yearly_harvest_mg) harvests += h;
  const double lhs = harvests + f.opt.initial_stock_mg;
  const double rhs = withdrawn + trace.yearly_stock_mg.back() + trace.total_waste_mg();
  EXPECT_NEAR(lhs, rhs, 1e-9 * std::max(1.0, lhs));
}

TEST(SimulateHorizon, LargerFarmNeverDoesWorse) {
  auto small = make_fixture(1.0, 0.12, 15);
  auto large = make_fixture(1.0, 0.12, 15);
  large.opt.farm_ha = 650.0;
  const auto t_small = simulate_horizon(small.graph, small.climate, small.demand, small.opt);
  const auto t_large = simulate_horizon(large.graph, large.climate, large.demand, large.opt);
  EXPECT_LE(t_large.total_imports_mg(), t_small.total_imports_mg());
  EXPECT_LE(t_large.failures.size(), t_small.failures.size());
}

TEST(SimulateHorizon, ShortDriversRaiseHorizonMismatch) {
  auto f = make_fixture(3.0, 0.1, 2);
  f.demand.values.resize(kHoursPerYear);  // one year short
  EXPECT_THROW(simulate_horizon(f.graph, f.climate, f.demand, f.opt), HorizonMismatch);
}

TEST(SimulateHorizon, UntrainedModelsRejected) {
  auto f = make_fixture(3.0, 0.1, 1);
  f.graph.growth.trained = false;
  EXPECT_THROW(simulate_horizon(f.graph, f.climate, f.demand, f.opt), UntrainedModels);
}
