#include "ltcsim/graph.hpp"

#include <map>
#include <set>
#include <stdexcept>

#include "ltcsim/errors.hpp"

namespace ltcsim {

EcosystemGraph EcosystemGraph::standard(SurrogateModel growth, SurrogateModel oil_plant,
                                        SurrogateModel diesel_plant,
                                        SurrogateModel oil_controller,
                                        SurrogateModel diesel_controller,
                                        const PlantSpec& oil_spec,
                                        const PlantSpec& diesel_spec) {
  EcosystemGraph g;
  g.growth = std::move(growth);
  g.oil_plant = std::move(oil_plant);
  g.diesel_plant = std::move(diesel_plant);
  g.oil_controller = std::move(oil_controller);
  g.diesel_controller = std::move(diesel_controller);
  g.meal_per_oil = oil_spec.byproduct_ratio(1, 0);
  g.recycle_per_diesel = diesel_spec.byproduct_ratio(1, 0);

  g.bindings = {
      {"growth", "time_in_season_h", SourceKind::Exogenous, "calendar", 0},
      {"growth", "precipitation_mm_h", SourceKind::Exogenous, "climate.precipitation", 0},
      {"growth", "temperature_c", SourceKind::Exogenous, "climate.temperature", 0},
      {"diesel_controller", "diesel_desired", SourceKind::Exogenous, "demand", 0},
      {"diesel_controller", "oil_recycled_desired", SourceKind::Exogenous,
       "demand.recycle_ratio", 0},
      {"oil_controller", "oil_desired", SourceKind::NodeOutput,
       "diesel_controller.oil_feed", 0},
      {"oil_controller", "soy_meal_desired", SourceKind::Exogenous,
       "oil_desired.meal_ratio", 0},
      {"oil_plant", "soybean_mg_h", SourceKind::StockSource, "soybean_stock", 0},
      {"oil_plant", "hexane_mg_h", SourceKind::NodeOutput, "oil_controller.hexane", 0},
      {"diesel_plant", "oil_mg_h", SourceKind::NodeOutput, "oil_plant.oil_mg_h", 0},
      {"diesel_plant", "water_mg_h", SourceKind::NodeOutput, "diesel_controller.water", 0},
  };
  g.validate();
  return g;
}

void EcosystemGraph::validate() const {
  const std::map<std::string, const SurrogateModel*> nodes = {
      {"growth", &growth},
      {"oil_plant", &oil_plant},
      {"diesel_plant", &diesel_plant},
      {"oil_controller", &oil_controller},
      {"diesel_controller", &diesel_controller},
  };
  std::set<std::pair<std::string, std::string>> bound;
  for (const auto& b : bindings) {
    const auto it = nodes.find(b.node);
    if (it == nodes.end())
      throw std::invalid_argument("EcosystemGraph: binding for unknown node " + b.node);
    const auto& ports = it->second->input_ports;
    if (std::find(ports.begin(), ports.end(), b.port) == ports.end())
      throw std::invalid_argument("EcosystemGraph: unknown input port " + b.node + "." +
                                  b.port);
    if (!bound.emplace(b.node, b.port).second)
      throw std::invalid_argument("EcosystemGraph: input bound twice: " + b.node + "." +
                                  b.port);
    if (b.delay_hours < 0)
      throw std::invalid_argument("EcosystemGraph: negative delay on " + b.node);
  }
  for (const auto& [name, model] : nodes) {
    if (model->dt_hours != 1.0)
      throw std::invalid_argument("EcosystemGraph: node " + name +
                                  " is not on the hourly timescale");
    for (const auto& port : model->input_ports)
      if (!bound.count({name, port}))
        throw std::invalid_argument("EcosystemGraph: unbound input " + name + "." + port);
  }
}

CascadeResult controller_cascade(const TimeSeries& demand, const SurrogateModel& oil_ctrl,
                                 const SurrogateModel& diesel_ctrl, double recycle_per_diesel,
                                 double meal_per_oil) {
  if (demand.empty()) throw EmptySeries("controller_cascade: empty demand");
  if (!oil_ctrl.trained || !diesel_ctrl.trained)
    throw UntrainedController("controller_cascade: controllers must be trained");

  const auto n = static_cast<Eigen::Index>(demand.size());
  Eigen::MatrixXd diesel_in(n, 2);
  for (Eigen::Index t = 0; t < n; ++t) {
    const double d = demand.values[static_cast<std::size_t>(t)];
    diesel_in(t, 0) = d;
    diesel_in(t, 1) = recycle_per_diesel * d;
  }
  const Eigen::MatrixXd diesel_out = diesel_ctrl.predict(diesel_in).cwiseMax(0.0);

  Eigen::MatrixXd oil_in(n, 2);
  for (Eigen::Index t = 0; t < n; ++t) {
    const double oil_req = diesel_out(t, 0);
    oil_in(t, 0) = oil_req;
    oil_in(t, 1) = meal_per_oil * oil_req;
  }
  const Eigen::MatrixXd oil_out = oil_ctrl.predict(oil_in).cwiseMax(0.0);

  auto series_like = [&](const Eigen::VectorXd& col) {
    TimeSeries s;
    s.t0_hours = demand.t0_hours;
    s.dt_hours = demand.dt_hours;
    s.values.assign(col.data(), col.data() + col.size());
    return s;
  };
  CascadeResult r;
  r.oil_required = series_like(diesel_out.col(0));
  r.water = series_like(diesel_out.col(1));
  r.soybean_required = series_like(oil_out.col(0));
  r.hexane = series_like(oil_out.col(1));
  return r;
}

}  // namespace ltcsim
