#pragma once

#include <string>
#include <vector>

#include "ltcsim/generators.hpp"
#include "ltcsim/series.hpp"
#include "ltcsim/surrogate.hpp"

namespace ltcsim {

// Where a node input port draws its signal from.
enum class SourceKind { NodeOutput, StockSource, Exogenous };

struct Binding {
  std::string node;   // consuming node
  std::string port;   // consuming input port
  SourceKind kind;
  std::string source;      // "node.port", stock name, or exogenous signal name
  double delay_hours = 0;  // applied with apply_delay on the bound series
};

// The closed production network: growth -> stock -> oil plant -> diesel plant,
// demand-driven through the cascaded controllers, with hexane and water as
// untracked exogenous sources.
struct EcosystemGraph {
  SurrogateModel growth;
  SurrogateModel oil_plant;
  SurrogateModel diesel_plant;
  SurrogateModel oil_controller;
  SurrogateModel diesel_controller;

  // Steady-state byproduct ratios that synthesize the controllers' auxiliary
  // desired inputs at run time.
  double meal_per_oil = 0.0;       // soy-meal desired per unit oil desired
  double recycle_per_diesel = 0.0; // oil-recycled desired per unit diesel desired

  std::vector<Binding> bindings;

  static EcosystemGraph standard(SurrogateModel growth, SurrogateModel oil_plant,
                                 SurrogateModel diesel_plant, SurrogateModel oil_controller,
                                 SurrogateModel diesel_controller,
                                 const PlantSpec& oil_spec, const PlantSpec& diesel_spec);

  // Every node input port must be bound exactly once and all models must
  // share the hourly timescale.
  void validate() const;
};

struct CascadeResult {
  TimeSeries soybean_required;
  TimeSeries hexane;
  TimeSeries water;
  TimeSeries oil_required;
};

// Open-loop controller cascade: the diesel controller maps (demand,
// oil-recycled desired) to (oil feedstock, water); the oil controller maps
// (oil feedstock, soy-meal desired) to (soybean feedstock, hexane). Outputs
// are clipped at zero. No feedback from realized production.
CascadeResult controller_cascade(const TimeSeries& demand, const SurrogateModel& oil_ctrl,
                                 const SurrogateModel& diesel_ctrl, double recycle_per_diesel,
                                 double meal_per_oil);

}  // namespace ltcsim
