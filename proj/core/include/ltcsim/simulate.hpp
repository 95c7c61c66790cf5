#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ltcsim/generators.hpp"
#include "ltcsim/graph.hpp"

namespace ltcsim {

struct FailureRecord {
  int year;
  int week;  // production period index within the year
};

// Time-indexed record of one horizon run. Hourly production channels plus
// yearly ledger snapshots; failure flags mark periods where a soybean
// shortfall forced production to zero.
struct SimulationTrace {
  int start_year = 2006;
  int end_year = 2096;
  int period_hours = 168;

  std::vector<double> oil_production_mg_h;     // hourly
  std::vector<double> diesel_production_mg_h;  // hourly
  std::vector<FailureRecord> failures;

  std::vector<double> yearly_harvest_mg;
  std::vector<double> yearly_stock_mg;       // post-expiry year-end snapshot
  std::vector<double> yearly_waste_inc_mg;
  std::vector<double> yearly_import_inc_mg;
  std::vector<int> yearly_failure_count;

  int years() const { return end_year - start_year + 1; }
  int periods_per_year() const {
    return (kHoursPerYear + period_hours - 1) / period_hours;
  }
  double total_waste_mg() const;
  double total_imports_mg() const;
  void validate() const;
};

struct SimulationOptions {
  int start_year = 2006;
  int end_year = 2096;
  double farm_ha = 500.0;
  double initial_stock_mg = 1250.0;
  int period_hours = 168;  // weekly shortfall accounting
  int stock_expiry_years = 3;
};

// Runs the coupled network over the horizon: per year the growth surrogate
// produces the harvest deposited into the stock; the controller cascade turns
// demand into feedstock plans; per production period the required soybean
// mass is withdrawn from the stock, a shortfall zeroes production and is
// tallied as a counterfactual required import (never deposited back).
SimulationTrace simulate_horizon(const EcosystemGraph& graph, const ClimateSeries& climate,
                                 const TimeSeries& demand, const SimulationOptions& opt);

// Trace persistence: hourly channels CSV, yearly aggregates CSV and a JSON
// metadata sidecar.
void save_trace(const SimulationTrace& trace, const std::filesystem::path& dir,
                const std::string& meta_json);
SimulationTrace load_trace(const std::filesystem::path& dir);

}  // namespace ltcsim
