#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "ltcsim/csv.hpp"
#include "ltcsim/dataset.hpp"
#include "ltcsim/series.hpp"

namespace ltcsim {

constexpr int kHoursPerYear = 8760;  // 365-day simulation calendar
constexpr int kSeasonStartDoy = 140;
constexpr int kSeasonEndDoy = 270;   // inclusive
constexpr int kSeasonHours = (kSeasonEndDoy - kSeasonStartDoy + 1) * 24;

inline int season_start_hour_of_year() { return (kSeasonStartDoy - 1) * 24; }
inline int season_end_hour_of_year() { return kSeasonEndDoy * 24; }  // exclusive

// ---- process plants ---------------------------------------------------------

struct PortSpec {
  std::string name;
  double lo_mg_h = 0.0;
  double hi_mg_h = 1.0;
};

// Toy mechanistic process model: outputs are first-order-lag responses of
// yield_matrix * inputs, with an optional saturating extraction efficiency
// on the primary output driven by the auxiliary-to-primary feed ratio.
// Unextracted primary mass can be routed to a byproduct stream so column
// sums of the effective yield matrix stay constant.
struct PlantSpec {
  std::string name;
  std::vector<PortSpec> inputs;
  std::vector<std::string> outputs;
  Eigen::MatrixXd yield_matrix;  // n_out x n_in, mass fractions
  Eigen::VectorXd lag_hours;     // per output, > 0
  double noise_std = 0.0;        // multiplicative, in [0, 0.2]
  // efficiency = 1 - exp(-in1 / (solvent_ratio * in0)); 0 disables
  double solvent_ratio = 0.0;
  int route_unconverted_to = -1;  // output index, -1 drops the shortfall

  void validate() const;
  // Static input->output map (the lag-free limit); also used by tests.
  Eigen::VectorXd steady_state(const Eigen::VectorXd& in) const;
  // Byproduct-to-primary output ratio at the nominal operating point
  // (midpoint of the input ranges); used for auxiliary desired signals.
  double byproduct_ratio(int byproduct_output, int primary_output) const;
};

// Band-limited random excitation of the input ports plus the lagged plant
// response, hourly, `hours` rows. Columns: input ports then output ports.
DataTable gen_plant_data(const PlantSpec& spec, long hours, std::uint64_t seed);

// ---- climate ----------------------------------------------------------------

struct ClimateScenarioSpec {
  std::string name = "rcp45like";
  // annual temperature sinusoid
  double temp_mean_c = 11.0;
  double temp_seasonal_amp_c = 14.0;
  double temp_peak_doy = 200.0;
  double warming_trend_c_per_decade = 0.25;
  // precipitation event process
  double precip_mean_mm_h = 0.105;
  double precip_seasonal_amp = 0.35;
  double precip_event_rate_per_day = 0.40;
  // noise / extremes
  double variability = 1.0;  // >= 1 for the harsher preset
  double ar1_phi = 0.95;
  double ar1_sigma_c = 2.2;
  double heat_event_base_rate_per_day = 0.02;
  double extreme_event_rate_growth_per_decade = 0.2;  // linear growth
  int start_year = 2006;
  int horizon_years = 91;
  std::uint64_t seed = 0;

  void validate() const;
};

struct ClimateSeries {
  int start_year = 2006;
  TimeSeries temperature_c;       // hourly
  TimeSeries precipitation_mm_h;  // hourly, >= 0
  int years() const {
    return static_cast<int>(temperature_c.size()) / kHoursPerYear;
  }
};

ClimateSeries gen_climate(const ClimateScenarioSpec& spec);

// Named presets for the two emissions scenarios. Unknown names throw.
ClimateScenarioSpec climate_preset(const std::string& name, int horizon_years,
                                   std::uint64_t seed);

// ---- crop growth ------------------------------------------------------------

struct GrowthConfig {
  double capacity_mg_per_ha = 3.4;       // logistic carrying capacity K
  double logistic_rate_per_h = 0.01;     // r0
  double initial_biomass_fraction = 0.02;
  double gdd_base_c = 10.0;
  double gdd_cap_c = 30.0;
  double heat_threshold_c = 32.0;
  // capacity stress: a recoverable component driven by a running mean of
  // excess heat, plus an irreversible degree-day accumulation
  double heat_memory_hours = 360.0;
  double heat_ema_sensitivity = 0.05;       // per degC of the running excess
  double heat_cum_sensitivity = 0.006;      // per degC-day accumulated
  // water adequacy: running mean of supply vs a warmth-driven requirement
  double water_memory_hours = 240.0;
  double water_req_mm_per_day_per_degc = 0.16;
  double water_buffer_mm_per_day = 2.0;
  double water_floor = 0.35;
  bool include_humidity_proxy = false;  // extra channel unrelated to the target
};

struct GrowthData {
  Dataset seasons;  // inputs: time_in_season_h, precipitation_mm_h, temperature_c
                    // (+ humidity_proxy when enabled); target: biomass_mg_per_ha
  std::vector<double> harvest_mg;  // end-of-season biomass x farm area
  std::vector<int> season_years;
};

// Degree-day logistic growth over the fixed season window, hourly. The
// per-hectare trajectory is independent of farm_ha; harvests scale linearly.
GrowthData gen_growth_data(const ClimateSeries& climate, double farm_ha,
                           std::uint64_t seed, const GrowthConfig& cfg = {});

// ---- economic demand ---------------------------------------------------------

struct DemandSpec {
  double base_mg_per_h = 0.0229;  // diesel
  double annual_growth = 0.0;
  double seasonal_amplitude = 0.08;
  double noise_std = 0.002;  // AR(1)-smoothed, clipped at zero
  std::uint64_t seed = 0;

  void validate() const;
};

TimeSeries gen_demand(const DemandSpec& spec, int years, int start_year = 2006);

}  // namespace ltcsim
