#include "ltcsim/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ltcsim/errors.hpp"

namespace ltcsim {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

// ---- plants -------------------------------------------------------------------

void PlantSpec::validate() const {
  const auto n_in = static_cast<Eigen::Index>(inputs.size());
  const auto n_out = static_cast<Eigen::Index>(outputs.size());
  if (n_in < 1 || n_out < 1) throw std::invalid_argument("PlantSpec: need ports");
  if (yield_matrix.rows() != n_out || yield_matrix.cols() != n_in)
    throw std::invalid_argument("PlantSpec: yield matrix shape mismatch");
  for (Eigen::Index c = 0; c < n_in; ++c) {
    if (yield_matrix.col(c).sum() > 1.0 + 1e-12)
      throw std::invalid_argument("PlantSpec: yield column sum exceeds 1 (mass creation)");
  }
  if (lag_hours.size() != n_out) throw std::invalid_argument("PlantSpec: lag count mismatch");
  if ((lag_hours.array() <= 0.0).any())
    throw std::invalid_argument("PlantSpec: lags must be > 0");
  if (noise_std < 0.0 || noise_std > 0.2)
    throw std::invalid_argument("PlantSpec: noise std must lie in [0, 0.2]");
  for (const auto& p : inputs)
    if (p.lo_mg_h < 0.0 || p.hi_mg_h < p.lo_mg_h)
      throw std::invalid_argument("PlantSpec: bad port range for " + p.name);
  if (route_unconverted_to >= static_cast<int>(outputs.size()))
    throw std::invalid_argument("PlantSpec: bad route_unconverted_to");
}

namespace {

double extraction_efficiency(const PlantSpec& spec, const Eigen::VectorXd& in) {
  if (spec.solvent_ratio <= 0.0 || in.size() < 2) return 1.0;
  const double denom = spec.solvent_ratio * in[0] + 1e-12;
  return 1.0 - std::exp(-in[1] / denom);
}

Eigen::VectorXd plant_drive(const PlantSpec& spec, const Eigen::VectorXd& in) {
  Eigen::VectorXd drive = spec.yield_matrix * in;
  const double e = extraction_efficiency(spec, in);
  if (e < 1.0) {
    const double held_back = drive[0] * (1.0 - e);
    drive[0] *= e;
    if (spec.route_unconverted_to >= 0) drive[spec.route_unconverted_to] += held_back;
  }
  return drive;
}

}  // namespace

Eigen::VectorXd PlantSpec::steady_state(const Eigen::VectorXd& in) const {
  if (in.size() != static_cast<Eigen::Index>(inputs.size()))
    throw std::invalid_argument("PlantSpec::steady_state: input size mismatch");
  return plant_drive(*this, in);
}

double PlantSpec::byproduct_ratio(int byproduct_output, int primary_output) const {
  Eigen::VectorXd nominal(static_cast<Eigen::Index>(inputs.size()));
  for (std::size_t i = 0; i < inputs.size(); ++i)
    nominal[static_cast<Eigen::Index>(i)] = 0.5 * (inputs[i].lo_mg_h + inputs[i].hi_mg_h);
  const Eigen::VectorXd out = steady_state(nominal);
  if (out[primary_output] <= 0.0) return 0.0;
  return out[byproduct_output] / out[primary_output];
}

DataTable gen_plant_data(const PlantSpec& spec, long hours, std::uint64_t seed) {
  spec.validate();
  if (hours < 100) throw std::invalid_argument("gen_plant_data: need hours >= 100");

  const auto n_in = static_cast<Eigen::Index>(spec.inputs.size());
  const auto n_out = static_cast<Eigen::Index>(spec.outputs.size());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_int_distribution<int> dwell(24, 96);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // Excitation: random step levels held for a dwell time, band-limited with a
  // short first-order smoothing filter.
  Eigen::MatrixXd in(hours, n_in);
  constexpr double smooth_tau_h = 6.0;
  for (Eigen::Index c = 0; c < n_in; ++c) {
    const auto& port = spec.inputs[static_cast<std::size_t>(c)];
    double level = port.lo_mg_h + u01(rng) * (port.hi_mg_h - port.lo_mg_h);
    double smoothed = level;
    long hold = dwell(rng);
    for (long t = 0; t < hours; ++t) {
      if (hold-- <= 0) {
        level = port.lo_mg_h + u01(rng) * (port.hi_mg_h - port.lo_mg_h);
        hold = dwell(rng);
      }
      smoothed += (level - smoothed) / smooth_tau_h;
      in(t, c) = smoothed;
    }
  }

  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(hours, n_out);
  Eigen::VectorXd state = Eigen::VectorXd::Zero(n_out);
  for (long t = 0; t < hours; ++t) {
    const Eigen::VectorXd drive = plant_drive(spec, in.row(t).transpose());
    for (Eigen::Index k = 0; k < n_out; ++k)
      state[k] += (drive[k] - state[k]) / spec.lag_hours[k];
    for (Eigen::Index k = 0; k < n_out; ++k) {
      const double noise = spec.noise_std > 0.0 ? 1.0 + spec.noise_std * gauss(rng) : 1.0;
      out(t, k) = std::max(0.0, state[k] * noise);
    }
  }

  DataTable table;
  for (const auto& p : spec.inputs) table.columns.push_back(p.name);
  for (const auto& o : spec.outputs) table.columns.push_back(o);
  table.t_hours.resize(static_cast<std::size_t>(hours));
  for (long t = 0; t < hours; ++t) table.t_hours[static_cast<std::size_t>(t)] = static_cast<double>(t);
  table.values.resize(hours, n_in + n_out);
  table.values.leftCols(n_in) = in;
  table.values.rightCols(n_out) = out;
  return table;
}

// ---- climate --------------------------------------------------------------------

void ClimateScenarioSpec::validate() const {
  if (horizon_years < 1) throw std::invalid_argument("ClimateScenarioSpec: horizon >= 1 year");
  if (variability < 0.0) throw std::invalid_argument("ClimateScenarioSpec: variability >= 0");
  if (precip_mean_mm_h < 0.0) throw std::invalid_argument("ClimateScenarioSpec: precip mean >= 0");
}

ClimateSeries gen_climate(const ClimateScenarioSpec& spec) {
  spec.validate();
  const long n = static_cast<long>(spec.horizon_years) * kHoursPerYear;
  ClimateSeries cs;
  cs.start_year = spec.start_year;
  cs.temperature_c.dt_hours = 1.0;
  cs.precipitation_mm_h.dt_hours = 1.0;
  cs.temperature_c.values.resize(static_cast<std::size_t>(n));
  cs.precipitation_mm_h.values.assign(static_cast<std::size_t>(n), 0.0);

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> heat_dur_h(24, 72);
  std::uniform_real_distribution<double> heat_amp(3.0, 8.0);
  std::uniform_int_distribution<int> rain_dur_h(3, 18);

  const double ar_innov = spec.ar1_sigma_c * std::sqrt(1.0 - spec.ar1_phi * spec.ar1_phi);
  double noise = 0.0;
  double heat_boost = 0.0;
  long heat_left = 0;
  double rain_level = 0.0;
  long rain_left = 0;

  for (long t = 0; t < n; ++t) {
    const long hour_of_year = t % kHoursPerYear;
    const double doy = static_cast<double>(hour_of_year) / 24.0 + 1.0;
    const double years_elapsed = static_cast<double>(t) / (24.0 * 365.0);
    const double decades = years_elapsed / 10.0;
    const bool day_boundary = (t % 24) == 0;

    // temperature
    const double seasonal =
        spec.temp_mean_c +
        spec.temp_seasonal_amp_c * std::cos(kTwoPi * (doy - spec.temp_peak_doy) / 365.0);
    noise = spec.ar1_phi * noise + ar_innov * gauss(rng);
    if (day_boundary && heat_left <= 0) {
      const double seasonal_weight =
          std::max(0.0, std::cos(kTwoPi * (doy - spec.temp_peak_doy) / 365.0));
      const double rate = spec.heat_event_base_rate_per_day *
                          (1.0 + spec.extreme_event_rate_growth_per_decade * decades) *
                          seasonal_weight;
      if (u01(rng) < rate) {
        heat_left = heat_dur_h(rng);
        heat_boost = heat_amp(rng);
      }
    }
    double temp = seasonal + spec.warming_trend_c_per_decade * decades +
                  spec.variability * noise;
    if (heat_left > 0) {
      temp += heat_boost;
      --heat_left;
    }
    cs.temperature_c.values[static_cast<std::size_t>(t)] = temp;

    // precipitation: seasonally modulated wet events
    const double season_mod =
        1.0 + spec.precip_seasonal_amp * std::sin(kTwoPi * (doy - 120.0) / 365.0);
    if (day_boundary && rain_left <= 0) {
      const double rate = spec.precip_event_rate_per_day * std::max(0.1, season_mod);
      if (u01(rng) < rate) {
        rain_left = rain_dur_h(rng);
        const double mean_event_hours =
            spec.precip_event_rate_per_day * 0.5 * (3.0 + 18.0);
        const double base_intensity =
            spec.precip_mean_mm_h * 24.0 / std::max(1e-9, mean_event_hours);
        const double spread = 1.0 + (spec.variability - 1.0) * 0.5;
        rain_level = base_intensity * std::exp(spread * 0.6 * gauss(rng) - 0.18);
      }
    }
    if (rain_left > 0) {
      cs.precipitation_mm_h.values[static_cast<std::size_t>(t)] = std::max(0.0, rain_level);
      --rain_left;
    }
  }
  return cs;
}

ClimateScenarioSpec climate_preset(const std::string& name, int horizon_years,
                                   std::uint64_t seed) {
  ClimateScenarioSpec spec;
  spec.name = name;
  spec.horizon_years = horizon_years;
  spec.seed = seed;
  if (name == "rcp45like") {
    spec.warming_trend_c_per_decade = 0.25;
    spec.variability = 1.0;
    spec.extreme_event_rate_growth_per_decade = 0.2;
  } else if (name == "rcp85like") {
    spec.warming_trend_c_per_decade = 0.5;
    spec.variability = 1.3;
    spec.extreme_event_rate_growth_per_decade = 0.5;
  } else {
    throw std::invalid_argument("climate_preset: unknown preset " + name);
  }
  return spec;
}

// ---- growth --------------------------------------------------------------------

GrowthData gen_growth_data(const ClimateSeries& climate, double farm_ha,
                           std::uint64_t seed, const GrowthConfig& cfg) {
  if (farm_ha <= 0.0) throw std::invalid_argument("gen_growth_data: farm_ha must be > 0");
  const int years = climate.years();
  if (years < 1 || static_cast<long>(climate.temperature_c.size()) % kHoursPerYear != 0)
    throw std::invalid_argument("gen_growth_data: climate must cover whole years");

  const int s_begin = season_start_hour_of_year();
  const int s_end = season_end_hour_of_year();
  const int season_len = s_end - s_begin;
  const int n_inputs = cfg.include_humidity_proxy ? 4 : 3;

  GrowthData gd;
  gd.seasons.input_names = {"time_in_season_h", "precipitation_mm_h", "temperature_c"};
  if (cfg.include_humidity_proxy) gd.seasons.input_names.push_back("humidity_proxy");
  gd.seasons.target_names = {"biomass_mg_per_ha"};
  gd.seasons.inputs.resize(static_cast<Eigen::Index>(years) * season_len, n_inputs);
  gd.seasons.targets.resize(static_cast<Eigen::Index>(years) * season_len, 1);
  gd.seasons.t_hours.reserve(static_cast<std::size_t>(years) * static_cast<std::size_t>(season_len));

  std::mt19937_64 rng(seed ^ 0x5eedf00dULL);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Eigen::Index row = 0;
  for (int y = 0; y < years; ++y) {
    const long base = static_cast<long>(y) * kHoursPerYear;
    double biomass = cfg.initial_biomass_fraction * cfg.capacity_mg_per_ha;
    double heat_ema_c = 0.0;        // running mean of excess heat, degC
    double heat_cum_degdays = 0.0;  // irreversible accumulation
    double humidity = 0.0;
    // supply starts balanced against the requirement at season-start warmth
    const auto first_idx = static_cast<std::size_t>(base + s_begin);
    double water_supply_mm_day =
        cfg.water_req_mm_per_day_per_degc *
        std::max(0.0, climate.temperature_c.values[first_idx] - 4.0);

    gd.seasons.segments.emplace_back(row, row + season_len);
    for (int h = 0; h < season_len; ++h, ++row) {
      const auto idx = static_cast<std::size_t>(base + s_begin + h);
      const double temp = climate.temperature_c.values[idx];
      const double precip = climate.precipitation_mm_h.values[idx];

      const double gdd_span = cfg.gdd_cap_c - cfg.gdd_base_c;
      const double warmth =
          std::clamp(temp - cfg.gdd_base_c, 0.0, gdd_span) / gdd_span;
      const double excess = std::max(0.0, temp - cfg.heat_threshold_c);
      heat_ema_c += (excess - heat_ema_c) / cfg.heat_memory_hours;
      heat_cum_degdays += excess / 24.0;
      water_supply_mm_day += (precip * 24.0 - water_supply_mm_day) / cfg.water_memory_hours;
      const double requirement_mm_day =
          cfg.water_req_mm_per_day_per_degc * std::max(0.0, temp - 4.0);

      const double water =
          std::clamp((water_supply_mm_day + cfg.water_buffer_mm_per_day) /
                         (requirement_mm_day + cfg.water_buffer_mm_per_day),
                     cfg.water_floor, 1.0);
      const double capacity = cfg.capacity_mg_per_ha *
                              std::exp(-cfg.heat_ema_sensitivity * heat_ema_c -
                                       cfg.heat_cum_sensitivity * heat_cum_degdays) *
                              water;
      biomass += cfg.logistic_rate_per_h * warmth * biomass * (1.0 - biomass / capacity);
      biomass = std::max(biomass, 0.0);

      gd.seasons.inputs(row, 0) = static_cast<double>(h);
      gd.seasons.inputs(row, 1) = precip;
      gd.seasons.inputs(row, 2) = temp;
      if (cfg.include_humidity_proxy) {
        humidity = 0.97 * humidity + 0.05 * gauss(rng);
        gd.seasons.inputs(row, 3) = humidity;
      }
      gd.seasons.targets(row, 0) = biomass;
      gd.seasons.t_hours.push_back(static_cast<double>(base + s_begin + h));
    }
    gd.harvest_mg.push_back(biomass * farm_ha);
    gd.season_years.push_back(climate.start_year + y);
  }
  gd.seasons.validate();
  return gd;
}

// ---- demand --------------------------------------------------------------------

void DemandSpec::validate() const {
  if (!(base_mg_per_h > 0.0)) throw std::invalid_argument("DemandSpec: base demand must be > 0");
}

TimeSeries gen_demand(const DemandSpec& spec, int years, int start_year) {
  (void)start_year;
  spec.validate();
  if (years < 1) throw std::invalid_argument("gen_demand: years >= 1");
  TimeSeries d;
  d.dt_hours = 1.0;
  const long n = static_cast<long>(years) * kHoursPerYear;
  d.values.resize(static_cast<std::size_t>(n));

  std::mt19937_64 rng(spec.seed ^ 0xdeaa11dULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double noise = 0.0;
  constexpr double phi = 0.97;
  const double innov = std::sqrt(1.0 - phi * phi);

  for (long t = 0; t < n; ++t) {
    const long year = t / kHoursPerYear;
    const long hour_of_year = t % kHoursPerYear;
    const double seasonal =
        1.0 + spec.seasonal_amplitude *
                  std::sin(kTwoPi * static_cast<double>(hour_of_year) /
                           static_cast<double>(kHoursPerYear));
    noise = phi * noise + innov * gauss(rng);
    const double v = spec.base_mg_per_h *
                         std::pow(1.0 + spec.annual_growth, static_cast<double>(year)) *
                         seasonal +
                     spec.noise_std * noise;
    d.values[static_cast<std::size_t>(t)] = std::max(0.0, v);
  }
  return d;
}

}  // namespace ltcsim
