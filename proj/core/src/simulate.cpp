#include "ltcsim/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "ltcsim/csv.hpp"
#include "ltcsim/errors.hpp"
#include "ltcsim/stock.hpp"

namespace ltcsim {

double SimulationTrace::total_waste_mg() const {
  double s = 0.0;
  for (double v : yearly_waste_inc_mg) s += v;
  return s;
}

double SimulationTrace::total_imports_mg() const {
  double s = 0.0;
  for (double v : yearly_import_inc_mg) s += v;
  return s;
}

void SimulationTrace::validate() const {
  const auto hours = static_cast<std::size_t>(years()) * kHoursPerYear;
  if (oil_production_mg_h.size() != hours || diesel_production_mg_h.size() != hours)
    throw std::invalid_argument("SimulationTrace: hourly channel length mismatch");
  const auto ny = static_cast<std::size_t>(years());
  if (yearly_harvest_mg.size() != ny || yearly_stock_mg.size() != ny ||
      yearly_waste_inc_mg.size() != ny || yearly_import_inc_mg.size() != ny ||
      yearly_failure_count.size() != ny)
    throw std::invalid_argument("SimulationTrace: yearly channel length mismatch");
  for (double v : oil_production_mg_h)
    if (v < 0.0 || !std::isfinite(v))
      throw std::invalid_argument("SimulationTrace: negative or non-finite production");
  for (const auto& f : failures)
    if (f.year < start_year || f.year > end_year)
      throw std::invalid_argument("SimulationTrace: failure outside horizon");
}

namespace {

Eigen::MatrixXd growth_season_inputs(const SurrogateModel& growth,
                                     const ClimateSeries& climate, long year_base_hour) {
  const int s_begin = season_start_hour_of_year();
  const int len = kSeasonHours;
  Eigen::MatrixXd in(len, static_cast<Eigen::Index>(growth.input_ports.size()));
  for (std::size_t c = 0; c < growth.input_ports.size(); ++c) {
    const auto& port = growth.input_ports[c];
    for (int h = 0; h < len; ++h) {
      const auto idx = static_cast<std::size_t>(year_base_hour + s_begin + h);
      double v = 0.0;
      if (port == "time_in_season_h")
        v = static_cast<double>(h);
      else if (port == "precipitation_mm_h")
        v = climate.precipitation_mm_h.values[idx];
      else if (port == "temperature_c")
        v = climate.temperature_c.values[idx];
      else
        throw std::invalid_argument("simulate_horizon: growth port has no climate source: " +
                                    port);
      in(h, static_cast<Eigen::Index>(c)) = v;
    }
  }
  return in;
}

}  // namespace

SimulationTrace simulate_horizon(const EcosystemGraph& graph, const ClimateSeries& climate,
                                 const TimeSeries& demand, const SimulationOptions& opt) {
  graph.validate();
  if (!graph.growth.trained || !graph.oil_plant.trained || !graph.diesel_plant.trained ||
      !graph.oil_controller.trained || !graph.diesel_controller.trained)
    throw UntrainedModels("simulate_horizon: all node models must be trained");
  if (opt.end_year < opt.start_year)
    throw std::invalid_argument("simulate_horizon: end_year before start_year");

  const int years = opt.end_year - opt.start_year + 1;
  const long total_hours = static_cast<long>(years) * kHoursPerYear;
  if (climate.start_year != opt.start_year)
    throw HorizonMismatch("simulate_horizon: climate starts at the wrong year");
  if (static_cast<long>(climate.temperature_c.size()) < total_hours ||
      static_cast<long>(climate.precipitation_mm_h.size()) < total_hours)
    throw HorizonMismatch("simulate_horizon: climate does not cover the horizon");
  if (static_cast<long>(demand.size()) < total_hours)
    throw HorizonMismatch("simulate_horizon: demand does not cover the horizon");

  // Open loop: the whole feedstock plan follows from demand alone.
  TimeSeries demand_slice;
  demand_slice.t0_hours = demand.t0_hours;
  demand_slice.dt_hours = demand.dt_hours;
  demand_slice.values.assign(demand.values.begin(), demand.values.begin() + total_hours);
  const CascadeResult plan = controller_cascade(
      demand_slice, graph.oil_controller, graph.diesel_controller,
      graph.recycle_per_diesel, graph.meal_per_oil);

  SimulationTrace trace;
  trace.start_year = opt.start_year;
  trace.end_year = opt.end_year;
  trace.period_hours = opt.period_hours;
  trace.oil_production_mg_h.assign(static_cast<std::size_t>(total_hours), 0.0);
  trace.diesel_production_mg_h.assign(static_cast<std::size_t>(total_hours), 0.0);

  Stock stock(opt.stock_expiry_years);
  if (opt.initial_stock_mg > 0.0) stock.deposit(opt.start_year, opt.initial_stock_mg);

  ModelRunner oil_runner(graph.oil_plant);
  ModelRunner diesel_runner(graph.diesel_plant);
  Eigen::VectorXd oil_in(2), diesel_in(2);

  const int season_end = season_end_hour_of_year();

  for (int y = 0; y < years; ++y) {
    const int year = opt.start_year + y;
    const long base = static_cast<long>(y) * kHoursPerYear;

    const Eigen::MatrixXd season_in =
        growth_season_inputs(graph.growth, climate, base);
    const Eigen::MatrixXd biomass = graph.growth.predict(season_in);
    const double harvest_mg =
        std::max(0.0, biomass(biomass.rows() - 1, 0)) * opt.farm_ha;

    double import_inc = 0.0;
    int failure_count = 0;
    bool deposited = false;

    for (long period_start = 0; period_start < kHoursPerYear;
         period_start += opt.period_hours) {
      if (!deposited && period_start >= season_end) {
        stock.deposit(year, harvest_mg);
        deposited = true;
      }
      const long period_end =
          std::min<long>(kHoursPerYear, period_start + opt.period_hours);

      double soy_need_mg = 0.0;
      for (long h = period_start; h < period_end; ++h)
        soy_need_mg += plan.soybean_required.values[static_cast<std::size_t>(base + h)];

      const auto wd = stock.withdraw(soy_need_mg);
      const bool failed = wd.shortfall_mg > 0.0;
      if (failed) {
        stock.record_import(wd.shortfall_mg);
        import_inc += wd.shortfall_mg;
        ++failure_count;
        trace.failures.push_back(
            {year, static_cast<int>(period_start / opt.period_hours)});
      }
      for (long h = period_start; h < period_end; ++h) {
        const auto t = static_cast<std::size_t>(base + h);
        // A starved chain shuts down whole: zero feeds, zero production.
        const double soy = failed ? 0.0 : plan.soybean_required.values[t];
        const double hex = failed ? 0.0 : plan.hexane.values[t];
        oil_in << soy, hex;
        const Eigen::VectorXd oil_out = oil_runner.step(oil_in);
        const double oil_mg_h = failed ? 0.0 : std::max(0.0, oil_out[0]);
        const double water = failed ? 0.0 : plan.water.values[t];
        diesel_in << oil_mg_h, water;
        const Eigen::VectorXd diesel_out = diesel_runner.step(diesel_in);
        trace.oil_production_mg_h[t] = oil_mg_h;
        trace.diesel_production_mg_h[t] = failed ? 0.0 : std::max(0.0, diesel_out[0]);
      }
    }
    if (!deposited) stock.deposit(year, harvest_mg);

    const double waste_inc = stock.expire(year);
    trace.yearly_harvest_mg.push_back(harvest_mg);
    trace.yearly_stock_mg.push_back(stock.level());
    trace.yearly_waste_inc_mg.push_back(waste_inc);
    trace.yearly_import_inc_mg.push_back(import_inc);
    trace.yearly_failure_count.push_back(failure_count);
  }

  trace.validate();
  return trace;
}

// ---- persistence -------------------------------------------------------------

void save_trace(const SimulationTrace& trace, const std::filesystem::path& dir,
                const std::string& meta_json) {
  std::filesystem::create_directories(dir);
  const auto hours = static_cast<long>(trace.oil_production_mg_h.size());

  // hourly failure flags derived from the per-period records
  std::vector<double> failure_flag(static_cast<std::size_t>(hours), 0.0);
  for (const auto& f : trace.failures) {
    const long base = static_cast<long>(f.year - trace.start_year) * kHoursPerYear;
    const long a = base + static_cast<long>(f.week) * trace.period_hours;
    const long b = std::min<long>(base + kHoursPerYear,
                                  a + trace.period_hours);
    for (long h = a; h < b; ++h) failure_flag[static_cast<std::size_t>(h)] = 1.0;
  }

  DataTable hourly;
  hourly.columns = {"oil_production_mg_h", "diesel_production_mg_h", "failure"};
  hourly.t_hours.resize(static_cast<std::size_t>(hours));
  hourly.values.resize(hours, 3);
  for (long t = 0; t < hours; ++t) {
    hourly.t_hours[static_cast<std::size_t>(t)] = static_cast<double>(t);
    hourly.values(t, 0) = trace.oil_production_mg_h[static_cast<std::size_t>(t)];
    hourly.values(t, 1) = trace.diesel_production_mg_h[static_cast<std::size_t>(t)];
    hourly.values(t, 2) = failure_flag[static_cast<std::size_t>(t)];
  }
  write_csv(dir / "trace_hourly.csv", hourly);

  std::ofstream y(dir / "trace_yearly.csv");
  if (!y) throw IoError("save_trace: cannot open yearly csv in " + dir.string());
  y << "year,harvest_Mg,stock_Mg,waste_cum_Mg,import_cum_Mg,failures_count\n";
  double waste_cum = 0.0, import_cum = 0.0;
  for (int i = 0; i < trace.years(); ++i) {
    waste_cum += trace.yearly_waste_inc_mg[static_cast<std::size_t>(i)];
    import_cum += trace.yearly_import_inc_mg[static_cast<std::size_t>(i)];
    y << (trace.start_year + i) << ','
      << format_double(trace.yearly_harvest_mg[static_cast<std::size_t>(i)]) << ','
      << format_double(trace.yearly_stock_mg[static_cast<std::size_t>(i)]) << ','
      << format_double(waste_cum) << ',' << format_double(import_cum) << ','
      << trace.yearly_failure_count[static_cast<std::size_t>(i)] << '\n';
  }
  y.close();

  nlohmann::json meta;
  meta["schema"] = "ltcsim.trace";
  meta["schema_version"] = 1;
  meta["start_year"] = trace.start_year;
  meta["end_year"] = trace.end_year;
  meta["period_hours"] = trace.period_hours;
  if (!meta_json.empty()) {
    try {
      meta["run"] = nlohmann::json::parse(meta_json);
    } catch (const nlohmann::json::parse_error&) {
      meta["run"] = meta_json;
    }
  }
  std::ofstream m(dir / "meta.json");
  if (!m) throw IoError("save_trace: cannot open meta.json in " + dir.string());
  m << meta.dump(2) << '\n';
}

SimulationTrace load_trace(const std::filesystem::path& dir) {
  std::ifstream m(dir / "meta.json");
  if (!m) throw IoError("load_trace: cannot open meta.json in " + dir.string());
  nlohmann::json meta;
  try {
    m >> meta;
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaMismatch("load_trace: bad meta.json: " + std::string(e.what()));
  }
  if (meta.value("schema", "") != "ltcsim.trace")
    throw SchemaMismatch("load_trace: not a trace directory: " + dir.string());

  SimulationTrace trace;
  trace.start_year = meta.at("start_year").get<int>();
  trace.end_year = meta.at("end_year").get<int>();
  trace.period_hours = meta.at("period_hours").get<int>();

  const DataTable hourly = read_csv(dir / "trace_hourly.csv");
  const auto oil_c = hourly.col_index("oil_production_mg_h");
  const auto diesel_c = hourly.col_index("diesel_production_mg_h");
  const auto fail_c = hourly.col_index("failure");
  if (oil_c < 0 || diesel_c < 0 || fail_c < 0)
    throw SchemaMismatch("load_trace: missing hourly channels in " + dir.string());
  const auto hours = hourly.rows();
  trace.oil_production_mg_h.resize(static_cast<std::size_t>(hours));
  trace.diesel_production_mg_h.resize(static_cast<std::size_t>(hours));
  for (Eigen::Index t = 0; t < hours; ++t) {
    trace.oil_production_mg_h[static_cast<std::size_t>(t)] = hourly.values(t, oil_c);
    trace.diesel_production_mg_h[static_cast<std::size_t>(t)] = hourly.values(t, diesel_c);
  }
  for (int y = 0; y < trace.years(); ++y) {
    const long base = static_cast<long>(y) * kHoursPerYear;
    for (long p = 0; p * trace.period_hours < kHoursPerYear; ++p) {
      const long h = base + p * trace.period_hours;
      if (h < hours && hourly.values(h, fail_c) > 0.5)
        trace.failures.push_back({trace.start_year + y, static_cast<int>(p)});
    }
  }

  std::ifstream yf(dir / "trace_yearly.csv");
  if (!yf) throw IoError("load_trace: cannot open yearly csv in " + dir.string());
  std::string line;
  if (!std::getline(yf, line))
    throw SchemaMismatch("load_trace: empty yearly csv in " + dir.string());
  double prev_waste = 0.0, prev_import = 0.0;
  while (std::getline(yf, line)) {
    if (line.empty()) continue;
    std::array<double, 6> v{};
    std::size_t pos = 0;
    for (int c = 0; c < 6; ++c) {
      const auto next = line.find(',', pos);
      const auto field = line.substr(pos, next == std::string::npos ? next : next - pos);
      v[static_cast<std::size_t>(c)] = std::stod(field);
      pos = next == std::string::npos ? line.size() : next + 1;
    }
    trace.yearly_harvest_mg.push_back(v[1]);
    trace.yearly_stock_mg.push_back(v[2]);
    trace.yearly_waste_inc_mg.push_back(v[3] - prev_waste);
    trace.yearly_import_inc_mg.push_back(v[4] - prev_import);
    prev_waste = v[3];
    prev_import = v[4];
    trace.yearly_failure_count.push_back(static_cast<int>(v[5]));
  }
  trace.validate();
  return trace;
}

}  // namespace ltcsim
