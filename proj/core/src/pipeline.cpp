#include "ltcsim/pipeline.hpp"

#include <fstream>
#include <future>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "ltcsim/csv.hpp"
#include "ltcsim/errors.hpp"
#include "ltcsim/graph.hpp"
#include "ltcsim/svg_plot.hpp"

namespace ltcsim::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path data_dir(const ScenarioConfig& cfg) { return cfg.out_dir / "data"; }
fs::path models_dir(const ScenarioConfig& cfg) { return cfg.out_dir / "models"; }
fs::path runs_dir(const ScenarioConfig& cfg) { return cfg.out_dir / "runs"; }
fs::path reports_dir(const ScenarioConfig& cfg) { return cfg.out_dir / "reports"; }
fs::path plots_dir(const ScenarioConfig& cfg) { return cfg.out_dir / "plots"; }

std::string run_name(double farm_ha, const std::string& preset) {
  std::ostringstream os;
  os << "farm" << static_cast<long>(farm_ha + 0.5) << '_' << preset;
  return os.str();
}

namespace {

// Deterministic sub-seeds per data/model stream.
std::uint64_t sub_seed(std::uint64_t base, std::uint64_t salt) {
  return base * 0x9e3779b97f4a7c15ULL + salt;
}

void write_sidecar(const fs::path& csv_path, const json& meta) {
  fs::path p = csv_path;
  p += ".meta.json";
  std::ofstream f(p);
  if (!f) throw IoError("gen-data: cannot write sidecar " + p.string());
  f << meta.dump(2) << '\n';
}

DataTable climate_to_table(const ClimateSeries& cs) {
  DataTable t;
  t.columns = {"temperature_c", "precipitation_mm_h"};
  const auto n = static_cast<Eigen::Index>(cs.temperature_c.size());
  t.t_hours.resize(static_cast<std::size_t>(n));
  t.values.resize(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    t.t_hours[static_cast<std::size_t>(i)] = static_cast<double>(i);
    t.values(i, 0) = cs.temperature_c.values[static_cast<std::size_t>(i)];
    t.values(i, 1) = cs.precipitation_mm_h.values[static_cast<std::size_t>(i)];
  }
  return t;
}

ClimateSeries climate_from_table(const DataTable& t, int start_year) {
  ClimateSeries cs;
  cs.start_year = start_year;
  const auto temp_c = t.col_index("temperature_c");
  const auto prec_c = t.col_index("precipitation_mm_h");
  if (temp_c < 0 || prec_c < 0)
    throw SchemaMismatch("climate csv: missing temperature/precipitation channels");
  cs.temperature_c.values.resize(static_cast<std::size_t>(t.rows()));
  cs.precipitation_mm_h.values.resize(static_cast<std::size_t>(t.rows()));
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    cs.temperature_c.values[static_cast<std::size_t>(i)] = t.values(i, temp_c);
    cs.precipitation_mm_h.values[static_cast<std::size_t>(i)] = t.values(i, prec_c);
  }
  return cs;
}

DataTable growth_to_table(const GrowthData& gd) {
  DataTable t;
  t.columns = gd.seasons.input_names;
  t.columns.insert(t.columns.end(), gd.seasons.target_names.begin(),
                   gd.seasons.target_names.end());
  t.t_hours = gd.seasons.t_hours;
  t.values.resize(gd.seasons.rows(), gd.seasons.inputs.cols() + gd.seasons.targets.cols());
  t.values.leftCols(gd.seasons.inputs.cols()) = gd.seasons.inputs;
  t.values.rightCols(gd.seasons.targets.cols()) = gd.seasons.targets;
  t.segment_ids.resize(static_cast<std::size_t>(gd.seasons.rows()));
  for (std::size_t s = 0; s < gd.seasons.segments.size(); ++s) {
    const auto [b, e] = gd.seasons.segments[s];
    for (Eigen::Index r = b; r < e; ++r)
      t.segment_ids[static_cast<std::size_t>(r)] = static_cast<long long>(s);
  }
  return t;
}

TimeSeries demand_from_table(const DataTable& t) {
  const auto c = t.col_index("diesel_demand_mg_h");
  if (c < 0) throw SchemaMismatch("demand csv: missing diesel_demand_mg_h");
  TimeSeries d;
  d.values.assign(t.values.col(c).data(), t.values.col(c).data() + t.rows());
  return d;
}

struct PlantArtifacts {
  SurrogateModel model;
  Dataset test_physical;   // held-out 20%
  Dataset train_physical;  // 80%, used later for controller targets
  double pooled_rmse = 0.0;
  LossHistory history;
};

PlantArtifacts train_plant(const std::string& name, const PlantSpec& spec,
                           const DataTable& table, const NodeModelConfig& mc,
                           double train_fraction, std::uint64_t seed) {
  std::vector<std::string> in_names, out_names;
  for (const auto& p : spec.inputs) in_names.push_back(p.name);
  out_names = spec.outputs;
  const Dataset full = make_dataset(table, in_names, out_names);
  auto [train_phys, test_phys] = split_dataset(full, train_fraction);

  const Normalizer in_norm = Normalizer::fit(train_phys.inputs, NormKind::ZScore);
  const Normalizer out_norm = Normalizer::fit(train_phys.targets, NormKind::ZScore);
  Dataset train_norm = train_phys;
  train_norm.inputs = in_norm.apply(train_phys.inputs);
  train_norm.targets = out_norm.apply(train_phys.targets);
  auto [tr, va] = train_val_split(train_norm, 0.9);

  auto net = LtcNetwork::init(
      {static_cast<int>(in_names.size()), mc.hidden, static_cast<int>(out_names.size())},
      seed);
  auto [trained, hist] = train_bptt(std::move(net), tr, va, mc.train_config(seed));

  PlantArtifacts a;
  a.model.name = name;
  a.model.net = std::move(trained);
  a.model.input_ports = in_names;
  a.model.output_ports = out_names;
  a.model.input_norm = in_norm;
  a.model.output_norm = out_norm;
  a.model.trained = true;
  a.test_physical = std::move(test_phys);
  a.train_physical = std::move(train_phys);
  a.history = std::move(hist);
  const Eigen::VectorXd per = rmse(a.model, a.test_physical);
  a.pooled_rmse = std::sqrt(per.array().square().mean());
  return a;
}

struct ControllerArtifacts {
  SurrogateModel model;
  double tracking_rmse = 0.0;  // plant(controller(desired)) vs desired, test half
  LossHistory history;
};

// Desired trajectories for controller training are the plant's measured
// outputs: inputs = (main desired, aux desired) in plant-output-normalized
// units, target = the main channel alone.
Dataset controller_dataset(const SurrogateModel& plant, const Dataset& plant_physical) {
  Dataset ds;
  ds.input_names = {plant.output_ports[0] + "_desired", plant.output_ports[1] + "_desired"};
  ds.target_names = {plant.output_ports[0] + "_desired"};
  ds.inputs = plant.output_norm.apply(plant_physical.targets);
  ds.targets = ds.inputs.col(0);
  ds.t_hours = plant_physical.t_hours;
  ds.segments = plant_physical.segments;
  return ds;
}

ControllerArtifacts train_controller_model(const std::string& name,
                                           const SurrogateModel& plant,
                                           const Dataset& plant_train,
                                           const Dataset& plant_test,
                                           const NodeModelConfig& mc, std::uint64_t seed) {
  const Dataset desired_train = controller_dataset(plant, plant_train);
  const Dataset desired_test = controller_dataset(plant, plant_test);

  auto ctrl = LtcNetwork::init({2, mc.hidden, 2}, seed);
  auto [trained, hist] =
      train_controller(std::move(ctrl), plant, desired_train, {0}, mc.train_config(seed));

  ControllerArtifacts a;
  a.model.name = name;
  a.model.net = std::move(trained);
  a.model.input_ports = desired_train.input_names;
  a.model.output_ports = plant.input_ports;
  a.model.input_norm = plant.output_norm;  // controller consumes desired outputs
  a.model.output_norm = plant.input_norm;  // and emits plant feedstocks
  a.model.trained = true;
  a.history = std::move(hist);

  // closed-chain tracking error on the held-out desired trajectory
  const Eigen::MatrixXd feed = forward(a.model.net, desired_test.inputs, 1.0,
                                       LtcState::zero(a.model.net.layout()));
  const Eigen::MatrixXd out =
      forward(plant.net, feed, 1.0, LtcState::zero(plant.net.layout()));
  const Eigen::VectorXd resid = out.col(0) - desired_test.targets.col(0);
  a.tracking_rmse = std::sqrt(resid.array().square().mean());
  return a;
}

}  // namespace

double soy_per_diesel(const PlantSpec& oil_spec, const PlantSpec& diesel_spec) {
  auto nominal = [](const PlantSpec& s) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(s.inputs.size()));
    for (std::size_t i = 0; i < s.inputs.size(); ++i)
      v[static_cast<Eigen::Index>(i)] = 0.5 * (s.inputs[i].lo_mg_h + s.inputs[i].hi_mg_h);
    return v;
  };
  const Eigen::VectorXd oil_nom = nominal(oil_spec);
  const Eigen::VectorXd diesel_nom = nominal(diesel_spec);
  const double oil_per_soy = oil_spec.steady_state(oil_nom)[0] / oil_nom[0];
  const double diesel_per_oil = diesel_spec.steady_state(diesel_nom)[0] / diesel_nom[0];
  return 1.0 / (oil_per_soy * diesel_per_oil);
}

Thresholds thresholds_for(const ScenarioConfig& cfg) {
  if (cfg.threshold_min_mg && cfg.threshold_max_mg)
    return Thresholds{*cfg.threshold_min_mg, *cfg.threshold_max_mg};
  const double annual_req = cfg.demand.base_mg_per_h * kHoursPerYear *
                            soy_per_diesel(cfg.oil_plant, cfg.diesel_plant);
  Thresholds t = default_thresholds(annual_req);
  if (cfg.threshold_min_mg) t.min_mg = *cfg.threshold_min_mg;
  if (cfg.threshold_max_mg) t.max_mg = *cfg.threshold_max_mg;
  return t;
}

void cmd_gen_data(const ScenarioConfig& cfg, std::ostream& log) {
  cfg.validate();
  const fs::path dir = data_dir(cfg);
  fs::create_directories(dir);
  const json cfg_json = json::parse(config_fingerprint_text(cfg));

  auto plant_file = [&](const PlantSpec& spec, std::uint64_t seed, const std::string& stem) {
    const DataTable t = gen_plant_data(spec, cfg.plant_hours, seed);
    write_csv(dir / (stem + ".csv"), t);
    write_sidecar(dir / (stem + ".csv"),
                  {{"kind", "plant_data"}, {"seed", seed}, {"config", cfg_json}});
    log << "gen-data: " << stem << ".csv (" << t.rows() << " rows)\n";
  };
  plant_file(cfg.oil_plant, sub_seed(cfg.seed_data, 1), "oil_plant_data");
  plant_file(cfg.diesel_plant, sub_seed(cfg.seed_data, 2), "diesel_plant_data");

  for (std::size_t i = 0; i < cfg.climate_presets.size(); ++i) {
    const auto& preset = cfg.climate_presets[i];
    // training climate spans the configured number of growing seasons
    auto train_spec = climate_preset(preset, cfg.growth_seasons, sub_seed(cfg.seed_data, 10 + i));
    train_spec.start_year = cfg.start_year;
    const ClimateSeries train_cs = gen_climate(train_spec);
    write_csv(dir / ("climate_train_" + preset + ".csv"), climate_to_table(train_cs));
    write_sidecar(dir / ("climate_train_" + preset + ".csv"),
                  {{"kind", "climate"}, {"preset", preset}, {"seed", train_spec.seed}});

    const GrowthData gd =
        gen_growth_data(train_cs, 1.0, sub_seed(cfg.seed_data, 30 + i), cfg.growth);
    write_csv(dir / ("growth_train_" + preset + ".csv"), growth_to_table(gd));
    write_sidecar(dir / ("growth_train_" + preset + ".csv"),
                  {{"kind", "growth"}, {"preset", preset}, {"farm_ha", 1.0}});
    log << "gen-data: growth_train_" << preset << ".csv (" << gd.seasons.rows()
        << " rows, " << gd.seasons.segment_count() << " seasons)\n";

    // simulation climate covers the full horizon with the simulation seed
    auto sim_spec =
        climate_preset(preset, cfg.horizon_years(), sub_seed(cfg.seed_simulation, 10 + i));
    sim_spec.start_year = cfg.start_year;
    const ClimateSeries sim_cs = gen_climate(sim_spec);
    write_csv(dir / ("climate_sim_" + preset + ".csv"), climate_to_table(sim_cs));
    write_sidecar(dir / ("climate_sim_" + preset + ".csv"),
                  {{"kind", "climate"}, {"preset", preset}, {"seed", sim_spec.seed}});
  }

  DemandSpec demand = cfg.demand;
  demand.seed = sub_seed(cfg.seed_simulation, 3);
  const TimeSeries d = gen_demand(demand, cfg.horizon_years(), cfg.start_year);
  DataTable dt;
  dt.columns = {"diesel_demand_mg_h"};
  dt.t_hours.resize(d.size());
  dt.values.resize(static_cast<Eigen::Index>(d.size()), 1);
  for (std::size_t i = 0; i < d.size(); ++i) {
    dt.t_hours[i] = static_cast<double>(i);
    dt.values(static_cast<Eigen::Index>(i), 0) = d.values[i];
  }
  write_csv(dir / "demand.csv", dt);
  write_sidecar(dir / "demand.csv", {{"kind", "demand"}, {"seed", demand.seed}});
  log << "gen-data: demand.csv (" << dt.rows() << " rows)\n";
}

TrainedRmse train_all(const ScenarioConfig& cfg, std::ostream& log) {
  cfg.validate();
  const fs::path dir = data_dir(cfg);
  const fs::path mdir = models_dir(cfg);
  fs::create_directories(mdir);
  auto require = [&](const std::string& stem) {
    const fs::path p = dir / stem;
    if (!fs::exists(p)) throw MissingDataset("train: missing " + p.string() + "; run gen-data first");
    return read_csv(p);
  };

  TrainedRmse result;

  const DataTable oil_table = require("oil_plant_data.csv");
  auto oil = train_plant("oil_plant", cfg.oil_plant, oil_table, cfg.oil_plant_model,
                         cfg.train_fraction, sub_seed(cfg.seed_training, 1));
  save_model(oil.model, mdir / "oil_plant.json");
  save_loss_history_csv(mdir / "loss_oil_plant.csv", oil.history);
  result.pooled["oil_plant"] = oil.pooled_rmse;
  log << "train: oil_plant held-out RMSE (normalized) = " << oil.pooled_rmse << '\n';

  const DataTable diesel_table = require("diesel_plant_data.csv");
  auto diesel = train_plant("diesel_plant", cfg.diesel_plant, diesel_table,
                            cfg.diesel_plant_model, cfg.train_fraction,
                            sub_seed(cfg.seed_training, 2));
  save_model(diesel.model, mdir / "diesel_plant.json");
  save_loss_history_csv(mdir / "loss_diesel_plant.csv", diesel.history);
  result.pooled["diesel_plant"] = diesel.pooled_rmse;
  log << "train: diesel_plant held-out RMSE (normalized) = " << diesel.pooled_rmse << '\n';

  for (std::size_t i = 0; i < cfg.climate_presets.size(); ++i) {
    const auto& preset = cfg.climate_presets[i];
    const DataTable gt = require("growth_train_" + preset + ".csv");
    const Dataset full = make_dataset(
        gt, {"time_in_season_h", "precipitation_mm_h", "temperature_c"},
        {"biomass_mg_per_ha"});
    auto [train_phys, test_phys] = split_dataset(full, cfg.train_fraction);
    const Normalizer in_norm = Normalizer::fit(train_phys.inputs, NormKind::ZScore);
    const Normalizer out_norm = Normalizer::fit(train_phys.targets, NormKind::ZScore);
    Dataset train_norm = train_phys;
    train_norm.inputs = in_norm.apply(train_phys.inputs);
    train_norm.targets = out_norm.apply(train_phys.targets);
    auto [tr, va] = train_val_split(train_norm, 0.9);
    auto net = LtcNetwork::init({3, cfg.growth_model.hidden, 1},
                                sub_seed(cfg.seed_training, 10 + i));
    auto [trained, hist] = train_bptt(std::move(net), tr, va,
                                      cfg.growth_model.train_config(
                                          sub_seed(cfg.seed_training, 10 + i)));
    SurrogateModel gm;
    gm.name = "growth_" + preset;
    gm.net = std::move(trained);
    gm.input_ports = {"time_in_season_h", "precipitation_mm_h", "temperature_c"};
    gm.output_ports = {"biomass_mg_per_ha"};
    gm.input_norm = in_norm;
    gm.output_norm = out_norm;
    gm.trained = true;
    save_model(gm, mdir / ("growth_" + preset + ".json"));
    save_loss_history_csv(mdir / ("loss_growth_" + preset + ".csv"), hist);
    const Eigen::VectorXd per = rmse(gm, test_phys);
    const double pooled = std::sqrt(per.array().square().mean());
    result.pooled["growth_" + preset] = pooled;
    log << "train: growth_" << preset << " held-out RMSE (normalized) = " << pooled << '\n';
  }

  // snapshot plant parameters so the freeze contract is checked on the real run
  const LtcParams oil_params_before = oil.model.net.params();
  const LtcParams diesel_params_before = diesel.model.net.params();

  auto octrl = train_controller_model("oil_controller", oil.model, oil.train_physical,
                                      oil.test_physical, cfg.oil_controller_model,
                                      sub_seed(cfg.seed_training, 5));
  save_model(octrl.model, mdir / "oil_controller.json");
  save_loss_history_csv(mdir / "loss_oil_controller.csv", octrl.history);
  result.pooled["oil_controller"] = octrl.tracking_rmse;
  log << "train: oil_controller tracking RMSE (normalized) = " << octrl.tracking_rmse << '\n';

  auto dctrl = train_controller_model("diesel_controller", diesel.model,
                                      diesel.train_physical, diesel.test_physical,
                                      cfg.diesel_controller_model,
                                      sub_seed(cfg.seed_training, 6));
  save_model(dctrl.model, mdir / "diesel_controller.json");
  save_loss_history_csv(mdir / "loss_diesel_controller.csv", dctrl.history);
  result.pooled["diesel_controller"] = dctrl.tracking_rmse;
  log << "train: diesel_controller tracking RMSE (normalized) = " << dctrl.tracking_rmse
      << '\n';

  result.controller_freeze_intact = true;
  for (auto f : LtcParams::fields()) {
    if (!(oil.model.net.params().*f).isApprox(oil_params_before.*f, 0.0) ||
        !(diesel.model.net.params().*f).isApprox(diesel_params_before.*f, 0.0))
      result.controller_freeze_intact = false;
  }
  log << "train: plant parameters "
      << (result.controller_freeze_intact ? "unchanged" : "CHANGED")
      << " across controller training\n";

  return result;
}

void cmd_train(const ScenarioConfig& cfg, std::ostream& log) { train_all(cfg, log); }

SimulationTrace simulate_pair(const ScenarioConfig& cfg, double farm_ha,
                              const std::string& preset) {
  const fs::path mdir = models_dir(cfg);
  auto model = [&](const std::string& stem) {
    const fs::path p = mdir / (stem + ".json");
    if (!fs::exists(p))
      throw UntrainedModels("simulate: missing model " + p.string() + "; run train first");
    return load_model(p);
  };
  EcosystemGraph graph = EcosystemGraph::standard(
      model("growth_" + preset), model("oil_plant"), model("diesel_plant"),
      model("oil_controller"), model("diesel_controller"), cfg.oil_plant, cfg.diesel_plant);

  const fs::path ddir = data_dir(cfg);
  const fs::path climate_path = ddir / ("climate_sim_" + preset + ".csv");
  const fs::path demand_path = ddir / "demand.csv";
  if (!fs::exists(climate_path) || !fs::exists(demand_path))
    throw MissingDataset("simulate: missing simulation drivers; run gen-data first");
  const ClimateSeries climate = climate_from_table(read_csv(climate_path), cfg.start_year);
  const TimeSeries demand = demand_from_table(read_csv(demand_path));

  SimulationOptions opt;
  opt.start_year = cfg.start_year;
  opt.end_year = cfg.end_year;
  opt.farm_ha = farm_ha;
  opt.initial_stock_mg = cfg.initial_stock_mg;
  opt.period_hours = cfg.period_hours;
  opt.stock_expiry_years = cfg.stock_expiry_years;
  return simulate_horizon(graph, climate, demand, opt);
}

namespace {

void save_pair_trace(const ScenarioConfig& cfg, double farm, const std::string& preset,
                     const SimulationTrace& trace) {
  json run;
  run["farm_ha"] = farm;
  run["preset"] = preset;
  run["seeds"] = {{"data", cfg.seed_data},
                  {"training", cfg.seed_training},
                  {"simulation", cfg.seed_simulation}};
  run["config"] = json::parse(config_fingerprint_text(cfg));
  save_trace(trace, runs_dir(cfg) / run_name(farm, preset), run.dump());
}

}  // namespace

void cmd_simulate(const ScenarioConfig& cfg, std::ostream& log) {
  cfg.validate();
  struct Job {
    double farm;
    std::string preset;
    std::future<SimulationTrace> fut;
  };
  std::vector<Job> jobs;
  for (const auto& preset : cfg.climate_presets)
    for (double farm : cfg.farm_sizes_ha)
      jobs.push_back({farm, preset, std::async(std::launch::async, [&cfg, farm, preset]() {
                        return simulate_pair(cfg, farm, preset);
                      })});
  for (auto& j : jobs) {
    const SimulationTrace trace = j.fut.get();
    save_pair_trace(cfg, j.farm, j.preset, trace);
    log << "simulate: " << run_name(j.farm, j.preset) << " failures=" << trace.failures.size()
        << " imports=" << trace.total_imports_mg() << " Mg\n";
  }
}

std::vector<fs::path> list_run_dirs(const ScenarioConfig& cfg) {
  std::vector<fs::path> dirs;
  for (const auto& preset : cfg.climate_presets)
    for (double farm : cfg.farm_sizes_ha) {
      const fs::path p = runs_dir(cfg) / run_name(farm, preset);
      if (fs::exists(p / "meta.json")) dirs.push_back(p);
    }
  return dirs;
}

std::vector<SweepRow> sweep_summary(const ScenarioConfig& cfg) {
  std::vector<SweepRow> rows;
  for (const auto& preset : cfg.climate_presets)
    for (double farm : cfg.farm_sizes_ha) {
      const fs::path p = runs_dir(cfg) / run_name(farm, preset);
      const SimulationTrace t = load_trace(p);
      SweepRow r;
      r.farm_ha = farm;
      r.preset = preset;
      r.failures_total = static_cast<long>(t.failures.size());
      r.first_failure_year = t.failures.empty() ? -1 : t.failures.front().year;
      for (const auto& f : t.failures) r.first_failure_year = std::min(r.first_failure_year == -1 ? f.year : r.first_failure_year, f.year);
      r.waste_cum_mg = t.total_waste_mg();
      r.import_cum_mg = t.total_imports_mg();
      r.final_stock_mg = t.yearly_stock_mg.back();
      rows.push_back(std::move(r));
    }
  return rows;
}

void write_sweep_summary_csv(const fs::path& path, const std::vector<SweepRow>& rows) {
  std::ofstream f(path);
  if (!f) throw IoError("sweep: cannot open " + path.string());
  f << "farm_ha,preset,first_failure_year,failures_total,waste_cum_Mg,import_cum_Mg,"
       "final_stock_Mg\n";
  for (const auto& r : rows)
    f << format_double(r.farm_ha) << ',' << r.preset << ',' << r.first_failure_year << ','
      << r.failures_total << ',' << format_double(r.waste_cum_mg) << ','
      << format_double(r.import_cum_mg) << ',' << format_double(r.final_stock_mg) << '\n';
}

void cmd_sweep(const ScenarioConfig& cfg, std::ostream& log) {
  cmd_simulate(cfg, log);
  const auto rows = sweep_summary(cfg);
  write_sweep_summary_csv(cfg.out_dir / "sweep_summary.csv", rows);
  log << "sweep: farm_ha preset first_failure failures waste_Mg imports_Mg final_stock_Mg\n";
  for (const auto& r : rows)
    log << "sweep: " << r.farm_ha << ' ' << r.preset << ' ' << r.first_failure_year << ' '
        << r.failures_total << ' ' << r.waste_cum_mg << ' ' << r.import_cum_mg << ' '
        << r.final_stock_mg << '\n';
}

void cmd_assess(const ScenarioConfig& cfg, const std::vector<fs::path>& dirs,
                std::ostream& log) {
  const auto run_dirs = dirs.empty() ? list_run_dirs(cfg) : dirs;
  if (run_dirs.empty()) throw MissingDataset("assess: no traces found; run simulate first");
  const Thresholds th = thresholds_for(cfg);
  fs::create_directories(reports_dir(cfg));
  for (const auto& d : run_dirs) {
    const SimulationTrace trace = load_trace(d);
    const ResilienceReport report = assess(trace, th);
    const std::string stem = d.filename().string();
    save_report_json(report, reports_dir(cfg) / (stem + ".report.json"));
    std::ofstream txt(reports_dir(cfg) / (stem + ".report.txt"));
    if (!txt) throw IoError("assess: cannot write report for " + stem);
    txt << report_summary_table(report);
    log << "assess: " << stem << " -> "
        << (report.production.verdict == ProductionAssessment::Verdict::Strong ? "strong"
                                                                               : "flagged")
        << ", imports=" << report.imports.total_mg << " Mg\n";
  }
}

void cmd_plot(const ScenarioConfig& cfg, const std::vector<fs::path>& dirs,
              std::ostream& log) {
  const auto run_dirs = dirs.empty() ? list_run_dirs(cfg) : dirs;
  if (run_dirs.empty()) throw MissingDataset("plot: no traces found; run simulate first");
  fs::create_directories(plots_dir(cfg));

  std::vector<SvgSeries> production, waste_stock, imports;
  for (const auto& d : run_dirs) {
    const SimulationTrace t = load_trace(d);
    const std::string label = d.filename().string();

    // weekly mean production keeps the failure dips visible at plot scale
    SvgSeries prod;
    prod.label = label;
    const long weeks = static_cast<long>(t.diesel_production_mg_h.size()) / 168;
    for (long w = 0; w < weeks; ++w) {
      double mean = 0.0;
      for (long h = 0; h < 168; ++h)
        mean += t.diesel_production_mg_h[static_cast<std::size_t>(w * 168 + h)];
      mean /= 168.0;
      prod.x.push_back(t.start_year + static_cast<double>(w * 168) / kHoursPerYear);
      prod.y.push_back(mean);
    }
    production.push_back(std::move(prod));

    SvgSeries stock, waste, imp;
    stock.label = label + " stock";
    waste.label = label + " waste";
    waste.dashed = true;
    imp.label = label;
    double waste_cum = 0.0, import_cum = 0.0;
    for (int y = 0; y < t.years(); ++y) {
      waste_cum += t.yearly_waste_inc_mg[static_cast<std::size_t>(y)];
      import_cum += t.yearly_import_inc_mg[static_cast<std::size_t>(y)];
      const double year = t.start_year + y;
      stock.x.push_back(year);
      stock.y.push_back(t.yearly_stock_mg[static_cast<std::size_t>(y)]);
      waste.x.push_back(year);
      waste.y.push_back(waste_cum);
      imp.x.push_back(year);
      imp.y.push_back(import_cum);
    }
    waste_stock.push_back(std::move(stock));
    waste_stock.push_back(std::move(waste));
    imports.push_back(std::move(imp));
  }

  write_svg_chart(plots_dir(cfg) / "production.svg",
                  {"Diesel production (weekly mean)", "year", "Mg/h"}, production);
  write_svg_chart(plots_dir(cfg) / "waste_stock.svg",
                  {"Stock level and cumulative waste", "year", "Mg"}, waste_stock);
  write_svg_chart(plots_dir(cfg) / "imports.svg",
                  {"Cumulative required imports", "year", "Mg"}, imports);
  log << "plot: wrote production.svg, waste_stock.svg, imports.svg\n";
}

}  // namespace ltcsim::pipeline
