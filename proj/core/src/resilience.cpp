#include "ltcsim/resilience.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "ltcsim/csv.hpp"
#include "ltcsim/errors.hpp"

namespace ltcsim {

namespace {
constexpr const char* kStockName = "soybean_stock";

int decade_count(const SimulationTrace& t) { return (t.years() + 9) / 10; }
}  // namespace

void Thresholds::validate() const {
  if (min_mg < 0.0 || !(min_mg < max_mg))
    throw std::invalid_argument("Thresholds: need 0 <= min < max");
}

Thresholds default_thresholds(double mean_annual_soy_requirement_mg) {
  return Thresholds{0.1 * mean_annual_soy_requirement_mg,
                    3.0 * mean_annual_soy_requirement_mg};
}

std::vector<DeviationEvent> track_deviations(const SimulationTrace& trace,
                                             const Thresholds& thresholds) {
  thresholds.validate();
  std::vector<DeviationEvent> events;
  for (int y = 0; y < trace.years(); ++y) {
    const double level = trace.yearly_stock_mg[static_cast<std::size_t>(y)];
    if (level < thresholds.min_mg)
      events.push_back({trace.start_year + y, kStockName, DeviationEvent::Direction::Below});
    else if (level > thresholds.max_mg)
      events.push_back({trace.start_year + y, kStockName, DeviationEvent::Direction::Above});
  }
  return events;
}

BufferAssessment classify_buffers(const SimulationTrace& trace, const Thresholds&) {
  BufferAssessment b;
  b.classification = trace.failures.empty() ? BufferAssessment::Class::Robust
                                            : BufferAssessment::Class::WastageProne;
  b.wastage_note = trace.total_waste_mg() > 0.0;
  return b;
}

ProductionAssessment assess_production(const SimulationTrace& trace) {
  ProductionAssessment p;
  p.failures = trace.failures;
  p.verdict = trace.failures.empty() ? ProductionAssessment::Verdict::Strong
                                     : ProductionAssessment::Verdict::Flagged;
  if (!trace.failures.empty()) {
    int first = trace.failures.front().year;
    for (const auto& f : trace.failures) first = std::min(first, f.year);
    p.first_failure_year = first;
  }
  return p;
}

ImportSummary measure_imports(const SimulationTrace& trace) {
  ImportSummary s;
  s.per_decade_cumulative_mg.assign(static_cast<std::size_t>(decade_count(trace)), 0.0);
  double cum = 0.0;
  for (int y = 0; y < trace.years(); ++y) {
    const double inc = trace.yearly_import_inc_mg[static_cast<std::size_t>(y)];
    cum += inc;
    if (inc > 0.0) ++s.event_count;
    s.per_decade_cumulative_mg[static_cast<std::size_t>(y / 10)] = cum;
  }
  // carry forward so each decade reports the cumulative total at its end
  for (std::size_t d = 1; d < s.per_decade_cumulative_mg.size(); ++d)
    s.per_decade_cumulative_mg[d] =
        std::max(s.per_decade_cumulative_mg[d], s.per_decade_cumulative_mg[d - 1]);
  s.total_mg = cum;
  s.vulnerability_flag = s.total_mg > 0.0;
  return s;
}

std::vector<TippingPoint> find_tipping_points(const SimulationTrace& trace,
                                              const Thresholds& thresholds,
                                              int persistence_years) {
  thresholds.validate();
  if (persistence_years < 1)
    throw std::invalid_argument("find_tipping_points: persistence_years must be >= 1");
  std::vector<TippingPoint> points;
  const int ny = trace.years();

  // stock-critical: first year of a below-min run lasting >= persistence_years
  int run = 0;
  for (int y = 0; y < ny; ++y) {
    if (trace.yearly_stock_mg[static_cast<std::size_t>(y)] < thresholds.min_mg) {
      ++run;
      if (run == persistence_years) {
        points.push_back({trace.start_year + y - persistence_years + 1,
                          TippingPoint::Kind::StockCritical});
        break;
      }
    } else {
      run = 0;
    }
  }

  // production-critical: failure count above half the year's periods,
  // sustained for persistence_years
  const int half = trace.periods_per_year() / 2;
  run = 0;
  for (int y = 0; y < ny; ++y) {
    if (trace.yearly_failure_count[static_cast<std::size_t>(y)] > half) {
      ++run;
      if (run == persistence_years) {
        points.push_back({trace.start_year + y - persistence_years + 1,
                          TippingPoint::Kind::ProductionCritical});
        break;
      }
    } else {
      run = 0;
    }
  }
  std::sort(points.begin(), points.end(),
            [](const TippingPoint& a, const TippingPoint& b) { return a.year < b.year; });
  return points;
}

WasteTrend waste_trend(const SimulationTrace& trace, double plateau_eps) {
  WasteTrend w;
  w.per_decade_increment_mg.assign(static_cast<std::size_t>(decade_count(trace)), 0.0);
  double max_inc = 0.0;
  for (int y = 0; y < trace.years(); ++y) {
    const double inc = trace.yearly_waste_inc_mg[static_cast<std::size_t>(y)];
    w.per_decade_increment_mg[static_cast<std::size_t>(y / 10)] += inc;
    max_inc = std::max(max_inc, inc);
  }
  if (max_inc == 0.0) {
    w.plateau_year = trace.start_year;  // nothing ever accrues
    return w;
  }
  // first year after which every later yearly increment stays below
  // plateau_eps * max yearly increment
  const double cutoff = plateau_eps * max_inc;
  int candidate = -1;
  for (int y = trace.years() - 1; y >= 0; --y) {
    if (trace.yearly_waste_inc_mg[static_cast<std::size_t>(y)] >= cutoff) {
      candidate = y;
      break;
    }
  }
  if (candidate >= 0 && candidate < trace.years() - 1)
    w.plateau_year = trace.start_year + candidate;
  return w;
}

ResilienceReport assess(const SimulationTrace& trace, const Thresholds& thresholds) {
  ResilienceReport r;
  r.deviations = track_deviations(trace, thresholds);
  r.buffer = classify_buffers(trace, thresholds);
  r.production = assess_production(trace);
  r.imports = measure_imports(trace);
  r.tipping_points = find_tipping_points(trace, thresholds);
  r.waste = waste_trend(trace);
  return r;
}

void save_report_json(const ResilienceReport& report, const std::filesystem::path& path) {
  nlohmann::json j;
  j["schema"] = "ltcsim.report";
  j["schema_version"] = 1;
  j["deviations"] = nlohmann::json::array();
  for (const auto& d : report.deviations)
    j["deviations"].push_back(
        {{"year", d.year},
         {"stock", d.stock},
         {"direction", d.direction == DeviationEvent::Direction::Below ? "below" : "above"}});
  j["buffer"] = {
      {"classification",
       report.buffer.classification == BufferAssessment::Class::Robust ? "robust"
                                                                       : "wastage-prone"},
      {"wastage_note", report.buffer.wastage_note}};
  j["production"] = {
      {"verdict",
       report.production.verdict == ProductionAssessment::Verdict::Strong ? "strong"
                                                                          : "flagged"}};
  j["production"]["failures"] = nlohmann::json::array();
  for (const auto& f : report.production.failures)
    j["production"]["failures"].push_back({{"year", f.year}, {"week", f.week}});
  if (report.production.first_failure_year)
    j["production"]["first_failure_year"] = *report.production.first_failure_year;
  j["imports"] = {{"total_mg", report.imports.total_mg},
                  {"event_count", report.imports.event_count},
                  {"per_decade_cumulative_mg", report.imports.per_decade_cumulative_mg},
                  {"vulnerability_flag", report.imports.vulnerability_flag}};
  j["tipping_points"] = nlohmann::json::array();
  for (const auto& t : report.tipping_points)
    j["tipping_points"].push_back(
        {{"year", t.year},
         {"kind", t.kind == TippingPoint::Kind::StockCritical ? "stock-critical"
                                                              : "production-critical"}});
  j["waste"] = {{"per_decade_increment_mg", report.waste.per_decade_increment_mg}};
  if (report.waste.plateau_year) j["waste"]["plateau_year"] = *report.waste.plateau_year;

  std::ofstream f(path);
  if (!f) throw IoError("save_report_json: cannot open " + path.string());
  f << j.dump(2) << '\n';
}

std::string report_summary_table(const ResilienceReport& report) {
  std::ostringstream os;
  os << "metric                 value\n";
  os << "---------------------  ----------------------------\n";
  os << "buffer class           "
     << (report.buffer.classification == BufferAssessment::Class::Robust ? "robust"
                                                                         : "wastage-prone")
     << (report.buffer.wastage_note ? " (wastage noted)" : "") << '\n';
  os << "production             "
     << (report.production.verdict == ProductionAssessment::Verdict::Strong ? "strong"
                                                                            : "flagged")
     << '\n';
  os << "failures               " << report.production.failures.size() << '\n';
  if (report.production.first_failure_year)
    os << "first failure year     " << *report.production.first_failure_year << '\n';
  os << "deviation events       " << report.deviations.size() << '\n';
  os << "imports total (Mg)     " << format_double(report.imports.total_mg) << '\n';
  os << "import events          " << report.imports.event_count << '\n';
  os << "tipping points         ";
  if (report.tipping_points.empty()) {
    os << "none\n";
  } else {
    for (std::size_t i = 0; i < report.tipping_points.size(); ++i) {
      const auto& t = report.tipping_points[i];
      os << (i ? ", " : "") << t.year << ' '
         << (t.kind == TippingPoint::Kind::StockCritical ? "(stock)" : "(production)");
    }
    os << '\n';
  }
  os << "waste plateau year     ";
  if (report.waste.plateau_year)
    os << *report.waste.plateau_year << '\n';
  else
    os << "none\n";
  return os.str();
}

}  // namespace ltcsim
