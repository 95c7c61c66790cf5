#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ltcsim/simulate.hpp"

namespace ltcsim {

struct Thresholds {
  double min_mg = 0.0;
  double max_mg = 0.0;
  void validate() const;  // 0 <= min < max
};

// Default thresholds derived from the mean annual soybean requirement implied
// by the demand signal: min = 10%, max = 300% of it.
Thresholds default_thresholds(double mean_annual_soy_requirement_mg);

struct DeviationEvent {
  int year;
  std::string stock;
  enum class Direction { Below, Above } direction;
};

struct BufferAssessment {
  enum class Class { Robust, WastageProne } classification;
  bool wastage_note;  // cumulative waste > 0
};

struct ProductionAssessment {
  enum class Verdict { Strong, Flagged } verdict;
  std::vector<FailureRecord> failures;
  std::optional<int> first_failure_year;
};

struct ImportSummary {
  double total_mg = 0.0;
  long event_count = 0;
  std::vector<double> per_decade_cumulative_mg;
  bool vulnerability_flag = false;
};

struct TippingPoint {
  int year;
  enum class Kind { StockCritical, ProductionCritical } kind;
};

struct WasteTrend {
  std::vector<double> per_decade_increment_mg;
  std::optional<int> plateau_year;
};

struct ResilienceReport {
  std::vector<DeviationEvent> deviations;
  BufferAssessment buffer;
  ProductionAssessment production;
  ImportSummary imports;
  std::vector<TippingPoint> tipping_points;
  WasteTrend waste;
};

std::vector<DeviationEvent> track_deviations(const SimulationTrace& trace,
                                             const Thresholds& thresholds);
BufferAssessment classify_buffers(const SimulationTrace& trace, const Thresholds& thresholds);
ProductionAssessment assess_production(const SimulationTrace& trace);
ImportSummary measure_imports(const SimulationTrace& trace);
std::vector<TippingPoint> find_tipping_points(const SimulationTrace& trace,
                                              const Thresholds& thresholds,
                                              int persistence_years = 3);
WasteTrend waste_trend(const SimulationTrace& trace, double plateau_eps = 0.01);

// Pure composition of the seven assessment steps.
ResilienceReport assess(const SimulationTrace& trace, const Thresholds& thresholds);

void save_report_json(const ResilienceReport& report, const std::filesystem::path& path);
std::string report_summary_table(const ResilienceReport& report);

}  // namespace ltcsim
