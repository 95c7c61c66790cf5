#pragma once

#include <cstddef>
#include <vector>

namespace ltcsim {

// Uniformly sampled scalar time series. Time unit is hours throughout.
struct TimeSeries {
  double t0_hours = 0.0;
  double dt_hours = 1.0;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  bool empty() const { return values.empty(); }
  double t_last() const {
    return values.empty() ? t0_hours
                          : t0_hours + dt_hours * static_cast<double>(values.size() - 1);
  }
};

// Linear interpolation onto a grid with spacing target_dt over the same span.
// Endpoints are clamped; rate channels are interpolated as rates.
TimeSeries resample(const TimeSeries& s, double target_dt);

// Shift right by `lag_hours` (a nonnegative multiple of dt), left-padding
// with the first sample.
TimeSeries apply_delay(const TimeSeries& s, double lag_hours);

// Centered moving mean; windows are truncated near the boundaries so the
// output has the same length as the input.
std::vector<double> rolling_average(const std::vector<double>& v, int window);

}  // namespace ltcsim
