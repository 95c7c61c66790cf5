#include "ltcsim/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ltcsim/errors.hpp"

namespace ltcsim {

TimeSeries resample(const TimeSeries& s, double target_dt) {
  if (s.values.empty()) throw EmptySeries("resample: source series is empty");
  if (!(target_dt > 0.0)) throw std::invalid_argument("resample: target_dt must be > 0");
  if (!(s.dt_hours > 0.0)) throw std::invalid_argument("resample: source dt must be > 0");

  const double span = s.t_last() - s.t0_hours;
  const auto n_out = static_cast<std::size_t>(std::floor(span / target_dt + 1e-9)) + 1;

  TimeSeries out;
  out.t0_hours = s.t0_hours;
  out.dt_hours = target_dt;
  out.values.resize(n_out);
  const auto n_in = s.values.size();
  for (std::size_t k = 0; k < n_out; ++k) {
    const double pos = static_cast<double>(k) * target_dt / s.dt_hours;
    const auto i0 = static_cast<std::size_t>(std::clamp(std::floor(pos), 0.0,
                                                        static_cast<double>(n_in - 1)));
    const std::size_t i1 = std::min(i0 + 1, n_in - 1);
    const double frac = std::clamp(pos - static_cast<double>(i0), 0.0, 1.0);
    out.values[k] = s.values[i0] + frac * (s.values[i1] - s.values[i0]);
  }
  return out;
}

TimeSeries apply_delay(const TimeSeries& s, double lag_hours) {
  if (lag_hours < 0.0) throw std::invalid_argument("apply_delay: lag must be >= 0");
  const double steps_real = lag_hours / s.dt_hours;
  const auto steps = static_cast<long>(std::llround(steps_real));
  if (std::abs(steps_real - static_cast<double>(steps)) > 1e-9)
    throw std::invalid_argument("apply_delay: lag must be a multiple of dt");

  TimeSeries out = s;
  if (steps == 0 || s.values.empty()) return out;
  const double pad = s.values.front();
  const auto n = static_cast<long>(s.values.size());
  for (long k = n - 1; k >= 0; --k)
    out.values[static_cast<std::size_t>(k)] =
        (k >= steps) ? s.values[static_cast<std::size_t>(k - steps)] : pad;
  return out;
}

std::vector<double> rolling_average(const std::vector<double>& v, int window) {
  const auto n = static_cast<long>(v.size());
  if (window < 1) throw std::invalid_argument("rolling_average: window must be >= 1");
  if (static_cast<long>(window) > n)
    throw std::invalid_argument("rolling_average: window exceeds series length");

  std::vector<double> out(v.size());
  const long lo_off = (window - 1) / 2;
  const long hi_off = window / 2;
  // prefix sums keep this O(n)
  std::vector<double> prefix(v.size() + 1, 0.0);
  for (long i = 0; i < n; ++i) prefix[static_cast<std::size_t>(i + 1)] = prefix[static_cast<std::size_t>(i)] + v[static_cast<std::size_t>(i)];
  for (long i = 0; i < n; ++i) {
    const long a = std::max<long>(0, i - lo_off);
    const long b = std::min<long>(n - 1, i + hi_off);
    out[static_cast<std::size_t>(i)] =
        (prefix[static_cast<std::size_t>(b + 1)] - prefix[static_cast<std::size_t>(a)]) /
        static_cast<double>(b - a + 1);
  }
  return out;
}

}  // namespace ltcsim
