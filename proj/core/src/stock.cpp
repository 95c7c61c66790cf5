#include "ltcsim/stock.hpp"

#include <stdexcept>

#include "ltcsim/errors.hpp"

namespace ltcsim {

Stock::Stock(int expiry_years) : expiry_years_(expiry_years) {
  if (expiry_years < 1) throw std::invalid_argument("Stock: expiry_years must be >= 1");
}

void Stock::deposit(int year, double mass_mg) {
  if (mass_mg < 0.0) throw NegativeMass("Stock::deposit: negative mass");
  if (mass_mg == 0.0) return;
  if (!buckets_.empty() && buckets_.back().deposit_year == year)
    buckets_.back().mass_mg += mass_mg;
  else
    buckets_.push_back({year, mass_mg});
  cumulative_deposits_ += mass_mg;
}

Stock::Withdrawal Stock::withdraw(double requested_mg) {
  if (requested_mg < 0.0) throw NegativeMass("Stock::withdraw: negative request");
  cumulative_requested_ += requested_mg;
  double remaining = requested_mg;
  while (remaining > 0.0 && !buckets_.empty()) {
    auto& oldest = buckets_.front();
    if (oldest.mass_mg > remaining) {
      oldest.mass_mg -= remaining;
      remaining = 0.0;
    } else {
      remaining -= oldest.mass_mg;
      buckets_.pop_front();
    }
  }
  const double withdrawn = requested_mg - remaining;
  cumulative_withdrawn_ += withdrawn;
  return {withdrawn, remaining};
}

double Stock::expire(int current_year) {
  double waste = 0.0;
  while (!buckets_.empty() &&
         current_year - buckets_.front().deposit_year >= expiry_years_) {
    waste += buckets_.front().mass_mg;
    buckets_.pop_front();
  }
  cumulative_waste_ += waste;
  return waste;
}

void Stock::record_import(double mass_mg) {
  if (mass_mg < 0.0) throw NegativeMass("Stock::record_import: negative mass");
  if (mass_mg == 0.0) return;
  cumulative_imports_ += mass_mg;
  ++import_event_count_;
}

double Stock::level() const {
  double level = 0.0;
  for (const auto& b : buckets_) level += b.mass_mg;
  return level;
}

}  // namespace ltcsim
