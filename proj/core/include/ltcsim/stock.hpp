#pragma once

#include <deque>

namespace ltcsim {

// FIFO age-bucketed material reservoir. Deposits are keyed by year; an
// end-of-year expiry pass moves anything older than `expiry_years` to waste.
// Imports are counterfactual bookkeeping: recorded, never added to buckets.
class Stock {
 public:
  struct Bucket {
    int deposit_year;
    double mass_mg;
  };
  struct Withdrawal {
    double withdrawn_mg;
    double shortfall_mg;
  };

  explicit Stock(int expiry_years = 3);

  void deposit(int year, double mass_mg);
  Withdrawal withdraw(double requested_mg);  // drains oldest buckets first
  double expire(int current_year);           // returns the waste increment
  void record_import(double mass_mg);

  double level() const;
  const std::deque<Bucket>& buckets() const { return buckets_; }
  int expiry_years() const { return expiry_years_; }

  double cumulative_waste() const { return cumulative_waste_; }
  double cumulative_imports() const { return cumulative_imports_; }
  long import_event_count() const { return import_event_count_; }
  double cumulative_deposits() const { return cumulative_deposits_; }
  double cumulative_requested() const { return cumulative_requested_; }
  double cumulative_withdrawn() const { return cumulative_withdrawn_; }

 private:
  int expiry_years_;
  std::deque<Bucket> buckets_;
  double cumulative_waste_ = 0.0;
  double cumulative_imports_ = 0.0;
  long import_event_count_ = 0;
  double cumulative_deposits_ = 0.0;
  double cumulative_requested_ = 0.0;
  double cumulative_withdrawn_ = 0.0;
};

}  // namespace ltcsim
