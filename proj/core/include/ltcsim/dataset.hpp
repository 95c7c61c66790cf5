#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "ltcsim/csv.hpp"

namespace ltcsim {

// Aligned multichannel input/target series at hourly resolution. Segmented
// datasets (one segment per growing season) carry explicit [begin, end) row
// ranges; continuous plant data has none.
struct Dataset {
  std::vector<std::string> input_names, target_names;
  Eigen::MatrixXd inputs;   // rows x n_inputs
  Eigen::MatrixXd targets;  // rows x n_targets
  std::vector<double> t_hours;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> segments;

  bool segmented() const { return !segments.empty(); }
  Eigen::Index rows() const { return inputs.rows(); }
  std::size_t segment_count() const { return segments.size(); }

  // Episodes for training/evaluation: each segment, or the whole range.
  std::vector<std::pair<Eigen::Index, Eigen::Index>> episodes() const;

  Dataset slice_rows(Eigen::Index begin, Eigen::Index end) const;
  Dataset select_segments(const std::vector<std::size_t>& idx) const;

  // Shape/timestamp/NaN checks; throws on violation.
  void validate() const;
};

// Build a dataset from a table by naming which channels are inputs and which
// are targets. Segment boundaries come from the table's segment_id column.
Dataset make_dataset(const DataTable& table, const std::vector<std::string>& input_names,
                     const std::vector<std::string>& target_names);

// 80-20 style split. Segmented data splits at segment granularity; continuous
// data splits at the earliest `train_fraction` of rows. Never shuffles time.
std::pair<Dataset, Dataset> split_dataset(const Dataset& ds, double train_fraction = 0.8);

// Carves a validation set from the tail of a training set (same mechanics).
std::pair<Dataset, Dataset> train_val_split(const Dataset& train, double train_fraction = 0.9);

}  // namespace ltcsim
