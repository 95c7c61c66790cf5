#include "ltcsim/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ltcsim/errors.hpp"

namespace ltcsim {

std::vector<std::pair<Eigen::Index, Eigen::Index>> Dataset::episodes() const {
  if (segmented()) return segments;
  return {{0, rows()}};
}

Dataset Dataset::slice_rows(Eigen::Index begin, Eigen::Index end) const {
  Dataset out;
  out.input_names = input_names;
  out.target_names = target_names;
  const auto n = end - begin;
  out.inputs = inputs.middleRows(begin, n);
  out.targets = targets.middleRows(begin, n);
  out.t_hours.assign(t_hours.begin() + begin, t_hours.begin() + end);
  return out;
}

Dataset Dataset::select_segments(const std::vector<std::size_t>& idx) const {
  Dataset out;
  out.input_names = input_names;
  out.target_names = target_names;
  Eigen::Index total = 0;
  for (auto i : idx) total += segments[i].second - segments[i].first;
  out.inputs.resize(total, inputs.cols());
  out.targets.resize(total, targets.cols());
  out.t_hours.reserve(static_cast<std::size_t>(total));
  Eigen::Index at = 0;
  for (auto i : idx) {
    const auto [b, e] = segments[i];
    const auto n = e - b;
    out.inputs.middleRows(at, n) = inputs.middleRows(b, n);
    out.targets.middleRows(at, n) = targets.middleRows(b, n);
    out.t_hours.insert(out.t_hours.end(), t_hours.begin() + b, t_hours.begin() + e);
    out.segments.emplace_back(at, at + n);
    at += n;
  }
  return out;
}

void Dataset::validate() const {
  if (inputs.rows() != targets.rows())
    throw std::invalid_argument("Dataset: input/target row mismatch");
  if (static_cast<Eigen::Index>(t_hours.size()) != inputs.rows())
    throw std::invalid_argument("Dataset: t_hours length mismatch");
  if (!inputs.allFinite() || !targets.allFinite())
    throw std::invalid_argument("Dataset: NaN or Inf after preprocessing");
  Eigen::Index covered = 0;
  for (const auto& [b, e] : segments) {
    if (b < 0 || e > rows() || b >= e)
      throw std::invalid_argument("Dataset: bad segment range");
    covered += e - b;
  }
  if (segmented() && covered != rows())
    throw std::invalid_argument("Dataset: segments must tile the rows");
}

Dataset make_dataset(const DataTable& table, const std::vector<std::string>& input_names,
                     const std::vector<std::string>& target_names) {
  Dataset ds;
  ds.input_names = input_names;
  ds.target_names = target_names;
  ds.t_hours = table.t_hours;
  ds.inputs.resize(table.rows(), static_cast<Eigen::Index>(input_names.size()));
  ds.targets.resize(table.rows(), static_cast<Eigen::Index>(target_names.size()));
  auto copy_cols = [&](const std::vector<std::string>& names, Eigen::MatrixXd& dst) {
    for (std::size_t j = 0; j < names.size(); ++j) {
      const auto c = table.col_index(names[j]);
      if (c < 0) throw SchemaMismatch("make_dataset: missing channel " + names[j]);
      dst.col(static_cast<Eigen::Index>(j)) = table.values.col(c);
    }
  };
  copy_cols(input_names, ds.inputs);
  copy_cols(target_names, ds.targets);

  if (!table.segment_ids.empty()) {
    Eigen::Index start = 0;
    for (Eigen::Index r = 1; r <= table.rows(); ++r) {
      if (r == table.rows() ||
          table.segment_ids[static_cast<std::size_t>(r)] !=
              table.segment_ids[static_cast<std::size_t>(start)]) {
        ds.segments.emplace_back(start, r);
        start = r;
      }
    }
  }
  ds.validate();
  return ds;
}

std::pair<Dataset, Dataset> split_dataset(const Dataset& ds, double train_fraction) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw std::invalid_argument("split_dataset: train_fraction must be in (0,1)");
  if (ds.segmented()) {
    const auto n = ds.segment_count();
    if (n < 2) throw TooFewSegments("split_dataset: need at least 2 segments");
    const auto n_train = static_cast<std::size_t>(
        std::floor(train_fraction * static_cast<double>(n) + 1e-9));
    if (n_train == 0 || n_train == n)
      throw TooFewSegments("split_dataset: split leaves an empty side");
    std::vector<std::size_t> head(n_train), tail(n - n_train);
    for (std::size_t i = 0; i < n_train; ++i) head[i] = i;
    for (std::size_t i = n_train; i < n; ++i) tail[i - n_train] = i;
    return {ds.select_segments(head), ds.select_segments(tail)};
  }
  if (ds.rows() < 10)
    throw TooFewSegments("split_dataset: need >= 10 contiguous samples");
  const auto cut = static_cast<Eigen::Index>(
      std::floor(train_fraction * static_cast<double>(ds.rows()) + 1e-9));
  return {ds.slice_rows(0, cut), ds.slice_rows(cut, ds.rows())};
}

std::pair<Dataset, Dataset> train_val_split(const Dataset& train, double train_fraction) {
  return split_dataset(train, train_fraction);
}

}  // namespace ltcsim
