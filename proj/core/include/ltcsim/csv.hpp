#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <vector>

namespace ltcsim {

// In-memory image of the dataset interchange CSV: first column `t_hours`,
// one column per named channel, optional trailing `segment_id`.
struct DataTable {
  std::vector<std::string> columns;  // channel names, excluding t_hours/segment_id
  std::vector<double> t_hours;
  Eigen::MatrixXd values;  // rows x channels
  std::vector<long long> segment_ids;  // empty when the column is absent

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index col_index(const std::string& name) const;  // -1 if missing
};

void write_csv(const std::filesystem::path& path, const DataTable& table);
DataTable read_csv(const std::filesystem::path& path);

// Shortest round-trip decimal rendering (std::to_chars); used everywhere a
// double is written to text so reruns are byte-identical.
std::string format_double(double v);

}  // namespace ltcsim
