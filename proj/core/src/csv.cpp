#include "ltcsim/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "ltcsim/errors.hpp"

namespace ltcsim {

Eigen::Index DataTable::col_index(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) return -1;
  return static_cast<Eigen::Index>(it - columns.begin());
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

double parse_double(std::string_view sv, const std::string& context) {
  double v = 0.0;
  const auto res = std::from_chars(sv.data(), sv.data() + sv.size(), v);
  if (res.ec != std::errc() || res.ptr != sv.data() + sv.size())
    throw SchemaMismatch("csv: bad numeric field '" + std::string(sv) + "' in " + context);
  return v;
}

std::vector<std::string_view> split_line(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

}  // namespace

void write_csv(const std::filesystem::path& path, const DataTable& table) {
  if (static_cast<Eigen::Index>(table.t_hours.size()) != table.rows())
    throw std::invalid_argument("write_csv: t_hours length mismatch");
  const bool with_segments = !table.segment_ids.empty();
  if (with_segments && static_cast<Eigen::Index>(table.segment_ids.size()) != table.rows())
    throw std::invalid_argument("write_csv: segment_id length mismatch");

  std::ofstream f(path);
  if (!f) throw IoError("write_csv: cannot open " + path.string());
  f << "t_hours";
  for (const auto& c : table.columns) f << ',' << c;
  if (with_segments) f << ",segment_id";
  f << '\n';
  for (Eigen::Index r = 0; r < table.rows(); ++r) {
    f << format_double(table.t_hours[static_cast<std::size_t>(r)]);
    for (Eigen::Index c = 0; c < table.values.cols(); ++c)
      f << ',' << format_double(table.values(r, c));
    if (with_segments) f << ',' << table.segment_ids[static_cast<std::size_t>(r)];
    f << '\n';
  }
  if (!f) throw IoError("write_csv: write failed for " + path.string());
}

DataTable read_csv(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("read_csv: cannot open " + path.string());

  std::string line;
  if (!std::getline(f, line)) throw SchemaMismatch("read_csv: empty file " + path.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split_line(line);
  if (header.empty() || header.front() != "t_hours")
    throw SchemaMismatch("read_csv: first column must be t_hours in " + path.string());

  DataTable t;
  bool with_segments = false;
  for (std::size_t i = 1; i < header.size(); ++i) {
    if (header[i] == "segment_id") {
      if (i != header.size() - 1)
        throw SchemaMismatch("read_csv: segment_id must be the last column");
      with_segments = true;
    } else {
      t.columns.emplace_back(header[i]);
    }
  }

  const auto n_cols = static_cast<Eigen::Index>(t.columns.size());
  std::vector<double> flat;
  long n_rows = 0;
  while (std::getline(f, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_line(line);
    if (static_cast<long>(fields.size()) != static_cast<long>(header.size()))
      throw SchemaMismatch("read_csv: ragged row in " + path.string());
    t.t_hours.push_back(parse_double(fields[0], path.string()));
    for (Eigen::Index c = 0; c < n_cols; ++c)
      flat.push_back(parse_double(fields[static_cast<std::size_t>(c) + 1], path.string()));
    if (with_segments)
      t.segment_ids.push_back(static_cast<long long>(
          parse_double(fields.back(), path.string())));
    ++n_rows;
  }
  t.values.resize(n_rows, n_cols);
  for (long r = 0; r < n_rows; ++r)
    for (Eigen::Index c = 0; c < n_cols; ++c)
      t.values(r, c) = flat[static_cast<std::size_t>(r) * static_cast<std::size_t>(n_cols) +
                            static_cast<std::size_t>(c)];
  return t;
}

}  // namespace ltcsim
