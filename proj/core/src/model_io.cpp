#include <fstream>

#include "json.hpp"
#include "ltcsim/surrogate.hpp"

// Model files are self-describing JSON documents. Parameter arrays are stored
// row-major; doubles use the library's shortest round-trip encoding, so a
// save/load cycle is lossless at full double precision. Field names are fixed
// by docs/formats.md.

namespace ltcsim {

namespace {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols,
                                 const std::string& field) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
    throw SchemaMismatch("model file: bad shape for " + field);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw SchemaMismatch("model file: bad shape for " + field);
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

json normalizer_to_json(const Normalizer& n) {
  json j;
  j["kind"] = n.kind() == NormKind::ZScore ? "zscore" : "minmax";
  j["shift"] = std::vector<double>(n.shift().data(), n.shift().data() + n.shift().size());
  j["scale"] = std::vector<double>(n.scale().data(), n.scale().data() + n.scale().size());
  return j;
}

Normalizer normalizer_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind != "zscore" && kind != "minmax")
    throw SchemaMismatch("model file: unknown normalizer kind " + kind);
  const auto shift = j.at("shift").get<std::vector<double>>();
  const auto scale = j.at("scale").get<std::vector<double>>();
  return Normalizer::from_parts(
      kind == "zscore" ? NormKind::ZScore : NormKind::MinMax,
      Eigen::Map<const Eigen::VectorXd>(shift.data(), static_cast<Eigen::Index>(shift.size())),
      Eigen::Map<const Eigen::VectorXd>(scale.data(), static_cast<Eigen::Index>(scale.size())));
}

}  // namespace

void save_model(const SurrogateModel& model, const std::filesystem::path& path) {
  const auto& lay = model.net.layout();
  const auto& p = model.net.params();
  json j;
  j["schema"] = "ltcsim.model";
  j["schema_version"] = 1;
  j["name"] = model.name;
  j["layout"] = {{"n_sensory", lay.n_sensory},
                 {"n_hidden", lay.n_hidden},
                 {"n_motor", lay.n_motor}};
  j["dt_hours"] = model.dt_hours;
  j["trained"] = model.trained;
  j["input_ports"] = model.input_ports;
  j["output_ports"] = model.output_ports;
  j["params"] = {{"tau_raw", matrix_to_json(p.tau_raw)},
                 {"w_raw", matrix_to_json(p.w_raw)},
                 {"gain", matrix_to_json(p.gain)},
                 {"offset", matrix_to_json(p.offset)},
                 {"reversal", matrix_to_json(p.reversal)},
                 {"motor_weight", matrix_to_json(p.motor_weight)},
                 {"motor_bias", matrix_to_json(p.motor_bias)}};
  j["input_normalizer"] = normalizer_to_json(model.input_norm);
  j["output_normalizer"] = normalizer_to_json(model.output_norm);

  std::ofstream f(path);
  if (!f) throw IoError("save_model: cannot open " + path.string());
  f << j.dump(2) << '\n';
  if (!f) throw IoError("save_model: write failed for " + path.string());
}

SurrogateModel load_model(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("load_model: cannot open " + path.string());
  json j;
  try {
    f >> j;
  } catch (const json::parse_error& e) {
    throw SchemaMismatch("load_model: invalid JSON in " + path.string() + ": " + e.what());
  }
  try {
    if (j.at("schema").get<std::string>() != "ltcsim.model")
      throw SchemaMismatch("load_model: not a model file: " + path.string());
    if (j.at("schema_version").get<int>() != 1)
      throw SchemaMismatch("load_model: unsupported schema version");

    NeuronLayout lay;
    lay.n_sensory = j.at("layout").at("n_sensory").get<int>();
    lay.n_hidden = j.at("layout").at("n_hidden").get<int>();
    lay.n_motor = j.at("layout").at("n_motor").get<int>();
    lay.validate();

    const auto& jp = j.at("params");
    LtcParams p;
    const int pre = lay.pre_count();
    p.tau_raw = matrix_from_json(jp.at("tau_raw"), lay.n_hidden, 1, "tau_raw");
    p.w_raw = matrix_from_json(jp.at("w_raw"), lay.n_hidden, pre, "w_raw");
    p.gain = matrix_from_json(jp.at("gain"), lay.n_hidden, pre, "gain");
    p.offset = matrix_from_json(jp.at("offset"), lay.n_hidden, pre, "offset");
    p.reversal = matrix_from_json(jp.at("reversal"), lay.n_hidden, pre, "reversal");
    p.motor_weight =
        matrix_from_json(jp.at("motor_weight"), lay.n_motor, lay.n_hidden, "motor_weight");
    p.motor_bias = matrix_from_json(jp.at("motor_bias"), lay.n_motor, 1, "motor_bias");

    SurrogateModel m;
    m.name = j.at("name").get<std::string>();
    m.net = LtcNetwork(lay, std::move(p));
    m.dt_hours = j.at("dt_hours").get<double>();
    m.trained = j.at("trained").get<bool>();
    m.input_ports = j.at("input_ports").get<std::vector<std::string>>();
    m.output_ports = j.at("output_ports").get<std::vector<std::string>>();
    m.input_norm = normalizer_from_json(j.at("input_normalizer"));
    m.output_norm = normalizer_from_json(j.at("output_normalizer"));
    if (static_cast<int>(m.input_ports.size()) != lay.n_sensory ||
        static_cast<int>(m.output_ports.size()) != lay.n_motor)
      throw SchemaMismatch("load_model: port list does not match layout");
    return m;
  } catch (const json::exception& e) {
    throw SchemaMismatch("load_model: malformed model file " + path.string() + ": " +
                         e.what());
  }
}

}  // namespace ltcsim
