#include "isosym/matrix_json.hpp"

#include <fstream>

namespace isosym {

nlohmann::json matrix_to_json(const CMatrix& m) {
  nlohmann::json data = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      data.push_back({m(i, j).real(), m(i, j).imag()});
    }
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

CMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
    throw InvalidArgument("matrix JSON needs rows, cols and data");
  }
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer() || !j["data"].is_array()) {
    throw InvalidArgument("matrix JSON has mistyped fields");
  }
  const auto rows = j["rows"].get<Index>();
  const auto cols = j["cols"].get<Index>();
  std::vector<Complex> entries;
  entries.reserve(j["data"].size());
  for (const auto& e : j["data"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw InvalidArgument("matrix JSON entries must be [re, im] pairs");
    }
    entries.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return make_matrix(rows, cols, entries);
}

CMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
  return matrix_from_json(j);
}

void write_matrix(const std::filesystem::path& path, const CMatrix& m) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << matrix_to_json(m).dump() << '\n';
}

}  // namespace isosym
