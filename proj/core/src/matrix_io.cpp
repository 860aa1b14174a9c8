#include "opradius/matrix_io.hpp"

#include <fstream>
#include <sstream>

#include "opradius/output.hpp"

namespace opradius {

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (const auto& z : m.entries()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return {{"dim", m.dim()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("re") || !j.contains("im")) {
    throw InvalidInput("matrix JSON must be an object with keys dim, re, im");
  }
  const auto& jd = j.at("dim");
  if (!jd.is_number_integer() || jd.get<long long>() < 1) {
    throw InvalidInput("matrix JSON: dim must be a positive integer");
  }
  const auto n = static_cast<std::size_t>(jd.get<long long>());
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (!re.is_array() || !im.is_array() || re.size() != n * n || im.size() != n * n) {
    throw InvalidInput("matrix JSON: re and im must be arrays of dim*dim numbers");
  }
  std::vector<cplx> entries(n * n);
  for (std::size_t k = 0; k < n * n; ++k) {
    if (!re[k].is_number() || !im[k].is_number()) {
      throw InvalidInput("matrix JSON: non-numeric entry at index " + std::to_string(k));
    }
    entries[k] = {re[k].get<double>(), im[k].get<double>()};
  }
  ComplexMatrix m(n, std::move(entries));
  if (!m.all_finite()) throw InvalidInput("matrix JSON: entries must be finite");
  return m;
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open matrix file: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput("matrix file " + path.string() + " is not valid JSON: " + e.what());
  }
  return matrix_from_json(j);
}

void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m) {
  write_file_atomically(path, matrix_to_json(m).dump() + "\n");
}

}  // namespace opradius
