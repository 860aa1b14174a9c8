#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "opradius/complex_matrix.hpp"

namespace opradius {

/// Matrix file format: {"dim": n, "re": [n*n], "im": [n*n]}, row-major.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

ComplexMatrix read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m);

}  // namespace opradius
