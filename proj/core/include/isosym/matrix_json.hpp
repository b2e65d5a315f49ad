#pragma once

// Matrix JSON schema: {"rows": n, "cols": m, "data": [[re, im], ...]}, row-major.

#include <filesystem>

#include <nlohmann/json.hpp>

#include "isosym/matrix.hpp"

namespace isosym {

nlohmann::json matrix_to_json(const CMatrix& m);
/// Throws InvalidArgument on a malformed document or non-finite entry.
CMatrix matrix_from_json(const nlohmann::json& j);

CMatrix read_matrix(const std::filesystem::path& path);
void write_matrix(const std::filesystem::path& path, const CMatrix& m);

}  // namespace isosym
