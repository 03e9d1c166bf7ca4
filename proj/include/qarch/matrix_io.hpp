#pragma once

#include "qarch/linalg.hpp"

#include <json.hpp>

#include <filesystem>

namespace qarch {

// {"n": rows, "re": [row-major], "im": [row-major]}; square matrices only.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

void write_matrix(const std::filesystem::path& path, const ComplexMatrix& m);
ComplexMatrix read_matrix(const std::filesystem::path& path);

}  // namespace qarch
