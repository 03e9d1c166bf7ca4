#pragma once

#include "qarch/linalg.hpp"

#include <string>
#include <string_view>

namespace qarch {

enum class MuMethod { QR, SCHUR, POLAR };

std::string to_string(MuMethod method);
MuMethod mu_method_from_string(std::string_view name);

struct MuConfig {
    MuMethod method = MuMethod::SCHUR;
    bool skip_if_unitary = false;
    double unitary_tol = 1e-9;
};

bool is_unitary(const ComplexMatrix& m, double tol);

/// Projects m onto the unitary group, keeping the unitary factor of the
/// selected factorization and discarding the other.
ComplexMatrix unitarize(const ComplexMatrix& m, const MuConfig& config);

}  // namespace qarch
