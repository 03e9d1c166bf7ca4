#include "qarch/unitarize.hpp"

namespace qarch {

std::string to_string(MuMethod method) {
    switch (method) {
        case MuMethod::QR: return "qr";
        case MuMethod::SCHUR: return "schur";
        case MuMethod::POLAR: return "polar";
    }
    return "schur";
}

MuMethod mu_method_from_string(std::string_view name) {
    if (name == "qr") return MuMethod::QR;
    if (name == "schur") return MuMethod::SCHUR;
    if (name == "polar") return MuMethod::POLAR;
    throw std::invalid_argument("unknown MU method '" + std::string(name) + "' (expected qr|schur|polar)");
}

bool is_unitary(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return unitarity_residual(m) <= tol;
}

ComplexMatrix unitarize(const ComplexMatrix& m, const MuConfig& config) {
    if (!(config.unitary_tol > 0)) throw std::invalid_argument("unitarize: unitary_tol must be positive");
    if (m.rows() != m.cols()) throw DimensionError("unitarize: matrix must be square");
    if (!m.allFinite()) throw NumericError("unitarize: non-finite entry");
    if (config.skip_if_unitary && is_unitary(m, config.unitary_tol)) return m;
    switch (config.method) {
        case MuMethod::QR: return qr_decompose(m).first;
        case MuMethod::SCHUR: return schur_decompose(m).first;
        case MuMethod::POLAR: return polar_decompose(m).first;
    }
    throw std::logic_error("unitarize: unhandled method");
}

}  // namespace qarch
