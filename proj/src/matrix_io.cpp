#include "qarch/matrix_io.hpp"

#include <fstream>
#include <iomanip>

namespace qarch {

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("matrix_to_json: matrix must be square");
    std::vector<double> re;
    std::vector<double> im;
    re.reserve(static_cast<std::size_t>(m.size()));
    im.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            re.push_back(m(r, c).real());
            im.push_back(m(r, c).imag());
        }
    }
    return {{"n", m.rows()}, {"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    const auto n = j.at("n").get<Eigen::Index>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (n < 1 || re.size() != static_cast<std::size_t>(n * n) || im.size() != re.size()) {
        throw DimensionError("matrix_from_json: entry count does not match n*n");
    }
    ComplexMatrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            const auto k = static_cast<std::size_t>(r * n + c);
            m(r, c) = Complex(re[k], im[k]);
        }
    }
    if (!m.allFinite()) throw NumericError("matrix_from_json: non-finite entry");
    return m;
}

void write_matrix(const std::filesystem::path& path, const ComplexMatrix& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << std::setprecision(17) << matrix_to_json(m).dump() << '\n';
}

ComplexMatrix read_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    return matrix_from_json(nlohmann::json::parse(in));
}

}  // namespace qarch
