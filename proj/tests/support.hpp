#pragma once

// Test-only generators and dense-matrix oracles. The oracles build gate
// matrices with Kronecker products and explicit permutations, independent of
// the simulator's index-twiddling kernels.

#include "qarch/linalg.hpp"
#include "qarch/statevector.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace qarch::testing {

inline ComplexMatrix random_complex(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    ComplexMatrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) m(r, c) = Complex(g(rng), g(rng));
    }
    return m;
}

inline ComplexMatrix random_unitary(Eigen::Index n, std::mt19937_64& rng) {
    return qr_decompose(random_complex(n, rng)).first;
}

inline StateVector random_state(int n_wires, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    ComplexVector v(Eigen::Index{1} << n_wires);
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(g(rng), g(rng));
    v.normalize();
    return {n_wires, v};
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return out;
}

/// I (x) ... (x) g (x) ... (x) I with g at position `wire` (wire 0 leftmost).
inline ComplexMatrix dense_1q(const ComplexMatrix& g, int wire, int n_wires) {
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (int w = 0; w < n_wires; ++w) out = kron(out, w == wire ? g : ComplexMatrix::Identity(2, 2));
    return out;
}

/// Permutation matrix of |b> -> |b xor (control bit -> target)>, built from
/// bit strings written out explicitly.
inline ComplexMatrix dense_cnot(int control, int target, int n_wires) {
    const Eigen::Index dim = Eigen::Index{1} << n_wires;
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        std::vector<int> bits(static_cast<std::size_t>(n_wires));
        for (int w = 0; w < n_wires; ++w) bits[static_cast<std::size_t>(w)] = (col >> (n_wires - 1 - w)) & 1;
        if (bits[static_cast<std::size_t>(control)]) bits[static_cast<std::size_t>(target)] ^= 1;
        Eigen::Index row = 0;
        for (int w = 0; w < n_wires; ++w) row = 2 * row + bits[static_cast<std::size_t>(w)];
        out(row, col) = 1.0;
    }
    return out;
}

inline double max_abs_diff(const ComplexVector& a, const ComplexVector& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qarch::testing
