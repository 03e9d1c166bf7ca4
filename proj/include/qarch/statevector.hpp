#pragma once

// Exact statevector simulation. Wire 0 is the most significant bit of the
// amplitude index everywhere in this project.

#include "qarch/linalg.hpp"

#include <span>
#include <vector>

namespace qarch {

constexpr int kMaxWires = 10;

class StateVector {
public:
    StateVector() = default;
    StateVector(int n_wires, ComplexVector amplitudes);

    int n_wires() const { return n_wires_; }
    Eigen::Index dim() const { return amplitudes_.size(); }
    const ComplexVector& amplitudes() const { return amplitudes_; }
    ComplexVector& amplitudes() { return amplitudes_; }
    double norm_squared() const { return amplitudes_.squaredNorm(); }

private:
    int n_wires_ = 0;
    ComplexVector amplitudes_;
};

StateVector basis_state(int n_wires, Eigen::Index basis_index);

/// Tensor product of single-wire states, wire 0 first.
StateVector product_state(std::span<const ComplexVector> wire_states);

ComplexMatrix rx_matrix(double phi);
ComplexMatrix ry_matrix(double phi);
ComplexMatrix rz_matrix(double phi);
ComplexMatrix cnot_matrix();

StateVector apply_1q(StateVector state, const ComplexMatrix& gate, int wire);
StateVector apply_cnot(StateVector state, int control, int target);

/// Applies a 2^k x 2^k matrix on `wires` (wires[0] is the matrix's most
/// significant qubit). The matrix is applied as given, unitary or not.
StateVector apply_matrix(StateVector state, const ComplexMatrix& m, std::span<const int> wires);

/// Raw bilinear form psi^H Z_wire psi, no renormalization.
double expectation_z(const StateVector& state, int wire);

/// All per-wire Z expectations in one pass.
RealVector expectations_z(const StateVector& state);

namespace detail {

inline Eigen::Index wire_bit(int n_wires, int wire) {
    return Eigen::Index{1} << (n_wires - 1 - wire);
}

void check_wire(int n_wires, int wire, const char* who);

// Kernels over the rows of any column-major block whose row count is 2^n.
// They act on every column, which lets reconstruct() reuse them on a full
// matrix.
template <typename Derived>
void apply_1q_rows(Eigen::MatrixBase<Derived>& block, int n_wires, const ComplexMatrix& g, int wire) {
    const Eigen::Index bit = wire_bit(n_wires, wire);
    const Eigen::Index dim = block.rows();
    const Complex g00 = g(0, 0), g01 = g(0, 1), g10 = g(1, 0), g11 = g(1, 1);
    for (Eigen::Index c = 0; c < block.cols(); ++c) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            if (i & bit) continue;
            const Complex a0 = block(i, c);
            const Complex a1 = block(i | bit, c);
            block(i, c) = g00 * a0 + g01 * a1;
            block(i | bit, c) = g10 * a0 + g11 * a1;
        }
    }
}

template <typename Derived>
void apply_cnot_rows(Eigen::MatrixBase<Derived>& block, int n_wires, int control, int target) {
    const Eigen::Index cbit = wire_bit(n_wires, control);
    const Eigen::Index tbit = wire_bit(n_wires, target);
    for (Eigen::Index c = 0; c < block.cols(); ++c) {
        for (Eigen::Index i = 0; i < block.rows(); ++i) {
            if ((i & cbit) && !(i & tbit)) std::swap(block(i, c), block(i | tbit, c));
        }
    }
}

}  // namespace detail

}  // namespace qarch
