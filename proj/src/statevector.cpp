#include "qarch/statevector.hpp"

#include <cmath>
#include <string>

namespace qarch {

namespace detail {

void check_wire(int n_wires, int wire, const char* who) {
    if (wire < 0 || wire >= n_wires) {
        throw DimensionError(std::string(who) + ": wire " + std::to_string(wire) +
                             " out of range for " + std::to_string(n_wires) + " wires");
    }
}

}  // namespace detail

StateVector::StateVector(int n_wires, ComplexVector amplitudes)
    : n_wires_(n_wires), amplitudes_(std::move(amplitudes)) {
    if (n_wires < 1 || n_wires > kMaxWires) {
        throw DimensionError("StateVector: wire count must be in [1, " + std::to_string(kMaxWires) + "]");
    }
    if (amplitudes_.size() != (Eigen::Index{1} << n_wires)) {
        throw DimensionError("StateVector: amplitude count must be 2^n_wires");
    }
}

StateVector basis_state(int n_wires, Eigen::Index basis_index) {
    if (n_wires < 1 || n_wires > kMaxWires) throw DimensionError("basis_state: bad wire count");
    const Eigen::Index dim = Eigen::Index{1} << n_wires;
    if (basis_index < 0 || basis_index >= dim) {
        throw DimensionError("basis_state: index " + std::to_string(basis_index) + " out of range");
    }
    ComplexVector amps = ComplexVector::Zero(dim);
    amps(basis_index) = 1.0;
    return {n_wires, std::move(amps)};
}

StateVector product_state(std::span<const ComplexVector> wire_states) {
    const int n = static_cast<int>(wire_states.size());
    ComplexVector amps = ComplexVector::Ones(1);
    for (const auto& w : wire_states) {
        if (w.size() != 2) throw DimensionError("product_state: each wire state must have 2 amplitudes");
        ComplexVector next(amps.size() * 2);
        for (Eigen::Index i = 0; i < amps.size(); ++i) {
            next(2 * i) = amps(i) * w(0);
            next(2 * i + 1) = amps(i) * w(1);
        }
        amps = std::move(next);
    }
    return {n, std::move(amps)};
}

ComplexMatrix rx_matrix(double phi) {
    const double c = std::cos(phi / 2), s = std::sin(phi / 2);
    ComplexMatrix m(2, 2);
    m << Complex(c, 0), Complex(0, -s), Complex(0, -s), Complex(c, 0);
    return m;
}

ComplexMatrix ry_matrix(double phi) {
    const double c = std::cos(phi / 2), s = std::sin(phi / 2);
    ComplexMatrix m(2, 2);
    m << c, -s, s, c;
    return m;
}

ComplexMatrix rz_matrix(double phi) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = std::polar(1.0, -phi / 2);
    m(1, 1) = std::polar(1.0, phi / 2);
    return m;
}

ComplexMatrix cnot_matrix() {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
    return m;
}

StateVector apply_1q(StateVector state, const ComplexMatrix& gate, int wire) {
    if (gate.rows() != 2 || gate.cols() != 2) throw DimensionError("apply_1q: gate must be 2x2");
    detail::check_wire(state.n_wires(), wire, "apply_1q");
    detail::apply_1q_rows(state.amplitudes(), state.n_wires(), gate, wire);
    return state;
}

StateVector apply_cnot(StateVector state, int control, int target) {
    detail::check_wire(state.n_wires(), control, "apply_cnot");
    detail::check_wire(state.n_wires(), target, "apply_cnot");
    if (control == target) throw DimensionError("apply_cnot: control and target must differ");
    detail::apply_cnot_rows(state.amplitudes(), state.n_wires(), control, target);
    return state;
}

StateVector apply_matrix(StateVector state, const ComplexMatrix& m, std::span<const int> wires) {
    const int n = state.n_wires();
    const int k = static_cast<int>(wires.size());
    if (k < 1 || k > n) throw DimensionError("apply_matrix: wire list size must be in [1, n_wires]");
    const Eigen::Index local = Eigen::Index{1} << k;
    if (m.rows() != local || m.cols() != local) {
        throw DimensionError("apply_matrix: matrix must be 2^k x 2^k for k listed wires");
    }
    Eigen::Index mask = 0;
    for (int w : wires) {
        detail::check_wire(n, w, "apply_matrix");
        const Eigen::Index bit = detail::wire_bit(n, w);
        if (mask & bit) throw DimensionError("apply_matrix: duplicate wire");
        mask |= bit;
    }
    std::vector<Eigen::Index> offsets(static_cast<std::size_t>(local), 0);
    for (Eigen::Index l = 0; l < local; ++l) {
        for (int j = 0; j < k; ++j) {
            if ((l >> (k - 1 - j)) & 1) offsets[static_cast<std::size_t>(l)] |= detail::wire_bit(n, wires[j]);
        }
    }
    auto& amps = state.amplitudes();
    ComplexVector gathered(local);
    for (Eigen::Index base = 0; base < amps.size(); ++base) {
        if (base & mask) continue;
        for (Eigen::Index l = 0; l < local; ++l) gathered(l) = amps(base | offsets[static_cast<std::size_t>(l)]);
        const ComplexVector out = m * gathered;
        for (Eigen::Index l = 0; l < local; ++l) amps(base | offsets[static_cast<std::size_t>(l)]) = out(l);
    }
    return state;
}

double expectation_z(const StateVector& state, int wire) {
    detail::check_wire(state.n_wires(), wire, "expectation_z");
    const Eigen::Index bit = detail::wire_bit(state.n_wires(), wire);
    double total = 0.0;
    const auto& amps = state.amplitudes();
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps(i));
        total += (i & bit) ? -p : p;
    }
    return total;
}

RealVector expectations_z(const StateVector& state) {
    const int n = state.n_wires();
    RealVector out = RealVector::Zero(n);
    const auto& amps = state.amplitudes();
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps(i));
        for (int w = 0; w < n; ++w) out(w) += (i & detail::wire_bit(n, w)) ? -p : p;
    }
    return out;
}

}  // namespace qarch
