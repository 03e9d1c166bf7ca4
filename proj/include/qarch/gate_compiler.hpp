#pragma once

// Quantum Shannon Decomposition of a 2^n x 2^n unitary into Ry/Rz/CNOT
// plus a global phase.

#include "qarch/linalg.hpp"
#include "qarch/statevector.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace qarch {

enum class GateKind { RX, RY, RZ, CNOT };

struct GateOp {
    GateKind kind;
    int wire = 0;      // rotation wire, or CNOT target
    int control = -1;  // CNOT only
    double angle = 0;  // rotations only, radians in (-2pi, 2pi]

    static GateOp rotation(GateKind kind, int wire, double angle);
    static GateOp cnot(int control, int target);
    bool operator==(const GateOp&) const = default;
};

struct CompiledCircuit {
    int n_wires = 1;
    std::vector<GateOp> gates;  // gates[0] is applied first
    double global_phase = 0;
};

struct ZyzAngles {
    double alpha, beta, gamma, delta;
};

struct CsdResult {
    ComplexMatrix l1, l2;
    RealVector thetas;
    ComplexMatrix r1, r2;
};

struct DemuxResult {
    ComplexMatrix v;
    RealVector rz_half_angles;
    ComplexMatrix w;
};

/// Maps an angle into (-2pi, 2pi]; rotations have period 4pi.
double normalize_rotation_angle(double angle);

/// u = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta), gamma in [0, pi].
ZyzAngles zyz_decompose(const ComplexMatrix& u);

/// u = (L1 (+) L2) [[C, -S], [S, C]] (R1 (+) R2), thetas in [0, pi/2].
CsdResult cosine_sine_decompose(const ComplexMatrix& u);

/// u1 = V D W and u2 = V D^H W with D = diag(exp(i * half_angles)).
DemuxResult demultiplex(const ComplexMatrix& u1, const ComplexMatrix& u2);

/// Gray-code uniformly controlled rotation. angles[p] is applied to `target`
/// when the select wires read pattern p (select_wires[0] most significant).
std::vector<GateOp> multiplexed_rotation_circuit(GateKind axis, std::span<const double> angles,
                                                 std::span<const int> select_wires, int target);

/// Walsh transform from pattern angles to the per-rotation angles emitted by
/// multiplexed_rotation_circuit.
std::vector<double> gray_code_rotation_angles(std::span<const double> angles);

CompiledCircuit qsd_compile(const ComplexMatrix& u);

/// Upper bound on CNOTs emitted by qsd_compile for n wires.
long long qsd_cnot_bound(int n_wires);

std::size_t cnot_count(const CompiledCircuit& c);

ComplexMatrix gate_embedding(const GateOp& g, int n_wires);
ComplexMatrix reconstruct(const CompiledCircuit& c);

/// Runs the gate list on a state and applies the recorded global phase.
StateVector run_circuit(const CompiledCircuit& c, StateVector state);

void validate(const CompiledCircuit& c);

// Canonical text format: `GPHASE <rad>` first, then one op per line.
std::string to_gate_list(const CompiledCircuit& c);
CompiledCircuit parse_gate_list(const std::string& text, int n_wires);
std::string to_openqasm(const CompiledCircuit& c);

}  // namespace qarch
