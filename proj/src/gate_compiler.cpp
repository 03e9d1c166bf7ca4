#include "qarch/gate_compiler.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string_view>

namespace qarch {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeroAngle = 1e-12;

std::string format_angle(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

int log2_dim(Eigen::Index dim) {
    if (dim < 1 || !std::has_single_bit(static_cast<unsigned long long>(dim))) {
        throw DimensionError("matrix dimension must be a power of two");
    }
    return std::countr_zero(static_cast<unsigned long long>(dim));
}

void require_unitary(const ComplexMatrix& u, double tol, const char* who) {
    detail::require_square(u, who);
    const double r = unitarity_residual(u);
    if (!(r <= tol)) {
        throw PreconditionError(std::string(who) + ": input is not unitary (residual " + std::to_string(r) + ")");
    }
}

void emit_rotation(std::vector<GateOp>& out, GateKind kind, int wire, double angle) {
    out.push_back(GateOp::rotation(kind, wire, angle));
}

void append(std::vector<GateOp>& out, const std::vector<GateOp>& more) {
    out.insert(out.end(), more.begin(), more.end());
}

// Compiles u acting on `wires` (wires[0] most significant) into `out`.
void qsd_recursive(const ComplexMatrix& u, std::span<const int> wires, std::vector<GateOp>& out,
                   double& phase) {
    if (wires.size() == 1) {
        const auto [alpha, beta, gamma, delta] = zyz_decompose(u);
        emit_rotation(out, GateKind::RZ, wires[0], delta);
        emit_rotation(out, GateKind::RY, wires[0], gamma);
        emit_rotation(out, GateKind::RZ, wires[0], beta);
        phase += alpha;
        return;
    }
    const auto rest = wires.subspan(1);
    const auto csd = cosine_sine_decompose(u);
    const auto right = demultiplex(csd.r1, csd.r2);
    const auto left = demultiplex(csd.l1, csd.l2);

    const auto rz_angles = [](const RealVector& half) {
        std::vector<double> a(static_cast<std::size_t>(half.size()));
        for (Eigen::Index j = 0; j < half.size(); ++j) a[static_cast<std::size_t>(j)] = -2.0 * half(j);
        return a;
    };
    std::vector<double> ry_angles(static_cast<std::size_t>(csd.thetas.size()));
    for (Eigen::Index j = 0; j < csd.thetas.size(); ++j) ry_angles[static_cast<std::size_t>(j)] = 2.0 * csd.thetas(j);

    qsd_recursive(right.w, rest, out, phase);
    append(out, multiplexed_rotation_circuit(GateKind::RZ, rz_angles(right.rz_half_angles), rest, wires[0]));
    qsd_recursive(right.v, rest, out, phase);
    append(out, multiplexed_rotation_circuit(GateKind::RY, ry_angles, rest, wires[0]));
    qsd_recursive(left.w, rest, out, phase);
    append(out, multiplexed_rotation_circuit(GateKind::RZ, rz_angles(left.rz_half_angles), rest, wires[0]));
    qsd_recursive(left.v, rest, out, phase);
}

}  // namespace

GateOp GateOp::rotation(GateKind kind, int wire, double angle) {
    if (kind == GateKind::CNOT) throw std::invalid_argument("GateOp::rotation: CNOT is not a rotation");
    if (!std::isfinite(angle)) throw NumericError("GateOp::rotation: non-finite angle");
    return GateOp{kind, wire, -1, normalize_rotation_angle(angle)};
}

GateOp GateOp::cnot(int control, int target) {
    if (control == target) throw DimensionError("GateOp::cnot: control and target must differ");
    return GateOp{GateKind::CNOT, target, control, 0.0};
}

double normalize_rotation_angle(double angle) {
    double a = std::remainder(angle, 4 * kPi);
    if (a <= -2 * kPi) a += 4 * kPi;
    return a;
}

ZyzAngles zyz_decompose(const ComplexMatrix& u) {
    if (u.rows() != 2 || u.cols() != 2) throw DimensionError("zyz_decompose: expected a 2x2 matrix");
    require_unitary(u, 1e-8, "zyz_decompose");
    const double alpha = detail::principal_angle(std::arg(u.determinant()) / 2);
    const ComplexMatrix v = std::polar(1.0, -alpha) * u;
    const Complex a = v(0, 0);
    const Complex b = v(1, 0);
    const double gamma = 2 * std::atan2(std::abs(b), std::abs(a));
    const double sum = std::abs(a) > 1e-14 ? -2 * std::arg(a) : 0.0;
    const double diff = std::abs(b) > 1e-14 ? 2 * std::arg(b) : 0.0;
    return {alpha, normalize_rotation_angle((sum + diff) / 2), gamma, normalize_rotation_angle((sum - diff) / 2)};
}

CsdResult cosine_sine_decompose(const ComplexMatrix& u) {
    const int n = log2_dim(u.rows());
    if (n < 2) throw DimensionError("cosine_sine_decompose: needs at least 2 wires");
    require_unitary(u, 1e-8, "cosine_sine_decompose");
    const Eigen::Index h = u.rows() / 2;
    const auto u00 = u.topLeftCorner(h, h);
    const auto u01 = u.topRightCorner(h, h);
    const auto u10 = u.bottomLeftCorner(h, h);
    const auto u11 = u.bottomRightCorner(h, h);

    auto [w, c, v] = svd(u00);
    CsdResult out;
    out.l1 = w;
    out.r1 = v.adjoint();

    // Columns of z are orthogonal with norms sqrt(1 - c_j^2), ascending. QR in
    // descending-norm order so the near-null columns are completed by the
    // Householder basis instead of being normalized.
    const ComplexMatrix z = u10 * v;
    const ComplexMatrix z_rev = z.rowwise().reverse();
    Eigen::HouseholderQR<ComplexMatrix> qr(z_rev);
    const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(h, h);
    const ComplexMatrix& t = qr.matrixQR();

    out.l2.resize(h, h);
    out.thetas.resize(h);
    RealVector cos_t(h), sin_t(h);
    for (Eigen::Index j = 0; j < h; ++j) {
        const Eigen::Index r = h - 1 - j;
        const Complex diag = t(r, r);
        const double s = std::abs(diag);
        const Complex phase = s > 0 ? diag / s : Complex(1);
        out.l2.col(j) = q.col(r) * phase;
        const double theta = std::atan2(s, std::max(c(j), 0.0));
        out.thetas(j) = theta;
        cos_t(j) = std::cos(theta);
        sin_t(j) = std::sin(theta);
    }
    out.r2 = cos_t.asDiagonal() * (out.l2.adjoint() * u11) - sin_t.asDiagonal() * (out.l1.adjoint() * u01);
    return out;
}

DemuxResult demultiplex(const ComplexMatrix& u1, const ComplexMatrix& u2) {
    if (u1.rows() != u2.rows() || u1.cols() != u2.cols()) throw DimensionError("demultiplex: size mismatch");
    require_unitary(u1, 1e-8, "demultiplex");
    require_unitary(u2, 1e-8, "demultiplex");
    auto [v, phases] = eig_unitary(ComplexMatrix(u1 * u2.adjoint()));
    DemuxResult out;
    out.rz_half_angles = phases / 2.0;
    ComplexVector d_conj(phases.size());
    for (Eigen::Index j = 0; j < phases.size(); ++j) d_conj(j) = std::polar(1.0, -out.rz_half_angles(j));
    out.w = d_conj.asDiagonal() * (v.adjoint() * u1);
    out.v = std::move(v);
    return out;
}

std::vector<double> gray_code_rotation_angles(std::span<const double> angles) {
    const std::size_t count = angles.size();
    if (count == 0 || !std::has_single_bit(count)) {
        throw DimensionError("gray_code_rotation_angles: angle count must be a power of two");
    }
    std::vector<double> out(count, 0.0);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t gray = i ^ (i >> 1);
        double acc = 0.0;
        for (std::size_t p = 0; p < count; ++p) {
            acc += (std::popcount(p & gray) & 1) ? -angles[p] : angles[p];
        }
        out[i] = acc / static_cast<double>(count);
    }
    return out;
}

std::vector<GateOp> multiplexed_rotation_circuit(GateKind axis, std::span<const double> angles,
                                                 std::span<const int> select_wires, int target) {
    if (axis != GateKind::RY && axis != GateKind::RZ) {
        throw std::invalid_argument("multiplexed_rotation_circuit: axis must be RY or RZ");
    }
    const std::size_t k = select_wires.size();
    if (angles.size() != (std::size_t{1} << k)) {
        throw DimensionError("multiplexed_rotation_circuit: need 2^k angles for k select wires");
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (select_wires[i] == target) throw DimensionError("multiplexed_rotation_circuit: target among select wires");
        for (std::size_t j = i + 1; j < k; ++j) {
            if (select_wires[i] == select_wires[j]) throw DimensionError("multiplexed_rotation_circuit: duplicate wire");
        }
    }
    std::vector<GateOp> out;
    if (k == 0) {
        out.push_back(GateOp::rotation(axis, target, angles[0]));
        return out;
    }
    const auto alphas = gray_code_rotation_angles(angles);
    const std::size_t count = alphas.size();
    out.reserve(2 * count);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(GateOp::rotation(axis, target, alphas[i]));
        const std::size_t next = (i + 1) % count;
        const std::size_t changed = (i ^ (i >> 1)) ^ (next ^ (next >> 1));
        const auto bit = static_cast<std::size_t>(std::countr_zero(changed));
        out.push_back(GateOp::cnot(select_wires[k - 1 - bit], target));
    }
    return out;
}

CompiledCircuit qsd_compile(const ComplexMatrix& u) {
    const int n = log2_dim(u.rows());
    if (n < 1 || n > 8) throw DimensionError("qsd_compile: supports 1 to 8 wires");
    require_unitary(u, 1e-8, "qsd_compile");
    std::vector<int> wires(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) wires[static_cast<std::size_t>(i)] = i;

    std::vector<GateOp> raw;
    double phase = 0.0;
    qsd_recursive(u, wires, raw, phase);

    CompiledCircuit c;
    c.n_wires = n;
    c.global_phase = detail::principal_angle(phase);
    c.gates.reserve(raw.size());
    for (const auto& g : raw) {
        if (g.kind != GateKind::CNOT && std::abs(g.angle) < kZeroAngle) continue;
        c.gates.push_back(g);
    }
    if (n <= 6) {
        const double residual = (reconstruct(c) - u).norm();
        if (!(residual <= 1e-8)) {
            throw NumericError("qsd_compile: verification failed (residual " + std::to_string(residual) + ")");
        }
    }
    return c;
}

long long qsd_cnot_bound(int n_wires) {
    if (n_wires < 1) throw DimensionError("qsd_cnot_bound: n must be >= 1");
    long long c = 0;
    for (int n = 2; n <= n_wires; ++n) c = 4 * c + 3 * (1LL << (n - 1));
    return c;
}

std::size_t cnot_count(const CompiledCircuit& c) {
    std::size_t count = 0;
    for (const auto& g : c.gates) count += g.kind == GateKind::CNOT;
    return count;
}

void validate(const CompiledCircuit& c) {
    if (c.n_wires < 1 || c.n_wires > kMaxWires) throw DimensionError("circuit: bad wire count");
    if (!std::isfinite(c.global_phase)) throw NumericError("circuit: non-finite global phase");
    for (const auto& g : c.gates) {
        detail::check_wire(c.n_wires, g.wire, "circuit");
        if (g.kind == GateKind::CNOT) {
            detail::check_wire(c.n_wires, g.control, "circuit");
            if (g.control == g.wire) throw DimensionError("circuit: CNOT control equals target");
        } else if (!std::isfinite(g.angle)) {
            throw NumericError("circuit: non-finite rotation angle");
        }
    }
}

namespace {

template <typename Derived>
void apply_gate_rows(Eigen::MatrixBase<Derived>& block, int n_wires, const GateOp& g) {
    switch (g.kind) {
        case GateKind::RX: detail::apply_1q_rows(block, n_wires, rx_matrix(g.angle), g.wire); break;
        case GateKind::RY: detail::apply_1q_rows(block, n_wires, ry_matrix(g.angle), g.wire); break;
        case GateKind::RZ: detail::apply_1q_rows(block, n_wires, rz_matrix(g.angle), g.wire); break;
        case GateKind::CNOT: detail::apply_cnot_rows(block, n_wires, g.control, g.wire); break;
    }
}

}  // namespace

ComplexMatrix gate_embedding(const GateOp& g, int n_wires) {
    return reconstruct(CompiledCircuit{n_wires, {g}, 0.0});
}

ComplexMatrix reconstruct(const CompiledCircuit& c) {
    validate(c);
    const Eigen::Index dim = Eigen::Index{1} << c.n_wires;
    ComplexMatrix m = ComplexMatrix::Identity(dim, dim);
    for (const auto& g : c.gates) apply_gate_rows(m, c.n_wires, g);
    return std::polar(1.0, c.global_phase) * m;
}

StateVector run_circuit(const CompiledCircuit& c, StateVector state) {
    validate(c);
    if (state.n_wires() != c.n_wires) throw DimensionError("run_circuit: wire count mismatch");
    for (const auto& g : c.gates) apply_gate_rows(state.amplitudes(), c.n_wires, g);
    state.amplitudes() *= std::polar(1.0, c.global_phase);
    return state;
}

std::string to_gate_list(const CompiledCircuit& c) {
    std::ostringstream out;
    out << "GPHASE " << format_angle(c.global_phase) << '\n';
    for (const auto& g : c.gates) {
        switch (g.kind) {
            case GateKind::RX: out << "RX q" << g.wire << ' ' << format_angle(g.angle) << '\n'; break;
            case GateKind::RY: out << "RY q" << g.wire << ' ' << format_angle(g.angle) << '\n'; break;
            case GateKind::RZ: out << "RZ q" << g.wire << ' ' << format_angle(g.angle) << '\n'; break;
            case GateKind::CNOT: out << "CNOT q" << g.control << " q" << g.wire << '\n'; break;
        }
    }
    return out.str();
}

namespace {

int parse_wire(const std::string& token, int line_no) {
    if (token.size() < 2 || token[0] != 'q') {
        throw std::invalid_argument("gate list line " + std::to_string(line_no) + ": bad wire '" + token + "'");
    }
    std::size_t used = 0;
    const int w = std::stoi(token.substr(1), &used);
    if (used != token.size() - 1) {
        throw std::invalid_argument("gate list line " + std::to_string(line_no) + ": bad wire '" + token + "'");
    }
    return w;
}

}  // namespace

CompiledCircuit parse_gate_list(const std::string& text, int n_wires) {
    CompiledCircuit c;
    c.n_wires = n_wires;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool seen_phase = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string op;
        if (!(fields >> op)) continue;
        const auto fail = [&](const std::string& why) {
            return std::invalid_argument("gate list line " + std::to_string(line_no) + ": " + why);
        };
        if (op == "GPHASE") {
            if (seen_phase || !c.gates.empty()) throw fail("GPHASE must be the first line");
            if (!(fields >> c.global_phase)) throw fail("missing phase");
            seen_phase = true;
            continue;
        }
        if (!seen_phase) throw fail("GPHASE must be the first line");
        if (op == "CNOT") {
            std::string ctl, tgt;
            if (!(fields >> ctl >> tgt)) throw fail("CNOT needs two wires");
            c.gates.push_back(GateOp::cnot(parse_wire(ctl, line_no), parse_wire(tgt, line_no)));
        } else if (op == "RX" || op == "RY" || op == "RZ") {
            std::string wire;
            double angle = 0;
            if (!(fields >> wire >> angle)) throw fail("rotation needs a wire and an angle");
            const GateKind kind = op == "RX" ? GateKind::RX : op == "RY" ? GateKind::RY : GateKind::RZ;
            c.gates.push_back(GateOp::rotation(kind, parse_wire(wire, line_no), angle));
        } else {
            throw fail("unknown op '" + op + "'");
        }
        std::string extra;
        if (fields >> extra) throw fail("trailing token '" + extra + "'");
    }
    if (!seen_phase) throw std::invalid_argument("gate list: missing GPHASE line");
    validate(c);
    return c;
}

std::string to_openqasm(const CompiledCircuit& c) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    out << "qreg q[" << c.n_wires << "];\n";
    out << "// global phase: " << format_angle(c.global_phase) << '\n';
    for (const auto& g : c.gates) {
        switch (g.kind) {
            case GateKind::RX: out << "rx(" << format_angle(g.angle) << ") q[" << g.wire << "];\n"; break;
            case GateKind::RY: out << "ry(" << format_angle(g.angle) << ") q[" << g.wire << "];\n"; break;
            case GateKind::RZ: out << "rz(" << format_angle(g.angle) << ") q[" << g.wire << "];\n"; break;
            case GateKind::CNOT: out << "cx q[" << g.control << "],q[" << g.wire << "];\n"; break;
        }
    }
    return out.str();
}

}  // namespace qarch
