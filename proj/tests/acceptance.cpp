// Acceptance gate: one PASS/FAIL line per criterion. Tolerances are pinned
// here and are not configurable. Exits nonzero if any criterion fails.

#include "qarch/boundary.hpp"
#include "qarch/gate_compiler.hpp"
#include "qarch/trainer.hpp"
#include "qarch/unitarize.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

using namespace qarch;
using namespace qarch::testing;

namespace {

constexpr double kPi = std::numbers::pi;

constexpr double kRoundTripTol = 1e-8;
constexpr double kRoundTripSeconds = 60.0;
constexpr double kLogitTol = 1e-6;
constexpr double kModelATarget = 0.97;
constexpr double kModelBCTarget = 0.85;
constexpr double kUnitaryTol = 1e-9;
constexpr double kGradRelTol = 1e-5;
constexpr double kSinFdValue = 0.995893;
constexpr double kSinFdTol = 1e-6;
constexpr double kOracleTol = 1e-12;
constexpr int kSeeds = 5;

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    failures += !pass;
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void criteria_1_and_2() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2024);
    double worst = 0;
    bool counts_ok = true;
    std::string counts;
    const long long expected_bound[] = {0, 6, 36, 168};
    for (int n = 1; n <= 4; ++n) {
        std::size_t max_cnot = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const ComplexMatrix u = random_unitary(Eigen::Index{1} << n, rng);
            const CompiledCircuit c = qsd_compile(u);
            worst = std::max(worst, dist_up_to_global_phase(reconstruct(c), u));
            max_cnot = std::max(max_cnot, cnot_count(c));
        }
        const long long bound = qsd_cnot_bound(n);
        counts_ok = counts_ok && bound == expected_bound[n - 1] &&
                    static_cast<long long>(max_cnot) <= expected_bound[n - 1];
        counts += (n > 1 ? ", " : "") + std::string("n=") + std::to_string(n) + " max " + std::to_string(max_cnot) +
                  "/" + std::to_string(expected_bound[n - 1]);
    }
    const double elapsed = seconds_since(t0);
    report(1, worst <= kRoundTripTol && elapsed <= kRoundTripSeconds,
           "QSD round trip, 400 unitaries n=1..4, worst distance " + fmt("%.3g", worst) + " (tol 1e-8), " +
               fmt("%.2f", elapsed) + " s (limit 60 s)");
    report(2, counts_ok, "CNOT counts within c(n): " + counts);
}

struct SeedRun {
    TrainResult result;
    double seconds;
};

std::vector<SeedRun> train_seeds(Variant v) {
    std::vector<SeedRun> runs;
    for (int seed = 0; seed < kSeeds; ++seed) {
        TrainConfig c;
        c.variant = v;
        c.seed = static_cast<std::uint64_t>(seed);
        c.lr = 0.01;
        c.delta_theta = kPi / 10;
        c.batch_size = 100;
        c.max_epochs = 50;
        c.mu.method = MuMethod::SCHUR;
        const auto t0 = std::chrono::steady_clock::now();
        TrainResult r = train(c);
        const double s = seconds_since(t0);
        std::printf("  model %s seed %d: best train batch %.4f, test %.4f, valid %.4f (%.1f s)%s\n",
                    to_string(v).c_str(), seed, r.report.best_train_accuracy, r.report.test_accuracy,
                    r.report.validation_accuracy, s, r.report.aborted ? " ABORTED" : "");
        std::fflush(stdout);
        runs.push_back({std::move(r), s});
    }
    return runs;
}

std::size_t best_index(const std::vector<SeedRun>& runs) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < runs.size(); ++i) {
        if (runs[i].result.report.test_accuracy > runs[best].result.report.test_accuracy) best = i;
    }
    return best;
}

std::string accuracies(const std::vector<SeedRun>& runs) {
    std::string s;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        s += (i ? "/" : "") + fmt("%.4f", runs[i].result.report.test_accuracy);
    }
    return s;
}

void criterion_3(const HybridModel& model) {
    const CompiledModel compiled = compile_model(model);
    const GridSpec spec;  // 100 x 100 over [-1.5, 2.5] x [-1.0, 1.5]
    const BoundaryGrid direct = compute_boundary(model, spec);
    const BoundaryGrid gates = compute_boundary(model, spec, compiled_executor(model, compiled));
    const std::size_t disagree = count_disagreements(direct, gates);
    const double dev = max_logit_deviation(direct, gates);
    report(3, disagree == 0 && dev <= kLogitTol && direct.size() == 10000,
           "trained Model A matrix vs compiled gates on 100x100 grid: " + std::to_string(disagree) +
               " disagreeing cells, max logit deviation " + fmt("%.3g", dev) + " (tol 1e-6), QSD residual " +
               fmt("%.3g", compiled.residuals[0]));
}

void criterion_6() {
    std::mt19937_64 rng(606);
    double worst = 0;
    for (MuMethod m : {MuMethod::QR, MuMethod::SCHUR, MuMethod::POLAR}) {
        for (int trial = 0; trial < 100; ++trial) {
            worst = std::max(worst, unitarity_residual(unitarize(random_complex(16, rng), {m})));
        }
    }
    const ComplexMatrix target = random_complex(16, rng);
    const double polar = (unitarize(target, {MuMethod::POLAR}) - target).norm();
    int beaten = 0;
    for (int k = 0; k < 50; ++k) beaten += polar <= (random_unitary(16, rng) - target).norm();
    report(6, worst <= kUnitaryTol && beaten == 50,
           "300 projections of random 16x16 matrices, worst ||U^H U - I||_F " + fmt("%.3g", worst) +
               " (tol 1e-9); polar nearer than " + std::to_string(beaten) + "/50 random unitaries");
}

double loss_at(const HybridModel& m, const Eigen::Vector2d& x, int label) {
    return cross_entropy(forward(m, x).logits, label);
}

void criterion_7() {
    // (a) backward against a central-difference oracle on the loss.
    std::mt19937_64 rng(707);
    std::uniform_real_distribution<double> coord(-1.0, 2.0);
    double worst_rel = 0;
    const Variant variants[] = {Variant::A, Variant::B, Variant::C};
    for (int k = 0; k < 10; ++k) {
        const HybridModel m = init_model(variants[k % 3], 100 + static_cast<std::uint64_t>(k), {MuMethod::POLAR});
        const Eigen::Vector2d x(coord(rng), coord(rng));
        const int label = k % 2;
        const RealVector analytic = flatten_gradients(m, backward(m, forward(m, x).cache, label, {1e-6}));
        const RealVector p = flatten_parameters(m);
        RealVector numeric(p.size());
        HybridModel probe = m;
        const double h = 1e-6;
        for (Eigen::Index i = 0; i < p.size(); ++i) {
            RealVector q = p;
            q(i) = p(i) + h;
            assign_parameters(probe, q);
            const double plus = loss_at(probe, x, label);
            q(i) = p(i) - h;
            assign_parameters(probe, q);
            numeric(i) = (plus - loss_at(probe, x, label)) / (2 * h);
        }
        worst_rel = std::max(worst_rel, (analytic - numeric).norm() / std::max(numeric.norm(), 1e-12));
    }
    const bool a = worst_rel <= kGradRelTol;

    // (b) the central-difference operator on sin at 0.
    const double sin_fd = central_difference([](double t) { return std::sin(t); }, 0.0, kPi / 10);
    const bool b = std::abs(sin_fd - kSinFdValue) <= kSinFdTol;

    // (c) one wire, identity layer: <Z> = cos(angle), exact derivative -sin.
    const double delta = kPi / 10;
    const double bound = delta * delta / 24;
    const QuantumLayer layer = QuantumLayer::identity(QuantumLayer::Kind::FULL, 1);
    double worst_c = 0;
    for (int i = 0; i <= 40; ++i) {
        RealVector angle(1), up(1);
        angle << -kPi + 2 * kPi * i / 40;
        up << 1.0;
        const double fd = quantum_fd_grads(layer, angle, up, {delta}).angles(0);
        worst_c = std::max(worst_c, std::abs(fd + std::sin(angle(0))));
    }
    const bool c = worst_c <= bound;

    report(7, a && b && c,
           std::string("gradients: (a) ") + (a ? "ok" : "bad") + " worst relative error " + fmt("%.3g", worst_rel) +
               " over 10 models (tol 1e-5); (b) " + (b ? "ok" : "bad") + " FD of sin at 0 = " + fmt("%.7f", sin_fd) +
               "; (c) " + (c ? "ok" : "bad") + " worst |FD + sin| " + fmt("%.3g", worst_c) + " (bound " +
               fmt("%.3g", bound) + ")");
}

void criterion_8() {
    const std::uint64_t n4 = param_count(4);
    const std::uint64_t n16 = param_count(16);
    report(8, n4 == 512 && n16 == 8589934592ULL,
           "param_count(4) = " + std::to_string(n4) + ", param_count(16) = " + std::to_string(n16));
}

ComplexMatrix dense_multiplexor(GateKind axis, const std::vector<double>& angles, int n_wires) {
    // Target is the first wire, select wires follow in order.
    const Eigen::Index half = Eigen::Index{1} << (n_wires - 1);
    ComplexMatrix out = ComplexMatrix::Zero(2 * half, 2 * half);
    for (Eigen::Index p = 0; p < half; ++p) {
        const ComplexMatrix r = axis == GateKind::RY ? ry_matrix(angles[static_cast<std::size_t>(p)])
                                                     : rz_matrix(angles[static_cast<std::size_t>(p)]);
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) out(a * half + p, b * half + p) = r(a, b);
        }
    }
    return out;
}

void criterion_9() {
    std::mt19937_64 rng(909);
    std::uniform_real_distribution<double> ang(-kPi, kPi);
    double worst = 0;
    for (int n = 1; n <= 2; ++n) {
        for (int trial = 0; trial < 50; ++trial) {
            const StateVector s = random_state(n, rng);
            const ComplexMatrix g = random_unitary(2, rng);
            for (int w = 0; w < n; ++w) {
                worst = std::max(worst, max_abs_diff(apply_1q(s, g, w).amplitudes(), dense_1q(g, w, n) * s.amplitudes()));
            }
            if (n == 2) {
                for (auto [c, t] : {std::pair{0, 1}, std::pair{1, 0}}) {
                    worst = std::max(worst, max_abs_diff(apply_cnot(s, c, t).amplitudes(),
                                                         dense_cnot(c, t, n) * s.amplitudes()));
                }
            }
            for (GateKind axis : {GateKind::RY, GateKind::RZ}) {
                std::vector<double> angles(std::size_t{1} << (n - 1));
                for (double& a : angles) a = ang(rng);
                std::vector<int> select;
                for (int w = 1; w < n; ++w) select.push_back(w);
                const CompiledCircuit c{n, multiplexed_rotation_circuit(axis, angles, select, 0), 0.0};
                worst = std::max(worst, max_abs_diff(run_circuit(c, s).amplitudes(),
                                                     dense_multiplexor(axis, angles, n) * s.amplitudes()));
            }
        }
    }
    report(9, worst <= kOracleTol,
           "simulator vs dense matrices, n=1,2, 50 states each: worst amplitude error " + fmt("%.3g", worst) +
               " (tol 1e-12)");
}

}  // namespace

int main() {
    std::printf("acceptance: training 3 variants x %d seeds (Schur projection, 50 epochs) first\n", kSeeds);
    std::fflush(stdout);
    const auto a = train_seeds(Variant::A);
    const auto b = train_seeds(Variant::B);
    const auto c = train_seeds(Variant::C);
    const std::size_t ia = best_index(a), ib = best_index(b), ic = best_index(c);
    const double best_a = a[ia].result.report.test_accuracy;
    const double best_b = b[ib].result.report.test_accuracy;
    const double best_c = c[ic].result.report.test_accuracy;
    double max_seconds = 0;
    for (const auto* runs : {&a, &b, &c}) {
        for (const auto& r : *runs) max_seconds = std::max(max_seconds, r.seconds);
    }

    criteria_1_and_2();
    criterion_3(a[ia].result.model);
    report(4, best_a >= kModelATarget,
           "Model A best test accuracy " + fmt("%.4f", best_a) + " (need >= 0.97; seeds " + accuracies(a) +
               "; slowest run " + fmt("%.0f", max_seconds) + " s)");
    const bool floor_ok = best_b >= kModelBCTarget && best_c >= kModelBCTarget;
    const bool order_ok = best_a > best_b && best_a > best_c;
    report(5, floor_ok && order_ok,
           "Model B best " + fmt("%.4f", best_b) + " (seeds " + accuracies(b) + "), Model C best " +
               fmt("%.4f", best_c) + " (seeds " + accuracies(c) + "), need >= 0.85 [" +
               (floor_ok ? "ok" : "bad") + "] and A > B, A > C [" + (order_ok ? "ok" : "bad") + "]");
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();

    std::printf("acceptance: %d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
