#pragma once

// Hybrid classifier: dense(2->n) -> tanh -> alpha scale -> Ry encoding ->
// learned quantum layer -> per-wire <Z> -> dense(n->2) -> tanh.

#include "qarch/gate_compiler.hpp"
#include "qarch/linalg.hpp"
#include "qarch/statevector.hpp"
#include "qarch/unitarize.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace qarch {

enum class Variant { A, B, C };

std::string to_string(Variant v);
Variant variant_from_string(std::string_view name);

struct DenseLayer {
    RealMatrix weights;  // out x in
    RealVector bias;

    RealVector apply(const RealVector& x) const { return weights * x + bias; }
};

struct EncodingScale {
    double alpha = std::numbers::pi / 2;
    bool learnable = false;
};

/// Either one 2^n x 2^n block acting on all wires, or one 2x2 block per
/// wire. Real and imaginary parts are stored as independent parameters.
class QuantumLayer {
public:
    enum class Kind { FULL, PER_WIRE };

    QuantumLayer() = default;
    QuantumLayer(Kind kind, int n_wires, std::vector<RealMatrix> re, std::vector<RealMatrix> im);

    static QuantumLayer identity(Kind kind, int n_wires);
    static QuantumLayer full(const ComplexMatrix& u);
    static QuantumLayer per_wire(const std::vector<ComplexMatrix>& blocks);

    Kind kind() const { return kind_; }
    int n_wires() const { return n_wires_; }
    std::size_t block_count() const { return re_.size(); }
    Eigen::Index block_dim() const { return re_.empty() ? 0 : re_.front().rows(); }

    const RealMatrix& re(std::size_t block) const { return re_.at(block); }
    const RealMatrix& im(std::size_t block) const { return im_.at(block); }
    RealMatrix& re(std::size_t block) { return re_.at(block); }
    RealMatrix& im(std::size_t block) { return im_.at(block); }

    ComplexMatrix block(std::size_t index) const;
    void set_block(std::size_t index, const ComplexMatrix& m);

    /// Applies the stored matrices as they are (no projection).
    StateVector apply(StateVector state) const;

    void project(const MuConfig& mu);
    bool is_unitary(double tol) const;

private:
    Kind kind_ = Kind::FULL;
    int n_wires_ = 0;
    std::vector<RealMatrix> re_;
    std::vector<RealMatrix> im_;
};

struct HybridModel {
    Variant variant = Variant::A;
    int n_wires = 4;
    DenseLayer l1;
    EncodingScale scale;
    QuantumLayer quantum;
    DenseLayer l2;
};

HybridModel init_model(Variant variant, std::uint64_t seed, const MuConfig& mu, int n_wires = 4);

/// Everything backward() needs from one forward pass.
struct ForwardCache {
    RealVector input;
    RealVector activation;    // tanh(l1(x))
    RealVector angles;        // alpha * activation
    RealVector expectations;  // <Z> per wire
    RealVector logits;        // tanh(l2(expectations))
    std::uint64_t fingerprint = 0;
};

struct ForwardResult {
    RealVector logits;
    ForwardCache cache;
};

/// Replaces the matrix quantum layer, e.g. with a compiled gate sequence.
using QuantumExecutor = std::function<StateVector(StateVector)>;

StateVector encode_angles(const RealVector& angles);

ForwardResult forward(const HybridModel& model, const Eigen::Vector2d& x);
ForwardResult forward(const HybridModel& model, const Eigen::Vector2d& x, const QuantumExecutor& quantum);

double cross_entropy(const RealVector& logits, int label);
RealVector softmax(const RealVector& logits);

/// Argmax with ties going to class 0.
int predict_class(const RealVector& logits);

/// Central difference [f(p + d/2) - f(p - d/2)] / d.
double central_difference(const std::function<double(double)>& f, double at, double delta);

struct FdConfig {
    double delta_theta = std::numbers::pi / 10;
};

struct QuantumGrads {
    std::vector<RealMatrix> re;
    std::vector<RealMatrix> im;
    RealVector angles;
};

/// Central-difference gradients of sum_w upstream_w * <Z_w> with respect to
/// every real entry, every imaginary entry and every encoding angle.
/// Perturbed matrices are applied as-is, without re-projection.
QuantumGrads quantum_fd_grads(const QuantumLayer& layer, const RealVector& angles, const RealVector& upstream,
                              const FdConfig& cfg);

struct ModelGradients {
    RealMatrix l1_w;
    RealVector l1_b;
    double alpha = 0;
    std::vector<RealMatrix> q_re;
    std::vector<RealMatrix> q_im;
    RealMatrix l2_w;
    RealVector l2_b;

    static ModelGradients zeros_like(const HybridModel& model);
    ModelGradients& operator+=(const ModelGradients& other);
    ModelGradients& operator*=(double s);
};

/// Gradient of cross_entropy(forward(x).logits, label). Classical parts are
/// analytic; the quantum part uses quantum_fd_grads.
ModelGradients backward(const HybridModel& model, const ForwardCache& cache, int label, const FdConfig& cfg);

// Flat parameter order: l1_w (row-major), l1_b, alpha (if learnable),
// real blocks, imaginary blocks, l2_w (row-major), l2_b.
RealVector flatten_parameters(const HybridModel& model);
void assign_parameters(HybridModel& model, const RealVector& flat);
RealVector flatten_gradients(const HybridModel& model, const ModelGradients& grads);

std::uint64_t parameter_fingerprint(const HybridModel& model);

struct AdamState {
    long step = 0;
    RealVector m;
    RealVector v;
    double lr = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

AdamState make_adam(Eigen::Index n_params, double lr);

/// One bias-corrected ADAM update; advances `state`.
RealVector adam_step(const RealVector& params, const RealVector& grads, AdamState& state);

nlohmann::json checkpoint_to_json(const HybridModel& model);
HybridModel checkpoint_from_json(const nlohmann::json& j);
void write_checkpoint(const std::string& path, const HybridModel& model);
HybridModel read_checkpoint(const std::string& path);

}  // namespace qarch
