#include "qarch/hybrid_net.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>

namespace qarch {

std::string to_string(Variant v) {
    switch (v) {
        case Variant::A: return "A";
        case Variant::B: return "B";
        case Variant::C: return "C";
    }
    return "A";
}

Variant variant_from_string(std::string_view name) {
    if (name == "A" || name == "a") return Variant::A;
    if (name == "B" || name == "b") return Variant::B;
    if (name == "C" || name == "c") return Variant::C;
    throw std::invalid_argument("unknown model variant '" + std::string(name) + "' (expected A|B|C)");
}

// ---------------------------------------------------------------- QuantumLayer

QuantumLayer::QuantumLayer(Kind kind, int n_wires, std::vector<RealMatrix> re, std::vector<RealMatrix> im)
    : kind_(kind), n_wires_(n_wires), re_(std::move(re)), im_(std::move(im)) {
    if (n_wires < 1 || n_wires > kMaxWires) throw DimensionError("QuantumLayer: bad wire count");
    const std::size_t blocks = kind == Kind::FULL ? 1 : static_cast<std::size_t>(n_wires);
    const Eigen::Index dim = kind == Kind::FULL ? (Eigen::Index{1} << n_wires) : 2;
    if (re_.size() != blocks || im_.size() != blocks) throw DimensionError("QuantumLayer: wrong block count");
    for (std::size_t b = 0; b < blocks; ++b) {
        if (re_[b].rows() != dim || re_[b].cols() != dim || im_[b].rows() != dim || im_[b].cols() != dim) {
            throw DimensionError("QuantumLayer: wrong block dimension");
        }
    }
}

QuantumLayer QuantumLayer::identity(Kind kind, int n_wires) {
    const std::size_t blocks = kind == Kind::FULL ? 1 : static_cast<std::size_t>(n_wires);
    const Eigen::Index dim = kind == Kind::FULL ? (Eigen::Index{1} << n_wires) : 2;
    return {kind, n_wires, std::vector<RealMatrix>(blocks, RealMatrix::Identity(dim, dim)),
            std::vector<RealMatrix>(blocks, RealMatrix::Zero(dim, dim))};
}

QuantumLayer QuantumLayer::full(const ComplexMatrix& u) {
    if (u.rows() != u.cols() || !std::has_single_bit(static_cast<unsigned long long>(u.rows()))) {
        throw DimensionError("QuantumLayer::full: need a 2^n x 2^n matrix");
    }
    const int n = std::countr_zero(static_cast<unsigned long long>(u.rows()));
    return {Kind::FULL, n, {u.real()}, {u.imag()}};
}

QuantumLayer QuantumLayer::per_wire(const std::vector<ComplexMatrix>& blocks) {
    std::vector<RealMatrix> re, im;
    for (const auto& b : blocks) {
        re.emplace_back(b.real());
        im.emplace_back(b.imag());
    }
    return {Kind::PER_WIRE, static_cast<int>(blocks.size()), std::move(re), std::move(im)};
}

ComplexMatrix QuantumLayer::block(std::size_t index) const {
    ComplexMatrix m(re_.at(index).rows(), re_.at(index).cols());
    m.real() = re_[index];
    m.imag() = im_[index];
    return m;
}

void QuantumLayer::set_block(std::size_t index, const ComplexMatrix& m) {
    if (m.rows() != block_dim() || m.cols() != block_dim()) throw DimensionError("QuantumLayer: wrong block dimension");
    re_.at(index) = m.real();
    im_.at(index) = m.imag();
}

StateVector QuantumLayer::apply(StateVector state) const {
    if (state.n_wires() != n_wires_) throw DimensionError("QuantumLayer::apply: wire count mismatch");
    if (kind_ == Kind::FULL) {
        state.amplitudes() = block(0) * state.amplitudes();
        return state;
    }
    for (std::size_t w = 0; w < re_.size(); ++w) {
        detail::apply_1q_rows(state.amplitudes(), n_wires_, block(w), static_cast<int>(w));
    }
    return state;
}

void QuantumLayer::project(const MuConfig& mu) {
    for (std::size_t b = 0; b < re_.size(); ++b) set_block(b, unitarize(block(b), mu));
}

bool QuantumLayer::is_unitary(double tol) const {
    for (std::size_t b = 0; b < re_.size(); ++b) {
        if (!qarch::is_unitary(block(b), tol)) return false;
    }
    return true;
}

// ---------------------------------------------------------------- model setup

HybridModel init_model(Variant variant, std::uint64_t seed, const MuConfig& mu, int n_wires) {
    std::mt19937_64 rng(seed);
    const auto uniform_layer = [&](Eigen::Index out, Eigen::Index in) {
        const double bound = 1.0 / std::sqrt(static_cast<double>(in));
        std::uniform_real_distribution<double> dist(-bound, bound);
        DenseLayer layer{RealMatrix(out, in), RealVector(out)};
        for (Eigen::Index r = 0; r < out; ++r) {
            for (Eigen::Index c = 0; c < in; ++c) layer.weights(r, c) = dist(rng);
        }
        for (Eigen::Index r = 0; r < out; ++r) layer.bias(r) = dist(rng);
        return layer;
    };

    HybridModel model;
    model.variant = variant;
    model.n_wires = n_wires;
    model.l1 = uniform_layer(n_wires, 2);
    model.scale = EncodingScale{std::numbers::pi / 2, variant == Variant::C};

    const auto kind = variant == Variant::B ? QuantumLayer::Kind::PER_WIRE : QuantumLayer::Kind::FULL;
    const std::size_t blocks = kind == QuantumLayer::Kind::FULL ? 1 : static_cast<std::size_t>(n_wires);
    const Eigen::Index dim = kind == QuantumLayer::Kind::FULL ? (Eigen::Index{1} << n_wires) : 2;
    std::normal_distribution<double> gauss(0.0, 1.0 / std::sqrt(static_cast<double>(dim)));
    std::vector<RealMatrix> re(blocks, RealMatrix(dim, dim));
    std::vector<RealMatrix> im(blocks, RealMatrix(dim, dim));
    for (auto* part : {&re, &im}) {
        for (auto& m : *part) {
            for (Eigen::Index r = 0; r < dim; ++r) {
                for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = gauss(rng);
            }
        }
    }
    model.quantum = QuantumLayer(kind, n_wires, std::move(re), std::move(im));
    model.l2 = uniform_layer(2, n_wires);
    model.quantum.project(mu);
    return model;
}

// ---------------------------------------------------------------- forward

StateVector encode_angles(const RealVector& angles) {
    std::vector<ComplexVector> wires;
    wires.reserve(static_cast<std::size_t>(angles.size()));
    for (Eigen::Index w = 0; w < angles.size(); ++w) {
        ComplexVector v(2);
        v << std::cos(angles(w) / 2), std::sin(angles(w) / 2);
        wires.push_back(std::move(v));
    }
    return product_state(wires);
}

ForwardResult forward(const HybridModel& model, const Eigen::Vector2d& x) {
    return forward(model, x, [&](StateVector s) { return model.quantum.apply(std::move(s)); });
}

ForwardResult forward(const HybridModel& model, const Eigen::Vector2d& x, const QuantumExecutor& quantum) {
    ForwardCache cache;
    cache.input = x;
    cache.activation = model.l1.apply(x).array().tanh();
    cache.angles = model.scale.alpha * cache.activation;
    cache.expectations = expectations_z(quantum(encode_angles(cache.angles)));
    cache.logits = model.l2.apply(cache.expectations).array().tanh();
    if (!cache.logits.allFinite() || !cache.expectations.allFinite()) {
        throw NumericError("forward: non-finite activation");
    }
    cache.fingerprint = parameter_fingerprint(model);
    RealVector logits = cache.logits;
    return {std::move(logits), std::move(cache)};
}

RealVector softmax(const RealVector& logits) {
    const RealVector shifted = (logits.array() - logits.maxCoeff()).exp();
    return shifted / shifted.sum();
}

double cross_entropy(const RealVector& logits, int label) {
    if (label < 0 || label >= logits.size()) throw std::invalid_argument("cross_entropy: label out of range");
    const double mx = logits.maxCoeff();
    const double lse = mx + std::log((logits.array() - mx).exp().sum());
    return lse - logits(label);
}

int predict_class(const RealVector& logits) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < logits.size(); ++i) {
        if (logits(i) > logits(best)) best = i;
    }
    return static_cast<int>(best);
}

// ---------------------------------------------------------------- gradients

double central_difference(const std::function<double(double)>& f, double at, double delta) {
    if (!(delta > 0)) throw std::invalid_argument("central_difference: delta must be positive");
    return (f(at + delta / 2) - f(at - delta / 2)) / delta;
}

QuantumGrads quantum_fd_grads(const QuantumLayer& layer, const RealVector& angles, const RealVector& upstream,
                              const FdConfig& cfg) {
    if (!(cfg.delta_theta > 0)) throw std::invalid_argument("quantum_fd_grads: delta_theta must be positive");
    const int n = layer.n_wires();
    if (angles.size() != n || upstream.size() != n) throw DimensionError("quantum_fd_grads: expected one value per wire");
    const double half = cfg.delta_theta / 2;
    const auto weighted = [&](const StateVector& s) { return upstream.dot(expectations_z(s)); };

    QuantumGrads g;
    const Eigen::Index dim = layer.block_dim();
    g.re.assign(layer.block_count(), RealMatrix::Zero(dim, dim));
    g.im.assign(layer.block_count(), RealMatrix::Zero(dim, dim));
    g.angles = RealVector::Zero(n);

    const StateVector encoded = encode_angles(angles);
    if (layer.kind() == QuantumLayer::Kind::FULL) {
        // M is applied linearly, so (M + h E_ij) psi = M psi + h psi_j e_i:
        // only amplitude i of the output moves.
        StateVector out = layer.apply(encoded);
        for (int part = 0; part < 2; ++part) {
            const Complex unit = part == 0 ? Complex(1, 0) : Complex(0, 1);
            auto& grad = part == 0 ? g.re[0] : g.im[0];
            for (Eigen::Index i = 0; i < dim; ++i) {
                const Complex saved = out.amplitudes()(i);
                for (Eigen::Index j = 0; j < dim; ++j) {
                    const Complex step = half * unit * encoded.amplitudes()(j);
                    out.amplitudes()(i) = saved + step;
                    const double plus = weighted(out);
                    out.amplitudes()(i) = saved - step;
                    const double minus = weighted(out);
                    grad(i, j) = (plus - minus) / cfg.delta_theta;
                }
                out.amplitudes()(i) = saved;
            }
        }
    } else {
        QuantumLayer probe = layer;
        for (std::size_t b = 0; b < layer.block_count(); ++b) {
            for (int part = 0; part < 2; ++part) {
                auto& grad = part == 0 ? g.re[b] : g.im[b];
                for (Eigen::Index i = 0; i < dim; ++i) {
                    for (Eigen::Index j = 0; j < dim; ++j) {
                        double& entry = part == 0 ? probe.re(b)(i, j) : probe.im(b)(i, j);
                        const double saved = entry;
                        entry = saved + half;
                        const double plus = weighted(probe.apply(encoded));
                        entry = saved - half;
                        const double minus = weighted(probe.apply(encoded));
                        entry = saved;
                        grad(i, j) = (plus - minus) / cfg.delta_theta;
                    }
                }
            }
        }
    }
    RealVector shifted = angles;
    for (int w = 0; w < n; ++w) {
        shifted(w) = angles(w) + half;
        const double plus = weighted(layer.apply(encode_angles(shifted)));
        shifted(w) = angles(w) - half;
        const double minus = weighted(layer.apply(encode_angles(shifted)));
        shifted(w) = angles(w);
        g.angles(w) = (plus - minus) / cfg.delta_theta;
    }
    return g;
}

ModelGradients ModelGradients::zeros_like(const HybridModel& model) {
    ModelGradients g;
    g.l1_w = RealMatrix::Zero(model.l1.weights.rows(), model.l1.weights.cols());
    g.l1_b = RealVector::Zero(model.l1.bias.size());
    const Eigen::Index dim = model.quantum.block_dim();
    g.q_re.assign(model.quantum.block_count(), RealMatrix::Zero(dim, dim));
    g.q_im.assign(model.quantum.block_count(), RealMatrix::Zero(dim, dim));
    g.l2_w = RealMatrix::Zero(model.l2.weights.rows(), model.l2.weights.cols());
    g.l2_b = RealVector::Zero(model.l2.bias.size());
    return g;
}

ModelGradients& ModelGradients::operator+=(const ModelGradients& o) {
    l1_w += o.l1_w;
    l1_b += o.l1_b;
    alpha += o.alpha;
    for (std::size_t b = 0; b < q_re.size(); ++b) {
        q_re[b] += o.q_re.at(b);
        q_im[b] += o.q_im.at(b);
    }
    l2_w += o.l2_w;
    l2_b += o.l2_b;
    return *this;
}

ModelGradients& ModelGradients::operator*=(double s) {
    l1_w *= s;
    l1_b *= s;
    alpha *= s;
    for (auto& m : q_re) m *= s;
    for (auto& m : q_im) m *= s;
    l2_w *= s;
    l2_b *= s;
    return *this;
}

ModelGradients backward(const HybridModel& model, const ForwardCache& cache, int label, const FdConfig& cfg) {
    if (cache.fingerprint != parameter_fingerprint(model)) {
        throw std::logic_error("backward: cache was produced by different model parameters");
    }
    RealVector onehot = RealVector::Zero(cache.logits.size());
    onehot(label) = 1.0;
    const RealVector d_logits = softmax(cache.logits) - onehot;
    const RealVector d_pre2 = d_logits.array() * (1.0 - cache.logits.array().square());

    ModelGradients g;
    g.l2_w = d_pre2 * cache.expectations.transpose();
    g.l2_b = d_pre2;
    const RealVector upstream = model.l2.weights.transpose() * d_pre2;

    auto q = quantum_fd_grads(model.quantum, cache.angles, upstream, cfg);
    g.q_re = std::move(q.re);
    g.q_im = std::move(q.im);

    g.alpha = model.scale.learnable ? q.angles.dot(cache.activation) : 0.0;
    const RealVector d_act = model.scale.alpha * q.angles;
    const RealVector d_pre1 = d_act.array() * (1.0 - cache.activation.array().square());
    g.l1_w = d_pre1 * cache.input.transpose();
    g.l1_b = d_pre1;
    return g;
}

// ---------------------------------------------------------------- flattening

namespace {

template <typename Visit>
void visit_parameters(const HybridModel& model, Visit&& visit) {
    const auto row_major = [&](const RealMatrix& m) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            for (Eigen::Index c = 0; c < m.cols(); ++c) visit(m(r, c));
        }
    };
    row_major(model.l1.weights);
    for (Eigen::Index i = 0; i < model.l1.bias.size(); ++i) visit(model.l1.bias(i));
    if (model.scale.learnable) visit(model.scale.alpha);
    for (std::size_t b = 0; b < model.quantum.block_count(); ++b) row_major(model.quantum.re(b));
    for (std::size_t b = 0; b < model.quantum.block_count(); ++b) row_major(model.quantum.im(b));
    row_major(model.l2.weights);
    for (Eigen::Index i = 0; i < model.l2.bias.size(); ++i) visit(model.l2.bias(i));
}

template <typename Visit>
void visit_parameters_mut(HybridModel& model, Visit&& visit) {
    const auto row_major = [&](RealMatrix& m) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            for (Eigen::Index c = 0; c < m.cols(); ++c) visit(m(r, c));
        }
    };
    row_major(model.l1.weights);
    for (Eigen::Index i = 0; i < model.l1.bias.size(); ++i) visit(model.l1.bias(i));
    if (model.scale.learnable) visit(model.scale.alpha);
    for (std::size_t b = 0; b < model.quantum.block_count(); ++b) row_major(model.quantum.re(b));
    for (std::size_t b = 0; b < model.quantum.block_count(); ++b) row_major(model.quantum.im(b));
    row_major(model.l2.weights);
    for (Eigen::Index i = 0; i < model.l2.bias.size(); ++i) visit(model.l2.bias(i));
}

}  // namespace

RealVector flatten_parameters(const HybridModel& model) {
    std::vector<double> out;
    visit_parameters(model, [&](double v) { out.push_back(v); });
    return Eigen::Map<const RealVector>(out.data(), static_cast<Eigen::Index>(out.size()));
}

void assign_parameters(HybridModel& model, const RealVector& flat) {
    Eigen::Index k = 0;
    visit_parameters_mut(model, [&](double& v) {
        if (k >= flat.size()) throw DimensionError("assign_parameters: too few values");
        v = flat(k++);
    });
    if (k != flat.size()) throw DimensionError("assign_parameters: too many values");
}

RealVector flatten_gradients(const HybridModel& model, const ModelGradients& grads) {
    HybridModel shaped = model;
    shaped.l1.weights = grads.l1_w;
    shaped.l1.bias = grads.l1_b;
    shaped.scale.alpha = grads.alpha;
    for (std::size_t b = 0; b < shaped.quantum.block_count(); ++b) {
        shaped.quantum.re(b) = grads.q_re.at(b);
        shaped.quantum.im(b) = grads.q_im.at(b);
    }
    shaped.l2.weights = grads.l2_w;
    shaped.l2.bias = grads.l2_b;
    return flatten_parameters(shaped);
}

std::uint64_t parameter_fingerprint(const HybridModel& model) {
    std::uint64_t h = 1469598103934665603ULL;
    const auto mix = [&](double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        for (int i = 0; i < 8; ++i) {
            h ^= (bits >> (8 * i)) & 0xffU;
            h *= 1099511628211ULL;
        }
    };
    visit_parameters(model, mix);
    mix(model.scale.alpha);
    return h;
}

// ---------------------------------------------------------------- ADAM

AdamState make_adam(Eigen::Index n_params, double lr) {
    if (!(lr >= 0)) throw std::invalid_argument("make_adam: learning rate must be non-negative");
    AdamState s;
    s.lr = lr;
    s.m = RealVector::Zero(n_params);
    s.v = RealVector::Zero(n_params);
    return s;
}

RealVector adam_step(const RealVector& params, const RealVector& grads, AdamState& state) {
    if (params.size() != grads.size() || params.size() != state.m.size() || params.size() != state.v.size()) {
        throw DimensionError("adam_step: shape mismatch");
    }
    ++state.step;
    state.m = state.beta1 * state.m + (1 - state.beta1) * grads;
    state.v = state.beta2 * state.v + (1 - state.beta2) * grads.cwiseAbs2();
    const double c1 = 1 - std::pow(state.beta1, static_cast<double>(state.step));
    const double c2 = 1 - std::pow(state.beta2, static_cast<double>(state.step));
    const RealVector m_hat = state.m / c1;
    const RealVector v_hat = state.v / c2;
    return params.array() - state.lr * m_hat.array() / (v_hat.array().sqrt() + state.eps);
}

// ---------------------------------------------------------------- checkpoints

namespace {

nlohmann::json rows_json(const RealMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        std::vector<double> row(static_cast<std::size_t>(m.cols()));
        for (Eigen::Index c = 0; c < m.cols(); ++c) row[static_cast<std::size_t>(c)] = m(r, c);
        rows.push_back(row);
    }
    return rows;
}

RealMatrix rows_from_json(const nlohmann::json& j, Eigen::Index rows, Eigen::Index cols, const char* key) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
        throw DimensionError(std::string("checkpoint: '") + key + "' has the wrong row count");
    }
    RealMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto row = j[static_cast<std::size_t>(r)].get<std::vector<double>>();
        if (static_cast<Eigen::Index>(row.size()) != cols) {
            throw DimensionError(std::string("checkpoint: '") + key + "' has the wrong column count");
        }
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)];
    }
    return m;
}

std::vector<double> flat_json(const RealMatrix& m) {
    std::vector<double> out;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
    }
    return out;
}

RealMatrix flat_from_json(const nlohmann::json& j, Eigen::Index dim, const char* key) {
    const auto v = j.get<std::vector<double>>();
    if (static_cast<Eigen::Index>(v.size()) != dim * dim) {
        throw DimensionError(std::string("checkpoint: '") + key + "' has the wrong entry count");
    }
    RealMatrix m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = v[static_cast<std::size_t>(r * dim + c)];
    }
    return m;
}

}  // namespace

nlohmann::json checkpoint_to_json(const HybridModel& model) {
    nlohmann::json j;
    j["variant"] = to_string(model.variant);
    j["n_wires"] = model.n_wires;
    j["l1_w"] = rows_json(model.l1.weights);
    j["l1_b"] = std::vector<double>(model.l1.bias.begin(), model.l1.bias.end());
    j["l2_w"] = rows_json(model.l2.weights);
    j["l2_b"] = std::vector<double>(model.l2.bias.begin(), model.l2.bias.end());
    j["alpha"] = model.scale.alpha;
    if (model.quantum.kind() == QuantumLayer::Kind::FULL) {
        j["q_re"] = flat_json(model.quantum.re(0));
        j["q_im"] = flat_json(model.quantum.im(0));
    } else {
        nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
        for (std::size_t b = 0; b < model.quantum.block_count(); ++b) {
            re.push_back(flat_json(model.quantum.re(b)));
            im.push_back(flat_json(model.quantum.im(b)));
        }
        j["q_re"] = re;
        j["q_im"] = im;
    }
    return j;
}

HybridModel checkpoint_from_json(const nlohmann::json& j) {
    HybridModel model;
    model.variant = variant_from_string(j.at("variant").get<std::string>());
    model.n_wires = j.at("n_wires").get<int>();
    const int n = model.n_wires;
    if (n < 1 || n > kMaxWires) throw DimensionError("checkpoint: bad n_wires");
    model.l1.weights = rows_from_json(j.at("l1_w"), n, 2, "l1_w");
    const auto l1_b = j.at("l1_b").get<std::vector<double>>();
    const auto l2_b = j.at("l2_b").get<std::vector<double>>();
    if (static_cast<int>(l1_b.size()) != n || l2_b.size() != 2) throw DimensionError("checkpoint: bias size mismatch");
    model.l1.bias = Eigen::Map<const RealVector>(l1_b.data(), n);
    model.l2.weights = rows_from_json(j.at("l2_w"), 2, n, "l2_w");
    model.l2.bias = Eigen::Map<const RealVector>(l2_b.data(), 2);
    model.scale = EncodingScale{j.at("alpha").get<double>(), model.variant == Variant::C};

    if (model.variant == Variant::B) {
        const auto& re = j.at("q_re");
        const auto& im = j.at("q_im");
        if (!re.is_array() || static_cast<int>(re.size()) != n || !im.is_array() || static_cast<int>(im.size()) != n) {
            throw DimensionError("checkpoint: per-wire variant needs one 2x2 block per wire");
        }
        std::vector<RealMatrix> re_blocks, im_blocks;
        for (int w = 0; w < n; ++w) {
            re_blocks.push_back(flat_from_json(re[static_cast<std::size_t>(w)], 2, "q_re"));
            im_blocks.push_back(flat_from_json(im[static_cast<std::size_t>(w)], 2, "q_im"));
        }
        model.quantum = QuantumLayer(QuantumLayer::Kind::PER_WIRE, n, std::move(re_blocks), std::move(im_blocks));
    } else {
        const Eigen::Index dim = Eigen::Index{1} << n;
        model.quantum = QuantumLayer(QuantumLayer::Kind::FULL, n, {flat_from_json(j.at("q_re"), dim, "q_re")},
                                     {flat_from_json(j.at("q_im"), dim, "q_im")});
    }
    if (!flatten_parameters(model).allFinite() || !std::isfinite(model.scale.alpha)) {
        throw NumericError("checkpoint: non-finite parameter");
    }
    return model;
}

void write_checkpoint(const std::string& path, const HybridModel& model) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << checkpoint_to_json(model).dump(1) << '\n';
    if (!out) throw std::runtime_error("failed writing " + path);
}

HybridModel read_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    return checkpoint_from_json(nlohmann::json::parse(in));
}

}  // namespace qarch
