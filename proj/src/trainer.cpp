#include "qarch/trainer.hpp"

#include <cstdio>
#include <fstream>
#include <random>

namespace qarch {

void TrainConfig::validate() const {
    if (!(lr >= 0)) throw std::invalid_argument("TrainConfig: lr must be non-negative");
    if (!(delta_theta > 0)) throw std::invalid_argument("TrainConfig: delta_theta must be positive");
    if (batch_size < 1) throw std::invalid_argument("TrainConfig: batch_size must be >= 1");
    if (max_epochs < 1) throw std::invalid_argument("TrainConfig: max_epochs must be >= 1");
    if (!(mu.unitary_tol > 0)) throw std::invalid_argument("TrainConfig: unitary_tol must be positive");
    if (!(early_stop_accuracy >= 0 && early_stop_accuracy <= 1)) {
        throw std::invalid_argument("TrainConfig: early_stop_accuracy must be in [0, 1]");
    }
}

namespace {

std::uint64_t epoch_seed(std::uint64_t seed, int epoch) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(epoch), 0x6d6f6f6eU};
    std::uint32_t words[2];
    seq.generate(words, words + 2);
    return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

}  // namespace

TrainResult train(const TrainConfig& config, const DataSplits& data) {
    config.validate();
    if (data.train.size() == 0) throw std::invalid_argument("train: empty training set");

    HybridModel model = init_model(config.variant, config.seed, config.mu);
    const FdConfig fd{config.delta_theta};
    AdamState adam = make_adam(flatten_parameters(model).size(), config.lr);

    TrainResult result{model, {}};
    TrainReport& report = result.report;
    bool have_best = false;

    for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
        const auto epoch_batches = batches(data.train, config.batch_size, epoch_seed(config.seed, epoch));
        for (std::size_t b = 0; b < epoch_batches.size(); ++b) {
            const Dataset& batch = epoch_batches[b];
            try {
                ModelGradients grads = ModelGradients::zeros_like(model);
                double loss = 0;
                std::size_t correct = 0;
                for (std::size_t i = 0; i < batch.size(); ++i) {
                    const auto fwd = forward(model, batch.points[i]);
                    loss += cross_entropy(fwd.logits, batch.labels[i]);
                    correct += predict_class(fwd.logits) == batch.labels[i];
                    grads += backward(model, fwd.cache, batch.labels[i], fd);
                }
                const double n = static_cast<double>(batch.size());
                loss /= n;
                grads *= 1.0 / n;
                if (!std::isfinite(loss)) throw NumericError("non-finite batch loss");
                const double accuracy = static_cast<double>(correct) / n;
                report.batches.push_back({epoch, static_cast<int>(b), loss, accuracy});

                if (!have_best || accuracy > report.best_train_accuracy) {
                    have_best = true;
                    result.model = model;
                    report.best_epoch = epoch;
                    report.best_batch = static_cast<int>(b);
                    report.best_train_accuracy = accuracy;
                }
                if (accuracy >= config.early_stop_accuracy) {
                    report.early_stopped = true;
                    break;
                }

                const RealVector flat = flatten_gradients(model, grads);
                if (!flat.allFinite()) throw NumericError("non-finite gradient");
                HybridModel next = model;
                assign_parameters(next, adam_step(flatten_parameters(model), flat, adam));
                next.quantum.project(config.mu);
                if (!next.quantum.is_unitary(config.mu.unitary_tol)) {
                    throw NumericError("quantum layer left the unitary manifold after projection");
                }
                model = std::move(next);
            } catch (const std::runtime_error& e) {
                report.aborted = std::string("epoch ") + std::to_string(epoch) + " batch " + std::to_string(b) +
                                 ": " + e.what();
                break;
            }
        }
        if (report.early_stopped || report.aborted) break;
    }

    report.test_accuracy = data.test.size() ? evaluate(result.model, data.test) : 0.0;
    report.validation_accuracy = data.validation.size() ? evaluate(result.model, data.validation) : 0.0;
    return result;
}

TrainResult train(const TrainConfig& config) {
    return train(config, make_moons_splits(config.sizes, config.seed));
}

double evaluate(const HybridModel& model, const Dataset& d) {
    return evaluate(model, d, [&](StateVector s) { return model.quantum.apply(std::move(s)); });
}

double evaluate(const HybridModel& model, const Dataset& d, const QuantumExecutor& quantum) {
    if (d.size() == 0) return 0.0;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        correct += predict_class(forward(model, d.points[i], quantum).logits) == d.labels[i];
    }
    return static_cast<double>(correct) / static_cast<double>(d.size());
}

std::uint64_t param_count(int n_wires) {
    if (n_wires < 1 || 2 * n_wires + 1 > 63) throw std::invalid_argument("param_count: n must be in [1, 31]");
    return std::uint64_t{1} << (2 * n_wires + 1);
}

CompiledModel compile_model(const HybridModel& model) {
    CompiledModel out;
    for (std::size_t b = 0; b < model.quantum.block_count(); ++b) {
        const ComplexMatrix u = model.quantum.block(b);
        const double r = unitarity_residual(u);
        if (!(r <= 1e-8)) {
            throw PreconditionError("compile_model: quantum block " + std::to_string(b) +
                                    " is not unitary (residual " + std::to_string(r) + ")");
        }
        CompiledCircuit c = qsd_compile(u);
        out.residuals.push_back((reconstruct(c) - u).norm());
        out.circuits.push_back(std::move(c));
    }
    return out;
}

QuantumExecutor compiled_executor(const HybridModel& model, const CompiledModel& compiled) {
    if (compiled.circuits.size() != model.quantum.block_count()) {
        throw DimensionError("compiled_executor: circuit count does not match the quantum layer");
    }
    const int n = model.n_wires;
    if (model.quantum.kind() == QuantumLayer::Kind::FULL) {
        if (compiled.circuits[0].n_wires != n) throw DimensionError("compiled_executor: wire count mismatch");
        return [circuit = compiled.circuits[0]](StateVector s) { return run_circuit(circuit, std::move(s)); };
    }
    // Per-wire circuits are single-wire programs relocated onto wire w.
    CompiledCircuit merged;
    merged.n_wires = n;
    for (std::size_t w = 0; w < compiled.circuits.size(); ++w) {
        const auto& c = compiled.circuits[w];
        if (c.n_wires != 1) throw DimensionError("compiled_executor: per-wire circuits must act on one wire");
        merged.global_phase += c.global_phase;
        for (GateOp g : c.gates) {
            g.wire = static_cast<int>(w);
            merged.gates.push_back(g);
        }
    }
    return [merged](StateVector s) { return run_circuit(merged, std::move(s)); };
}

void write_metrics_csv(const std::filesystem::path& path, const TrainReport& report) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "epoch,batch,loss,train_acc\n";
    char buf[128];
    for (const auto& r : report.batches) {
        std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g\n", r.epoch, r.batch, r.loss, r.train_accuracy);
        out << buf;
    }
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace qarch
