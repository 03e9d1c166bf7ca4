#pragma once

#include "qarch/gate_compiler.hpp"
#include "qarch/hybrid_net.hpp"
#include "qarch/moons.hpp"
#include "qarch/unitarize.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace qarch {

struct TrainConfig {
    Variant variant = Variant::A;
    std::uint64_t seed = 0;
    double lr = 0.01;
    double delta_theta = std::numbers::pi / 10;
    std::size_t batch_size = 100;
    int max_epochs = 50;
    MuConfig mu{};
    double early_stop_accuracy = 1.0;
    SplitSpec sizes{};

    void validate() const;
};

struct BatchRecord {
    int epoch;
    int batch;
    double loss;
    double train_accuracy;
};

struct TrainReport {
    std::vector<BatchRecord> batches;
    int best_epoch = -1;
    int best_batch = -1;
    double best_train_accuracy = 0;
    double test_accuracy = 0;
    double validation_accuracy = 0;
    bool early_stopped = false;
    std::optional<std::string> aborted;  // reason, when a numeric failure cut training short
};

struct TrainResult {
    HybridModel model;  // best checkpoint
    TrainReport report;
};

/// Batch loop: forward, mean cross-entropy, backward, ADAM, then projection
/// of every quantum block. Returns the checkpoint with the best training-batch
/// accuracy (earliest on ties).
TrainResult train(const TrainConfig& config, const DataSplits& data);

/// Generates the two-moons splits from config.seed and trains on them.
TrainResult train(const TrainConfig& config);

double evaluate(const HybridModel& model, const Dataset& d);
double evaluate(const HybridModel& model, const Dataset& d, const QuantumExecutor& quantum);

/// 2^(2n+1): real and imaginary parts of a 2^n x 2^n matrix.
std::uint64_t param_count(int n_wires);

struct CompiledModel {
    std::vector<CompiledCircuit> circuits;  // one per stored quantum block
    std::vector<double> residuals;          // ||reconstruct - block||_F, exact phase
};

CompiledModel compile_model(const HybridModel& model);

/// Executes the compiled circuits in place of the model's matrix layer.
QuantumExecutor compiled_executor(const HybridModel& model, const CompiledModel& compiled);

void write_metrics_csv(const std::filesystem::path& path, const TrainReport& report);

}  // namespace qarch
