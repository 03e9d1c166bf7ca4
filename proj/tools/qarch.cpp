// qarch: data generation, training, compilation and decision-boundary export.
//
// Exit codes: 0 success, 1 usage error, 2 runtime or numeric error.

#include "qarch/boundary.hpp"
#include "qarch/gate_compiler.hpp"
#include "qarch/hybrid_net.hpp"
#include "qarch/moons.hpp"
#include "qarch/trainer.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using namespace qarch;

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw std::runtime_error("cannot create directory " + dir.string());
}

DataSplits load_splits(const fs::path& dir) {
    for (const char* name : {"train.csv", "test.csv", "valid.csv"}) {
        if (!fs::exists(dir / name)) {
            throw std::runtime_error("missing " + (dir / name).string() + " (run `qarch datagen` first)");
        }
    }
    return {read_csv(dir / "train.csv"), read_csv(dir / "test.csv"), read_csv(dir / "valid.csv")};
}

std::string fmt(double v, const char* spec = "%.6g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

// ------------------------------------------------------------------ datagen

struct DatagenArgs {
    std::uint64_t seed = 0;
    std::size_t n = 4000;
    double noise = 0.05;
    std::string out = "data";
};

int cmd_datagen(const DatagenArgs& a) {
    SplitSpec spec;
    spec.noise_std = a.noise;
    if (a.n != spec.total()) {
        if (a.n < 3) throw UsageError("--n must be at least 3");
        spec.test = spec.validation = std::max<std::size_t>(1, a.n / 10);
        spec.train = a.n - 2 * spec.test;
    }
    const auto data = make_moons_splits(spec, a.seed);
    ensure_dir(a.out);
    write_csv(fs::path(a.out) / "train.csv", data.train);
    write_csv(fs::path(a.out) / "test.csv", data.test);
    write_csv(fs::path(a.out) / "valid.csv", data.validation);
    std::cout << "wrote " << data.train.size() << "/" << data.test.size() << "/" << data.validation.size()
              << " train/test/valid rows to " << a.out << "\n";
    return 0;
}

// ------------------------------------------------------------------ train

struct TrainArgs {
    std::string model = "A";
    std::uint64_t seed = 0;
    int epochs = 50;
    double lr = 0.01;
    double delta_theta = std::numbers::pi / 10;
    std::string mu = "schur";
    bool skip_if_unitary = false;
    double early_stop = 1.0;
    std::string data_dir = "data";
    std::string out = "run";
};

int cmd_train(const TrainArgs& a) {
    TrainConfig cfg;
    try {
        cfg.variant = variant_from_string(a.model);
        cfg.mu.method = mu_method_from_string(a.mu);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    cfg.seed = a.seed;
    cfg.max_epochs = a.epochs;
    cfg.lr = a.lr;
    cfg.delta_theta = a.delta_theta;
    cfg.mu.skip_if_unitary = a.skip_if_unitary;
    cfg.early_stop_accuracy = a.early_stop;
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const DataSplits data = load_splits(a.data_dir);
    const auto result = train(cfg, data);
    ensure_dir(a.out);
    write_checkpoint((fs::path(a.out) / "checkpoint.json").string(), result.model);
    write_metrics_csv(fs::path(a.out) / "metrics.csv", result.report);

    const auto& r = result.report;
    std::cout << "model " << to_string(cfg.variant) << " seed " << cfg.seed << ": " << r.batches.size()
              << " batches\n";
    std::cout << "best checkpoint: epoch " << r.best_epoch << " batch " << r.best_batch << " (train batch accuracy "
              << fmt(r.best_train_accuracy) << ")\n";
    std::cout << "test accuracy " << fmt(r.test_accuracy) << ", validation accuracy "
              << fmt(r.validation_accuracy) << "\n";
    if (cfg.variant == Variant::C) std::cout << "learned alpha " << fmt(result.model.scale.alpha, "%.17g") << "\n";
    if (r.aborted) {
        std::cerr << "training aborted: " << *r.aborted << "\n";
        return 2;
    }
    return 0;
}

// ------------------------------------------------------------------ evaluate

struct EvaluateArgs {
    std::string checkpoint;
    std::string data_dir = "data";
};

int cmd_evaluate(const EvaluateArgs& a) {
    const HybridModel model = read_checkpoint(a.checkpoint);
    const DataSplits data = load_splits(a.data_dir);
    std::cout << "train " << fmt(evaluate(model, data.train)) << "\n";
    std::cout << "test " << fmt(evaluate(model, data.test)) << "\n";
    std::cout << "valid " << fmt(evaluate(model, data.validation)) << "\n";
    return 0;
}

// ------------------------------------------------------------------ compile

struct CompileArgs {
    std::string checkpoint;
    std::string out = "compiled";
    bool qasm = false;
};

std::vector<std::string> gate_file_names(const HybridModel& model) {
    if (model.quantum.kind() == QuantumLayer::Kind::FULL) return {"gates.txt"};
    std::vector<std::string> names;
    for (int w = 0; w < model.n_wires; ++w) names.push_back("gates_w" + std::to_string(w) + ".txt");
    return names;
}

int cmd_compile(const CompileArgs& a) {
    const HybridModel model = read_checkpoint(a.checkpoint);
    const CompiledModel compiled = compile_model(model);
    ensure_dir(a.out);
    const auto names = gate_file_names(model);
    int status = 0;
    for (std::size_t i = 0; i < compiled.circuits.size(); ++i) {
        const auto& c = compiled.circuits[i];
        const fs::path path = fs::path(a.out) / names[i];
        write_text(path, to_gate_list(c));
        if (a.qasm) write_text(fs::path(path).replace_extension(".qasm"), to_openqasm(c));
        const double phase_free = dist_up_to_global_phase(reconstruct(c), model.quantum.block(i));
        std::cout << path.string() << ": " << c.gates.size() << " gates, " << cnot_count(c) << " CNOT (bound "
                  << qsd_cnot_bound(c.n_wires) << "), residual " << fmt(compiled.residuals[i], "%.3e")
                  << ", residual up to phase " << fmt(phase_free, "%.3e") << "\n";
        if (!(compiled.residuals[i] <= 1e-8)) status = 2;
    }
    if (status) std::cerr << "verification residual above 1e-8\n";
    return status;
}

// ------------------------------------------------------------------ boundary

struct BoundaryArgs {
    std::string checkpoint;
    std::vector<std::string> gates;
    std::string grid = "100x100";
    std::string data_dir;
    std::string out = "boundary";
};

int cmd_boundary(const BoundaryArgs& a) {
    GridSpec spec;
    try {
        spec = parse_grid_size(a.grid);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const HybridModel model = read_checkpoint(a.checkpoint);
    std::optional<Dataset> overlay;
    if (!a.data_dir.empty()) overlay = read_csv(fs::path(a.data_dir) / "train.csv");

    ensure_dir(a.out);
    const BoundaryGrid grid = compute_boundary(model, spec);
    write_text(fs::path(a.out) / "boundary.csv", boundary_csv(grid));
    write_text(fs::path(a.out) / "boundary.svg", boundary_svg(grid, overlay ? &*overlay : nullptr));
    std::cout << "class 0 area " << fmt(class_fraction(grid, 0)) << ", class 1 area " << fmt(class_fraction(grid, 1))
              << "\n";
    if (a.gates.empty()) return 0;

    const int wires_per_circuit = model.quantum.kind() == QuantumLayer::Kind::FULL ? model.n_wires : 1;
    if (a.gates.size() != model.quantum.block_count()) {
        throw UsageError("expected " + std::to_string(model.quantum.block_count()) + " gate list(s) for model " +
                         to_string(model.variant));
    }
    CompiledModel compiled;
    for (const auto& path : a.gates) compiled.circuits.push_back(parse_gate_list(read_text(path), wires_per_circuit));
    const BoundaryGrid gate_grid = compute_boundary(model, spec, compiled_executor(model, compiled));
    write_text(fs::path(a.out) / "boundary_compiled.csv", boundary_csv(gate_grid));
    write_text(fs::path(a.out) / "boundary_compiled.svg", boundary_svg(gate_grid, overlay ? &*overlay : nullptr));
    const std::size_t differing = count_disagreements(grid, gate_grid);
    std::cout << "matrix vs compiled: " << differing << " of " << grid.size() << " cells disagree, max logit deviation "
              << fmt(max_logit_deviation(grid, gate_grid), "%.3e") << "\n";
    return differing == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Learn a unitary quantum layer, then compile it to Ry/Rz/CNOT gates"};
    app.require_subcommand(1);

    DatagenArgs datagen;
    auto* dg = app.add_subcommand("datagen", "Write two-moons train/test/valid CSVs");
    dg->add_option("--seed", datagen.seed, "PRNG seed");
    dg->add_option("--n", datagen.n, "Total number of points (default 4000 = 3200/400/400)");
    dg->add_option("--noise", datagen.noise, "Gaussian noise std per coordinate")->check(CLI::NonNegativeNumber);
    dg->add_option("--out", datagen.out, "Output directory");

    TrainArgs tr;
    auto* tc = app.add_subcommand("train", "Train model A, B or C and write checkpoint.json + metrics.csv");
    tc->add_option("--model", tr.model, "Model variant")->check(CLI::IsMember({"A", "B", "C"}));
    tc->add_option("--seed", tr.seed, "Initialization and shuffling seed");
    tc->add_option("--epochs", tr.epochs, "Maximum epochs");
    tc->add_option("--lr", tr.lr, "ADAM learning rate");
    tc->add_option("--delta-theta", tr.delta_theta, "Central-difference step");
    tc->add_option("--mu", tr.mu, "Unitary projection method")->check(CLI::IsMember({"qr", "schur", "polar"}));
    tc->add_flag("--skip-if-unitary", tr.skip_if_unitary, "Skip projection when the update is already unitary");
    tc->add_option("--early-stop", tr.early_stop, "Stop once a training batch reaches this accuracy");
    tc->add_option("--data-dir", tr.data_dir, "Directory with train/test/valid CSVs");
    tc->add_option("--out", tr.out, "Output directory");

    EvaluateArgs ev;
    auto* ec = app.add_subcommand("evaluate", "Report accuracy of a checkpoint on the data splits");
    ec->add_option("checkpoint", ev.checkpoint, "Checkpoint JSON")->required();
    ec->add_option("--data-dir", ev.data_dir, "Directory with train/test/valid CSVs");

    CompileArgs co;
    auto* cc = app.add_subcommand("compile", "Compile the checkpoint's quantum layer to a gate list");
    cc->add_option("checkpoint", co.checkpoint, "Checkpoint JSON")->required();
    cc->add_option("--out", co.out, "Output directory");
    cc->add_flag("--qasm", co.qasm, "Also write OpenQASM 2.0");

    BoundaryArgs bo;
    auto* bc = app.add_subcommand("boundary", "Export the decision boundary as CSV and SVG");
    bc->add_option("checkpoint", bo.checkpoint, "Checkpoint JSON")->required();
    bc->add_option("--gates", bo.gates, "Gate list(s) to compare against the matrix model");
    bc->add_option("--grid", bo.grid, "Grid resolution <W>x<H>");
    bc->add_option("--data-dir", bo.data_dir, "Overlay train.csv from this directory");
    bc->add_option("--out", bo.out, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (dg->parsed()) return cmd_datagen(datagen);
        if (tc->parsed()) return cmd_train(tr);
        if (ec->parsed()) return cmd_evaluate(ev);
        if (cc->parsed()) return cmd_compile(co);
        if (bc->parsed()) return cmd_boundary(bo);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
