#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <vector>

namespace qarch {

struct Dataset {
    std::vector<Eigen::Vector2d> points;
    std::vector<int> labels;

    std::size_t size() const { return points.size(); }
    void push_back(const Eigen::Vector2d& p, int label) {
        points.push_back(p);
        labels.push_back(label);
    }
};

struct SplitSpec {
    std::size_t train = 3200;
    std::size_t test = 400;
    std::size_t validation = 400;
    double noise_std = 0.05;
    std::size_t batch_size = 100;

    std::size_t total() const { return train + test + validation; }
};

struct DataSplits {
    Dataset train;
    Dataset test;
    Dataset validation;
};

/// Two interleaved half circles. The first ceil(n/2) points lie on the upper
/// arc (label 0), the rest on the lower arc (label 1); angles are a uniform
/// grid on [0, pi] and Gaussian noise is added per coordinate. The PRNG is
/// std::mt19937_64 seeded with `seed`.
Dataset make_moons(std::size_t n, double noise_std, std::uint64_t seed);

/// Seeded stratified shuffle into (train, test, validation).
DataSplits split(const Dataset& d, const SplitSpec& spec, std::uint64_t seed);

std::vector<Dataset> batches(const Dataset& d, std::size_t batch_size, std::uint64_t epoch_seed);

/// make_moons(spec.total()) followed by split(), both driven by `seed`.
DataSplits make_moons_splits(const SplitSpec& spec, std::uint64_t seed);

void write_csv(const std::filesystem::path& path, const Dataset& d);
Dataset read_csv(const std::filesystem::path& path);

}  // namespace qarch
