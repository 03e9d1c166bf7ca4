#include "qarch/moons.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qarch {

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    std::vector<double> out(count, lo);
    if (count < 2) return out;
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) out[i] = lo + step * static_cast<double>(i);
    return out;
}

Dataset gather(const Dataset& d, const std::vector<std::size_t>& idx) {
    Dataset out;
    out.points.reserve(idx.size());
    out.labels.reserve(idx.size());
    for (auto i : idx) out.push_back(d.points[i], d.labels[i]);
    return out;
}

}  // namespace

Dataset make_moons(std::size_t n, double noise_std, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("make_moons: need at least 2 points");
    if (!(noise_std >= 0)) throw std::invalid_argument("make_moons: noise must be non-negative");
    const std::size_t upper = (n + 1) / 2;
    const std::size_t lower = n - upper;
    Dataset d;
    d.points.reserve(n);
    d.labels.reserve(n);
    for (double t : linspace(0, std::numbers::pi, upper)) d.push_back({std::cos(t), std::sin(t)}, 0);
    for (double t : linspace(0, std::numbers::pi, lower)) d.push_back({1 - std::cos(t), 0.5 - std::sin(t)}, 1);
    if (noise_std > 0) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> noise(0.0, noise_std);
        for (auto& p : d.points) {
            p.x() += noise(rng);
            p.y() += noise(rng);
        }
    }
    return d;
}

DataSplits split(const Dataset& d, const SplitSpec& spec, std::uint64_t seed) {
    if (spec.train == 0 || spec.test == 0 || spec.validation == 0) {
        throw std::invalid_argument("split: all split sizes must be positive");
    }
    if (d.size() != spec.total()) {
        throw std::invalid_argument("split: dataset has " + std::to_string(d.size()) + " points, spec needs " +
                                    std::to_string(spec.total()));
    }
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> by_class[2];
    for (std::size_t i = 0; i < d.size(); ++i) by_class[d.labels[i] != 0].push_back(i);
    for (auto& c : by_class) std::shuffle(c.begin(), c.end(), rng);

    // Each split takes its proportional share of each class; rounding
    // remainders go to the training split.
    const std::size_t sizes[3] = {spec.train, spec.test, spec.validation};
    std::vector<std::size_t> parts[3];
    for (auto& c : by_class) {
        std::size_t cursor = 0;
        for (int s = 2; s >= 1; --s) {
            const std::size_t take = c.size() * sizes[s] / d.size();
            parts[s].insert(parts[s].end(), c.begin() + static_cast<std::ptrdiff_t>(cursor),
                            c.begin() + static_cast<std::ptrdiff_t>(cursor + take));
            cursor += take;
        }
        parts[0].insert(parts[0].end(), c.begin() + static_cast<std::ptrdiff_t>(cursor), c.end());
    }
    // Fix up off-by-one counts from integer division by moving points from train.
    for (int s = 1; s <= 2; ++s) {
        while (parts[s].size() < sizes[s]) {
            parts[s].push_back(parts[0].back());
            parts[0].pop_back();
        }
        while (parts[s].size() > sizes[s]) {
            parts[0].push_back(parts[s].back());
            parts[s].pop_back();
        }
    }
    DataSplits out;
    Dataset* targets[3] = {&out.train, &out.test, &out.validation};
    for (int s = 0; s < 3; ++s) {
        std::shuffle(parts[s].begin(), parts[s].end(), rng);
        *targets[s] = gather(d, parts[s]);
    }
    return out;
}

std::vector<Dataset> batches(const Dataset& d, std::size_t batch_size, std::uint64_t epoch_seed) {
    if (batch_size < 1) throw std::invalid_argument("batches: batch size must be >= 1");
    std::vector<std::size_t> order(d.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(epoch_seed);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Dataset> out;
    for (std::size_t start = 0; start < order.size(); start += batch_size) {
        const std::size_t stop = std::min(order.size(), start + batch_size);
        out.push_back(gather(d, std::vector<std::size_t>(order.begin() + static_cast<std::ptrdiff_t>(start),
                                                         order.begin() + static_cast<std::ptrdiff_t>(stop))));
    }
    return out;
}

DataSplits make_moons_splits(const SplitSpec& spec, std::uint64_t seed) {
    return split(make_moons(spec.total(), spec.noise_std, seed), spec, seed + 1);
}

void write_csv(const std::filesystem::path& path, const Dataset& d) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "x,y,label\n";
    char buf[96];
    for (std::size_t i = 0; i < d.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d\n", d.points[i].x(), d.points[i].y(), d.labels[i]);
        out << buf;
    }
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

Dataset read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "x,y,label") {
        throw std::runtime_error(path.string() + ": expected header 'x,y,label'");
    }
    Dataset d;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream fields(line);
        double x = 0, y = 0;
        int label = -1;
        char c1 = 0, c2 = 0;
        if (!(fields >> x >> c1 >> y >> c2 >> label) || c1 != ',' || c2 != ',' || (label != 0 && label != 1)) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": malformed row");
        }
        d.push_back({x, y}, label);
    }
    return d;
}

}  // namespace qarch
