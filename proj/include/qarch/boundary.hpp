#pragma once

#include "qarch/hybrid_net.hpp"
#include "qarch/moons.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace qarch {

struct GridSpec {
    double x_min = -1.5, x_max = 2.5;
    double y_min = -1.0, y_max = 1.5;
    int width = 100, height = 100;
};

/// Row-major over y (outer) then x (inner).
struct BoundaryGrid {
    GridSpec spec;
    std::vector<Eigen::Vector2d> points;
    std::vector<int> classes;
    std::vector<double> logit0;
    std::vector<double> logit1;

    std::size_t size() const { return points.size(); }
};

GridSpec parse_grid_size(const std::string& text, GridSpec base = {});

BoundaryGrid compute_boundary(const HybridModel& model, const GridSpec& spec);
BoundaryGrid compute_boundary(const HybridModel& model, const GridSpec& spec, const QuantumExecutor& quantum);

std::size_t count_disagreements(const BoundaryGrid& a, const BoundaryGrid& b);
double max_logit_deviation(const BoundaryGrid& a, const BoundaryGrid& b);
double class_fraction(const BoundaryGrid& g, int cls);

std::string boundary_csv(const BoundaryGrid& g);
std::string boundary_svg(const BoundaryGrid& g, const Dataset* overlay = nullptr);

}  // namespace qarch
