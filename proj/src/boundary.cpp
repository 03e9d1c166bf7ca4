#include "qarch/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qarch {

GridSpec parse_grid_size(const std::string& text, GridSpec base) {
    const auto x = text.find('x');
    try {
        if (x == std::string::npos) throw std::invalid_argument("missing 'x'");
        std::size_t used_w = 0, used_h = 0;
        const int w = std::stoi(text.substr(0, x), &used_w);
        const int h = std::stoi(text.substr(x + 1), &used_h);
        if (used_w != x || used_h != text.size() - x - 1) throw std::invalid_argument("trailing characters");
        base.width = w;
        base.height = h;
    } catch (const std::exception&) {
        throw std::invalid_argument("grid must look like <W>x<H>, got '" + text + "'");
    }
    if (base.width < 2 || base.height < 2) throw std::invalid_argument("grid resolution must be at least 2 per axis");
    return base;
}

BoundaryGrid compute_boundary(const HybridModel& model, const GridSpec& spec) {
    return compute_boundary(model, spec, [&](StateVector s) { return model.quantum.apply(std::move(s)); });
}

BoundaryGrid compute_boundary(const HybridModel& model, const GridSpec& spec, const QuantumExecutor& quantum) {
    if (spec.width < 2 || spec.height < 2) throw std::invalid_argument("grid resolution must be at least 2 per axis");
    BoundaryGrid g;
    g.spec = spec;
    const std::size_t cells = static_cast<std::size_t>(spec.width) * static_cast<std::size_t>(spec.height);
    g.points.reserve(cells);
    g.classes.reserve(cells);
    g.logit0.reserve(cells);
    g.logit1.reserve(cells);
    for (int j = 0; j < spec.height; ++j) {
        const double y = spec.y_min + (spec.y_max - spec.y_min) * j / (spec.height - 1);
        for (int i = 0; i < spec.width; ++i) {
            const double x = spec.x_min + (spec.x_max - spec.x_min) * i / (spec.width - 1);
            const RealVector logits = forward(model, {x, y}, quantum).logits;
            g.points.emplace_back(x, y);
            g.classes.push_back(predict_class(logits));
            g.logit0.push_back(logits(0));
            g.logit1.push_back(logits(1));
        }
    }
    return g;
}

std::size_t count_disagreements(const BoundaryGrid& a, const BoundaryGrid& b) {
    if (a.size() != b.size()) throw DimensionError("count_disagreements: grid sizes differ");
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) n += a.classes[i] != b.classes[i];
    return n;
}

double max_logit_deviation(const BoundaryGrid& a, const BoundaryGrid& b) {
    if (a.size() != b.size()) throw DimensionError("max_logit_deviation: grid sizes differ");
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max({worst, std::abs(a.logit0[i] - b.logit0[i]), std::abs(a.logit1[i] - b.logit1[i])});
    }
    return worst;
}

double class_fraction(const BoundaryGrid& g, int cls) {
    if (g.size() == 0) return 0;
    return static_cast<double>(std::count(g.classes.begin(), g.classes.end(), cls)) / static_cast<double>(g.size());
}

std::string boundary_csv(const BoundaryGrid& g) {
    std::string out = "x,y,class,logit0,logit1\n";
    char buf[160];
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d,%.17g,%.17g\n", g.points[i].x(), g.points[i].y(),
                      g.classes[i], g.logit0[i], g.logit1[i]);
        out += buf;
    }
    return out;
}

std::string boundary_svg(const BoundaryGrid& g, const Dataset* overlay) {
    constexpr double kPixels = 500.0;
    const GridSpec& s = g.spec;
    const double span_x = s.x_max - s.x_min;
    const double span_y = s.y_max - s.y_min;
    const double scale = kPixels / std::max(span_x, span_y);
    const double width = span_x * scale;
    const double height = span_y * scale;
    const double cell_w = width / (s.width - 1);
    const double cell_h = height / (s.height - 1);
    const auto px = [&](double x) { return (x - s.x_min) * scale; };
    const auto py = [&](double y) { return height - (y - s.y_min) * scale; };
    static constexpr const char* kRegion[2] = {"#c6dbef", "#fdd0a2"};
    static constexpr const char* kPoint[2] = {"#08519c", "#a63603"};

    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(3);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<g shape-rendering=\"crispEdges\">\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
        const int cls = g.classes[i] != 0;
        out << "<rect x=\"" << px(g.points[i].x()) - cell_w / 2 << "\" y=\"" << py(g.points[i].y()) - cell_h / 2
            << "\" width=\"" << cell_w << "\" height=\"" << cell_h << "\" fill=\"" << kRegion[cls] << "\"/>\n";
    }
    out << "</g>\n";
    if (overlay) {
        out << "<g stroke=\"white\" stroke-width=\"0.4\">\n";
        for (std::size_t i = 0; i < overlay->size(); ++i) {
            const int cls = overlay->labels[i] != 0;
            out << "<circle cx=\"" << px(overlay->points[i].x()) << "\" cy=\"" << py(overlay->points[i].y())
                << "\" r=\"2.5\" fill=\"" << kPoint[cls] << "\"/>\n";
        }
        out << "</g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace qarch
