#include "qarch/boundary.hpp"
#include "qarch/matrix_io.hpp"
#include "qarch/trainer.hpp"
#include "support.hpp"

#include <doctest.h>

#include <filesystem>

using namespace qarch;

TEST_CASE("grid size parsing") {
    const GridSpec g = parse_grid_size("30x20");
    CHECK(g.width == 30);
    CHECK(g.height == 20);
    CHECK(g.x_min == -1.5);
    for (const char* bad : {"1x5", "5x1", "10", "axb", "10x10x", "x10", "-3x4"}) {
        CHECK_THROWS_AS(parse_grid_size(bad), std::invalid_argument);
    }
}

TEST_CASE("grid covers the box corners in row-major order") {
    const HybridModel m = init_model(Variant::A, 0, {});
    GridSpec spec;
    spec.width = 5;
    spec.height = 3;
    const BoundaryGrid g = compute_boundary(m, spec);
    REQUIRE(g.size() == 15);
    CHECK(g.points.front() == Eigen::Vector2d(-1.5, -1.0));
    CHECK(g.points[4] == Eigen::Vector2d(2.5, -1.0));
    CHECK(g.points.back() == Eigen::Vector2d(2.5, 1.5));
    for (std::size_t i = 0; i < g.size(); ++i) {
        const RealVector logits = forward(m, g.points[i]).logits;
        CHECK(g.classes[i] == predict_class(logits));
        CHECK(g.logit0[i] == logits(0));
    }
    CHECK(class_fraction(g, 0) + class_fraction(g, 1) == doctest::Approx(1.0));
}

TEST_CASE("compiled and matrix boundaries agree; disagreements are counted") {
    const HybridModel m = init_model(Variant::A, 5, {MuMethod::POLAR});
    GridSpec spec;
    spec.width = spec.height = 12;
    const BoundaryGrid direct = compute_boundary(m, spec);
    const BoundaryGrid compiled = compute_boundary(m, spec, compiled_executor(m, compile_model(m)));
    CHECK(count_disagreements(direct, compiled) == 0);
    CHECK(max_logit_deviation(direct, compiled) < 1e-10);

    BoundaryGrid flipped = direct;
    flipped.classes[3] = 1 - flipped.classes[3];
    flipped.logit1[7] += 0.25;
    CHECK(count_disagreements(direct, flipped) == 1);
    CHECK(max_logit_deviation(direct, flipped) == doctest::Approx(0.25));

    GridSpec other = spec;
    other.width = 3;
    CHECK_THROWS_AS(count_disagreements(direct, compute_boundary(m, other)), DimensionError);
}

TEST_CASE("CSV and SVG renderings") {
    const HybridModel m = init_model(Variant::B, 0, {});
    GridSpec spec;
    spec.width = 4;
    spec.height = 2;
    const BoundaryGrid g = compute_boundary(m, spec);
    const std::string csv = boundary_csv(g);
    CHECK(csv.rfind("x,y,class,logit0,logit1\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);

    Dataset overlay;
    overlay.push_back({0, 0}, 0);
    overlay.push_back({1, 0}, 1);
    const std::string svg = boundary_svg(g, &overlay);
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    std::size_t rects = 0, circles = 0;
    for (std::size_t p = svg.find("<rect"); p != std::string::npos; p = svg.find("<rect", p + 1)) ++rects;
    for (std::size_t p = svg.find("<circle"); p != std::string::npos; p = svg.find("<circle", p + 1)) ++circles;
    CHECK(rects == 8);
    CHECK(circles == 2);
}

TEST_CASE("matrix files round trip") {
    std::mt19937_64 rng(71);
    const ComplexMatrix u = testing::random_unitary(8, rng);
    const auto path = (std::filesystem::temp_directory_path() / "qarch_test_matrix.json").string();
    write_matrix(path, u);
    CHECK(read_matrix(path) == u);
    std::filesystem::remove(path);
    CHECK_THROWS(read_matrix(path));
}
