#include "qarch/moons.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>

using namespace qarch;

namespace {

std::size_t count_label(const Dataset& d, int label) {
    return static_cast<std::size_t>(std::count(d.labels.begin(), d.labels.end(), label));
}

// Order-independent identity of a point, for permutation checks.
std::multiset<std::pair<double, double>> as_set(const Dataset& d) {
    std::multiset<std::pair<double, double>> s;
    for (const auto& p : d.points) s.emplace(p.x(), p.y());
    return s;
}

}  // namespace

TEST_CASE("noise-free points lie exactly on the two arcs") {
    const Dataset d = make_moons(101, 0.0, 0);
    REQUIRE(d.size() == 101);
    CHECK(count_label(d, 0) == 51);
    CHECK(count_label(d, 1) == 50);
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto& p = d.points[i];
        if (d.labels[i] == 0) {
            CHECK(p.squaredNorm() == doctest::Approx(1.0));
            CHECK(p.y() >= -1e-15);
        } else {
            const Eigen::Vector2d q(1 - p.x(), 0.5 - p.y());
            CHECK(q.squaredNorm() == doctest::Approx(1.0));
            CHECK(p.y() <= 0.5 + 1e-15);
        }
    }
    CHECK(d.points.front().x() == doctest::Approx(1.0));
    CHECK(d.points[50].x() == doctest::Approx(-1.0));
}

TEST_CASE("generation is seeded and the noise has the requested spread") {
    const Dataset a = make_moons(4000, 0.05, 9);
    const Dataset b = make_moons(4000, 0.05, 9);
    CHECK(a.points == b.points);
    CHECK(make_moons(4000, 0.05, 10).points != a.points);

    const Dataset clean = make_moons(4000, 0.0, 9);
    double sum = 0, sq = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (int k = 0; k < 2; ++k) {
            const double e = a.points[i](k) - clean.points[i](k);
            sum += e;
            sq += e * e;
        }
    }
    const double n = 2.0 * static_cast<double>(a.size());
    const double stddev = std::sqrt(sq / n - (sum / n) * (sum / n));
    CHECK(stddev >= 0.045);
    CHECK(stddev <= 0.055);

    CHECK_THROWS_AS(make_moons(1, 0.1, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_moons(10, -0.1, 0), std::invalid_argument);
}

TEST_CASE("split sizes, class balance and permutation") {
    const SplitSpec spec;
    const Dataset d = make_moons(spec.total(), spec.noise_std, 3);
    const DataSplits s = split(d, spec, 4);
    CHECK(s.train.size() == 3200);
    CHECK(s.test.size() == 400);
    CHECK(s.validation.size() == 400);
    CHECK(count_label(s.train, 0) == 1600);
    CHECK(count_label(s.test, 0) == 200);
    CHECK(count_label(s.validation, 0) == 200);

    Dataset joined = s.train;
    for (const Dataset* part : {&s.test, &s.validation}) {
        for (std::size_t i = 0; i < part->size(); ++i) joined.push_back(part->points[i], part->labels[i]);
    }
    CHECK(as_set(joined) == as_set(d));

    const DataSplits again = split(d, spec, 4);
    CHECK(again.test.points == s.test.points);
    CHECK(split(d, spec, 5).test.points != s.test.points);

    // Odd sizes still come out exact.
    const SplitSpec odd{13, 5, 3, 0.05, 4};
    const DataSplits o = split(make_moons(odd.total(), 0.05, 1), odd, 2);
    CHECK(o.train.size() == 13);
    CHECK(o.test.size() == 5);
    CHECK(o.validation.size() == 3);

    CHECK_THROWS_AS(split(d, SplitSpec{10, 5, 5}, 0), std::invalid_argument);
    CHECK_THROWS_AS(split(make_moons(10, 0, 0), SplitSpec{10, 0, 0}, 0), std::invalid_argument);
}

TEST_CASE("batches cover the set once per epoch") {
    const Dataset d = make_moons(250, 0.05, 0);
    const auto b = batches(d, 100, 17);
    REQUIRE(b.size() == 3);
    CHECK(b[0].size() == 100);
    CHECK(b[2].size() == 50);
    Dataset joined;
    for (const auto& part : b) {
        for (std::size_t i = 0; i < part.size(); ++i) joined.push_back(part.points[i], part.labels[i]);
    }
    CHECK(as_set(joined) == as_set(d));
    CHECK(batches(d, 100, 17)[0].points == b[0].points);
    CHECK(batches(d, 100, 18)[0].points != b[0].points);
    CHECK(batches(make_moons(3200, 0.05, 0), 100, 0).size() == 32);
    CHECK_THROWS_AS(batches(d, 0, 0), std::invalid_argument);
}

TEST_CASE("make_moons_splits is deterministic") {
    const SplitSpec spec;
    CHECK(make_moons_splits(spec, 6).train.points == make_moons_splits(spec, 6).train.points);
}

TEST_CASE("CSV round trip is exact and bad files are rejected") {
    const auto dir = std::filesystem::temp_directory_path() / "qarch_test_moons";
    std::filesystem::create_directories(dir);
    const Dataset d = make_moons(40, 0.05, 2);
    write_csv(dir / "d.csv", d);
    const Dataset back = read_csv(dir / "d.csv");
    CHECK(back.points == d.points);
    CHECK(back.labels == d.labels);

    std::ofstream(dir / "bad_header.csv") << "a,b,c\n1,2,0\n";
    CHECK_THROWS(read_csv(dir / "bad_header.csv"));
    std::ofstream(dir / "bad_row.csv") << "x,y,label\n1,oops,0\n";
    CHECK_THROWS(read_csv(dir / "bad_row.csv"));
    CHECK_THROWS(read_csv(dir / "absent.csv"));
    std::filesystem::remove_all(dir);
}
