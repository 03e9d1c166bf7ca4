#include "qarch/unitarize.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace qarch;
using namespace qarch::testing;

namespace {

constexpr MuMethod kAll[] = {MuMethod::QR, MuMethod::SCHUR, MuMethod::POLAR};

}

TEST_CASE("method names round trip") {
    for (MuMethod m : kAll) CHECK(mu_method_from_string(to_string(m)) == m);
    CHECK(mu_method_from_string("polar") == MuMethod::POLAR);
    CHECK_THROWS_AS(mu_method_from_string("svd"), std::invalid_argument);
}

TEST_CASE("every method returns a unitary on random 16x16 inputs") {
    std::mt19937_64 rng(31);
    for (MuMethod method : kAll) {
        for (int trial = 0; trial < 100; ++trial) {
            const ComplexMatrix u = unitarize(random_complex(16, rng), {method});
            REQUIRE(unitarity_residual(u) <= 1e-9);
            REQUIRE(is_unitary(u, 1e-9));
        }
    }
}

TEST_CASE("QR and polar fix unitary inputs, skip returns the input verbatim") {
    std::mt19937_64 rng(32);
    const ComplexMatrix u = random_unitary(8, rng);
    CHECK((unitarize(u, {MuMethod::QR}) - u).norm() < 1e-12);
    CHECK((unitarize(u, {MuMethod::POLAR}) - u).norm() < 1e-12);

    const ComplexMatrix m = random_complex(8, rng);
    for (MuMethod method : kAll) {
        CHECK(unitarize(u, {method, true}) == u);
        // Skipping does not apply to non-unitary inputs.
        CHECK(is_unitary(unitarize(m, {method, true}), 1e-9));
    }
}

TEST_CASE("polar projection is the nearest of the three and beats random unitaries") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix m = random_complex(4, rng);
        const double polar = (unitarize(m, {MuMethod::POLAR}) - m).norm();
        CHECK(polar <= (unitarize(m, {MuMethod::QR}) - m).norm() + 1e-12);
        CHECK(polar <= (unitarize(m, {MuMethod::SCHUR}) - m).norm() + 1e-12);
        for (int k = 0; k < 50; ++k) CHECK(polar <= (random_unitary(4, rng) - m).norm());
    }
}

TEST_CASE("error paths") {
    CHECK_THROWS_AS(unitarize(ComplexMatrix::Ones(2, 3), {}), DimensionError);
    ComplexMatrix singular = ComplexMatrix::Zero(2, 2);
    singular(0, 0) = 1.0;
    CHECK_THROWS_AS(unitarize(singular, {MuMethod::POLAR}), SingularityError);
    ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
    bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS(unitarize(bad, {MuMethod::QR}));
}
