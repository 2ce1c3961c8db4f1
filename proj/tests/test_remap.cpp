#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "error.hpp"
#include "remap.hpp"
#include "rng.hpp"
#include "statevector.hpp"

using namespace vqremap;

TEST_CASE("remap values from the definitions") {
    CHECK(remap(RemapKind::Tanh, 0.0) == 0.0);
    CHECK(remap(RemapKind::Clamp, 4.0) == kPi);
    CHECK(remap(RemapKind::Clamp, -4.0) == -kPi);
    CHECK(remap(RemapKind::Sigmoid, 0.0) == 0.0);
    CHECK(remap(RemapKind::Sin, kPi) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(remap(RemapKind::Elu, -50.0) ==
          doctest::Approx(kPi * (std::exp(-50.0) - 1.0)).epsilon(1e-15));
    CHECK(remap(RemapKind::Elu, -50.0) == doctest::Approx(-kPi).epsilon(1e-12));
    CHECK(remap(RemapKind::Elu, 2.5) == 2.5);
    CHECK(remap(RemapKind::Arctan, 0.5) == doctest::Approx(2.0 * std::atan(1.0)).epsilon(1e-15));
}

TEST_CASE("derivative values from the definitions") {
    CHECK(remap_derivative(RemapKind::Tanh, 0.0) == kPi);
    CHECK(remap_derivative(RemapKind::Clamp, 5.0) == 0.0);
    CHECK(remap_derivative(RemapKind::Clamp, kPi) == 1.0); // boundary subgradient
    CHECK(remap_derivative(RemapKind::Arctan, 0.0) == 4.0);
    CHECK(remap_derivative(RemapKind::Identity, 123.0) == 1.0);
}

TEST_CASE("derivatives match central finite differences") {
    Rng rng(5);
    const double h = 1e-6;
    for (RemapKind kind : kAllRemapKinds) {
        int checked = 0;
        while (checked < 1000) {
            const double theta = uniform(rng, -6.0, 6.0);
            // stay clear of the clamp kinks at +-pi and the elu kink at 0
            if (kind == RemapKind::Clamp && std::abs(std::abs(theta) - kPi) < 1e-3) continue;
            if (kind == RemapKind::Elu && std::abs(theta) < 1e-3) continue;
            const double fd = (remap(kind, theta + h) - remap(kind, theta - h)) / (2.0 * h);
            CHECK(std::abs(remap_derivative(kind, theta) - fd) < 1e-5);
            ++checked;
        }
    }
}

TEST_CASE("range of the mapped weights") {
    Rng rng(17);
    for (RemapKind kind : kAllRemapKinds) {
        if (kind == RemapKind::Identity) continue;
        for (int i = 0; i < 1000000; ++i) {
            const double theta = uniform(rng, -60.0, 60.0);
            const double phi = remap(kind, theta);
            if (kind == RemapKind::Elu && theta > 0.0) {
                CHECK(phi == theta); // unbounded upper branch as printed
                continue;
            }
            CHECK(phi >= -kPi - 1e-12);
            CHECK(phi <= kPi + 1e-12);
        }
    }
}

TEST_CASE("odd symmetry where the definitions are odd") {
    Rng rng(23);
    for (RemapKind kind : {RemapKind::Identity, RemapKind::Clamp, RemapKind::Tanh,
                           RemapKind::Arctan, RemapKind::Sin}) {
        for (int i = 0; i < 1000; ++i) {
            const double theta = uniform(rng, -8.0, 8.0);
            CHECK(remap(kind, -theta) == doctest::Approx(-remap(kind, theta)).epsilon(1e-12));
        }
    }
}

TEST_CASE("sigmoid is centered and saturates at +-pi") {
    CHECK(remap(RemapKind::Sigmoid, 0.0) == 0.0);
    CHECK(remap(RemapKind::Sigmoid, 50.0) == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(remap(RemapKind::Sigmoid, -50.0) == doctest::Approx(-kPi).epsilon(1e-12));
}

TEST_CASE("clamp is the identity on [-pi, pi], bitwise") {
    Rng rng(31);
    for (int i = 0; i < 10000; ++i) {
        const double theta = uniform(rng, -kPi, kPi);
        CHECK(remap(RemapKind::Clamp, theta) == theta);
    }
    CHECK(remap(RemapKind::Clamp, kPi) == kPi);
    CHECK(remap(RemapKind::Clamp, -kPi) == -kPi);
}

TEST_CASE("identity returns its argument bitwise") {
    for (double theta : {0.0, -0.0, 1.5, -2.75, 100.25}) {
        CHECK(remap(RemapKind::Identity, theta) == theta);
    }
}

TEST_CASE("non-finite input is rejected") {
    for (RemapKind kind : kAllRemapKinds) {
        CHECK_THROWS_AS(remap(kind, std::numeric_limits<double>::quiet_NaN()), Error);
        CHECK_THROWS_AS(remap(kind, std::numeric_limits<double>::infinity()), Error);
        CHECK_THROWS_AS(remap_derivative(kind, std::numeric_limits<double>::infinity()), Error);
    }
}

TEST_CASE("canonical names") {
    for (RemapKind kind : kAllRemapKinds) {
        CHECK(remap_from_name(remap_name(kind)) == kind);
    }
    CHECK(remap_name(RemapKind::Identity) == "none");
    CHECK(approach_label(RemapKind::Identity) == "VQC");
    CHECK(approach_label(RemapKind::Tanh) == "VQC-tanh");
    CHECK_THROWS_AS(remap_from_name("softsign"), Error);
}
