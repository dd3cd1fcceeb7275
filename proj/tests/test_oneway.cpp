#include <doctest.h>

#include <cmath>
#include <complex>

#include "owwe/oneway.hpp"
#include "test_common.hpp"

using namespace owwe;

namespace {
const double om25 = 2.0 * pi * 25.0;
}

TEST_CASE("slowness: kx = 0 gives 1/c, hyperbolic") {
    const auto s = classify_and_slowness(1600.0, 0.0, om25);
    CHECK(s.region == Region::Hyperbolic);
    CHECK(s.gamma0.real() == doctest::Approx(6.25e-4));
    CHECK(s.gamma0.imag() == doctest::Approx(0.0));
}

TEST_CASE("slowness: kx = omega/c lands in the glancing region") {
    const auto s = classify_and_slowness(1600.0, om25 / 1600.0, om25);
    CHECK(s.region == Region::Glancing);
}

TEST_CASE("slowness: elliptic branch decays") {
    const double c = 1600.0, kx = 2.0 * om25 / c;
    const auto s = classify_and_slowness(c, kx, om25);
    CHECK(s.region == Region::Elliptic);
    CHECK(s.gamma0.real() == doctest::Approx(0.0));
    CHECK(s.gamma0.imag() == doctest::Approx(-std::sqrt(3.0) / 1600.0));
    const double dz = 10.0;
    const cdouble factor = std::exp(cdouble(0.0, -dz) * s.omega_c * s.gamma0);
    CHECK(std::abs(factor) == doctest::Approx(std::exp(-dz * om25 * std::sqrt(3.0) / 1600.0)));
    CHECK(std::abs(factor) < 1.0);
}

TEST_CASE("slowness: omega <= 0 rejected") {
    CHECK_THROWS_AS(classify_and_slowness(1600.0, 0.0, 0.0), numeric_error);
}

TEST_CASE("slowness: hyperbolic samples give unit-modulus raw phase") {
    for (int i = 0; i < 100; ++i) {
        const double c = testutil::uniform(1200.0, 5500.0);
        const double om = testutil::uniform(5.0, 500.0);
        const double kx = testutil::uniform(0.0, 0.95) * om / c;
        const auto s = classify_and_slowness(c, kx, om);
        REQUIRE(s.region == Region::Hyperbolic);
        CHECK(std::abs(s.gamma0.imag()) < 1e-15);
        const cdouble factor = std::exp(cdouble(0.0, -10.0) * s.omega_c * s.gamma0);
        CHECK(std::abs(factor) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("slowness: elliptic samples decay in both marching senses") {
    for (int i = 0; i < 100; ++i) {
        const double c = testutil::uniform(1200.0, 5500.0);
        const double om = testutil::uniform(5.0, 500.0);
        const double kx = testutil::uniform(1.05, 4.0) * om / c;
        const auto s = classify_and_slowness(c, kx, om);
        REQUIRE(s.region == Region::Elliptic);
        /* the same factor is used for both down and up steps */
        const cdouble factor = std::exp(cdouble(0.0, -10.0) * s.omega_c * s.gamma0);
        CHECK(std::abs(factor) < 1.0);
    }
}

TEST_CASE("eigendecomposition: P0 inverse and diagonalization identity") {
    for (int i = 0; i < 100; ++i) {
        const double c = testutil::uniform(1200.0, 5500.0);
        const double om = testutil::uniform(5.0, 500.0);
        const double kx = testutil::uniform(0.0, 0.95) * om / c;
        const double rho = testutil::uniform(500.0, 2000.0);
        const auto s = classify_and_slowness(c, kx, om);
        const auto d = EigenDecomposition::make(s, rho);

        const Mat2 id = mat_mul(d.P0, d.P0_inv);
        CHECK(std::abs(id[0][0] - 1.0) < 1e-12);
        CHECK(std::abs(id[1][1] - 1.0) < 1e-12);
        CHECK(std::abs(id[0][1]) < 1e-12);
        CHECK(std::abs(id[1][0]) < 1e-12);

        const Mat2 diag = mat_mul(d.P0_inv, mat_mul(l_sharp_symbol(s, rho), d.P0));
        const double scale = std::abs(s.gamma0);
        CHECK(std::abs(diag[0][0] - d.M0_down) < 1e-10 * scale);
        CHECK(std::abs(diag[1][1] - d.M0_up) < 1e-10 * scale);
        CHECK(std::abs(diag[0][1]) < 1e-10 * scale);
        CHECK(std::abs(diag[1][0]) < 1e-10 * scale);
    }
}

TEST_CASE("decompose: source with only an injection component splits as +-q/(2 gamma0)") {
    const auto s = classify_and_slowness(1600.0, 0.003, om25);
    const double rho = 1000.0;
    const cdouble q(0.7, -0.3);
    const auto v = decompose({cdouble(0.0), q}, s, rho);
    CHECK(std::abs(v[0] - q / (2.0 * s.gamma0)) < 1e-12 * std::abs(v[0]));
    CHECK(std::abs(v[1] + q / (2.0 * s.gamma0)) < 1e-12 * std::abs(v[1]));
    /* multiply back through P0 */
    const auto u = compose(v, s, rho);
    CHECK(std::abs(u[0]) < 1e-10);
    CHECK(std::abs(u[1] - q) < 1e-12 * std::abs(q));
}

TEST_CASE("compose: unit down-going field maps to the first column of P0") {
    const auto s = classify_and_slowness(2000.0, 0.001, om25);
    const auto u = compose({cdouble(1.0), cdouble(0.0)}, s, 1000.0);
    CHECK(u[0] == cdouble(1000.0));
    CHECK(std::abs(u[1] - s.gamma0) < 1e-15);
}

TEST_CASE("decompose/compose: round trip on random states") {
    for (int i = 0; i < 50; ++i) {
        const double c = testutil::uniform(1200.0, 5500.0);
        const double om = testutil::uniform(5.0, 500.0);
        const double kx = testutil::uniform(0.0, 0.9) * om / c;
        const auto s = classify_and_slowness(c, kx, om);
        const double rho = 1000.0;
        const std::array<cdouble, 2> u = {
            cdouble(testutil::uniform(-1, 1), testutil::uniform(-1, 1)),
            cdouble(testutil::uniform(-1, 1), testutil::uniform(-1, 1))};
        const auto v = decompose(u, s, rho);
        const auto back = compose(v, s, rho);
        /* condition scale: the intermediate V components are 1/(2 gamma0)
         * large, so "relative" means against what was summed */
        const double scale = std::abs(v[0]) + std::abs(v[1]);
        CHECK(std::abs(back[0] - u[0]) < 1e-12 * rho * scale);
        CHECK(std::abs(back[1] - u[1]) < 1e-12 * std::abs(s.gamma0) * scale + 1e-15);
    }
}

TEST_CASE("decompose: glancing floor zeroes and flags") {
    const double c = 1600.0;
    const auto s = classify_and_slowness(c, om25 / c, om25); // gamma0 ~ 0
    REQUIRE(s.below_floor());
    bool flagged = false;
    const auto v = decompose({cdouble(1.0), cdouble(1.0)}, s, 1000.0, &flagged);
    CHECK(flagged);
    CHECK(v[0] == cdouble(0.0));
    CHECK(v[1] == cdouble(0.0));
}

TEST_CASE("interface symbols: frozen VM1 values and antisymmetry") {
    const auto above = classify_and_slowness(1600.0, 0.0, om25);
    const auto below = classify_and_slowness(2400.0, 0.0, om25);
    const auto sym = interface_symbols(above, below);
    CHECK(sym.t0_dz.real() == doctest::Approx(0.20273255405408214).epsilon(1e-12));
    CHECK(sym.t0_dz.imag() == doctest::Approx(0.0));
    CHECK(sym.r0_dz == -sym.t0_dz);
    /* series coefficient -dz*r0 sits within O(contrast^2) of the exact
     * normal-incidence reflection coefficient 0.2 */
    CHECK(std::abs(-sym.r0_dz.real() - 0.2) < 0.003);

    const auto swapped = interface_symbols(below, above);
    CHECK(std::abs(swapped.t0_dz + sym.t0_dz) < 1e-15);
    CHECK(std::abs(swapped.r0_dz + sym.r0_dz) < 1e-15);

    const auto same = interface_symbols(above, above);
    CHECK(same.t0_dz == cdouble(0.0));
    CHECK(same.r0_dz == cdouble(0.0));
}

TEST_CASE("interface symbols: log form meets the difference quotient at first order") {
    const auto base = classify_and_slowness(2000.0, 0.0, om25);
    double prev_err = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double contrast = 0.08 / (1 << i);
        const auto below = classify_and_slowness(2000.0 * (1.0 + contrast), 0.0, om25);
        const auto sym = interface_symbols(base, below);
        const cdouble quotient =
            -(below.gamma0 - base.gamma0) / (below.gamma0 + base.gamma0);
        const double err = std::abs(sym.t0_dz / quotient - 1.0);
        if (i > 0) CHECK(prev_err / err == doctest::Approx(4.0).epsilon(0.15));
        prev_err = err;
    }
}

TEST_CASE("interface symbols: glancing floor flags") {
    const auto good = classify_and_slowness(1600.0, 0.0, om25);
    const auto grazing = classify_and_slowness(1600.0, om25 / 1600.0, om25);
    const auto sym = interface_symbols(good, grazing);
    CHECK(sym.floored);
    CHECK(sym.t0_dz == cdouble(0.0));
}

TEST_CASE("propagator step: unit modulus, Chasles halves, WKBJ interface factor") {
    const auto s = classify_and_slowness(1600.0, 0.002, om25);
    const cdouble one_step = propagator_step_factor(s, 10.0, Direction::Down, 0, {}, 85.0, 5.0);
    CHECK(std::abs(one_step) == doctest::Approx(1.0).epsilon(1e-12));

    const cdouble half = propagator_step_factor(s, 5.0, Direction::Down, 0, {}, 85.0, 5.0);
    CHECK(std::abs(half * half - one_step) < 1e-12);

    const auto above = classify_and_slowness(1600.0, 0.0, om25);
    const auto below = classify_and_slowness(2400.0, 0.0, om25);
    const auto sym = interface_symbols(above, below);
    const cdouble down =
        propagator_step_factor(below, 10.0, Direction::Down, 1, sym.t0_dz, 85.0, 5.0);
    const cdouble plain =
        propagator_step_factor(below, 10.0, Direction::Down, 0, sym.t0_dz, 85.0, 5.0);
    CHECK(std::abs(down / plain) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-12));
    CHECK(std::abs(down / plain) == doctest::Approx(1.224744871391589).epsilon(1e-12));
    const cdouble up = propagator_step_factor(below, 10.0, Direction::Up, 1, sym.t0_dz, 85.0, 5.0);
    CHECK(std::abs(up / plain) == doctest::Approx(1.0 / 1.224744871391589).epsilon(1e-12));
}

TEST_CASE("taper: exact plateau, exact cutoff, monotone ramp") {
    const double c = 2000.0, om = om25;
    auto sample_at = [&](double deg) {
        return classify_and_slowness(c, std::sin(deg * pi / 180.0) * om / c, om);
    };
    CHECK(angle_taper(sample_at(0.0), 85.0, 5.0) == 1.0);
    CHECK(angle_taper(sample_at(79.99), 85.0, 5.0) == 1.0);
    CHECK(angle_taper(sample_at(86.0), 85.0, 5.0) == 0.0);
    const double t81 = angle_taper(sample_at(81.0), 85.0, 5.0);
    const double t84 = angle_taper(sample_at(84.0), 85.0, 5.0);
    CHECK(t81 > t84);
    CHECK(t81 < 1.0);
    CHECK(t84 > 0.0);
    /* evanescent components are cut */
    const auto ev = classify_and_slowness(c, 2.0 * om / c, om);
    CHECK(angle_taper(ev, 85.0, 5.0) == 0.0);
}
