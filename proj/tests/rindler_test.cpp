#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "tangle/rindler.hpp"

using namespace tangle;

constexpr double kPi = std::numbers::pi;

TEST(rindler, ghz_pure_entries) {
    const auto ghz = ghz_pure();
    EXPECT_EQ(ghz.qubits(), 3u);
    EXPECT_EQ(ghz(0, 0), Complex(0.5));
    EXPECT_EQ(ghz(0, 7), Complex(0.5));
    EXPECT_NEAR(ghz.purity(), 1.0, 1e-15);
}

TEST(rindler, acceleration_param_range) {
    EXPECT_THROW(AccelerationParam(-0.01), std::invalid_argument);
    EXPECT_THROW(AccelerationParam(kPi / 4 + 1e-6), std::invalid_argument);
    EXPECT_THROW(AccelerationParam(std::nan("")), std::invalid_argument);
    EXPECT_DOUBLE_EQ(AccelerationParam(kPi / 4).value(), kPi / 4);
}

TEST(rindler, r_from_acceleration_limits) {
    EXPECT_NEAR(r_from_acceleration({.omega = 1.0, .a = 1e30, .c = 1.0}).value(), kPi / 4, 1e-6);
    EXPECT_LT(r_from_acceleration({.omega = 1.0, .a = 1e-3, .c = 1.0}).value(), 1e-6);
    // exponent -2 pi omega c / a = -1.
    EXPECT_NEAR(r_from_acceleration({.omega = 1.0, .a = 2 * kPi, .c = 1.0}).value(),
                std::acos(1.0 / std::sqrt(std::exp(-1.0) + 1.0)), 1e-15);
    EXPECT_NEAR(r_from_acceleration({.omega = 1.0, .a = 2 * kPi, .c = 1.0}).value(), 0.5452076, 1e-7);
}

TEST(rindler, r_from_acceleration_rejects_nonpositive) {
    EXPECT_THROW(r_from_acceleration({.omega = 0.0, .a = 1.0}), std::invalid_argument);
    EXPECT_THROW(r_from_acceleration({.omega = 1.0, .a = -1.0}), std::invalid_argument);
    EXPECT_THROW(r_from_acceleration({.omega = 1.0, .a = 1.0, .c = 0.0}), std::invalid_argument);
}

TEST(rindler, inertial_limit_is_ghz) {
    EXPECT_LE(max_abs_diff(rindler_ghz(AccelerationParam(0.0)).mat(), ghz_pure().mat()), 0.0);
}

TEST(rindler, infinite_acceleration_entries) {
    const auto rho = rindler_ghz(AccelerationParam(kPi / 4));
    const double diag[] = {0.125, 0.125, 0.125, 0.125, 0, 0, 0, 0.5};
    for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(rho(i, i).real(), diag[i], 1e-15);
    EXPECT_NEAR(rho(0, 7).real(), 0.25, 1e-15);
    EXPECT_NEAR(rho(7, 0).real(), 0.25, 1e-15);
}

TEST(rindler, pi_over_six_entries) {
    const auto rho = rindler_ghz(AccelerationParam(kPi / 6));
    EXPECT_NEAR(rho(0, 0).real(), 0.28125, 1e-15);
    EXPECT_NEAR(rho(0, 7).real(), 0.375, 1e-15);
}

TEST(rindler, five_mode_trace_matches_direct_formula) {
    for (int i = 0; i <= 10; ++i) {
        for (int j = 0; j <= 10; ++j) {
            const double rb = kPi / 4 * i / 10.0;
            const double rc = kPi / 4 * j / 10.0;
            const auto direct = rindler_ghz(AccelerationParam(rb), AccelerationParam(rc));
            EXPECT_LE(max_abs_diff(direct.mat(), oracle::five_mode_rindler(rb, rc)), 1e-13) << rb << " " << rc;
        }
    }
}

TEST(rindler, valid_density_matrix_on_fine_grid) {
    for (int i = 0; i <= 100; ++i) {
        const double r = kPi / 4 * i / 100.0;
        EXPECT_NO_THROW(rindler_ghz(AccelerationParam(r))) << r;
    }
}

TEST(rindler, bob_charlie_swap_symmetry) {
    // Swapping qubits 1 and 2 maps index 4a + 2b + c to 4a + 2c + b.
    auto swap_bc = [](std::size_t idx) { return (idx & 4u) | ((idx & 1u) << 1) | ((idx & 2u) >> 1); };
    for (double r1 : {0.0, 0.2, kPi / 6, kPi / 4}) {
        for (double r2 : {0.05, kPi / 12, 0.6}) {
            const auto a = rindler_ghz(AccelerationParam(r1), AccelerationParam(r2));
            const auto b = rindler_ghz(AccelerationParam(r2), AccelerationParam(r1));
            for (std::size_t i = 0; i < 8; ++i)
                for (std::size_t j = 0; j < 8; ++j) EXPECT_NEAR(std::abs(a(i, j) - b(swap_bc(i), swap_bc(j))), 0.0, 1e-13);
        }
    }
}
