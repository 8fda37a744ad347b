#pragma once

// GHZ state shared by an inertial observer (Alice, qubit 0) and two uniformly
// accelerated observers (Bob, qubit 1; Charlie, qubit 2), with the region-II
// Rindler modes of the accelerated observers traced out.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "tangle/linalg.hpp"

namespace tangle {

/// Acceleration angle r in [0, pi/4]; 0 is inertial, pi/4 is infinite acceleration.
class AccelerationParam {
public:
    static constexpr double max_value = std::numbers::pi / 4.0;

    explicit AccelerationParam(double r) : r_(r) {
        // Admit roundoff from grids generated up to pi/4.
        if (!(r >= 0.0 && r <= max_value + 1e-15)) {
            throw std::invalid_argument("AccelerationParam: r = " + std::to_string(r) + " outside [0, pi/4]");
        }
        r_ = std::min(r_, max_value);
    }

    double value() const noexcept { return r_; }

private:
    double r_;
};

struct PhysicalAcceleration {
    double omega;                     // mode angular frequency, rad/s
    double a;                         // proper acceleration, m/s^2
    double c = 2.99792458e8;          // speed of light, m/s
};

/// cos r = (exp(-2 pi omega c / a) + 1)^(-1/2).
inline AccelerationParam r_from_acceleration(const PhysicalAcceleration &p) {
    if (!(p.omega > 0.0) || !(p.a > 0.0) || !(p.c > 0.0)) {
        throw std::invalid_argument("r_from_acceleration: omega, a and c must be positive");
    }
    const double cos_r = 1.0 / std::sqrt(std::exp(-2.0 * std::numbers::pi * p.omega * p.c / p.a) + 1.0);
    return AccelerationParam(std::acos(std::min(1.0, cos_r)));
}

/// (|000> + |111>)(<000| + <111|) / 2.
inline DensityMatrix ghz_pure() {
    ComplexMatrix m(8);
    m(0, 0) = 0.5;
    m(0, 7) = 0.5;
    m(7, 0) = 0.5;
    m(7, 7) = 0.5;
    return DensityMatrix(std::move(m));
}

/// Three-qubit state (A, B_I, C_I) after Bob's and Charlie's Minkowski modes are
/// expanded in Rindler modes and region II is traced out:
///   diag/2 = {cb^2 cc^2, cb^2 sc^2, sb^2 cc^2, sb^2 sc^2, 0, 0, 0, 1}
///   coherence <000|rho|111> = cb cc / 2.
inline DensityMatrix rindler_ghz(AccelerationParam rb, AccelerationParam rc) {
    const double cb = std::cos(rb.value());
    const double sb = std::sin(rb.value());
    const double cc = std::cos(rc.value());
    const double sc = std::sin(rc.value());
    ComplexMatrix m(8);
    m(0, 0) = 0.5 * cb * cb * cc * cc;
    m(1, 1) = 0.5 * cb * cb * sc * sc;
    m(2, 2) = 0.5 * sb * sb * cc * cc;
    m(3, 3) = 0.5 * sb * sb * sc * sc;
    m(7, 7) = 0.5;
    m(0, 7) = 0.5 * cb * cc;
    m(7, 0) = 0.5 * cb * cc;
    return DensityMatrix(std::move(m));
}

inline DensityMatrix rindler_ghz(AccelerationParam r) { return rindler_ghz(r, r); }

}  // namespace tangle
