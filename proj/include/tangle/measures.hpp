#pragma once

// Negativity-based entanglement measures for three qubits: one-tangles,
// two-tangles, residual entanglements and the pi-tangle.
//
// Negativity here is ||rho^T||_1 - 1 (no factor 1/2), so a maximally entangled
// pair or the GHZ state across any cut has negativity 1.

#include <algorithm>
#include <array>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>

#include "tangle/linalg.hpp"

namespace tangle {

/// ||rho^{T_partition}||_1 - 1, raw (may carry -1e-16 dust).
inline double negativity(const DensityMatrix &rho, std::span<const std::size_t> partition) {
    if (partition.empty() || partition.size() >= rho.qubits()) {
        throw std::invalid_argument("negativity: partition must be a nonempty proper subset of the qubits");
    }
    for (std::size_t k = 0; k < partition.size(); ++k) {
        if (partition[k] >= rho.qubits()) {
            throw std::invalid_argument("negativity: qubit " + std::to_string(partition[k]) + " out of range");
        }
        for (std::size_t l = 0; l < k; ++l) {
            if (partition[l] == partition[k]) {
                throw std::invalid_argument("negativity: repeated qubit in partition");
            }
        }
    }
    return trace_norm(partial_transpose(rho.mat(), partition)) - 1.0;
}

inline double negativity(const DensityMatrix &rho, std::initializer_list<std::size_t> partition) {
    return negativity(rho, std::span<const std::size_t>(partition.begin(), partition.size()));
}

/// Clamp eigensolver dust to zero for reporting.
inline double clamp_tangle(double v) noexcept { return v > 0.0 ? v : 0.0; }

inline void require_three_qubits(const DensityMatrix &rho, const char *what) {
    if (rho.qubits() != 3) {
        throw std::invalid_argument(std::string(what) + ": expected a 3-qubit state");
    }
}

/// (N_A(BC), N_B(AC), N_C(AB)).
inline std::array<double, 3> one_tangles(const DensityMatrix &rho) {
    require_three_qubits(rho, "one_tangles");
    return {negativity(rho, {0}), negativity(rho, {1}), negativity(rho, {2})};
}

/// (N_AB, N_AC, N_BC); each reduced pair is transposed on its second qubit.
inline std::array<double, 3> two_tangles(const DensityMatrix &rho) {
    require_three_qubits(rho, "two_tangles");
    return {negativity(partial_trace(rho, {0, 1}), {1}), negativity(partial_trace(rho, {0, 2}), {1}),
            negativity(partial_trace(rho, {1, 2}), {1})};
}

struct TangleReport {
    std::array<double, 3> one_tangles{};  // N_A(BC), N_B(AC), N_C(AB)
    std::array<double, 3> two_tangles{};  // N_AB, N_AC, N_BC
    std::array<double, 3> residuals{};    // pi_A, pi_B, pi_C
    double pi_tangle = 0.0;
    double ckw_slack = 0.0;               // N_A(BC)^2 - N_AB^2 - N_AC^2
};

/// All tangles of a three-qubit state, unclamped.
inline TangleReport pi_tangle(const DensityMatrix &rho) {
    TangleReport rep;
    rep.one_tangles = one_tangles(rho);
    rep.two_tangles = two_tangles(rho);
    const auto &n1 = rep.one_tangles;
    const auto &n2 = rep.two_tangles;
    const double ab = n2[0] * n2[0];
    const double ac = n2[1] * n2[1];
    const double bc = n2[2] * n2[2];
    rep.residuals = {n1[0] * n1[0] - ab - ac, n1[1] * n1[1] - ab - bc, n1[2] * n1[2] - ac - bc};
    rep.pi_tangle = (rep.residuals[0] + rep.residuals[1] + rep.residuals[2]) / 3.0;
    rep.ckw_slack = rep.residuals[0];
    return rep;
}

/// Reporting view: tangles and residuals clamped at zero, pi-tangle the mean
/// of the clamped residuals. The CKW slack is kept raw.
inline TangleReport reported(const TangleReport &raw) {
    TangleReport rep = raw;
    for (std::size_t k = 0; k < 3; ++k) {
        rep.one_tangles[k] = clamp_tangle(raw.one_tangles[k]);
        rep.two_tangles[k] = clamp_tangle(raw.two_tangles[k]);
        rep.residuals[k] = clamp_tangle(raw.residuals[k]);
    }
    rep.pi_tangle = (rep.residuals[0] + rep.residuals[1] + rep.residuals[2]) / 3.0;
    return rep;
}

}  // namespace tangle
