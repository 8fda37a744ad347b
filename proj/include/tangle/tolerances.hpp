#pragma once

// Single source of truth for every numeric tolerance used by the library,
// the CLI and the test suites.
namespace tangle::tol {

inline constexpr double hermitian = 1e-12;        // density-matrix Hermiticity
inline constexpr double unit_trace = 1e-12;       // density-matrix trace
inline constexpr double psd_floor = -1e-10;       // smallest allowed eigenvalue
inline constexpr double eig_input_hermitian = 1e-10;
inline constexpr double eig_accuracy = 1e-11;
inline constexpr double jacobi_off_norm = 1e-13;
inline constexpr int jacobi_max_sweeps = 100;
inline constexpr double kraus_completeness = 1e-13;
inline constexpr double trace_preservation = 1e-12;
inline constexpr double negativity_dust = -1e-10;  // raw values above this clamp to 0
inline constexpr double two_tangle_null = 1e-10;
inline constexpr double ckw_floor = -1e-10;
inline constexpr double oracle_agreement = 1e-9;
inline constexpr double zero_threshold = 1e-9;     // sudden-death detection
inline constexpr double tangle_ceiling = 1.0 + 1e-9;

}  // namespace tangle::tol
